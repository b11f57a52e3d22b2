#include "fsr/fft.hpp"

#include <numbers>
#include <stdexcept>

namespace fsr::fft {

namespace {

using cd = std::complex<double>;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Iterative Cooley-Tukey, n a power of two.
void radix2(cd* a, int n, bool inverse) {
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double dir = inverse ? 1.0 : -1.0;
    for (int len = 2; len <= n; len <<= 1) {
        double ang = dir * 2.0 * std::numbers::pi / len;
        cd wlen(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                cd u = a[i + k];
                cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Bluestein's chirp-z algorithm for arbitrary n, built on a radix-2 convolution.
void bluestein(cd* data, int n, bool inverse) {
    const double dir = inverse ? 1.0 : -1.0;
    const int m = next_pow2(2 * n - 1);
    std::vector<cd> a(m, cd{}), b(m, cd{});
    std::vector<cd> chirp(n);
    for (int k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the twiddle argument small and exact
        long long k2 = (static_cast<long long>(k) * k) % (2LL * n);
        double ang = dir * std::numbers::pi * static_cast<double>(k2) / n;
        chirp[k] = cd(std::cos(ang), std::sin(ang));
    }
    for (int k = 0; k < n; ++k) a[k] = data[k] * chirp[k];
    b[0] = cd(1.0, 0.0);
    for (int k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);
    radix2(a.data(), m, false);
    radix2(b.data(), m, false);
    for (int k = 0; k < m; ++k) a[k] *= b[k];
    radix2(a.data(), m, true);
    const double scale = 1.0 / m;
    for (int k = 0; k < n; ++k) data[k] = a[k] * scale * chirp[k];
}

}  // namespace

void transform_1d(cd* data, int n, bool inverse) {
    if (n <= 0) throw std::invalid_argument("fft: size must be positive");
    if (n == 1) return;
    if (is_pow2(n))
        radix2(data, n, inverse);
    else
        bluestein(data, n, inverse);
}

void transform_2d(cd* data, int rows, int cols, bool inverse) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("fft: sizes must be positive");
    for (int r = 0; r < rows; ++r) transform_1d(data + static_cast<std::size_t>(r) * cols, cols, inverse);
    std::vector<cd> col(rows);
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) col[r] = data[static_cast<std::size_t>(r) * cols + c];
        transform_1d(col.data(), rows, inverse);
        for (int r = 0; r < rows; ++r) data[static_cast<std::size_t>(r) * cols + c] = col[r];
    }
}

std::vector<cd> forward_2d(const std::vector<double>& real, int rows, int cols) {
    if (real.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("fft: field size mismatch");
    std::vector<cd> out(real.size());
    for (std::size_t i = 0; i < real.size(); ++i) out[i] = cd(real[i], 0.0);
    transform_2d(out.data(), rows, cols, false);
    return out;
}

}  // namespace fsr::fft
