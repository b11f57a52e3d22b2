#include "fsr/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fsr {

namespace {

constexpr int kWindow = 11;
constexpr int kRadius = kWindow / 2;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

std::array<double, kWindow> gaussian_taps() {
    std::array<double, kWindow> taps{};
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        double d = i - kRadius;
        taps[i] = std::exp(-(d * d) / (2.0 * kSigma * kSigma));
        sum += taps[i];
    }
    for (double& t : taps) t /= sum;
    return taps;
}

// Separable valid-region Gaussian filter; output is (h-10) x (w-10).
std::vector<double> filter_valid(const std::vector<double>& in, int w, int h,
                                 const std::array<double, kWindow>& taps) {
    const int out_w = w - kWindow + 1;
    std::vector<double> rows(static_cast<std::size_t>(h) * out_w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < out_w; ++x) {
            double acc = 0.0;
            for (int t = 0; t < kWindow; ++t) acc += taps[t] * in[static_cast<std::size_t>(y) * w + x + t];
            rows[static_cast<std::size_t>(y) * out_w + x] = acc;
        }
    }
    const int out_h = h - kWindow + 1;
    std::vector<double> out(static_cast<std::size_t>(out_h) * out_w);
    for (int y = 0; y < out_h; ++y) {
        for (int x = 0; x < out_w; ++x) {
            double acc = 0.0;
            for (int t = 0; t < kWindow; ++t) acc += taps[t] * rows[static_cast<std::size_t>(y + t) * out_w + x];
            out[static_cast<std::size_t>(y) * out_w + x] = acc;
        }
    }
    return out;
}

void check_dims(const ImageGrid& a, const ImageGrid& b, const char* what) {
    if (a.width() != b.width() || a.height() != b.height())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

double psnr(const ImageGrid& reference, const ImageGrid& test) {
    check_dims(reference, test, "psnr");
    double se = 0.0;
    const auto& a = reference.samples();
    const auto& b = test.samples();
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        se += d * d;
    }
    double mse = se / static_cast<double>(a.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim(const ImageGrid& reference, const ImageGrid& test) {
    check_dims(reference, test, "ssim");
    const int w = reference.width();
    const int h = reference.height();
    if (w < kWindow || h < kWindow)
        throw std::invalid_argument("ssim: image smaller than the 11x11 window");

    const auto taps = gaussian_taps();
    const auto& x = reference.samples();
    const auto& y = test.samples();
    const std::size_t n = x.size();
    std::vector<double> xx(n), yy(n), xy(n);
    for (std::size_t i = 0; i < n; ++i) {
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }

    std::vector<double> mu_x = filter_valid(x, w, h, taps);
    std::vector<double> mu_y = filter_valid(y, w, h, taps);
    std::vector<double> m_xx = filter_valid(xx, w, h, taps);
    std::vector<double> m_yy = filter_valid(yy, w, h, taps);
    std::vector<double> m_xy = filter_valid(xy, w, h, taps);

    double acc = 0.0;
    for (std::size_t i = 0; i < mu_x.size(); ++i) {
        double var_x = m_xx[i] - mu_x[i] * mu_x[i];
        double var_y = m_yy[i] - mu_y[i] * mu_y[i];
        double cov = m_xy[i] - mu_x[i] * mu_y[i];
        double num = (2.0 * mu_x[i] * mu_y[i] + kC1) * (2.0 * cov + kC2);
        double den = (mu_x[i] * mu_x[i] + mu_y[i] * mu_y[i] + kC1) * (var_x + var_y + kC2);
        acc += num / den;
    }
    return acc / static_cast<double>(mu_x.size());
}

QualityScore measure_quality(const ImageGrid& reference, const ImageGrid& test) {
    return QualityScore{psnr(reference, test), ssim(reference, test)};
}

}  // namespace fsr
