#include "reference_fse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsrtest {

using cd = std::complex<double>;

std::vector<cd> naive_dft_2d(const std::vector<double>& values, int rows, int cols) {
    std::vector<cd> out(static_cast<std::size_t>(rows) * cols);
    for (int k = 0; k < rows; ++k) {
        for (int l = 0; l < cols; ++l) {
            cd acc{};
            for (int m = 0; m < rows; ++m) {
                for (int n = 0; n < cols; ++n) {
                    double ang = -2.0 * std::numbers::pi *
                                 (static_cast<double>(k) * m / rows + static_cast<double>(l) * n / cols);
                    acc += values[static_cast<std::size_t>(m) * cols + n] * cd(std::cos(ang), std::sin(ang));
                }
            }
            out[static_cast<std::size_t>(k) * cols + l] = acc;
        }
    }
    return out;
}

ReferenceModel reference_generate_model(const fsr::ReconstructionArea& area,
                                        const fsr::WeightField& weights, int iterations,
                                        double gamma) {
    const int rows = area.rows;
    const int cols = area.cols;
    const std::size_t bins = static_cast<std::size_t>(rows) * cols;

    double weight_sum = 0.0;
    for (double w : weights.w) weight_sum += w;
    if (weight_sum <= 0.0) throw std::runtime_error("reference: empty support");

    std::vector<double> residual = area.values;

    ReferenceModel model;
    model.rows = rows;
    model.cols = cols;
    model.coeffs.assign(bins, cd{});

    auto basis_angle = [&](int k, int l, int m, int n) {
        return 2.0 * std::numbers::pi *
               (static_cast<double>(k) * m / rows + static_cast<double>(l) * n / cols);
    };

    for (int it = 0; it < iterations; ++it) {
        // direct weighted projections over canonical bins only
        std::size_t best = 0;
        double best_energy = -1.0;
        cd best_proj{};
        for (int k = 0; k < rows; ++k) {
            for (int l = 0; l < cols; ++l) {
                std::size_t i = static_cast<std::size_t>(k) * cols + l;
                std::size_t j =
                    static_cast<std::size_t>((rows - k) % rows) * cols + (cols - l) % cols;
                if (i > j) continue;
                cd proj{};
                for (int m = 0; m < rows; ++m)
                    for (int n = 0; n < cols; ++n) {
                        double wv = weights.w[static_cast<std::size_t>(m) * cols + n];
                        if (wv == 0.0) continue;
                        double ang = basis_angle(k, l, m, n);
                        proj += residual[static_cast<std::size_t>(m) * cols + n] * wv *
                                cd(std::cos(ang), -std::sin(ang));
                    }
                double e = std::norm(proj);
                if (e > best_energy) {
                    best_energy = e;
                    best = i;
                    best_proj = proj;
                }
            }
        }

        const int k0 = static_cast<int>(best) / cols;
        const int l0 = static_cast<int>(best) % cols;
        const std::size_t mate =
            static_cast<std::size_t>((rows - k0) % rows) * cols + (cols - l0) % cols;
        cd dc = (gamma / weight_sum) * best_proj;
        if (mate == best) dc = cd(dc.real(), 0.0);

        model.coeffs[best] += dc;
        model.selection_order.emplace_back(k0, l0);
        if (mate != best) model.coeffs[mate] += std::conj(dc);

        for (int m = 0; m < rows; ++m) {
            for (int n = 0; n < cols; ++n) {
                double ang = basis_angle(k0, l0, m, n);
                cd phi(std::cos(ang), std::sin(ang));
                double contrib = (mate == best)
                                     ? dc.real() * phi.real()
                                     : 2.0 * (dc.real() * phi.real() - dc.imag() * phi.imag());
                residual[static_cast<std::size_t>(m) * cols + n] -= contrib;
            }
        }
    }
    return model;
}

std::vector<double> reference_evaluate(const std::vector<cd>& coeffs, int rows, int cols) {
    std::vector<double> out(static_cast<std::size_t>(rows) * cols, 0.0);
    for (int m = 0; m < rows; ++m) {
        for (int n = 0; n < cols; ++n) {
            cd acc{};
            for (int k = 0; k < rows; ++k) {
                for (int l = 0; l < cols; ++l) {
                    cd c = coeffs[static_cast<std::size_t>(k) * cols + l];
                    if (c == cd{}) continue;
                    double ang = 2.0 * std::numbers::pi *
                                 (static_cast<double>(k) * m / rows + static_cast<double>(l) * n / cols);
                    acc += c * cd(std::cos(ang), std::sin(ang));
                }
            }
            out[static_cast<std::size_t>(m) * cols + n] = acc.real();
        }
    }
    return out;
}

fsr::ImageGrid reference_reconstruct(const fsr::ImageGrid& degraded,
                                     const fsr::SamplingMask& mask,
                                     const std::vector<int>& per_block_iterations,
                                     const fsr::FsrConfig& cfg) {
    const int w = degraded.width();
    const int h = degraded.height();
    const int U = cfg.block_size;
    const int F = cfg.fft_size;
    const int border = cfg.border_width;
    const int bx = (w + U - 1) / U;
    const int by = (h + U - 1) / U;

    fsr::ImageGrid out = degraded;
    std::vector<std::uint8_t> written(static_cast<std::size_t>(w) * h, 0);

    int block = 0;
    for (int byi = 0; byi < by; ++byi) {
        for (int bxi = 0; bxi < bx; ++bxi, ++block) {
            const int x0 = bxi * U, y0 = byi * U;
            const int x1 = std::min(x0 + U, w), y1 = std::min(y0 + U, h);
            bool missing = false;
            for (int y = y0; y < y1 && !missing; ++y)
                for (int x = x0; x < x1; ++x)
                    if (!mask.at(x, y)) {
                        missing = true;
                        break;
                    }
            if (!missing) continue;

            fsr::ReconstructionArea area;
            area.rows = F;
            area.cols = F;
            area.values.assign(static_cast<std::size_t>(F) * F, 0.0);
            area.labels.assign(area.values.size(), fsr::AreaLabel::Outside);
            for (int m = 0; m < F; ++m) {
                for (int n = 0; n < F; ++n) {
                    int y = y0 - border + m;
                    int x = x0 - border + n;
                    if (x < 0 || x >= w || y < 0 || y >= h) continue;
                    std::size_t i = area.index(m, n);
                    area.values[i] = out.at(x, y);
                    if (mask.at(x, y))
                        area.labels[i] = fsr::AreaLabel::Support;
                    else if (written[static_cast<std::size_t>(y) * w + x])
                        area.labels[i] = fsr::AreaLabel::Reconstructed;
                    else
                        area.labels[i] = fsr::AreaLabel::Loss;
                }
            }
            fsr::WeightField weights = fsr::build_weights(area, cfg.rho_hat, cfg.delta);
            ReferenceModel model =
                reference_generate_model(area, weights, per_block_iterations[block], cfg.gamma);
            std::vector<double> g = reference_evaluate(model.coeffs, F, F);
            for (int y = y0; y < y1; ++y) {
                for (int x = x0; x < x1; ++x) {
                    if (mask.at(x, y)) continue;
                    double v = g[static_cast<std::size_t>(y - (y0 - border)) * F + (x - (x0 - border))];
                    out.at(x, y) = std::clamp(v, 0.0, 255.0);
                    written[static_cast<std::size_t>(y) * w + x] = 1;
                }
            }
        }
    }
    return out;
}

}  // namespace fsrtest
