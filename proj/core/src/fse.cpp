#include "fsr/fse.hpp"

#include <algorithm>
#include <cmath>

#include "fsr/fft.hpp"

namespace fsr {

namespace {

using cd = std::complex<double>;

// Subtracts dc * W((k-k0) mod M, (l-l0) mod N) from every bin of residual.
// This is the frequency-domain image of removing dc * basis(k0,l0) from the
// weighted spatial residual.
void subtract_shifted_spectrum(std::vector<cd>& residual, const std::vector<cd>& weight_spectrum,
                               int rows, int cols, int k0, int l0, cd dc) {
    for (int k = 0; k < rows; ++k) {
        int ks = k - k0;
        if (ks < 0) ks += rows;
        const cd* wrow = weight_spectrum.data() + static_cast<std::size_t>(ks) * cols;
        cd* rrow = residual.data() + static_cast<std::size_t>(k) * cols;
        // column wrap split into two contiguous runs
        for (int l = 0; l < l0; ++l) rrow[l] -= dc * wrow[l - l0 + cols];
        for (int l = l0; l < cols; ++l) rrow[l] -= dc * wrow[l - l0];
    }
}

}  // namespace

double WeightField::total() const {
    double s = 0.0;
    for (double v : w) s += v;
    return s;
}

WeightField build_weights(const ReconstructionArea& area, double rho_hat, double delta) {
    if (!(rho_hat > 0.0 && rho_hat < 1.0))
        throw std::invalid_argument("build_weights: rho_hat must lie in (0,1)");
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("build_weights: delta must lie in (0,1]");
    if (area.values.size() != static_cast<std::size_t>(area.rows) * area.cols ||
        area.labels.size() != area.values.size())
        throw std::invalid_argument("build_weights: malformed area");

    WeightField field;
    field.rows = area.rows;
    field.cols = area.cols;
    field.rho_hat = rho_hat;
    field.delta = delta;
    field.w.assign(area.values.size(), 0.0);

    const double cm = (area.rows - 1) / 2.0;
    const double cn = (area.cols - 1) / 2.0;
    for (int m = 0; m < area.rows; ++m) {
        for (int n = 0; n < area.cols; ++n) {
            std::size_t i = area.index(m, n);
            AreaLabel label = area.labels[i];
            if (label == AreaLabel::Loss || label == AreaLabel::Outside) continue;
            double d = std::sqrt((m - cm) * (m - cm) + (n - cn) * (n - cn));
            double base = std::pow(rho_hat, d);
            field.w[i] = (label == AreaLabel::Support) ? base : delta * base;
        }
    }
    return field;
}

SparseModel generate_model(const ReconstructionArea& area, const WeightField& weights,
                           int iterations, double gamma) {
    if (iterations < 1) throw std::invalid_argument("generate_model: iterations must be >= 1");
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("generate_model: gamma must lie in (0,1]");
    if (weights.rows != area.rows || weights.cols != area.cols)
        throw std::invalid_argument("generate_model: weight field does not match window");

    const int rows = area.rows;
    const int cols = area.cols;
    const std::size_t bins = static_cast<std::size_t>(rows) * cols;

    const double weight_sum = weights.total();
    if (weight_sum <= 0.0) throw EmptySupportError();

    // Spectra of the weight field and of the weighted signal; placeholder
    // values in zero-weight pixels vanish in the product.
    std::vector<cd> weight_spectrum = fft::forward_2d(weights.w, rows, cols);
    std::vector<double> weighted(bins);
    for (std::size_t i = 0; i < bins; ++i) weighted[i] = area.values[i] * weights.w[i];
    std::vector<cd> residual = fft::forward_2d(weighted, rows, cols);

    // Canonical bin = the row-major smaller member of each conjugate pair.
    // Scanning only those makes the pair-internal tie moot and keeps the
    // argmax deterministic.
    std::vector<std::size_t> partner(bins);
    std::vector<std::uint8_t> canonical(bins);
    for (int k = 0; k < rows; ++k) {
        for (int l = 0; l < cols; ++l) {
            std::size_t i = static_cast<std::size_t>(k) * cols + l;
            std::size_t j = static_cast<std::size_t>((rows - k) % rows) * cols + (cols - l) % cols;
            partner[i] = j;
            canonical[i] = i <= j;
        }
    }

    SparseModel model;
    model.rows = rows;
    model.cols = cols;
    model.gamma = gamma;
    model.coeffs.assign(bins, cd{});
    std::vector<std::uint8_t> in_set(bins, 0);

    auto note_selected = [&](std::size_t bin) {
        if (!in_set[bin]) {
            in_set[bin] = 1;
            model.selected.emplace_back(static_cast<int>(bin) / cols, static_cast<int>(bin) % cols);
        }
    };

    for (int it = 0; it < iterations; ++it) {
        std::size_t best = 0;
        double best_energy = -1.0;
        for (std::size_t i = 0; i < bins; ++i) {
            if (!canonical[i]) continue;
            double e = std::norm(residual[i]);
            if (e > best_energy) {
                best_energy = e;
                best = i;
            }
        }
        const std::size_t mate = partner[best];
        const int k0 = static_cast<int>(best) / cols;
        const int l0 = static_cast<int>(best) % cols;

        cd dc = (gamma / weight_sum) * residual[best];
        if (mate == best) dc = cd(dc.real(), 0.0);  // real-constrained update

        model.selection_order.emplace_back(k0, l0);
        model.coeffs[best] += dc;
        note_selected(best);
        subtract_shifted_spectrum(residual, weight_spectrum, rows, cols, k0, l0, dc);
        if (mate != best) {
            model.coeffs[mate] += std::conj(dc);
            note_selected(mate);
            subtract_shifted_spectrum(residual, weight_spectrum, rows, cols,
                                      static_cast<int>(mate) / cols, static_cast<int>(mate) % cols,
                                      std::conj(dc));
        }
    }

    model.iterations_used = iterations;
    return model;
}

std::vector<double> evaluate_model(const SparseModel& model) {
    const std::size_t bins = static_cast<std::size_t>(model.rows) * model.cols;
    if (model.coeffs.size() != bins)
        throw std::invalid_argument("evaluate_model: malformed model");

    // g = unnormalized inverse transform of the coefficient array
    std::vector<cd> synth = model.coeffs;
    fft::transform_2d(synth.data(), model.rows, model.cols, true);

    double scale = 0.0;
    for (const cd& v : synth) scale = std::max(scale, std::abs(v.real()));
    double residue = 0.0;
    for (const cd& v : synth) residue = std::max(residue, std::abs(v.imag()));
    if (residue > 1e-9 * std::max(1.0, scale))
        throw std::runtime_error("evaluate_model: conjugate symmetry violated (imaginary residue)");

    std::vector<double> out(bins);
    for (std::size_t i = 0; i < bins; ++i) out[i] = synth[i].real();
    return out;
}

}  // namespace fsr
