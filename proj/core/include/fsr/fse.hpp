#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fsr/image.hpp"

namespace fsr {

/// The M x N window around one block: sample values over the whole window
/// (placeholders wherever the weight is zero) plus a role label per pixel.
struct ReconstructionArea {
    int rows = 0;  // M
    int cols = 0;  // N
    std::vector<double> values;     // row-major
    std::vector<AreaLabel> labels;  // row-major

    std::size_t index(int m, int n) const { return static_cast<std::size_t>(m) * cols + n; }
};

/// Radially decaying pixel weights controlling each pixel's influence on the
/// model. Zero on Loss/Outside, rho^d on Support, delta*rho^d on Reconstructed,
/// with d the Euclidean distance to the continuous window center.
struct WeightField {
    int rows = 0;
    int cols = 0;
    std::vector<double> w;
    double rho_hat = 0.7;
    double delta = 0.5;

    double total() const;
};

/// Sparse Fourier expansion of one window: complex coefficient per frequency
/// bin (conjugate-symmetric so the synthesized signal is real) and the set of
/// selected bins in first-selection order.
struct SparseModel {
    int rows = 0;
    int cols = 0;
    std::vector<std::complex<double>> coeffs;            // M x N bins, row-major
    std::vector<std::pair<int, int>> selected;           // set K in first-touch order
    std::vector<std::pair<int, int>> selection_order;    // canonical pick per iteration
    double gamma = 0.5;
    int iterations_used = 0;
};

/// Thrown when a window holds no usable pixel (all weights zero).
class EmptySupportError : public std::runtime_error {
public:
    EmptySupportError() : std::runtime_error("fse: window has no support pixels") {}
};

/// Evaluates the weighting function over the window. rho_hat must lie in
/// (0,1), delta in (0,1].
WeightField build_weights(const ReconstructionArea& area, double rho_hat, double delta);

/// Iterative weighted basis selection. Per iteration: take the DFT of the
/// weighted residual, pick the bin with the largest energy (ties resolved to
/// the smallest row-major bin; conjugate partners are collapsed onto their
/// canonical member), apply a gamma-damped coefficient update together with
/// the conjugate partner, and remove the selected contribution from the
/// residual. A pair update counts as one iteration. Self-conjugate bins (DC
/// and the Nyquist bins of even dimensions) receive a real-constrained update.
///
/// Throws std::invalid_argument for iterations < 1 or mismatched shapes and
/// EmptySupportError when the weight field is identically zero.
SparseModel generate_model(const ReconstructionArea& area, const WeightField& weights,
                           int iterations, double gamma);

/// Synthesizes the real window signal from the model. Imaginary residue below
/// 1e-9 of the signal scale is truncated; anything larger signals a conjugate
/// symmetry violation (std::runtime_error).
std::vector<double> evaluate_model(const SparseModel& model);

}  // namespace fsr
