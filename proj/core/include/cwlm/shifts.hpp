#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "cwlm/qubit.hpp"

namespace cwlm {

/// Preparation / post-selection polarization pair. The generating function is
/// defined only for nonzero zeroth-order overlap, 1 + (p_i, p_f) > 1e-12;
/// p_f = 0 describes the unconditioned measurement (rho_f proportional to 1).
struct PolarizationPair {
    BlochVector p_i;
    BlochVector p_f;

    double overlap() const { return 1.0 + p_i.dot(p_f); }
    void validate() const;
};

/// Exact generating function of the shift quasi-distribution,
///   C(chi) = Tr[rho_f U rho_i U] / Tr[rho_f rho_i],  U = exp(+i (chi, sigma)/2),
/// evaluated as a 2x2 matrix trace. Outputs are normalized to the +-1 Pauli
/// eigenvalues; the sign of U is fixed by the p_i = p_f = x calibration
/// (deterministic shift +1 along x). Conjugate-symmetric: C(-chi) = conj C(chi).
std::complex<double> shift_char_exact(const PolarizationPair& pp, double chi_x, double chi_y,
                                      double chi_z);

/// First moments of the shift measure, -i grad_chi C at chi = 0:
///   <s_a> = (P_i^a + P_f^a) / (1 + (P_i, P_f)).
BlochVector shift_mean(const PolarizationPair& pp);

/// Delta weights of the single-axis quasi-distribution
///   C(s) = w_m delta(s+1) + w_0 delta(s) + w_p delta(s-1).
/// Along one axis C(chi) is a degree-1 trigonometric polynomial, so the three
/// weights follow exactly from C at chi = 0, pi/2, pi. They sum to 1; w_0 is
/// the half-quantized weight, nonzero only under conditioning.
struct ShiftWeights {
    double w_minus = 0.0;
    double w_zero = 0.0;
    double w_plus = 0.0;
};

ShiftWeights shift_weights_1d(const PolarizationPair& pp, Axis axis);

/// Regularization kernel applied to C(chi) before inversion. Gaussian damping
/// exp(-xi^2 chi^2 / 2) smears every delta by a width-xi Gaussian; Lorentzian
/// damping exp(-xi |chi|) reproduces the Im 1/(A - s + i xi) regularization.
enum class RegKernel { Gaussian, Lorentzian };

/// Centered square grid for shift quasi-distributions: s_k = (k - n/2) ds,
/// ds = 2 s_max / n. n must be even.
struct ShiftGridSpec {
    int n = 1024;
    double s_max = 2.0;

    double ds() const { return 2.0 * s_max / n; }
    void validate() const;
};

/// Regularized two-detector (chi_z = 0) quasi-distribution on a centered grid.
/// Not a probability density: negative regions are physical. values is
/// row-major with index kx * n + ky.
struct ShiftMeasure {
    ShiftGridSpec grid;
    double xi = 0.0;
    RegKernel kernel = RegKernel::Gaussian;
    std::vector<double> values;

    double s(int k) const { return (k - grid.n / 2) * grid.ds(); }
    double at(int kx, int ky) const { return values[static_cast<std::size_t>(kx) * grid.n + ky]; }
    double mass() const;
    /// Grid moments (sum s_a values ds^2); first-moment pair (s_x, s_y).
    std::pair<double, double> mean() const;
};

ShiftMeasure shift_quasi_2d(const PolarizationPair& pp, const ShiftGridSpec& grid, double xi,
                            RegKernel kernel = RegKernel::Gaussian);

/// Marginal of the regularized 2D measure over the other axis, computed as the
/// 1D inversion of the single-axis characteristic function slice (marginalizing
/// a Fourier pair is evaluating the transform on the chi-axis of interest).
/// Returns values on the centered 1D grid with spacing spec.ds().
std::vector<double> shift_marginal_1d(const PolarizationPair& pp, Axis axis,
                                      const ShiftGridSpec& spec, double xi,
                                      RegKernel kernel = RegKernel::Gaussian);

/// Masses of the marginal integrated over unit bins around s = -1, 0, +1.
ShiftWeights bin_weights(const std::vector<double>& marginal, const ShiftGridSpec& spec);

/// Discrete convolution of the measure with a product Gaussian of standard
/// deviations (sigma1, sigma2); requires sigma_i > 0 and sigma_i >> xi. The
/// result approximates the short-time conditioned output distribution.
struct ShiftConvolution {
    ShiftGridSpec grid;
    std::vector<double> values;

    double at(int kx, int ky) const { return values[static_cast<std::size_t>(kx) * grid.n + ky]; }
};

ShiftConvolution convolve_with_gaussian(const ShiftMeasure& sm, double sigma1, double sigma2);

/// Sum of the delta weights smeared by a width-sigma Gaussian, evaluated at s.
double weights_convolved_with_gaussian(const ShiftWeights& w, double sigma, double s);

} // namespace cwlm
