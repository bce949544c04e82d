#pragma once

#include <array>
#include <complex>
#include <utility>

#include "cwlm/scenario.hpp"

namespace cwlm {

/// Parameters of the closed-form short-time, zero-overlap statistics
/// (prep |Z+>, post |Z->; swapped = true flips the orientation).
///
/// gamma is the TOTAL decoherence rate, the sum of both detectors'
/// back-action dephasing rates; the per-detector ideality is
/// K = gamma t_a / 2 for identical detectors, K = 1 at the Cauchy-Schwarz
/// bound. Cross terms (s_vv_12, the s_qv matrix) default to zero.
struct ShortTimeParams {
    double omega_x = 0.0;
    double omega_y = 0.0;
    double gamma = 0.0;
    double t_a1 = 1.0;
    double t_a2 = 1.0;
    double T = 0.0;
    double a1 = 1.0;
    double a2 = 1.0;
    double s_vv_12 = 0.0;
    std::array<std::array<double, 2>, 2> s_qv{};
    bool swapped = false;

    double omega_bar_sq() const { return omega_x * omega_x + omega_y * omega_y; }
    double s_vv(int i) const;      // diagonal output noise, a_i^2 t_ai / 4
    double sigma2(int i) const;    // t_ai / (4 T)
    void validate() const;
};

/// Ideal-scenario parameters mapped onto the closed forms:
/// gamma = S_QQ^(1,1) + S_QQ^(2,2). Requires the (sigma_x, sigma_y) axes.
ShortTimeParams short_time_params_from(const ScenarioConfig& cfg, double T);

/// Joint characteristic function for H = (Omega_x sigma_x + Omega_y sigma_y)/2:
///   [4 gamma + T((Omega_x - i a2 chi2)^2 - (i Omega_y - a1 chi1)^2)]
///     / (4 gamma + T Omega_bar^2) * exp(-1/2 sum_i S_VV^(i,i) chi_i^2 T).
std::complex<double> char_function_xy(const ShortTimeParams& p, double chi1, double chi2);

/// Pointwise joint density, the Fourier transform of char_function_xy:
///   [4g + T((Ox - 4 O2/t_a2)^2 + (Oy + 4 O1/t_a1)^2 - 4/(T t_a2) - 4/(T t_a1))]
///     / (4g + T Obar^2) * P_G(O1, O2).
double joint_dist_xy(const ShortTimeParams& p, double o1, double o2);

/// (mean O_1, mean O_2) = (2 Omega_y, -2 Omega_x) / (4 gamma + T Omega_bar^2).
std::pair<double, double> average_outputs(const ShortTimeParams& p);

/// Product Gaussian reference P_G with sigma_i^2 = t_ai / (4 T).
double gaussian_reference(const ShortTimeParams& p, double o1, double o2);

/// joint_dist_xy with the S_VV^(1,2) output-correlation shift terms.
double joint_dist_output_corr(const ShortTimeParams& p, double o1, double o2);

/// joint_dist_xy with input-output cross noises S_QV; positivity of this form
/// is governed by appendix conditions 2.1 (plain) / 2.2 (swapped).
double joint_dist_cross_qv(const ShortTimeParams& p, double o1, double o2);

/// Per-detector ideality for identical independent detectors, K = gamma t_a/2
/// (gamma being the total rate); the distribution is nonnegative iff K >= 1.
struct PositivityResult {
    double K = 0.0;
    bool pass = false;
};

PositivityResult positivity_threshold(const ShortTimeParams& p);

} // namespace cwlm
