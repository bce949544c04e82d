#include "cwlm/shorttime.hpp"

#include <cmath>
#include <numbers>

#include "cwlm/errors.hpp"

namespace cwlm {

namespace {

double sq(double x) { return x * x; }

/// The prep/post swap (Z- -> Z+) is a pi rotation about x: it flips Omega_y,
/// O_2/chi_2, and every correlator with a single detector-2 operator factor.
ShortTimeParams oriented(const ShortTimeParams& p) {
    if (!p.swapped) return p;
    ShortTimeParams q = p;
    q.swapped = false;
    q.omega_y = -p.omega_y;
    q.s_vv_12 = -p.s_vv_12;
    q.s_qv[0][1] = -p.s_qv[0][1];
    q.s_qv[1][0] = -p.s_qv[1][0];
    return q;
}

} // namespace

double ShortTimeParams::s_vv(int i) const {
    return i == 0 ? a1 * a1 * t_a1 / 4.0 : a2 * a2 * t_a2 / 4.0;
}

double ShortTimeParams::sigma2(int i) const { return (i == 0 ? t_a1 : t_a2) / (4.0 * T); }

void ShortTimeParams::validate() const {
    if (T <= 0.0) throw ConfigError("short-time params require T > 0");
    if (gamma <= 0.0) throw ConfigError("short-time params require gamma > 0");
    if (t_a1 <= 0.0 || t_a2 <= 0.0) throw ConfigError("short-time params require t_a > 0");
}

ShortTimeParams short_time_params_from(const ScenarioConfig& cfg, double T) {
    if (cfg.kind != EquationKind::Ideal)
        throw ConfigError("closed forms describe the ideal master equation only");
    if (cfg.axes[0] != Axis::X || cfg.axes[1] != Axis::Y)
        throw ConfigError("closed forms assume sigma_x, sigma_y detector axes");
    const DerivedDetectorQuantities d = cfg.derived();
    ShortTimeParams p;
    p.omega_x = cfg.hamiltonian.omega_x;
    p.omega_y = cfg.hamiltonian.omega_y;
    p.gamma = d.gamma;
    p.t_a1 = d.t_a[0];
    p.t_a2 = d.t_a[1];
    p.a1 = cfg.correlators.a_vq[0][0];
    p.a2 = cfg.correlators.a_vq[1][1];
    p.s_vv_12 = cfg.correlators.s_vv[0][1];
    p.s_qv = cfg.correlators.s_qv;
    p.T = T;
    return p;
}

std::complex<double> char_function_xy(const ShortTimeParams& params, double chi1, double chi2) {
    const ShortTimeParams p = oriented(params);
    p.validate();
    const double x2 = params.swapped ? -chi2 : chi2;
    const std::complex<double> i{0.0, 1.0};
    const std::complex<double> term_x = p.omega_x - i * p.a2 * x2;
    const std::complex<double> term_y = i * p.omega_y - p.a1 * chi1;
    const std::complex<double> num = 4.0 * p.gamma + p.T * (term_x * term_x - term_y * term_y);
    const double den = 4.0 * p.gamma + p.T * p.omega_bar_sq();
    const double damping =
        std::exp(-0.5 * p.T * (p.s_vv(0) * chi1 * chi1 + p.s_vv(1) * chi2 * chi2));
    return num / den * damping;
}

double gaussian_reference(const ShortTimeParams& p, double o1, double o2) {
    p.validate();
    const double s1 = p.sigma2(0);
    const double s2 = p.sigma2(1);
    return std::exp(-0.5 * (o1 * o1 / s1 + o2 * o2 / s2)) /
           (2.0 * std::numbers::pi * std::sqrt(s1 * s2));
}

double joint_dist_xy(const ShortTimeParams& params, double o1, double o2) {
    const ShortTimeParams p = oriented(params);
    p.validate();
    const double y2 = params.swapped ? -o2 : o2;
    const double bracket = 4.0 * p.gamma +
                           p.T * (sq(p.omega_x - 4.0 * y2 / p.t_a2) +
                                  sq(p.omega_y + 4.0 * o1 / p.t_a1) -
                                  4.0 / (p.T * p.t_a2) - 4.0 / (p.T * p.t_a1));
    return bracket / (4.0 * p.gamma + p.T * p.omega_bar_sq()) * gaussian_reference(p, o1, y2);
}

std::pair<double, double> average_outputs(const ShortTimeParams& params) {
    const ShortTimeParams p = oriented(params);
    p.validate();
    const double den = 4.0 * p.gamma + p.T * p.omega_bar_sq();
    const double m1 = 2.0 * p.omega_y / den;
    const double m2 = -2.0 * p.omega_x / den;
    if (params.swapped) return {m1, -m2};
    return {m1, m2};
}

double joint_dist_output_corr(const ShortTimeParams& params, double o1, double o2) {
    const ShortTimeParams p = oriented(params);
    p.validate();
    const double y2 = params.swapped ? -o2 : o2;
    const double shift = 2.0 * p.s_vv_12 / (p.a1 * p.a2);
    const double bracket = 4.0 * p.gamma +
                           p.T * (sq(p.omega_x - 4.0 * y2 / p.t_a2 - shift * o1) +
                                  sq(p.omega_y + 4.0 * o1 / p.t_a1 + shift * y2) -
                                  4.0 / (p.T * p.t_a2) - 4.0 / (p.T * p.t_a1));
    return bracket / (4.0 * p.gamma + p.T * p.omega_bar_sq()) * gaussian_reference(p, o1, y2);
}

double joint_dist_cross_qv(const ShortTimeParams& params, double o1, double o2) {
    const ShortTimeParams p = oriented(params);
    p.validate();
    const double y2 = params.swapped ? -o2 : o2;
    const double u1 = o1 / (p.T * p.sigma2(0));
    const double u2 = y2 / (p.T * p.sigma2(1));
    const double r11 = 2.0 * p.s_qv[0][0] / p.a1;
    const double r22 = 2.0 * p.s_qv[1][1] / p.a2;
    const double r12 = 2.0 * p.s_qv[0][1] / p.a2;
    const double r21 = 2.0 * p.s_qv[1][0] / p.a1;
    const double bracket =
        4.0 * p.gamma +
        p.T * (sq(p.omega_x + (r12 - 1.0) * u2 + r11 * u1) +
               sq(p.omega_y + (1.0 + r21) * u1 + r22 * u2) -
               sq(1.0 - r12) / (p.T * p.T * p.sigma2(1)) - sq(r11) / (p.T * p.T * p.sigma2(0)) -
               sq(1.0 + r21) / (p.T * p.T * p.sigma2(0)) - sq(r22) / (p.T * p.T * p.sigma2(1)));
    return bracket / (4.0 * p.gamma + p.T * p.omega_bar_sq()) * gaussian_reference(p, o1, y2);
}

PositivityResult positivity_threshold(const ShortTimeParams& p) {
    p.validate();
    if (std::abs(p.t_a1 - p.t_a2) > 1e-9 * std::max(p.t_a1, p.t_a2))
        throw ConfigError("positivity threshold assumes identical detectors");
    PositivityResult r;
    r.K = 0.5 * p.gamma * p.t_a1;
    r.pass = r.K >= 1.0 - 1e-12;
    return r;
}

} // namespace cwlm
