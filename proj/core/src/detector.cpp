#include "cwlm/detector.hpp"

#include <cmath>
#include <sstream>

#include "cwlm/errors.hpp"

namespace cwlm {

namespace {

constexpr double kSlackTol = 1e-12;

double sq(double x) { return x * x; }

void require_active(const DetectorCorrelators& c, int i) {
    if (c.a_vq[i][i] == 0.0) {
        std::ostringstream os;
        os << "detector " << i + 1 << ": a_vq = 0, acquisition time undefined";
        throw ConfigError(os.str());
    }
}

void require_output_noise(const DetectorCorrelators& c, int i) {
    if (c.s_vv[i][i] <= 0.0) {
        std::ostringstream os;
        os << "invalid configuration: detector " << i + 1 << " has s_vv <= 0";
        throw ConfigError(os.str());
    }
}

} // namespace

void DetectorCorrelators::validate() const {
    for (int i = 0; i < 2; ++i) {
        if (s_qq[i][i] < 0.0 || s_vv[i][i] < 0.0)
            throw ConfigError("diagonal noise spectral densities must be nonnegative");
    }
    if (s_qq[0][1] != s_qq[1][0] || s_vv[0][1] != s_vv[1][0])
        throw ConfigError("s_qq and s_vv must be symmetric matrices");
}

DetectorCorrelators DetectorCorrelators::identical_independent(double s_qq_ii, double s_vv_ii,
                                                               double a_vq_ii) {
    DetectorCorrelators c;
    for (int i = 0; i < 2; ++i) {
        c.s_qq[i][i] = s_qq_ii;
        c.s_vv[i][i] = s_vv_ii;
        c.a_vq[i][i] = a_vq_ii;
    }
    return c;
}

double DerivedDetectorQuantities::sigma2(int i, double T) const {
    if (T <= 0.0) throw ConfigError("sigma^2 requires T > 0");
    return t_a[static_cast<std::size_t>(i)] / (4.0 * T);
}

DerivedDetectorQuantities derived_quantities(const DetectorCorrelators& c) {
    c.validate();
    DerivedDetectorQuantities d;
    for (int i = 0; i < 2; ++i) {
        require_active(c, i);
        d.gamma_i[i] = c.s_qq[i][i];
        d.t_a[i] = 4.0 * c.s_vv[i][i] / sq(c.a_vq[i][i]);
        d.k[i] = d.gamma_i[i] * d.t_a[i];
    }
    d.gamma = d.gamma_i[0] + d.gamma_i[1];
    return d;
}

bool inequality_holds(double lhs, double rhs) {
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return (lhs - rhs) / scale >= -kSlackTol;
}

double delta_z(std::complex<double> z) {
    return 0.5 * (std::abs(1.0 + z * z) - (1.0 + std::norm(z)));
}

PairwiseCsReport check_pairwise_cs(const DetectorCorrelators& c, int i, int j) {
    if (i < 0 || i > 1 || j < 0 || j > 1) throw ConfigError("detector index out of range");
    PairwiseCsReport rep;
    const double diff = c.a_vq[j][i] - c.a_qv[i][j];
    rep.check.lhs = c.s_qq[i][i] * c.s_vv[j][j] - sq(c.s_qv[i][j]);
    rep.check.rhs = 0.25 * sq(diff);
    rep.rhs_weak = 0.25 * sq(c.a_vq[j][i]);
    if (diff != 0.0) {
        const std::complex<double> z = c.s_qv[i][j] / (0.5 * diff);
        rep.rhs_delta = rep.check.rhs * (1.0 + delta_z(z));
    } else {
        rep.rhs_delta = 0.0;
    }
    std::ostringstream os;
    os << "cauchy_schwarz_" << i + 1 << "_" << j + 1;
    rep.check.name = os.str();
    rep.check.pass = inequality_holds(rep.check.lhs, rep.check.rhs);
    return rep;
}

InequalityReport check_two_detector(const DetectorCorrelators& c) {
    for (int i = 0; i < 2; ++i) require_output_noise(c, i);
    const double d1 = c.a_vq[0][0] - c.a_qv[0][0];
    const double d2 = c.a_vq[1][1] - c.a_qv[1][1];
    double rhs = 0.25 * sq(d1) / c.s_vv[0][0] + sq(c.s_qv[0][0]) / c.s_vv[0][0];
    rhs += 0.25 * sq(d2) / c.s_vv[1][1] + sq(c.s_qv[1][1]) / c.s_vv[1][1];
    rhs += std::abs(d1 * c.s_qv[1][0] / c.s_vv[0][0] - d2 * c.s_qv[0][1] / c.s_vv[1][1]);
    rhs += sq(c.s_qv[1][0]) / c.s_vv[0][0] + sq(c.s_qv[0][1]) / c.s_vv[1][1];

    InequalityReport rep;
    rep.name = "two_detector";
    rep.lhs = c.s_qq[0][0] + c.s_qq[1][1];
    rep.rhs = rhs;
    rep.pass = inequality_holds(rep.lhs, rep.rhs);
    return rep;
}

AppendixReport check_appendix_conditions(const DetectorCorrelators& c) {
    for (int i = 0; i < 2; ++i) require_output_noise(c, i);
    const double lhs = c.s_qq[0][0] + c.s_qq[1][1];
    const double a1 = c.a_vq[0][0];
    const double a2 = c.a_vq[1][1];

    AppendixReport rep;
    rep.cond1.name = "appendix_cond1";
    rep.cond1.lhs = lhs;
    rep.cond1.rhs = 0.25 * (sq(a1) / c.s_vv[0][0] + sq(a2) / c.s_vv[1][1]);
    rep.cond1.pass = inequality_holds(rep.cond1.lhs, rep.cond1.rhs);

    // Orientation prep Z+ / post Z-.
    rep.cond2_1.name = "appendix_cond2_1";
    rep.cond2_1.lhs = lhs;
    rep.cond2_1.rhs = 0.25 * ((sq(a2 - 2.0 * c.s_qv[0][1]) + sq(2.0 * c.s_qv[1][1])) / c.s_vv[1][1] +
                              (sq(a1 + 2.0 * c.s_qv[1][0]) + sq(2.0 * c.s_qv[0][0])) / c.s_vv[0][0]);
    rep.cond2_1.pass = inequality_holds(rep.cond2_1.lhs, rep.cond2_1.rhs);

    // Swapped orientation prep Z- / post Z+.
    rep.cond2_2.name = "appendix_cond2_2";
    rep.cond2_2.lhs = lhs;
    rep.cond2_2.rhs = 0.25 * ((sq(a2 + 2.0 * c.s_qv[0][1]) + sq(2.0 * c.s_qv[1][1])) / c.s_vv[1][1] +
                              (sq(a1 - 2.0 * c.s_qv[1][0]) + sq(2.0 * c.s_qv[0][0])) / c.s_vv[0][0]);
    rep.cond2_2.pass = inequality_holds(rep.cond2_2.lhs, rep.cond2_2.rhs);

    rep.pass = rep.cond1.pass && rep.cond2_1.pass && rep.cond2_2.pass;
    return rep;
}

ValidityReport validate_correlators(const DetectorCorrelators& c) {
    c.validate();
    ValidityReport rep;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            rep.rows.push_back(check_pairwise_cs(c, i, j).check);
    rep.rows.push_back(check_two_detector(c));
    const AppendixReport app = check_appendix_conditions(c);
    rep.rows.push_back(app.cond1);
    rep.rows.push_back(app.cond2_1);
    rep.rows.push_back(app.cond2_2);
    rep.pass = true;
    for (const auto& row : rep.rows) rep.pass = rep.pass && row.pass;
    return rep;
}

} // namespace cwlm
