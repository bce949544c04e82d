#include "cwlm/distribution.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "cwlm/errors.hpp"
#include "cwlm/parallel.hpp"

namespace cwlm {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double grid_sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

} // namespace

void ChiGrid::validate() const {
    if (!is_power_of_two(n1) || !is_power_of_two(n2) || n1 < 64 || n2 < 64)
        throw GridError("chi grid size must be a power of two >= 64");
    if (chi_max1 <= 0.0 || chi_max2 <= 0.0) throw GridError("chi_max must be positive");
}

ChiGrid auto_grid(const ScenarioConfig& cfg, double T, int n) {
    if (T <= 0.0) throw ConfigError("auto_grid requires T > 0");
    ChiGrid g;
    g.n1 = g.n2 = n;
    const double log_cut = 2.0 * std::log(1e12);
    const double s1 = cfg.correlators.s_vv[0][0];
    const double s2 = cfg.correlators.s_vv[1][1];
    if (s1 <= 0.0 || s2 <= 0.0) throw ConfigError("auto_grid requires positive output noise");
    g.chi_max1 = std::sqrt(log_cut / (s1 * T));
    g.chi_max2 = std::sqrt(log_cut / (s2 * T));
    g.validate();
    return g;
}

double JointDistribution::max_value() const {
    return *std::max_element(values.begin(), values.end());
}

double JointDistribution::min_value() const {
    return *std::min_element(values.begin(), values.end());
}

JointDistribution joint_distribution(const ScenarioConfig& cfg, const DensityMatrix& rho_i,
                                     const PostSelection& post, double T, const ChiGrid& grid) {
    if (T <= 0.0) throw ConfigError("joint_distribution requires T > 0");
    grid.validate();
    const LiouvillianTerms terms = liouvillian_terms(cfg);
    const Vector4c v0 = vectorize(rho_i.matrix());
    const bool conditioned = post.mode() != PostSelection::Mode::None;
    const Matrix2c rho_f = post.rho_f();

    const auto conditioned_trace = [&](const Vector4c& v) -> Complex {
        const Matrix2c rho = unvectorize(v);
        return conditioned ? (rho_f * rho).trace() : rho.trace();
    };

    const Vector4c v_ref = (terms.at(0.0, 0.0) * T).exp() * v0;
    const double den = conditioned_trace(v_ref).real();
    if (conditioned && den < 1e-12)
        throw ZeroPostSelectionError("post-selection probability below 1e-12");

    const CenteredAxis ax1 = grid.axis1();
    const CenteredAxis ax2 = grid.axis2();
    const int n1 = grid.n1;
    const int n2 = grid.n2;

    // C(chi) over the grid; embarrassingly parallel over chi_1 rows.
    std::vector<Complex> c(static_cast<std::size_t>(n1) * n2);
    std::atomic<bool> finite{true};
    parallel_for(static_cast<std::size_t>(n1), [&](std::size_t begin, std::size_t end) {
        for (std::size_t k1 = begin; k1 < end; ++k1) {
            const double chi1 = ax1.chi(static_cast<int>(k1));
            for (int k2 = 0; k2 < n2; ++k2) {
                const double chi2 = ax2.chi(k2);
                const Matrix4c e = (terms.at(chi1, chi2) * T).exp();
                const Complex num = conditioned_trace(e * v0);
                const Complex val = num / den;
                if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
                    finite.store(false, std::memory_order_relaxed);
                c[k1 * static_cast<std::size_t>(n2) + k2] = val;
            }
        }
    });
    if (!finite.load())
        throw NumericError("generating function produced non-finite values on the grid");

    const std::vector<Complex> p = centered_inverse_2d(c, ax1, ax2);

    const double a1 = cfg.correlators.a_vq[0][0];
    const double a2 = cfg.correlators.a_vq[1][1];
    if (a1 == 0.0 || a2 == 0.0) throw ConfigError("output normalization requires a_vq != 0");

    JointDistribution jd;
    jd.meta.scenario = cfg.name;
    jd.meta.kind = cfg.kind;
    jd.meta.T = T;
    {
        const BlochVector b = rho_i.bloch();
        jd.meta.prep = "(" + std::to_string(b.x) + "," + std::to_string(b.y) + "," +
                       std::to_string(b.z) + ")";
    }
    jd.meta.post = post.describe();
    jd.post_probability = conditioned ? den : 1.0;

    // Conjugate variable of chi_i is V_i T; normalized outputs O_i = V_i / a_i.
    jd.d_o1 = ax1.conjugate_spacing() / std::abs(a1 * T);
    jd.d_o2 = ax2.conjugate_spacing() / std::abs(a2 * T);
    jd.o1.resize(n1);
    jd.o2.resize(n2);
    for (int m = 0; m < n1; ++m) jd.o1[m] = ax1.conjugate(m) / (a1 * T);
    for (int m = 0; m < n2; ++m) jd.o2[m] = ax2.conjugate(m) / (a2 * T);

    const double jac = std::abs(a1 * a2) * T * T;
    jd.values.resize(p.size());
    double max_re = 0.0;
    double max_im = 0.0;
    for (std::size_t t = 0; t < p.size(); ++t) {
        max_re = std::max(max_re, std::abs(p[t].real()));
        max_im = std::max(max_im, std::abs(p[t].imag()));
    }
    jd.max_imag_residual = max_re > 0.0 ? max_im / max_re : 0.0;

    // A negative a_vq mirrors the output axis; store axes ascending.
    const bool flip1 = a1 < 0.0;
    const bool flip2 = a2 < 0.0;
    if (flip1) std::reverse(jd.o1.begin(), jd.o1.end());
    if (flip2) std::reverse(jd.o2.begin(), jd.o2.end());
    for (int m1 = 0; m1 < n1; ++m1) {
        const int s1 = flip1 ? n1 - 1 - m1 : m1;
        for (int m2 = 0; m2 < n2; ++m2) {
            const int s2 = flip2 ? n2 - 1 - m2 : m2;
            jd.values[static_cast<std::size_t>(m1) * n2 + m2] =
                p[static_cast<std::size_t>(s1) * n2 + s2].real() * jac;
        }
    }
    jd.mass = grid_sum(jd.values) * jd.d_o1 * jd.d_o2;
    return jd;
}

ConditionalSlice conditional_slice(const JointDistribution& jd, int cond_axis, double y) {
    if (cond_axis != 0 && cond_axis != 1) throw GridError("cond_axis must be 0 or 1");
    const std::vector<double>& cond = cond_axis == 0 ? jd.o1 : jd.o2;
    const std::vector<double>& free_axis = cond_axis == 0 ? jd.o2 : jd.o1;
    const double d_cond = cond_axis == 0 ? jd.d_o1 : jd.d_o2;
    const double d_free = cond_axis == 0 ? jd.d_o2 : jd.d_o1;
    if (y < cond.front() - 1e-12 || y > cond.back() + 1e-12)
        throw GridError("conditioning value outside the output grid");

    const double u = (y - cond.front()) / d_cond;
    int i0 = static_cast<int>(std::floor(u));
    i0 = std::clamp(i0, 0, static_cast<int>(cond.size()) - 2);
    const double t = std::clamp(u - i0, 0.0, 1.0);

    const int nf = static_cast<int>(free_axis.size());
    const int n2 = static_cast<int>(jd.o2.size());
    std::vector<double> row(nf);
    for (int k = 0; k < nf; ++k) {
        double lo, hi;
        if (cond_axis == 1) {
            lo = jd.values[static_cast<std::size_t>(k) * n2 + i0];
            hi = jd.values[static_cast<std::size_t>(k) * n2 + i0 + 1];
        } else {
            lo = jd.values[static_cast<std::size_t>(i0) * n2 + k];
            hi = jd.values[static_cast<std::size_t>(i0 + 1) * n2 + k];
        }
        row[k] = (1.0 - t) * lo + t * hi;
    }

    ConditionalSlice s;
    s.cond_axis = cond_axis;
    s.y = y;
    s.row_mass = grid_sum(row) * d_free;
    if (s.row_mass < 1e-12) throw DegenerateSliceError("conditioning row carries no mass");
    s.dist.o = free_axis;
    s.dist.d_o = d_free;
    s.dist.p.resize(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) s.dist.p[k] = row[k] / s.row_mass;
    return s;
}

Distribution1d marginal(const JointDistribution& jd, int axis) {
    if (axis != 0 && axis != 1) throw GridError("axis must be 0 or 1");
    Distribution1d m;
    const int n1 = static_cast<int>(jd.o1.size());
    const int n2 = static_cast<int>(jd.o2.size());
    if (axis == 0) {
        m.o = jd.o1;
        m.d_o = jd.d_o1;
        m.p.assign(jd.o1.size(), 0.0);
        for (int i = 0; i < n1; ++i) {
            double s = 0.0;
            for (int j = 0; j < n2; ++j) s += jd.values[static_cast<std::size_t>(i) * n2 + j];
            m.p[i] = s * jd.d_o2;
        }
    } else {
        m.o = jd.o2;
        m.d_o = jd.d_o2;
        m.p.assign(jd.o2.size(), 0.0);
        for (int j = 0; j < n2; ++j) {
            double s = 0.0;
            for (int i = 0; i < n1; ++i) s += jd.values[static_cast<std::size_t>(i) * n2 + j];
            m.p[j] = s * jd.d_o1;
        }
    }
    return m;
}

JointMoments moments(const JointDistribution& jd) {
    JointMoments mom;
    const int n1 = static_cast<int>(jd.o1.size());
    const int n2 = static_cast<int>(jd.o2.size());
    const double w = jd.d_o1 * jd.d_o2;
    double mass = 0.0;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            const double p = jd.values[static_cast<std::size_t>(i) * n2 + j] * w;
            mass += p;
            mom.mean[0] += p * jd.o1[i];
            mom.mean[1] += p * jd.o2[j];
        }
    mom.mean[0] /= mass;
    mom.mean[1] /= mass;
    std::array<double, 2> m3{};
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            const double p = jd.values[static_cast<std::size_t>(i) * n2 + j] * w / mass;
            const double d1 = jd.o1[i] - mom.mean[0];
            const double d2 = jd.o2[j] - mom.mean[1];
            mom.covariance[0][0] += p * d1 * d1;
            mom.covariance[0][1] += p * d1 * d2;
            mom.covariance[1][1] += p * d2 * d2;
            m3[0] += p * d1 * d1 * d1;
            m3[1] += p * d2 * d2 * d2;
        }
    mom.covariance[1][0] = mom.covariance[0][1];
    for (int a = 0; a < 2; ++a) {
        const double sigma = std::sqrt(mom.covariance[a][a]);
        mom.skewness[a] = sigma > 0.0 ? m3[a] / (sigma * sigma * sigma) : 0.0;
    }
    return mom;
}

Moments1d moments(const Distribution1d& d) {
    Moments1d m;
    double mass = 0.0;
    for (std::size_t k = 0; k < d.o.size(); ++k) {
        const double p = d.p[k] * d.d_o;
        mass += p;
        m.mean += p * d.o[k];
    }
    m.mean /= mass;
    double m3 = 0.0;
    for (std::size_t k = 0; k < d.o.size(); ++k) {
        const double p = d.p[k] * d.d_o / mass;
        const double dd = d.o[k] - m.mean;
        m.variance += p * dd * dd;
        m3 += p * dd * dd * dd;
    }
    const double sigma = std::sqrt(m.variance);
    m.skewness = sigma > 0.0 ? m3 / (sigma * sigma * sigma) : 0.0;
    return m;
}

namespace {

DifferenceGrid difference_impl(const std::vector<double>& plus, const std::vector<double>& minus) {
    DifferenceGrid out;
    double peak = 0.0;
    for (std::size_t t = 0; t < plus.size(); ++t)
        peak = std::max({peak, std::abs(plus[t]), std::abs(minus[t])});
    const double cutoff = 1e-12 * peak;
    out.difference.resize(plus.size());
    out.certainty.resize(plus.size());
    for (std::size_t t = 0; t < plus.size(); ++t) {
        out.difference[t] = plus[t] - minus[t];
        const double sum = plus[t] + minus[t];
        out.certainty[t] = sum < cutoff ? std::numeric_limits<double>::quiet_NaN()
                                        : out.difference[t] / sum;
    }
    return out;
}

void require_matching_axes(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw GridError("distribution grids do not match");
    for (std::size_t k = 0; k < a.size(); ++k)
        if (std::abs(a[k] - b[k]) > 1e-12) throw GridError("distribution grids do not match");
}

} // namespace

DifferenceGrid difference_and_certainty(const JointDistribution& plus,
                                        const JointDistribution& minus) {
    require_matching_axes(plus.o1, minus.o1);
    require_matching_axes(plus.o2, minus.o2);
    return difference_impl(plus.values, minus.values);
}

DifferenceGrid difference_and_certainty(const Distribution1d& plus, const Distribution1d& minus) {
    require_matching_axes(plus.o, minus.o);
    return difference_impl(plus.p, minus.p);
}

} // namespace cwlm
