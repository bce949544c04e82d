#include "cwlm/shifts.hpp"

#include <cmath>
#include <numbers>

#include "cwlm/errors.hpp"
#include "cwlm/fourier.hpp"
#include "cwlm/parallel.hpp"

namespace cwlm {

namespace {

const Complex kI{0.0, 1.0};

Matrix2c u_matrix(double chi_x, double chi_y, double chi_z) {
    const double chi = std::sqrt(chi_x * chi_x + chi_y * chi_y + chi_z * chi_z);
    if (chi == 0.0) return Matrix2c::Identity();
    const Matrix2c ns = (chi_x * pauli_x() + chi_y * pauli_y() + chi_z * pauli_z()) / chi;
    return std::cos(0.5 * chi) * Matrix2c::Identity() + kI * std::sin(0.5 * chi) * ns;
}

double damping(RegKernel kernel, double xi, double chi_sq) {
    if (kernel == RegKernel::Gaussian) return std::exp(-0.5 * xi * xi * chi_sq);
    return std::exp(-xi * std::sqrt(chi_sq));
}

} // namespace

void PolarizationPair::validate() const {
    if (p_i.norm() > 1.0 + kStateTol || p_f.norm() > 1.0 + kStateTol)
        throw ConfigError("polarization vectors must satisfy |P| <= 1");
    if (overlap() <= 1e-12)
        throw ZeroOverlapError("1 + (P_i, P_f) vanishes: shift statistics undefined");
}

namespace {

struct ShiftCharEvaluator {
    Matrix2c rho_i;
    Matrix2c rho_f;
    double inv_den;

    explicit ShiftCharEvaluator(const PolarizationPair& pp)
        : rho_i(bloch_to_density(pp.p_i).matrix()),
          rho_f(bloch_to_density(pp.p_f).matrix()),
          inv_den(2.0 / pp.overlap()) {}

    Complex operator()(double chi_x, double chi_y, double chi_z) const {
        const Matrix2c u = u_matrix(chi_x, chi_y, chi_z);
        return (rho_f * u * rho_i * u).trace() * inv_den;
    }
};

} // namespace

std::complex<double> shift_char_exact(const PolarizationPair& pp, double chi_x, double chi_y,
                                      double chi_z) {
    pp.validate();
    return ShiftCharEvaluator(pp)(chi_x, chi_y, chi_z);
}

BlochVector shift_mean(const PolarizationPair& pp) {
    pp.validate();
    const double inv = 1.0 / pp.overlap();
    return {(pp.p_i.x + pp.p_f.x) * inv, (pp.p_i.y + pp.p_f.y) * inv,
            (pp.p_i.z + pp.p_f.z) * inv};
}

ShiftWeights shift_weights_1d(const PolarizationPair& pp, Axis axis) {
    const auto along = [&](double chi) {
        switch (axis) {
            case Axis::X: return shift_char_exact(pp, chi, 0.0, 0.0);
            case Axis::Y: return shift_char_exact(pp, 0.0, chi, 0.0);
            case Axis::Z: return shift_char_exact(pp, 0.0, 0.0, chi);
        }
        return Complex{};
    };
    // C(chi) = A + B e^{i chi} + D e^{-i chi} exactly; solve from three points.
    const Complex c0 = along(0.0);
    const Complex ch = along(0.5 * std::numbers::pi);
    const Complex cp = along(std::numbers::pi);
    const Complex a = 0.5 * (c0 + cp);
    const Complex s1 = 0.5 * (c0 - cp);            // B + D
    const Complex s2 = (ch - a) / kI;              // B - D
    ShiftWeights w;
    w.w_zero = a.real();
    w.w_plus = 0.5 * (s1 + s2).real();
    w.w_minus = 0.5 * (s1 - s2).real();
    return w;
}

void ShiftGridSpec::validate() const {
    if (n < 4 || n % 2 != 0) throw GridError("shift grid size must be even and >= 4");
    if (s_max <= 0.0) throw GridError("shift grid range must be positive");
}

double ShiftMeasure::mass() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * grid.ds() * grid.ds();
}

std::pair<double, double> ShiftMeasure::mean() const {
    const double w = grid.ds() * grid.ds();
    double mx = 0.0;
    double my = 0.0;
    for (int kx = 0; kx < grid.n; ++kx)
        for (int ky = 0; ky < grid.n; ++ky) {
            const double v = at(kx, ky) * w;
            mx += v * s(kx);
            my += v * s(ky);
        }
    return {mx, my};
}

ShiftMeasure shift_quasi_2d(const PolarizationPair& pp, const ShiftGridSpec& grid, double xi,
                            RegKernel kernel) {
    pp.validate();
    grid.validate();
    if (xi <= 0.0) throw ConfigError("regularization scale xi must be positive");

    const int n = grid.n;
    const CenteredAxis chi_axis{n, 2.0 * std::numbers::pi / (n * grid.ds())};
    const ShiftCharEvaluator eval(pp);
    std::vector<Complex> c(static_cast<std::size_t>(n) * n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t begin, std::size_t end) {
        for (std::size_t kx = begin; kx < end; ++kx) {
            const double chi_x = chi_axis.chi(static_cast<int>(kx));
            for (int ky = 0; ky < n; ++ky) {
                const double chi_y = chi_axis.chi(ky);
                c[kx * static_cast<std::size_t>(n) + ky] =
                    eval(chi_x, chi_y, 0.0) * damping(kernel, xi, chi_x * chi_x + chi_y * chi_y);
            }
        }
    });

    const std::vector<Complex> p = centered_inverse_2d(c, chi_axis, chi_axis);
    ShiftMeasure sm;
    sm.grid = grid;
    sm.xi = xi;
    sm.kernel = kernel;
    sm.values.resize(p.size());
    for (std::size_t t = 0; t < p.size(); ++t) sm.values[t] = p[t].real();
    return sm;
}

std::vector<double> shift_marginal_1d(const PolarizationPair& pp, Axis axis,
                                      const ShiftGridSpec& spec, double xi, RegKernel kernel) {
    pp.validate();
    spec.validate();
    if (xi <= 0.0) throw ConfigError("regularization scale xi must be positive");
    const int n = spec.n;
    const CenteredAxis chi_axis{n, 2.0 * std::numbers::pi / (n * spec.ds())};
    const auto along = [&](double chi) {
        switch (axis) {
            case Axis::X: return shift_char_exact(pp, chi, 0.0, 0.0);
            case Axis::Y: return shift_char_exact(pp, 0.0, chi, 0.0);
            case Axis::Z: return shift_char_exact(pp, 0.0, 0.0, chi);
        }
        return Complex{};
    };
    std::vector<Complex> c(n);
    for (int k = 0; k < n; ++k) {
        const double chi = chi_axis.chi(k);
        c[k] = along(chi) * damping(kernel, xi, chi * chi);
    }
    const std::vector<Complex> p = centered_inverse_1d(c, chi_axis);
    std::vector<double> out(p.size());
    for (std::size_t t = 0; t < p.size(); ++t) out[t] = p[t].real();
    return out;
}

ShiftWeights bin_weights(const std::vector<double>& marginal, const ShiftGridSpec& spec) {
    spec.validate();
    if (static_cast<int>(marginal.size()) != spec.n)
        throw GridError("marginal length does not match the grid");
    ShiftWeights w;
    const double ds = spec.ds();
    for (int k = 0; k < spec.n; ++k) {
        const double s = (k - spec.n / 2) * ds;
        const double m = marginal[k] * ds;
        if (s < -0.5)
            w.w_minus += m;
        else if (s <= 0.5)
            w.w_zero += m;
        else
            w.w_plus += m;
    }
    return w;
}

ShiftConvolution convolve_with_gaussian(const ShiftMeasure& sm, double sigma1, double sigma2) {
    if (sigma1 <= 0.0 || sigma2 <= 0.0) throw ConfigError("convolution requires sigma > 0");
    if (sigma1 < 4.0 * sm.xi || sigma2 < 4.0 * sm.xi)
        throw ConfigError("convolution requires sigma well above the regularization scale");
    const int n = sm.grid.n;
    const double ds = sm.grid.ds();
    std::vector<double> g(static_cast<std::size_t>(n) * n);
    const double norm = 1.0 / (2.0 * std::numbers::pi * sigma1 * sigma2);
    for (int kx = 0; kx < n; ++kx) {
        const double sx = sm.s(kx);
        for (int ky = 0; ky < n; ++ky) {
            const double sy = sm.s(ky);
            g[static_cast<std::size_t>(kx) * n + ky] =
                norm * std::exp(-0.5 * (sx * sx / (sigma1 * sigma1) + sy * sy / (sigma2 * sigma2)));
        }
    }
    ShiftConvolution out;
    out.grid = sm.grid;
    out.values = convolve_same_grid(sm.values, g, n, n, ds, ds);
    return out;
}

double weights_convolved_with_gaussian(const ShiftWeights& w, double sigma, double s) {
    if (sigma <= 0.0) throw ConfigError("sigma must be positive");
    const auto g = [&](double x) {
        return std::exp(-0.5 * x * x / (sigma * sigma)) /
               (sigma * std::sqrt(2.0 * std::numbers::pi));
    };
    return w.w_minus * g(s + 1.0) + w.w_zero * g(s) + w.w_plus * g(s - 1.0);
}

} // namespace cwlm
