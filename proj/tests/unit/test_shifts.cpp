#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "../support/oracles.hpp"
#include "cwlm/errors.hpp"
#include "cwlm/shifts.hpp"

using namespace cwlm;

namespace {

BlochVector random_polarization(std::mt19937& rng, double max_len = 0.95) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    BlochVector p{u(rng), u(rng), u(rng)};
    const double r = p.norm();
    if (r > max_len) p = {p.x * max_len / r, p.y * max_len / r, p.z * max_len / r};
    return p;
}

} // namespace

TEST_CASE("shift generating function basics") {
    const PolarizationPair zz{{0, 0, 1}, {0, 0, 1}};
    CHECK(std::abs(shift_char_exact(zz, 0, 0, 0) - 1.0) < 1e-15);

    SUBCASE("z/z pair along x gives (1 + cos chi)/2") {
        for (double chi : {-2.0, -0.4, 0.3, 1.0, 2.9}) {
            const auto c = shift_char_exact(zz, chi, 0, 0);
            CHECK(std::abs(c - 0.5 * (1.0 + std::cos(chi))) < 1e-14);
        }
    }
    SUBCASE("x/x pair along x gives e^{i chi}") {
        const PolarizationPair xx{{1, 0, 0}, {1, 0, 0}};
        for (double chi : {-1.7, 0.6, 2.2}) {
            const auto c = shift_char_exact(xx, chi, 0, 0);
            CHECK(std::abs(c - std::exp(std::complex<double>(0.0, chi))) < 1e-14);
        }
    }
    SUBCASE("zero overlap is rejected") {
        const PolarizationPair bad{{0, 0, 1}, {0, 0, -1}};
        CHECK_THROWS_AS(shift_char_exact(bad, 0.1, 0, 0), ZeroOverlapError);
    }
}

TEST_CASE("trace formula matches the scalar/vector/tensor decomposition") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int trial = 0; trial < 300; ++trial) {
        const PolarizationPair pp{random_polarization(rng), random_polarization(rng)};
        const double cx = u(rng), cy = u(rng), cz = u(rng);
        const auto a = shift_char_exact(pp, cx, cy, cz);
        const auto b = oracles::shift_char_decomposed(pp.p_i, pp.p_f, cx, cy, cz);
        CHECK(std::abs(a - b) < 1e-13);
    }
}

TEST_CASE("conjugate symmetry") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const PolarizationPair pp{random_polarization(rng), random_polarization(rng)};
        const double cx = u(rng), cy = u(rng), cz = u(rng);
        const auto plus = shift_char_exact(pp, cx, cy, cz);
        const auto minus = shift_char_exact(pp, -cx, -cy, -cz);
        CHECK(std::abs(minus - std::conj(plus)) < 1e-14);
    }
}

TEST_CASE("single-axis characteristic function is a degree-1 trigonometric polynomial") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-8.0, 8.0);
    for (int trial = 0; trial < 50; ++trial) {
        const PolarizationPair pp{random_polarization(rng), random_polarization(rng)};
        for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
            const ShiftWeights w = shift_weights_1d(pp, axis);
            for (int k = 0; k < 5; ++k) {
                const double chi = u(rng);
                const auto along = [&](double c) {
                    const double x = axis == Axis::X ? c : 0.0;
                    const double y = axis == Axis::Y ? c : 0.0;
                    const double z = axis == Axis::Z ? c : 0.0;
                    return shift_char_exact(pp, x, y, z);
                };
                const std::complex<double> fit =
                    w.w_zero + w.w_plus * std::exp(std::complex<double>(0.0, chi)) +
                    w.w_minus * std::exp(std::complex<double>(0.0, -chi));
                CHECK(std::abs(along(chi) - fit) < 1e-12);
            }
        }
    }
}

TEST_CASE("exact 1D delta weights") {
    SUBCASE("conditioned pairs") {
        const ShiftWeights zz = shift_weights_1d({{0, 0, 1}, {0, 0, 1}}, Axis::X);
        CHECK(std::abs(zz.w_minus - 0.25) < 1e-12);
        CHECK(std::abs(zz.w_zero - 0.5) < 1e-12);
        CHECK(std::abs(zz.w_plus - 0.25) < 1e-12);

        const ShiftWeights xx = shift_weights_1d({{1, 0, 0}, {1, 0, 0}}, Axis::X);
        CHECK(std::abs(xx.w_minus) < 1e-12);
        CHECK(std::abs(xx.w_zero) < 1e-12);
        CHECK(std::abs(xx.w_plus - 1.0) < 1e-12);
    }
    SUBCASE("unconditioned limit has no half-quantized weight") {
        const ShiftWeights z0 = shift_weights_1d({{0, 0, 1}, {0, 0, 0}}, Axis::X);
        CHECK(std::abs(z0.w_minus - 0.5) < 1e-12);
        CHECK(std::abs(z0.w_zero) < 1e-12);
        CHECK(std::abs(z0.w_plus - 0.5) < 1e-12);

        const ShiftWeights x0 = shift_weights_1d({{1, 0, 0}, {0, 0, 0}}, Axis::X);
        CHECK(std::abs(x0.w_plus - 1.0) < 1e-12);
        CHECK(std::abs(x0.w_zero) < 1e-12);
        CHECK(std::abs(x0.w_minus) < 1e-12);
    }
    SUBCASE("closed-form weights and unit sum for random pairs") {
        std::mt19937 rng(11);
        for (int trial = 0; trial < 200; ++trial) {
            const PolarizationPair pp{random_polarization(rng), random_polarization(rng)};
            for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
                const ShiftWeights w = shift_weights_1d(pp, axis);
                double wm, w0, wp;
                oracles::shift_weights_closed_form(pp.p_i, pp.p_f, axis, wm, w0, wp);
                CHECK(std::abs(w.w_minus - wm) < 1e-13);
                CHECK(std::abs(w.w_zero - w0) < 1e-13);
                CHECK(std::abs(w.w_plus - wp) < 1e-13);
                CHECK(std::abs(w.w_minus + w.w_zero + w.w_plus - 1.0) < 1e-12);
            }
        }
    }
    SUBCASE("mean shift is the weak-value expression") {
        std::mt19937 rng(13);
        for (int trial = 0; trial < 100; ++trial) {
            const PolarizationPair pp{random_polarization(rng), random_polarization(rng)};
            const ShiftWeights w = shift_weights_1d(pp, Axis::X);
            const double mean = w.w_plus - w.w_minus;
            CHECK(mean == doctest::Approx(shift_mean(pp).x).epsilon(1e-10));
        }
    }
}

TEST_CASE("regularized 2D quasi-distribution") {
    const PolarizationPair zz{{0, 0, 1}, {0, 0, 1}};

    SUBCASE("unit mass and ring trough") {
        const ShiftGridSpec grid{2048, 2.0};
        const ShiftMeasure sm = shift_quasi_2d(zz, grid, 0.02);
        CHECK(std::abs(sm.mass() - 1.0) < 1e-9);

        // Radial profile along +x: negative trough just inside the ring.
        double min_val = 1e300, min_at = 0.0;
        for (int k = grid.n / 2; k < grid.n; ++k) {
            const double s = sm.s(k);
            if (s < 0.5 || s > 0.97) continue;
            const double v = sm.at(k, grid.n / 2);
            if (v < min_val) {
                min_val = v;
                min_at = s;
            }
        }
        CHECK(min_val < 0.0);
        CHECK(min_at > 0.85);
    }
    SUBCASE("grid moments match the weak-value mean") {
        std::mt19937 rng(17);
        for (int trial = 0; trial < 3; ++trial) {
            const PolarizationPair pp{random_polarization(rng, 0.8), random_polarization(rng, 0.8)};
            const ShiftGridSpec grid{2048, 1.5};
            const ShiftMeasure sm = shift_quasi_2d(pp, grid, 5e-3);
            const auto [mx, my] = sm.mean();
            const BlochVector mean = shift_mean(pp);
            CHECK(std::abs(mx - mean.x) < 1e-3);
            CHECK(std::abs(my - mean.y) < 1e-3);
        }
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(shift_quasi_2d(zz, ShiftGridSpec{128, 2.0}, -1.0), ConfigError);
        CHECK_THROWS_AS(shift_quasi_2d(zz, ShiftGridSpec{7, 2.0}, 0.1), GridError);
    }
}

TEST_CASE("1D marginal of the regularized measure converges to the exact weights") {
    const PolarizationPair zz{{0, 0, 1}, {0, 0, 1}};
    const ShiftGridSpec spec{65536, 2.0};
    const ShiftWeights exact = shift_weights_1d(zz, Axis::X);

    const auto l1_distance = [&](double xi, RegKernel kernel) {
        const auto marginal = shift_marginal_1d(zz, Axis::X, spec, xi, kernel);
        const ShiftWeights w = bin_weights(marginal, spec);
        return std::abs(w.w_minus - exact.w_minus) + std::abs(w.w_zero - exact.w_zero) +
               std::abs(w.w_plus - exact.w_plus);
    };
    // The Gaussian regularizer confines each smeared delta to its bin at both
    // scales; the heavy-tailed Lorentzian shows the O(xi) edge leakage that
    // shrinks as the regularization is lifted.
    CHECK(l1_distance(1e-3, RegKernel::Gaussian) < 0.05);
    const double coarse = l1_distance(1e-2, RegKernel::Lorentzian);
    const double fine = l1_distance(1e-3, RegKernel::Lorentzian);
    CHECK(fine < 0.05);
    CHECK(fine < coarse);
}

TEST_CASE("lorentzian regularizer reproduces weighted Lorentzians in 1D") {
    const PolarizationPair zz{{0, 0, 1}, {0, 0, 1}};
    const ShiftGridSpec spec{32768, 4.0};
    const double xi = 0.02;
    const auto marginal = shift_marginal_1d(zz, Axis::X, spec, xi, RegKernel::Lorentzian);
    const ShiftWeights w = shift_weights_1d(zz, Axis::X);
    const auto lorentzian = [&](double s) {
        const auto peak = [&](double c) {
            return xi / (std::numbers::pi * ((s - c) * (s - c) + xi * xi));
        };
        return w.w_minus * peak(-1.0) + w.w_zero * peak(0.0) + w.w_plus * peak(1.0);
    };
    for (int k = 0; k < spec.n; k += 1024) {
        const double s = (k - spec.n / 2) * spec.ds();
        CHECK(std::abs(marginal[k] - lorentzian(s)) < 2e-2);
    }
}

TEST_CASE("convolution with a Gaussian") {
    SUBCASE("a point measure returns the Gaussian itself") {
        ShiftMeasure sm;
        sm.grid = {256, 8.0};
        sm.xi = 1e-3;
        sm.values.assign(static_cast<std::size_t>(256) * 256, 0.0);
        const double ds = sm.grid.ds();
        sm.values[static_cast<std::size_t>(128) * 256 + 128] = 1.0 / (ds * ds);
        const ShiftConvolution conv = convolve_with_gaussian(sm, 1.3, 0.9);
        double sup = 0.0;
        for (int i = 0; i < 256; ++i)
            for (int j = 0; j < 256; ++j) {
                const double sx = sm.s(i), sy = sm.s(j);
                const double expected =
                    std::exp(-0.5 * (sx * sx / (1.3 * 1.3) + sy * sy / (0.9 * 0.9))) /
                    (2.0 * std::numbers::pi * 1.3 * 0.9);
                sup = std::max(sup, std::abs(conv.at(i, j) - expected));
            }
        CHECK(sup < 1e-9);
    }
    SUBCASE("1D delta weights smeared by a narrow Gaussian show three peaks") {
        const ShiftWeights w{0.25, 0.5, 0.25};
        const double sigma = 0.22;
        const double p_m = weights_convolved_with_gaussian(w, sigma, -1.0);
        const double p_0 = weights_convolved_with_gaussian(w, sigma, 0.0);
        const double p_p = weights_convolved_with_gaussian(w, sigma, 1.0);
        const double v_half = weights_convolved_with_gaussian(w, sigma, 0.5);
        CHECK(p_0 > v_half);
        CHECK(p_p > v_half);
        CHECK(p_m > v_half);
        CHECK(p_0 == doctest::Approx(2.0 * p_p).epsilon(0.01));  // half-quantized dominates
    }
    SUBCASE("sigma below the regularization scale is rejected") {
        ShiftMeasure sm;
        sm.grid = {64, 2.0};
        sm.xi = 0.5;
        sm.values.assign(64 * 64, 0.0);
        CHECK_THROWS_AS(convolve_with_gaussian(sm, 0.6, 0.6), ConfigError);
    }
}
