#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "../support/oracles.hpp"
#include "cwlm/errors.hpp"
#include "cwlm/fourier.hpp"

using namespace cwlm;
using oracles::direct_centered_inverse_1d;
using oracles::direct_centered_inverse_2d;

TEST_CASE("1D Gaussian characteristic function round-trips to its density") {
    const int n = 512;
    const double sigma = 1.7;
    const double mu = 0.4;
    const double chi_max = std::sqrt(2.0 * std::log(1e12)) / sigma;
    const CenteredAxis axis{n, 2.0 * chi_max / n};
    std::vector<Complex> c(n);
    for (int k = 0; k < n; ++k) {
        const double chi = axis.chi(k);
        c[k] = std::exp(Complex(-0.5 * sigma * sigma * chi * chi, mu * chi));
    }
    const auto p = centered_inverse_1d(c, axis);
    double sup = 0.0;
    for (int m = 0; m < n; ++m) {
        const double x = axis.conjugate(m);
        const double expected = std::exp(-0.5 * (x - mu) * (x - mu) / (sigma * sigma)) /
                                (sigma * std::sqrt(2.0 * std::numbers::pi));
        sup = std::max(sup, std::abs(p[m].real() - expected));
        sup = std::max(sup, std::abs(p[m].imag()));
    }
    CHECK(sup < 1e-8);
}

TEST_CASE("centered index mapping matches the direct transform, n = 64") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    SUBCASE("1D") {
        const CenteredAxis axis{64, 0.21};
        std::vector<Complex> c(64);
        for (auto& v : c) v = Complex(u(rng), u(rng));
        const auto fast = centered_inverse_1d(c, axis);
        const auto slow = direct_centered_inverse_1d(c, axis.dchi);
        for (int m = 0; m < 64; ++m) CHECK(std::abs(fast[m] - slow[m]) < 1e-12);
    }
    SUBCASE("2D") {
        const CenteredAxis a1{64, 0.17};
        const CenteredAxis a2{64, 0.33};
        std::vector<Complex> c(64 * 64);
        for (auto& v : c) v = Complex(u(rng), u(rng));
        const auto fast = centered_inverse_2d(c, a1, a2);
        const auto slow = direct_centered_inverse_2d(c, 64, a1.dchi, a2.dchi);
        for (std::size_t t = 0; t < fast.size(); ++t) CHECK(std::abs(fast[t] - slow[t]) < 1e-11);
    }
}

TEST_CASE("discrete mass equals C(0) exactly") {
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const CenteredAxis a1{128, 0.4};
    const CenteredAxis a2{128, 0.25};
    std::vector<Complex> c(128 * 128);
    for (auto& v : c) v = Complex(u(rng), u(rng));
    const auto p = centered_inverse_2d(c, a1, a2);
    Complex mass = 0.0;
    for (const auto& v : p) mass += v;
    mass *= a1.conjugate_spacing() * a2.conjugate_spacing();
    CHECK(std::abs(mass - c[64 * 128 + 64]) < 1e-10);
}

TEST_CASE("constant C inverts to a discrete delta of unit mass") {
    const CenteredAxis axis{256, 0.1};
    std::vector<Complex> c(256, 1.0);
    const auto p = centered_inverse_1d(c, axis);
    const double dx = axis.conjugate_spacing();
    for (int m = 0; m < 256; ++m) {
        if (m == 128)
            CHECK(p[m].real() * dx == doctest::Approx(1.0));
        else
            CHECK(std::abs(p[m]) * dx < 1e-12);
    }
}

TEST_CASE("grid convolution of offset deltas") {
    // a = delta at (x0, y0), b = delta at (x1, y1): the convolution is a
    // delta at the sum, landing exactly on the grid.
    const int n = 32;
    const double dx = 0.5;
    std::vector<double> a(n * n, 0.0), b(n * n, 0.0);
    const int i0 = n / 2 + 2, j0 = n / 2 - 1;  // (1.0, -0.5)
    const int i1 = n / 2 - 3, j1 = n / 2 + 4;  // (-1.5, 2.0)
    a[i0 * n + j0] = 1.0 / (dx * dx);
    b[i1 * n + j1] = 1.0 / (dx * dx);
    const auto out = convolve_same_grid(a, b, n, n, dx, dx);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double expected =
                (i == n / 2 - 1 && j == n / 2 + 3) ? 1.0 / (dx * dx) : 0.0;
            CHECK(std::abs(out[i * n + j] - expected) < 1e-9);
        }
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(centered_inverse_1d(std::vector<Complex>(65, 0.0), CenteredAxis{65, 0.1}),
                    GridError);
    CHECK_THROWS_AS(centered_inverse_1d(std::vector<Complex>(4, 0.0), CenteredAxis{8, 0.1}),
                    GridError);
}
