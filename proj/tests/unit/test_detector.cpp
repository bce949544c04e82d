#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "cwlm/detector.hpp"
#include "cwlm/errors.hpp"
#include "cwlm/scenario.hpp"

using namespace cwlm;

namespace {

DetectorCorrelators random_correlators(std::mt19937& rng, bool with_cross) {
    std::uniform_real_distribution<double> noise(0.1, 3.0);
    std::uniform_real_distribution<double> resp(-3.0, 3.0);
    std::uniform_real_distribution<double> cross(-1.0, 1.0);
    DetectorCorrelators c;
    for (int i = 0; i < 2; ++i) {
        c.s_qq[i][i] = noise(rng);
        c.s_vv[i][i] = noise(rng);
        double a = resp(rng);
        if (std::abs(a) < 0.2) a = 0.2;
        c.a_vq[i][i] = a;
        c.a_qv[i][i] = with_cross ? cross(rng) : 0.0;
        c.s_qv[i][i] = with_cross ? cross(rng) : 0.0;
    }
    if (with_cross) {
        c.s_qv[0][1] = cross(rng);
        c.s_qv[1][0] = cross(rng);
        const double qq = cross(rng);
        c.s_qq[0][1] = c.s_qq[1][0] = qq;
        const double vv = cross(rng);
        c.s_vv[0][1] = c.s_vv[1][0] = vv;
    }
    return c;
}

} // namespace

TEST_CASE("derived quantities") {
    DetectorCorrelators c = DetectorCorrelators::identical_independent(1.0, 1.0, 2.0);
    const DerivedDetectorQuantities d = derived_quantities(c);
    CHECK(d.t_a[0] == doctest::Approx(1.0));   // t_a = 4 S_VV / a^2
    CHECK(d.k[0] == doctest::Approx(1.0));     // ideal detector
    CHECK(d.gamma == doctest::Approx(2.0));
    CHECK(d.sigma2(0, 1.0) == doctest::Approx(0.25));

    c.a_vq[1][1] = 0.0;
    CHECK_THROWS_AS(derived_quantities(c), ConfigError);
}

TEST_CASE("pairwise Cauchy-Schwarz") {
    DetectorCorrelators c = DetectorCorrelators::identical_independent(1.0, 1.0, 2.0);
    SUBCASE("ideal saturates the bound") {
        const PairwiseCsReport r = check_pairwise_cs(c, 0, 0);
        CHECK(r.check.lhs == doctest::Approx(1.0));
        CHECK(r.check.rhs == doctest::Approx(1.0));
        CHECK(r.check.pass);
        CHECK(r.rhs_delta == doctest::Approx(r.check.rhs));  // real z at zero frequency
    }
    SUBCASE("reduced input noise violates it") {
        c.s_qq[0][0] = 0.9;
        CHECK_FALSE(check_pairwise_cs(c, 0, 0).check.pass);
    }
    SUBCASE("all-zero set passes at 0 >= 0") {
        DetectorCorrelators z;
        CHECK(check_pairwise_cs(z, 0, 0).check.pass);
    }
}

TEST_CASE("delta_z examples and bound") {
    CHECK(delta_z({0.0, 0.0}) == doctest::Approx(0.0));
    CHECK(delta_z({1.0, 0.0}) == doctest::Approx(0.0));
    CHECK(delta_z({0.0, 1.0}) == doctest::Approx(-1.0));

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::complex<double> z{u(rng), u(rng)};
        if (std::abs(z) > 10.0) continue;
        CHECK(delta_z(z) <= 1e-12);
    }
}

TEST_CASE("two-detector inequality") {
    DetectorCorrelators c = DetectorCorrelators::identical_independent(1.0, 1.0, 2.0);
    SUBCASE("equality for two ideal detectors") {
        const InequalityReport r = check_two_detector(c);
        CHECK(r.lhs == doctest::Approx(2.0));
        CHECK(r.rhs == doctest::Approx(2.0));
        CHECK(r.pass);
    }
    SUBCASE("halved input noises fail") {
        c.s_qq[0][0] = c.s_qq[1][1] = 0.5;
        const InequalityReport r = check_two_detector(c);
        CHECK(r.lhs == doctest::Approx(1.0));
        CHECK(r.rhs == doctest::Approx(2.0));
        CHECK_FALSE(r.pass);
    }
    SUBCASE("cross noise raises the bound") {
        c.s_qv[0][1] = 0.5;
        const InequalityReport r = check_two_detector(c);
        CHECK(r.rhs > 2.0);
        CHECK_FALSE(r.pass);  // s_qq = 1 each no longer suffices
        c.s_qq[0][0] = c.s_qq[1][1] = r.rhs / 2.0 + 0.01;
        CHECK(check_two_detector(c).pass);
    }
    SUBCASE("zero output noise is rejected") {
        c.s_vv[0][0] = 0.0;
        CHECK_THROWS_AS(check_two_detector(c), ConfigError);
    }
}

TEST_CASE("appendix positivity conditions") {
    DetectorCorrelators c = DetectorCorrelators::identical_independent(1.0, 1.0, 2.0);
    SUBCASE("equality at gamma = 2/t_a") {
        const AppendixReport r = check_appendix_conditions(c);
        CHECK(r.cond1.lhs == doctest::Approx(2.0));
        CHECK(r.cond1.rhs == doctest::Approx(2.0));
        CHECK(r.pass);
    }
    SUBCASE("zero cross noise collapses all three conditions") {
        std::mt19937 rng(17);
        for (int trial = 0; trial < 100; ++trial) {
            const DetectorCorrelators rc = random_correlators(rng, false);
            const AppendixReport r = check_appendix_conditions(rc);
            CHECK(r.cond2_1.rhs == doctest::Approx(r.cond1.rhs));
            CHECK(r.cond2_2.rhs == doctest::Approx(r.cond1.rhs));
        }
    }
    SUBCASE("cross noise bound, (a + 2S)^2 structure") {
        c.s_qv[0][1] = 0.5;
        const AppendixReport r = check_appendix_conditions(c);
        CHECK(r.cond2_2.rhs == doctest::Approx(3.25));
        CHECK(r.cond2_1.rhs == doctest::Approx(1.25));
    }
}

TEST_CASE("two-detector check is equivalent to condition 1 without cross terms") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 300; ++trial) {
        DetectorCorrelators c = random_correlators(rng, false);
        // Random split around the condition-1 boundary.
        std::uniform_real_distribution<double> f(0.5, 1.5);
        const double rhs = check_appendix_conditions(c).cond1.rhs;
        const double total = rhs * f(rng);
        c.s_qq[0][0] = 0.5 * total;
        c.s_qq[1][1] = 0.5 * total;
        const bool two = check_two_detector(c).pass;
        const bool cond1 = check_appendix_conditions(c).cond1.pass;
        CHECK(two == cond1);
    }
}

TEST_CASE("verdicts are invariant under correlator rescaling") {
    // Homogeneous rescaling: every correlator carries one power of the
    // spectral scale, so s_qq, s_qv, s_vv, a_vq, a_qv all pick up lambda
    // (both sides of Eq.-3-type checks scale as lambda^2, of the
    // two-detector check as lambda).
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> lam(0.01, 100.0);
    for (int trial = 0; trial < 100; ++trial) {
        const DetectorCorrelators c = random_correlators(rng, true);
        const double l = lam(rng);
        DetectorCorrelators s = c;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                s.s_qq[i][j] *= l;
                s.s_qv[i][j] *= l;
                s.s_vv[i][j] *= l;
                s.a_vq[i][j] *= l;
                s.a_qv[i][j] *= l;
            }
        const ValidityReport a = validate_correlators(c);
        const ValidityReport b = validate_correlators(s);
        REQUIRE(a.rows.size() == b.rows.size());
        for (std::size_t k = 0; k < a.rows.size(); ++k) CHECK(a.rows[k].pass == b.rows[k].pass);
    }
}

TEST_CASE("scenario presets") {
    const ScenarioConfig ideal = scenario(ScenarioTag::Ideal);
    CHECK(ideal.derived().k[0] == doctest::Approx(1.0));
    CHECK(ideal.derived().k[1] == doctest::Approx(1.0));
    CHECK(validate_correlators(ideal.correlators).pass);

    const ScenarioConfig exp_cfg = scenario(ScenarioTag::Experimental);
    const DerivedDetectorQuantities d = derived_quantities(exp_cfg.correlators);
    CHECK(d.t_a[0] == doctest::Approx(184.0));
    CHECK(d.k[0] == doctest::Approx(11.7948717948718));  // gamma_d t_a
    CHECK(exp_cfg.rates.gamma_down == doctest::Approx(1.0 / 22.5));
    CHECK(exp_cfg.rates.gamma_up == doctest::Approx(1.0 / 56.0));
    CHECK(exp_cfg.rates.gamma_d == doctest::Approx(1.0 / 15.6));
    CHECK(validate_correlators(exp_cfg.correlators).pass);

    const ScenarioConfig det = scenario(ScenarioTag::ExperimentalDetuned);
    CHECK(det.hamiltonian.delta / det.hamiltonian.omega_x == doctest::Approx(1.7));
    CHECK(det.hamiltonian.omega_x == doctest::Approx(0.276489132077848));

    CHECK_THROWS_AS(scenario_tag_from_string("bogus"), ConfigError);
}
