#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace cwlm {

/// Zero-frequency two-point correlators of the detector input (Q) and output
/// (V) operators, hbar = 1. Indices are 0-based detector labels. s_qq, s_qv,
/// s_vv are symmetrized noise spectral densities; a_vq, a_qv response
/// coefficients. s_qq and s_vv must be symmetric, diagonal noises nonnegative.
struct DetectorCorrelators {
    std::array<std::array<double, 2>, 2> s_qq{};
    std::array<std::array<double, 2>, 2> s_qv{};
    std::array<std::array<double, 2>, 2> s_vv{};
    std::array<std::array<double, 2>, 2> a_vq{};
    std::array<std::array<double, 2>, 2> a_qv{};

    /// Throws ConfigError on invariant violation.
    void validate() const;

    static DetectorCorrelators identical_independent(double s_qq_ii, double s_vv_ii, double a_vq_ii);
};

/// Per-detector rates derived from the correlators:
///   gamma_i = S_QQ^(i,i)          measurement-induced dephasing rate,
///   t_a_i   = 4 S_VV / a_VQ^2     acquisition time,
///   k_i     = gamma_i t_a_i       ideality (1 at the Cauchy-Schwarz bound).
struct DerivedDetectorQuantities {
    std::array<double, 2> gamma_i{};
    double gamma = 0.0;  // sum over detectors
    std::array<double, 2> t_a{};
    std::array<double, 2> k{};

    /// sigma_i^2(T) = t_a_i / (4 T), the output-noise variance in O units.
    double sigma2(int i, double T) const;
};

/// Throws ConfigError when a_vq[i][i] = 0 (acquisition time undefined).
DerivedDetectorQuantities derived_quantities(const DetectorCorrelators& c);

/// One inequality evaluation. The verdict uses an absolute slack of 1e-12 on
/// (lhs - rhs) after normalizing both sides by max(1, |lhs|, |rhs|).
struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

bool inequality_holds(double lhs, double rhs);

/// Delta[z] = (|1 + z^2| - (1 + |z|^2))/2, the frequency-dependent correction
/// factor of the Cauchy-Schwarz bound; <= 0 for every finite z.
double delta_z(std::complex<double> z);

/// Pairwise Cauchy-Schwarz bound for the (Q_i, V_j) pair:
///   S_QQ^(i,i) S_VV^(j,j) - |S_QV^(i,j)|^2 >= 1/4 |a_VQ^(j,i) - a_QV^(i,j)|^2.
/// rhs_weak is the a_VQ-only variant (good-amplifier limit); the difference
/// form is authoritative. rhs_delta carries the (1 + Delta[z]) factor, equal
/// to rhs for real zero-frequency correlators.
struct PairwiseCsReport {
    InequalityReport check;
    double rhs_weak = 0.0;
    double rhs_delta = 0.0;
};

PairwiseCsReport check_pairwise_cs(const DetectorCorrelators& c, int i, int j);

/// Two-detector restriction: the sum of per-detector terms, cross S_QV terms,
/// and the mixed-modulus term bounding S_QQ^(1,1) + S_QQ^(2,2) from below.
InequalityReport check_two_detector(const DetectorCorrelators& c);

/// Positivity conditions of the short-time conditioned distribution:
///   cond1:   no cross noise,   gamma >= 1/t_a1 + 1/t_a2 (in S_QQ form),
///   cond2_1: prep Z+ / post Z- with cross S_QV noises,
///   cond2_2: the swapped orientation.
/// pass requires all three.
struct AppendixReport {
    InequalityReport cond1;
    InequalityReport cond2_1;
    InequalityReport cond2_2;
    bool pass = false;
};

AppendixReport check_appendix_conditions(const DetectorCorrelators& c);

/// Every report row of the full validity check; pass iff all rows pass.
struct ValidityReport {
    std::vector<InequalityReport> rows;
    bool pass = false;
};

ValidityReport validate_correlators(const DetectorCorrelators& c);

} // namespace cwlm
