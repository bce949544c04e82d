#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "cwlm/qubit.hpp"
#include "cwlm/scenario.hpp"

namespace cwlm {

using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

/// Column-stacking vectorization: vec(rho) = (rho_00, rho_10, rho_01, rho_11).
Vector4c vectorize(const Matrix2c& rho);
Matrix2c unvectorize(const Vector4c& v);

/// Superoperators acting on column-stacked density matrices:
///   A rho   -> (I (x) A) v,     rho B -> (B^T (x) I) v.
Matrix4c left_mul(const Matrix2c& a);
Matrix4c right_mul(const Matrix2c& b);

/// Counting-field-augmented generator at fixed chi = (chi_1, chi_2). The trace
/// functional is annihilated at chi = 0 (trace-preserving generator); for
/// chi != 0 the quasi-density matrix is deliberately not trace-preserving.
struct Liouvillian {
    Matrix4c m;
    EquationKind kind = EquationKind::Ideal;
    std::array<double, 2> chi{0.0, 0.0};
};

/// The generator split into chi-independent pieces:
///   L(chi) = l0 + chi_1 a1 + chi_2 a2 - (chi_1^2 s_vv_1 + chi_2^2 s_vv_2)/2 I.
/// Precomputing this makes grid evaluation of C(chi) cheap.
struct LiouvillianTerms {
    Matrix4c l0;
    Matrix4c a1;
    Matrix4c a2;
    std::array<double, 2> s_vv{};
    EquationKind kind = EquationKind::Ideal;

    Matrix4c at(double chi1, double chi2) const;
};

LiouvillianTerms liouvillian_terms(const ScenarioConfig& cfg);
Liouvillian build_liouvillian(const ScenarioConfig& cfg, double chi1, double chi2);

/// exp(L T) applied to vec(rho0). Scaling-and-squaring matrix exponential,
/// exact for the constant-in-time counting fields of the flat (0, T) window.
/// Throws NumericError on non-finite output.
Matrix2c propagate(const Matrix2c& rho0, const Liouvillian& l, double T);

/// Tr[rho_f rho(0; T)], the probability of the concluding projective
/// measurement selecting the configured final state. 1 for PostSelection::None.
double postselect_probability(const ScenarioConfig& cfg, const DensityMatrix& rho_i,
                              const PostSelection& post, double T);

/// Conditioned generating function of the two time-averaged detector outputs,
///   C(chi; T) = Tr[rho_f rho(chi; T)] / Tr[rho_f rho(0; T)],
/// with the plain trace (rho_f -> 1) for PostSelection::None. Throws
/// ZeroPostSelectionError when the denominator is below 1e-14.
Complex generating_function(const ScenarioConfig& cfg, const DensityMatrix& rho_i,
                            const PostSelection& post, double chi1, double chi2, double T);

} // namespace cwlm
