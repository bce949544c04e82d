#include "cwlm/liouvillian.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "cwlm/errors.hpp"

namespace cwlm {

namespace {

const Complex kI{0.0, 1.0};

/// -rate D[A], D[A]rho = 1/2 [A^dag A, rho]_+ - A rho A^dag, as a superoperator.
Matrix4c dissipator(const Matrix2c& a, double rate) {
    const Matrix2c ada = a.adjoint() * a;
    Matrix4c d = Eigen::kroneckerProduct(Matrix2c(a.conjugate()), a);
    d -= 0.5 * (left_mul(ada) + right_mul(ada));
    return rate * d;
}

} // namespace

Vector4c vectorize(const Matrix2c& rho) {
    Vector4c v;
    v << rho(0, 0), rho(1, 0), rho(0, 1), rho(1, 1);
    return v;
}

Matrix2c unvectorize(const Vector4c& v) {
    Matrix2c rho;
    rho << v(0), v(2), v(1), v(3);
    return rho;
}

Matrix4c left_mul(const Matrix2c& a) {
    return Eigen::kroneckerProduct(Matrix2c(Matrix2c::Identity()), a);
}

Matrix4c right_mul(const Matrix2c& b) {
    return Eigen::kroneckerProduct(Matrix2c(b.transpose()), Matrix2c(Matrix2c::Identity()));
}

Matrix4c LiouvillianTerms::at(double chi1, double chi2) const {
    Matrix4c m = l0 + chi1 * a1 + chi2 * a2;
    const double damp = 0.5 * (chi1 * chi1 * s_vv[0] + chi2 * chi2 * s_vv[1]);
    m.diagonal().array() -= damp;
    return m;
}

LiouvillianTerms liouvillian_terms(const ScenarioConfig& cfg) {
    cfg.correlators.validate();
    LiouvillianTerms t;
    t.kind = cfg.kind;

    const Matrix2c h = cfg.hamiltonian.matrix();
    t.l0 = -kI * (left_mul(h) - right_mul(h));

    if (cfg.kind == EquationKind::Ideal) {
        for (int i = 0; i < 2; ++i)
            t.l0 += dissipator(pauli(cfg.axes[i]), cfg.correlators.s_qq[i][i]);
    } else {
        t.l0 += dissipator(pauli_z(), cfg.rates.gamma_d);
        t.l0 += dissipator(sigma_plus(), cfg.rates.gamma_up);
        t.l0 += dissipator(sigma_minus(), cfg.rates.gamma_down);
    }

    // Per-detector counting-field couplings:
    //   - S_QV chi [rho, O]            ([rho, O] -> (O^T (x) 1 - 1 (x) O) v)
    //   + i a_VQ chi / 2 [rho, O]_+
    Matrix4c* out[2] = {&t.a1, &t.a2};
    for (int i = 0; i < 2; ++i) {
        const Matrix2c& op = pauli(cfg.axes[i]);
        *out[i] = -cfg.correlators.s_qv[i][i] * (right_mul(op) - left_mul(op)) +
                  0.5 * kI * cfg.correlators.a_vq[i][i] * (right_mul(op) + left_mul(op));
        t.s_vv[i] = cfg.correlators.s_vv[i][i];
    }
    return t;
}

Liouvillian build_liouvillian(const ScenarioConfig& cfg, double chi1, double chi2) {
    Liouvillian l;
    l.kind = cfg.kind;
    l.chi = {chi1, chi2};
    l.m = liouvillian_terms(cfg).at(chi1, chi2);
    return l;
}

Matrix2c propagate(const Matrix2c& rho0, const Liouvillian& l, double T) {
    if (T < 0.0) throw ConfigError("propagate requires T >= 0");
    if (T == 0.0) return rho0;
    const Matrix4c e = (l.m * T).exp();
    const Vector4c v = e * vectorize(rho0);
    if (!v.allFinite()) throw NumericError("propagator produced non-finite entries");
    return unvectorize(v);
}

double postselect_probability(const ScenarioConfig& cfg, const DensityMatrix& rho_i,
                              const PostSelection& post, double T) {
    const Matrix2c rho = propagate(rho_i.matrix(), build_liouvillian(cfg, 0.0, 0.0), T);
    if (post.mode() == PostSelection::Mode::None) return rho.trace().real();
    return (post.rho_f() * rho).trace().real();
}

Complex generating_function(const ScenarioConfig& cfg, const DensityMatrix& rho_i,
                            const PostSelection& post, double chi1, double chi2, double T) {
    if (T <= 0.0) throw ConfigError("generating_function requires T > 0");
    const LiouvillianTerms terms = liouvillian_terms(cfg);

    const auto conditioned_trace = [&](const Matrix2c& rho) -> Complex {
        if (post.mode() == PostSelection::Mode::None) return rho.trace();
        return (post.rho_f() * rho).trace();
    };

    Liouvillian l0{terms.at(0.0, 0.0), cfg.kind, {0.0, 0.0}};
    const Complex den = conditioned_trace(propagate(rho_i.matrix(), l0, T));
    if (std::abs(den) < 1e-14)
        throw ZeroPostSelectionError("post-selection probability vanishes");

    Liouvillian l{terms.at(chi1, chi2), cfg.kind, {chi1, chi2}};
    const Complex num = conditioned_trace(propagate(rho_i.matrix(), l, T));
    return num / den;
}

} // namespace cwlm
