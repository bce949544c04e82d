#include "cwlm/qubit.hpp"

#include <cmath>
#include <sstream>

#include "cwlm/errors.hpp"

namespace cwlm {

namespace {

const Complex kI{0.0, 1.0};

Matrix2c make_pauli_x() { Matrix2c m; m << 0, 1, 1, 0; return m; }
Matrix2c make_pauli_y() { Matrix2c m; m << 0, -kI, kI, 0; return m; }
Matrix2c make_pauli_z() { Matrix2c m; m << 1, 0, 0, -1; return m; }
Matrix2c make_sigma_plus() { Matrix2c m; m << 0, 1, 0, 0; return m; }
Matrix2c make_sigma_minus() { Matrix2c m; m << 0, 0, 1, 0; return m; }

} // namespace

const char* to_string(Axis a) {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        case Axis::Z: return "z";
    }
    return "?";
}

const Matrix2c& pauli_x() { static const Matrix2c m = make_pauli_x(); return m; }
const Matrix2c& pauli_y() { static const Matrix2c m = make_pauli_y(); return m; }
const Matrix2c& pauli_z() { static const Matrix2c m = make_pauli_z(); return m; }
const Matrix2c& sigma_plus() { static const Matrix2c m = make_sigma_plus(); return m; }
const Matrix2c& sigma_minus() { static const Matrix2c m = make_sigma_minus(); return m; }

const Matrix2c& pauli(Axis a) {
    switch (a) {
        case Axis::X: return pauli_x();
        case Axis::Y: return pauli_y();
        case Axis::Z: return pauli_z();
    }
    return pauli_x();
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

double BlochVector::dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }

double BlochVector::component(Axis a) const {
    switch (a) {
        case Axis::X: return x;
        case Axis::Y: return y;
        case Axis::Z: return z;
    }
    return 0.0;
}

BlochVector BlochVector::plus(Axis a) {
    switch (a) {
        case Axis::X: return {1, 0, 0};
        case Axis::Y: return {0, 1, 0};
        case Axis::Z: return {0, 0, 1};
    }
    return {};
}

BlochVector BlochVector::minus(Axis a) {
    BlochVector v = plus(a);
    return {-v.x, -v.y, -v.z};
}

DensityMatrix::DensityMatrix(const Matrix2c& m) : m_(m) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kStateTol)
        throw ConfigError("density matrix is not Hermitian");
    if (std::abs(m.trace() - Complex(1.0)) > kStateTol)
        throw ConfigError("density matrix trace differs from 1");
    // Hermitian 2x2: eigenvalues from trace/determinant.
    const double tr = m.trace().real();
    const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    if (tr / 2.0 - disc < -kStateTol)
        throw ConfigError("density matrix has a negative eigenvalue");
}

BlochVector DensityMatrix::bloch() const {
    return {(m_ * pauli_x()).trace().real(),
            (m_ * pauli_y()).trace().real(),
            (m_ * pauli_z()).trace().real()};
}

DensityMatrix bloch_to_density(const BlochVector& p) {
    if (p.norm() > 1.0 + kStateTol) {
        std::ostringstream os;
        os << "invalid polarization: |p| = " << p.norm() << " exceeds 1";
        throw ConfigError(os.str());
    }
    Matrix2c m = 0.5 * (Matrix2c::Identity() + p.x * pauli_x() + p.y * pauli_y() + p.z * pauli_z());
    return DensityMatrix(m);
}

double expectation(const DensityMatrix& rho, Axis axis) {
    return (rho.matrix() * pauli(axis)).trace().real();
}

Matrix2c HamiltonianParams::matrix() const {
    return 0.5 * (omega_x * pauli_x() + omega_y * pauli_y() + delta * pauli_z());
}

Matrix2c HamiltonianParams::evolution_operator(double T) const {
    // H = (h, sigma)/2 with h = (omega_x, omega_y, delta), so
    // exp(-iHT) = cos(|h|T/2) - i sin(|h|T/2) (h^, sigma).
    const double h = std::sqrt(omega_x * omega_x + omega_y * omega_y + delta * delta);
    if (h == 0.0) return Matrix2c::Identity();
    const double theta = 0.5 * h * T;
    const Matrix2c hs = (omega_x * pauli_x() + omega_y * pauli_y() + delta * pauli_z()) / h;
    return std::cos(theta) * Matrix2c::Identity() - kI * std::sin(theta) * hs;
}

PostSelection::PostSelection(Mode mode, const Matrix2c& rho_f, double p_e)
    : mode_(mode), rho_f_(rho_f), p_e_(p_e) {}

PostSelection PostSelection::none() {
    return PostSelection(Mode::None, 0.5 * Matrix2c::Identity(), 0.0);
}

PostSelection PostSelection::pure(const BlochVector& psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-9)
        throw ConfigError("pure post-selection state must be a unit Bloch vector");
    return PostSelection(Mode::Pure, bloch_to_density(psi).matrix(), 0.0);
}

PostSelection PostSelection::faulty(const BlochVector& psi1, const BlochVector& psi2, double p_e) {
    if (std::abs(psi1.norm() - 1.0) > 1e-9 || std::abs(psi2.norm() - 1.0) > 1e-9)
        throw ConfigError("faulty post-selection states must be unit Bloch vectors");
    if (p_e < 0.0 || p_e > 1.0)
        throw ConfigError("faulty post-selection requires 0 <= p_e <= 1");
    // |<Psi1|Psi2>|^2 = (1 + p1.p2)/2 must vanish.
    if (0.5 * (1.0 + psi1.dot(psi2)) > 1e-10)
        throw ConfigError("faulty post-selection states are not orthogonal");
    const Matrix2c rho = (1.0 - p_e) * bloch_to_density(psi1).matrix() +
                         p_e * bloch_to_density(psi2).matrix();
    return PostSelection(Mode::Faulty, rho, p_e);
}

BlochVector PostSelection::polarization() const {
    if (mode_ == Mode::None) return {0, 0, 0};
    return DensityMatrix(rho_f_).bloch();
}

std::string PostSelection::describe() const {
    std::ostringstream os;
    switch (mode_) {
        case Mode::None:
            os << "none";
            break;
        case Mode::Pure: {
            const BlochVector p = polarization();
            os << "pure(" << p.x << "," << p.y << "," << p.z << ")";
            break;
        }
        case Mode::Faulty: {
            const BlochVector p = polarization();
            os << "faulty(p_e=" << p_e_ << ", P_f=(" << p.x << "," << p.y << "," << p.z << "))";
            break;
        }
    }
    return os.str();
}

PostSelection frame_rotate(const PostSelection& post, const HamiltonianParams& h, double T) {
    if (T < 0.0) throw ConfigError("frame_rotate requires T >= 0");
    if (post.mode() == PostSelection::Mode::None) return post;
    const Matrix2c u = h.evolution_operator(T);
    return PostSelection(post.mode(), u * post.rho_f() * u.adjoint(), post.p_e());
}

} // namespace cwlm
