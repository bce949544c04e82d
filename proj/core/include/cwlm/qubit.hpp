#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace cwlm {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;

/// Absolute tolerance for state invariant checks.
inline constexpr double kStateTol = 1e-12;

enum class Axis { X, Y, Z };

const char* to_string(Axis a);

/// Pauli matrix for the given axis, basis |Z+> = (1,0), |Z-> = (0,1).
const Matrix2c& pauli(Axis a);
const Matrix2c& pauli_x();
const Matrix2c& pauli_y();
const Matrix2c& pauli_z();
const Matrix2c& sigma_plus();   // |Z+><Z-|
const Matrix2c& sigma_minus();  // |Z-><Z+|

/// Dimensionless qubit polarization vector, |p| <= 1.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    double dot(const BlochVector& o) const;
    double component(Axis a) const;

    static BlochVector plus(Axis a);   // unit vector along +a
    static BlochVector minus(Axis a);  // unit vector along -a
};

/// Valid qubit density matrix: Hermitian, unit trace, PSD (all within kStateTol).
class DensityMatrix {
public:
    /// Validates the invariants; throws ConfigError on violation.
    explicit DensityMatrix(const Matrix2c& m);

    const Matrix2c& matrix() const { return m_; }
    BlochVector bloch() const;

private:
    Matrix2c m_;
};

/// rho = (1 + (p, sigma))/2. Throws ConfigError if |p| > 1 + kStateTol.
DensityMatrix bloch_to_density(const BlochVector& p);

/// Tr[rho sigma_axis].
double expectation(const DensityMatrix& rho, Axis axis);

/// Qubit Hamiltonian H = (omega_x sigma_x + omega_y sigma_y + delta sigma_z)/2,
/// hbar = 1 throughout; all rates in reciprocal time units of the caller's choosing.
struct HamiltonianParams {
    double omega_x = 0.0;
    double omega_y = 0.0;
    double delta = 0.0;

    double omega_bar_sq() const { return omega_x * omega_x + omega_y * omega_y; }
    Matrix2c matrix() const;

    /// exp(-i H T) in closed form via the Pauli decomposition.
    Matrix2c evolution_operator(double T) const;
};

/// Final-state selection: none (plain trace), a pure projector, or a faulty
/// projector rho_f = (1-p_e)|Psi1><Psi1| + p_e|Psi2><Psi2| with <Psi1|Psi2> = 0.
class PostSelection {
public:
    enum class Mode { None, Pure, Faulty };

    static PostSelection none();
    static PostSelection pure(const BlochVector& psi);
    /// psi1, psi2 must be orthogonal (antipodal Bloch vectors) within 1e-10.
    static PostSelection faulty(const BlochVector& psi1, const BlochVector& psi2, double p_e);

    Mode mode() const { return mode_; }
    /// The Hermitian unit-trace operator rho_f (identity/2 for Mode::None).
    const Matrix2c& rho_f() const { return rho_f_; }
    double p_e() const { return p_e_; }
    /// Polarization vector of rho_f; zero for Mode::None.
    BlochVector polarization() const;
    std::string describe() const;

private:
    PostSelection(Mode mode, const Matrix2c& rho_f, double p_e);
    friend PostSelection frame_rotate(const PostSelection&, const HamiltonianParams&, double);

    Mode mode_;
    Matrix2c rho_f_;
    double p_e_;
};

/// rho_f -> exp(-i H T) rho_f exp(+i H T): post-selecting on the frame-rotated
/// states quenches the trivial Rabi oscillation of conditioned statistics.
PostSelection frame_rotate(const PostSelection& post, const HamiltonianParams& h, double T);

} // namespace cwlm
