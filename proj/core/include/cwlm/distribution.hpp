#pragma once

#include <array>
#include <string>
#include <vector>

#include "cwlm/fourier.hpp"
#include "cwlm/liouvillian.hpp"
#include "cwlm/qubit.hpp"
#include "cwlm/scenario.hpp"

namespace cwlm {

/// Discretization of the counting fields: n per axis (power of two, >= 64),
/// chi_k = (k - n/2) dchi with dchi = 2 chi_max / n. The conjugate output grid
/// spacing is dV = 2 pi / (n dchi T).
struct ChiGrid {
    int n1 = 512;
    int n2 = 512;
    double chi_max1 = 0.0;
    double chi_max2 = 0.0;

    double dchi1() const { return 2.0 * chi_max1 / n1; }
    double dchi2() const { return 2.0 * chi_max2 / n2; }
    CenteredAxis axis1() const { return {n1, dchi1()}; }
    CenteredAxis axis2() const { return {n2, dchi2()}; }
    void validate() const;
};

/// chi_max_i = sqrt(2 ln(1e12) / (S_VV^(i,i) T)): the Gaussian damping factor
/// of C reaches 1e-12 at the grid edge, so no window taper is needed.
ChiGrid auto_grid(const ScenarioConfig& cfg, double T, int n = 512);

struct DistributionMeta {
    std::string scenario;
    EquationKind kind = EquationKind::Ideal;
    double T = 0.0;
    std::string prep;
    std::string post;
};

/// Joint probability density of the normalized time-averaged outputs
/// O_i = V_i / a_VQ^(i,i) on a rectangular grid. values is row-major with
/// index i1 * o2.size() + i2.
struct JointDistribution {
    std::vector<double> o1;
    std::vector<double> o2;
    std::vector<double> values;
    double d_o1 = 0.0;
    double d_o2 = 0.0;
    double post_probability = 1.0;
    double mass = 0.0;               // sum of values * d_o1 * d_o2, diagnostic
    double max_imag_residual = 0.0;  // max |Im P| relative to max |Re P|
    DistributionMeta meta;

    double at(int i1, int i2) const { return values[static_cast<std::size_t>(i1) * o2.size() + i2]; }
    double max_value() const;
    double min_value() const;
};

/// Inverse Fourier transform of the conditioned generating function over the
/// grid (Gaussian-damped at the edges by construction), axes rescaled to
/// O_i = V_i / a_VQ^(i,i). Throws ZeroPostSelectionError if the post-selection
/// probability is below 1e-12 and NumericError on non-finite C samples.
JointDistribution joint_distribution(const ScenarioConfig& cfg, const DensityMatrix& rho_i,
                                     const PostSelection& post, double T, const ChiGrid& grid);

struct Distribution1d {
    std::vector<double> o;
    std::vector<double> p;
    double d_o = 0.0;
};

/// P(O_free | O_cond = y), extracted by linear interpolation between the two
/// adjacent grid lines and renormalized to unit mass. cond_axis is 0 for O_1,
/// 1 for O_2. Throws GridError when y is outside the grid and
/// DegenerateSliceError when the conditioning row mass is below 1e-12.
struct ConditionalSlice {
    Distribution1d dist;
    int cond_axis = 0;
    double y = 0.0;
    double row_mass = 0.0;
};

ConditionalSlice conditional_slice(const JointDistribution& jd, int cond_axis, double y);

/// Marginal over the other output; unit mass.
Distribution1d marginal(const JointDistribution& jd, int axis);

struct JointMoments {
    std::array<double, 2> mean{};
    std::array<std::array<double, 2>, 2> covariance{};
    std::array<double, 2> skewness{};
};

struct Moments1d {
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
};

JointMoments moments(const JointDistribution& jd);
Moments1d moments(const Distribution1d& d);

/// Pointwise difference P+ - P- and certainty (P+ - P-)/(P+ + P-); certainty
/// entries where P+ + P- < 1e-12 * peak are NaN (undefined). Grids must match.
struct DifferenceGrid {
    std::vector<double> difference;
    std::vector<double> certainty;
};

DifferenceGrid difference_and_certainty(const JointDistribution& plus,
                                        const JointDistribution& minus);
DifferenceGrid difference_and_certainty(const Distribution1d& plus, const Distribution1d& minus);

} // namespace cwlm
