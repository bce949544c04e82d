#pragma once

#include <complex>
#include <vector>

namespace cwlm {

/// Centered frequency axis: chi_k = (k - n/2) dchi for k = 0..n-1, so k = n/2
/// is exactly zero. The conjugate axis has the same layout with spacing
/// dx = 2 pi / (n dchi).
struct CenteredAxis {
    int n = 0;
    double dchi = 0.0;

    double chi(int k) const { return (k - n / 2) * dchi; }
    double conjugate_spacing() const;
    double conjugate(int m) const { return (m - n / 2) * conjugate_spacing(); }
};

/// Inverse transform of samples C(chi_k) on a centered axis,
///   p(x_m) = (dchi / 2 pi) sum_k exp(-i chi_k x_m) C_k,
/// computed by FFT with the (-1)^k / (-1)^m index reordering. If C is the
/// characteristic function sampled on the axis, p is the density on the
/// conjugate axis and sum_m p_m dx = C(0) exactly.
std::vector<std::complex<double>> centered_inverse_1d(const std::vector<std::complex<double>>& c,
                                                      const CenteredAxis& axis);

/// Two-dimensional version; c is row-major with index k1 * axis2.n + k2.
std::vector<std::complex<double>> centered_inverse_2d(const std::vector<std::complex<double>>& c,
                                                      const CenteredAxis& axis1,
                                                      const CenteredAxis& axis2);

/// Linear convolution of two real fields sampled on the same centered n1 x n2
/// grid (spacing dx1, dx2), evaluated on that grid:
///   out(x) = sum_y a(y) b(x - y) dx1 dx2.
/// FFT-based with zero padding to 2n; both fields must decay inside the window.
std::vector<double> convolve_same_grid(const std::vector<double>& a, const std::vector<double>& b,
                                       int n1, int n2, double dx1, double dx2);

} // namespace cwlm
