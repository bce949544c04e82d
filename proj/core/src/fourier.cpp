#include "cwlm/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "cwlm/errors.hpp"

namespace cwlm {

namespace {

// FFTW planning is not thread-safe; execution of private plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void fft_forward_1d(std::vector<std::complex<double>>& data) {
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()),
                                reinterpret_cast<fftw_complex*>(data.data()),
                                reinterpret_cast<fftw_complex*>(data.data()),
                                FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
}

void fft_2d(std::vector<std::complex<double>>& data, int n1, int n2, int sign) {
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_2d(n1, n2, reinterpret_cast<fftw_complex*>(data.data()),
                                reinterpret_cast<fftw_complex*>(data.data()), sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
}

int parity_sign(int k) { return (k & 1) ? -1 : 1; }

} // namespace

double CenteredAxis::conjugate_spacing() const {
    if (n <= 0 || dchi <= 0.0) throw GridError("centered axis requires n > 0 and dchi > 0");
    return 2.0 * std::numbers::pi / (n * dchi);
}

std::vector<std::complex<double>> centered_inverse_1d(const std::vector<std::complex<double>>& c,
                                                      const CenteredAxis& axis) {
    const int n = axis.n;
    if (n <= 0 || n % 2 != 0) throw GridError("centered axis length must be positive and even");
    if (static_cast<int>(c.size()) != n) throw GridError("sample count does not match axis");

    // exp(-i chi_k x_m) with both axes centered factorizes as
    // (-1)^k (-1)^m (-1)^{n/2} exp(-2 pi i k m / n).
    std::vector<std::complex<double>> work(c);
    for (int k = 0; k < n; ++k) work[k] *= parity_sign(k);
    fft_forward_1d(work);
    const double scale = axis.dchi / (2.0 * std::numbers::pi) * parity_sign(n / 2);
    for (int m = 0; m < n; ++m) work[m] *= scale * parity_sign(m);
    return work;
}

std::vector<std::complex<double>> centered_inverse_2d(const std::vector<std::complex<double>>& c,
                                                      const CenteredAxis& axis1,
                                                      const CenteredAxis& axis2) {
    const int n1 = axis1.n;
    const int n2 = axis2.n;
    if (n1 <= 0 || n1 % 2 != 0 || n2 <= 0 || n2 % 2 != 0)
        throw GridError("centered axis lengths must be positive and even");
    if (static_cast<int>(c.size()) != n1 * n2) throw GridError("sample count does not match axes");

    std::vector<std::complex<double>> work(c);
    for (int k1 = 0; k1 < n1; ++k1)
        for (int k2 = 0; k2 < n2; ++k2) work[k1 * n2 + k2] *= parity_sign(k1 + k2);
    fft_2d(work, n1, n2, FFTW_FORWARD);
    const double base = axis1.dchi * axis2.dchi / (4.0 * std::numbers::pi * std::numbers::pi) *
                        parity_sign(n1 / 2 + n2 / 2);
    for (int m1 = 0; m1 < n1; ++m1)
        for (int m2 = 0; m2 < n2; ++m2) work[m1 * n2 + m2] *= base * parity_sign(m1 + m2);
    return work;
}

std::vector<double> convolve_same_grid(const std::vector<double>& a, const std::vector<double>& b,
                                       int n1, int n2, double dx1, double dx2) {
    if (static_cast<int>(a.size()) != n1 * n2 || static_cast<int>(b.size()) != n1 * n2)
        throw GridError("convolution operands do not match the grid");
    const int m1 = 2 * n1;
    const int m2 = 2 * n2;
    std::vector<std::complex<double>> fa(static_cast<std::size_t>(m1) * m2, 0.0);
    std::vector<std::complex<double>> fb(static_cast<std::size_t>(m1) * m2, 0.0);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            fa[static_cast<std::size_t>(i) * m2 + j] = a[static_cast<std::size_t>(i) * n2 + j];
            fb[static_cast<std::size_t>(i) * m2 + j] = b[static_cast<std::size_t>(i) * n2 + j];
        }
    fft_2d(fa, m1, m2, FFTW_FORWARD);
    fft_2d(fb, m1, m2, FFTW_FORWARD);
    for (std::size_t t = 0; t < fa.size(); ++t) fa[t] *= fb[t];
    fft_2d(fa, m1, m2, FFTW_BACKWARD);

    // Cyclic index (m + n/2) picks the linearly convolved value at grid point m.
    std::vector<double> out(static_cast<std::size_t>(n1) * n2);
    const double scale = dx1 * dx2 / (static_cast<double>(m1) * m2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            out[static_cast<std::size_t>(i) * n2 + j] =
                fa[static_cast<std::size_t>(i + n1 / 2) * m2 + (j + n2 / 2)].real() * scale;
    return out;
}

} // namespace cwlm
