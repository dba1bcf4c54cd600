#include "mplex/kernels.hpp"

#include <arm_neon.h>

#include <cmath>

namespace mplex::kernels {
namespace {

double dot(const double* a, const double* b, std::size_t n)
{
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double s = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double weighted_sum_squares(const double* v, const double* w, std::size_t n)
{
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t x = vld1q_f64(v + i);
        acc = vfmaq_f64(acc, vmulq_f64(vld1q_f64(w + i), x), x);
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += w[i] * v[i] * v[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n)
{
    const float64x2_t a = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), a, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

double max_abs_diff(const double* a, const double* b, std::size_t n)
{
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    double m = vmaxvq_f64(acc);
    for (; i < n; ++i) {
        const double d = std::fabs(a[i] - b[i]);
        if (d > m) m = d;
    }
    return m;
}

void matvec(const double* m, const double* x, double* y, std::size_t rows, std::size_t cols)
{
    for (std::size_t i = 0; i < rows; ++i) y[i] = dot(m + i * cols, x, cols);
}

void gemm(const double* a, const double* b, double* c, std::size_t n, std::size_t k, std::size_t m)
{
    for (std::size_t i = 0; i < n; ++i) {
        double* crow = c + i * m;
        for (std::size_t j = 0; j < m; ++j) crow[j] = 0.0;
        for (std::size_t p = 0; p < k; ++p) {
            const double aip = a[i * k + p];
            if (aip == 0.0) continue;
            axpy(aip, b + p * m, crow, m);
        }
    }
}

}  // namespace

namespace detail {
const KernelTable neon_table{dot, weighted_sum_squares, axpy, max_abs_diff, matvec, gemm};
}

}  // namespace mplex::kernels
