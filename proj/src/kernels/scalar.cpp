#include "mplex/kernels.hpp"

#include <cmath>

namespace mplex::kernels {
namespace {

double dot(const double* a, const double* b, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double weighted_sum_squares(const double* v, const double* w, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * v[i] * v[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double max_abs_diff(const double* a, const double* b, std::size_t n)
{
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
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
const KernelTable scalar_table{dot, weighted_sum_squares, axpy, max_abs_diff, matvec, gemm};
}

}  // namespace mplex::kernels
