#include "mplex/linalg.hpp"

#include "mplex/error.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace mplex {

LuDecomposition::LuDecomposition(const Matrix& a, double singular_tol) : lu_(a), perm_(a.rows())
{
    if (!a.is_square()) throw InvalidArgument("LU: matrix is not square");
    const std::size_t n = a.rows();
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    const double scale = std::max(max_norm(a), 1e-300);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::fabs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::fabs(lu_(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= singular_tol * scale) throw InvalidArgument("LU: matrix is numerically singular");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
            std::swap(perm_[k], perm_[piv]);
        }
        const double inv = 1.0 / lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu_(i, k) * inv;
            lu_(i, k) = f;
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
        }
    }
}

Vector LuDecomposition::solve(std::span<const double> b) const
{
    const std::size_t n = size();
    if (b.size() != n) throw InvalidArgument("LU solve: length mismatch");
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[perm_[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
        x[i] = s / lu_(i, i);
    }
    return x;
}

Matrix LuDecomposition::inverse() const
{
    const std::size_t n = size();
    Matrix inv(n, n);
    Vector e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        const Vector col = solve(e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
        e[j] = 0.0;
    }
    return inv;
}

Vector solve(const Matrix& a, std::span<const double> b)
{
    return LuDecomposition(a).solve(b);
}

Matrix inverse(const Matrix& a)
{
    return LuDecomposition(a).inverse();
}

}  // namespace mplex
