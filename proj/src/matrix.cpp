#include "mplex/matrix.hpp"

#include "mplex/error.hpp"
#include "mplex/kernels.hpp"

#include <cmath>
#include <cstring>

namespace mplex {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size())
{
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw InvalidArgument("Matrix: ragged initializer list");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows()) throw InvalidArgument("matrix product: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    kernels::active().gemm(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
    return c;
}

Vector operator*(const Matrix& m, std::span<const double> x)
{
    if (m.cols() != x.size()) throw InvalidArgument("matrix-vector product: length mismatch");
    Vector y(m.rows());
    kernels::active().matvec(m.data(), x.data(), y.data(), m.rows(), m.cols());
    return y;
}

namespace {

template <class Op>
Matrix elementwise(const Matrix& a, const Matrix& b, Op op)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("elementwise op: shape mismatch");
    Matrix c(a.rows(), a.cols());
    const std::size_t n = a.rows() * a.cols();
    for (std::size_t i = 0; i < n; ++i) c.data()[i] = op(a.data()[i], b.data()[i]);
    return c;
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b)
{
    return elementwise(a, b, [](double x, double y) { return x + y; });
}

Matrix operator-(const Matrix& a, const Matrix& b)
{
    return elementwise(a, b, [](double x, double y) { return x - y; });
}

Matrix operator*(double s, const Matrix& m)
{
    Matrix c = m;
    for (std::size_t i = 0; i < m.rows() * m.cols(); ++i) c.data()[i] *= s;
    return c;
}

Vector left_multiply(std::span<const double> v, const Matrix& m)
{
    if (m.rows() != v.size()) throw InvalidArgument("left_multiply: length mismatch");
    Vector out(m.cols(), 0.0);
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] != 0.0) k.axpy(v[i], m.row(i).data(), out.data(), m.cols());
    }
    return out;
}

Matrix power(const Matrix& m, std::uint64_t k)
{
    if (!m.is_square()) throw InvalidArgument("power: matrix is not square");
    Matrix result = Matrix::identity(m.rows());
    Matrix base = m;
    bool first = true;
    while (k > 0) {
        if (k & 1U) {
            result = first ? base : result * base;
            first = false;
        }
        k >>= 1U;
        if (k > 0) base = base * base;
    }
    return result;
}

double max_norm(const Matrix& m) noexcept
{
    return max_norm(m.values());
}

double max_norm(std::span<const double> v) noexcept
{
    double r = 0.0;
    for (double x : v) r = std::max(r, std::fabs(x));
    return r;
}

double max_abs_diff(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("max_abs_diff: shape mismatch");
    return kernels::active().max_abs_diff(a.data(), b.data(), a.rows() * a.cols());
}

double max_abs_diff(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) throw InvalidArgument("max_abs_diff: length mismatch");
    return kernels::active().max_abs_diff(a.data(), b.data(), a.size());
}

double dot(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) throw InvalidArgument("dot: length mismatch");
    return kernels::active().dot(a.data(), b.data(), a.size());
}

double frobenius_norm(const Matrix& m) noexcept
{
    double s = 0.0;
    for (double x : m.values()) s += x * x;
    return std::sqrt(s);
}

Matrix rank_one_rows(std::span<const double> v)
{
    Matrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        std::memcpy(m.row(i).data(), v.data(), v.size() * sizeof(double));
    return m;
}

std::uint64_t content_hash(const Matrix& m) noexcept
{
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const void* p, std::size_t n) {
        const auto* bytes = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ULL;
        }
    };
    const std::uint64_t dims[2] = {m.rows(), m.cols()};
    mix(dims, sizeof dims);
    mix(m.data(), m.rows() * m.cols() * sizeof(double));
    return h;
}

}  // namespace mplex
