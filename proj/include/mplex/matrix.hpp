#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace mplex {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix square(std::size_t n) { return Matrix(n, n); }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }
    std::span<const double> values() const noexcept { return data_; }

    Matrix transposed() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& m, std::span<const double> x);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& m);

/// Row vector times matrix: (v^T M)^T.
Vector left_multiply(std::span<const double> v, const Matrix& m);

/// M^k by binary exponentiation (k = 0 gives the identity).
Matrix power(const Matrix& m, std::uint64_t k);

/// max_ij |M_ij|
double max_norm(const Matrix& m) noexcept;
/// max_i |v_i|
double max_norm(std::span<const double> v) noexcept;
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

double dot(std::span<const double> a, std::span<const double> b);
double frobenius_norm(const Matrix& m) noexcept;

/// Outer product 1 * v^T: every row equals v.
Matrix rank_one_rows(std::span<const double> v);

/// FNV-1a hash of the raw bytes; used to identify matrices in error messages and reports.
std::uint64_t content_hash(const Matrix& m) noexcept;

}  // namespace mplex
