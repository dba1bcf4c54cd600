#pragma once

#include "mplex/matrix.hpp"

namespace mplex {

/// LU factorisation with partial pivoting, PA = LU stored compactly.
class LuDecomposition {
public:
    /// Throws InvalidArgument when a pivot falls below `singular_tol` * max|A|.
    explicit LuDecomposition(const Matrix& a, double singular_tol = 1e-14);

    Vector solve(std::span<const double> b) const;
    Matrix inverse() const;
    std::size_t size() const noexcept { return lu_.rows(); }

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
};

Vector solve(const Matrix& a, std::span<const double> b);
Matrix inverse(const Matrix& a);

}  // namespace mplex
