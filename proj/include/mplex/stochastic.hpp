#pragma once

// Row-stochastic transition matrices, stationary distributions, the
// pi-weighted geometry and primitivity.

#include "mplex/error.hpp"
#include "mplex/matrix.hpp"
#include "mplex/netcore.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace mplex {

enum class Provenance { from_layer, merged, product, raw };

/// Row-stochastic N x N matrix. Rows are renormalised after assembly; a row
/// whose sum is off by more than `row_sum_tol` is rejected instead.
class TransitionMatrix {
public:
    static constexpr double row_sum_tol = 1e-12;

    static TransitionMatrix from_matrix(Matrix m, Provenance provenance = Provenance::raw);

    std::size_t size() const noexcept { return m_.rows(); }
    const Matrix& matrix() const noexcept { return m_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
    Provenance provenance() const noexcept { return provenance_; }
    /// Largest |row sum - 1| seen before renormalisation.
    double assembly_defect() const noexcept { return defect_; }
    bool zero_diagonal() const noexcept;

private:
    TransitionMatrix(Matrix m, Provenance p, double defect) : m_(std::move(m)), provenance_(p), defect_(defect) {}

    Matrix m_;
    Provenance provenance_ = Provenance::raw;
    double defect_ = 0.0;
};

TransitionMatrix operator*(const TransitionMatrix& a, const TransitionMatrix& b);
TransitionMatrix power(const TransitionMatrix& m, std::uint64_t k);

/// Probability vector over the nodes.
class StationaryDistribution {
public:
    /// Entries must be >= 0 and sum to 1 within 1e-12.
    explicit StationaryDistribution(Vector pi);

    std::size_t size() const noexcept { return pi_.size(); }
    double operator[](std::size_t i) const noexcept { return pi_[i]; }
    const Vector& values() const noexcept { return pi_; }
    double min() const noexcept;

private:
    Vector pi_;
};

struct PrimitivityReport {
    bool primitive = false;
    /// Smallest n with M^n > 0 entrywise, when primitive.
    std::optional<std::uint64_t> witness_exponent;
    /// Wielandt bound (N-1)^2 + 1.
    std::uint64_t bound_used = 0;
};

class NotPrimitive : public InvalidArgument {
public:
    NotPrimitive(const std::string& where, PrimitivityReport report)
        : InvalidArgument(where + ": matrix is not primitive"), report_(report) {}
    const PrimitivityReport& report() const noexcept { return report_; }

private:
    PrimitivityReport report_;
};

/// A_ij = w_ij / d_i. Throws IsolatedNode for a zero-degree node.
TransitionMatrix transition_matrix(const LayerGraph& layer);

/// Exact primitivity test on the support of `m`.
PrimitivityReport is_primitive(const TransitionMatrix& m);
PrimitivityReport is_primitive_support(const Matrix& m);

/// pi_i = d_i / (2|E|).
StationaryDistribution stationary_from_degrees(const LayerGraph& layer);

/// Left Perron vector of a primitive (not necessarily reversible) matrix.
/// Throws NotPrimitive otherwise.
StationaryDistribution stationary_general(const TransitionMatrix& m);

/// (sum_i v_i^2 pi_i)^(1/2)
double pi_norm(std::span<const double> v, const StationaryDistribution& pi);

/// Rejects opinion vectors with entries outside [0, 1].
void require_opinions(std::span<const double> x0, const char* where);

/// sum_j pi_j x0_j
double consensus_value(const StationaryDistribution& pi, std::span<const double> x0);

}  // namespace mplex
