#include "mplex/stochastic.hpp"

#include "mplex/kernels.hpp"
#include "mplex/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace mplex {

TransitionMatrix TransitionMatrix::from_matrix(Matrix m, Provenance provenance)
{
    if (!m.is_square() || m.rows() == 0) throw InvalidArgument("transition matrix: must be square and nonempty");
    double defect = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = m.row(i);
        double s = 0.0;
        for (double v : row) {
            if (!(v >= 0.0) || !std::isfinite(v))
                throw InvalidArgument("transition matrix: negative or non-finite entry in row " + std::to_string(i));
            s += v;
        }
        const double dev = std::fabs(s - 1.0);
        if (dev > row_sum_tol)
            throw InvalidArgument("transition matrix: row " + std::to_string(i) + " sums to " + std::to_string(s));
        defect = std::max(defect, dev);
        if (s != 1.0)
            for (double& v : row) v /= s;
    }
    return TransitionMatrix(std::move(m), provenance, defect);
}

bool TransitionMatrix::zero_diagonal() const noexcept
{
    for (std::size_t i = 0; i < size(); ++i)
        if (m_(i, i) != 0.0) return false;
    return true;
}

TransitionMatrix operator*(const TransitionMatrix& a, const TransitionMatrix& b)
{
    return TransitionMatrix::from_matrix(a.matrix() * b.matrix(), Provenance::product);
}

TransitionMatrix power(const TransitionMatrix& m, std::uint64_t k)
{
    return TransitionMatrix::from_matrix(power(m.matrix(), k), Provenance::product);
}

StationaryDistribution::StationaryDistribution(Vector pi) : pi_(std::move(pi))
{
    double s = 0.0;
    for (double v : pi_) {
        if (!(v >= 0.0)) throw InvalidArgument("stationary distribution: negative entry");
        s += v;
    }
    if (std::fabs(s - 1.0) > 1e-12) throw InvalidArgument("stationary distribution: entries do not sum to 1");
}

double StationaryDistribution::min() const noexcept
{
    return pi_.empty() ? 0.0 : *std::min_element(pi_.begin(), pi_.end());
}

TransitionMatrix transition_matrix(const LayerGraph& layer)
{
    const std::size_t n = layer.size();
    if (n == 0) throw InvalidArgument("transition_matrix: empty layer");
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = layer.degree(i);
        if (!(d > 0.0)) throw IsolatedNode(i, "transition_matrix");
        for (std::size_t j = 0; j < n; ++j) a(i, j) = layer.weight(i, j) / d;
    }
    return TransitionMatrix::from_matrix(std::move(a), Provenance::from_layer);
}

// ---------------------------------------------------------------------------
// Primitivity on the boolean support, one bit per entry.

namespace {

class BoolMatrix {
public:
    explicit BoolMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

    static BoolMatrix support(const Matrix& m)
    {
        BoolMatrix b(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(i, j) > 0.0) b.set(i, j);
        return b;
    }

    void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
    bool get(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U; }

    friend BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b)
    {
        BoolMatrix c(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) {
            std::uint64_t* crow = &c.bits_[i * c.words_];
            for (std::size_t w = 0; w < a.words_; ++w) {
                std::uint64_t word = a.bits_[i * a.words_ + w];
                while (word != 0) {
                    const std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
                    word &= word - 1;
                    const std::uint64_t* brow = &b.bits_[k * b.words_];
                    for (std::size_t x = 0; x < c.words_; ++x) crow[x] |= brow[x];
                }
            }
        }
        return c;
    }

    bool all_set() const
    {
        const std::size_t tail = n_ % 64;
        const std::uint64_t last_mask = tail == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << tail) - 1;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t w = 0; w < words_; ++w) {
                const std::uint64_t mask = (w + 1 == words_) ? last_mask : ~std::uint64_t{0};
                if ((bits_[i * words_ + w] & mask) != mask) return false;
            }
        return true;
    }

private:
    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

}  // namespace

PrimitivityReport is_primitive_support(const Matrix& m)
{
    if (!m.is_square() || m.rows() == 0) throw InvalidArgument("is_primitive: matrix must be square and nonempty");
    const std::uint64_t n = m.rows();
    PrimitivityReport report;
    report.bound_used = (n - 1) * (n - 1) + 1;

    // powers[j] = support of M^(2^j); square until positive or past the bound.
    std::vector<BoolMatrix> powers;
    powers.push_back(BoolMatrix::support(m));
    std::uint64_t exponent = 1;
    bool positive = powers.back().all_set();
    while (!positive && exponent < report.bound_used) {
        powers.push_back(powers.back() * powers.back());
        exponent *= 2;
        positive = powers.back().all_set();
    }
    if (!positive) return report;

    // Positivity of M^e is monotone in e (no zero rows), so binary lifting over
    // the stored squares finds the largest non-positive exponent below 2^top.
    std::uint64_t acc = 0;
    std::optional<BoolMatrix> cur;
    for (std::size_t j = powers.size() - 1; j-- > 0;) {
        BoolMatrix cand = cur ? (*cur * powers[j]) : powers[j];
        if (!cand.all_set()) {
            cur = std::move(cand);
            acc += std::uint64_t{1} << j;
        }
    }
    report.primitive = true;
    report.witness_exponent = acc + 1;
    return report;
}

PrimitivityReport is_primitive(const TransitionMatrix& m)
{
    return is_primitive_support(m.matrix());
}

StationaryDistribution stationary_from_degrees(const LayerGraph& layer)
{
    const std::size_t n = layer.size();
    Vector pi(n);
    const double total = 2.0 * layer.total_edge_weight();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(layer.degree(i) > 0.0)) throw IsolatedNode(i, "stationary_from_degrees");
        pi[i] = layer.degree(i) / total;
    }
    // Division by the float total can leave the sum a few ulps off 1.
    const double s = std::accumulate(pi.begin(), pi.end(), 0.0);
    for (double& v : pi) v /= s;
    return StationaryDistribution(std::move(pi));
}

namespace {

constexpr double power_tol = 1e-13;
constexpr std::size_t power_cap = 1'000'000;
constexpr double residual_tol = 1e-12;

double left_residual(const Vector& pi, const Matrix& m)
{
    return max_abs_diff(left_multiply(pi, m), pi);
}

std::optional<Vector> left_power_iteration(const Matrix& m)
{
    const std::size_t n = m.rows();
    Vector x(n, 1.0 / static_cast<double>(n));
    double diff_ref = 0.0;
    for (std::size_t it = 1; it <= power_cap; ++it) {
        Vector next = left_multiply(x, m);
        const double s = std::accumulate(next.begin(), next.end(), 0.0);
        for (double& v : next) v /= s;
        const double diff = max_abs_diff(next, x);
        x = std::move(next);
        if (diff < power_tol) return x;
        // Bail out to the direct solve when the observed contraction says the
        // cap cannot be met.
        if (it % 256 == 0) {
            if (diff_ref > 0.0 && diff > 0.0) {
                const double rate = std::pow(diff / diff_ref, 1.0 / 256.0);
                if (rate >= 1.0) return std::nullopt;
                const double needed = std::log(power_tol / diff) / std::log(rate);
                if (needed > static_cast<double>(power_cap - it)) return std::nullopt;
            }
            diff_ref = diff;
        }
    }
    return std::nullopt;
}

Vector direct_solve(const Matrix& m)
{
    // (M^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
    const std::size_t n = m.rows();
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = m(j, i) - (i == j ? 1.0 : 0.0);
    for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = 1.0;
    Vector rhs(n, 0.0);
    rhs[n - 1] = 1.0;
    return solve(a, rhs);
}

void clean(Vector& pi)
{
    for (double& v : pi) v = std::max(v, 0.0);
    const double s = std::accumulate(pi.begin(), pi.end(), 0.0);
    for (double& v : pi) v /= s;
}

}  // namespace

StationaryDistribution stationary_general(const TransitionMatrix& m)
{
    const PrimitivityReport report = is_primitive(m);
    if (!report.primitive) throw NotPrimitive("stationary_general", report);

    if (auto pi = left_power_iteration(m.matrix())) {
        clean(*pi);
        if (left_residual(*pi, m.matrix()) <= residual_tol) return StationaryDistribution(std::move(*pi));
    }
    Vector pi = direct_solve(m.matrix());
    clean(pi);
    if (left_residual(pi, m.matrix()) > residual_tol)
        throw ConvergenceError("stationary_general: residual above 1e-12 after direct solve");
    return StationaryDistribution(std::move(pi));
}

double pi_norm(std::span<const double> v, const StationaryDistribution& pi)
{
    if (v.size() != pi.size()) throw InvalidArgument("pi_norm: length mismatch");
    return std::sqrt(kernels::active().weighted_sum_squares(v.data(), pi.values().data(), v.size()));
}

void require_opinions(std::span<const double> x0, const char* where)
{
    for (std::size_t i = 0; i < x0.size(); ++i)
        if (!(x0[i] >= 0.0 && x0[i] <= 1.0))
            throw InvalidArgument(std::string(where) + ": opinion of node " + std::to_string(i) +
                                  " outside [0, 1]");
}

double consensus_value(const StationaryDistribution& pi, std::span<const double> x0)
{
    if (x0.size() != pi.size()) throw InvalidArgument("consensus_value: length mismatch");
    require_opinions(x0, "consensus_value");
    const auto [lo, hi] = std::minmax_element(x0.begin(), x0.end());
    return std::clamp(dot(pi.values(), x0), *lo, *hi);
}

}  // namespace mplex
