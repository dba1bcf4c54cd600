#include "mplex/perturb.hpp"

#include "mplex/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace mplex {
namespace {

void require_primitive(const TransitionMatrix& m, const char* where)
{
    const PrimitivityReport r = is_primitive(m);
    if (!r.primitive) throw NotPrimitive(where, r);
}

}  // namespace

Matrix fundamental_matrix(const TransitionMatrix& p, const StationaryDistribution& pi)
{
    const std::size_t n = p.size();
    if (pi.size() != n) throw InvalidArgument("fundamental_matrix: size mismatch");
    const Vector pi_p = left_multiply(pi.values(), p.matrix());
    if (max_abs_diff(pi_p, pi.values()) > 1e-10) throw InvalidArgument("fundamental_matrix: pi is not stationary for P");
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j ? 1.0 : 0.0) - p(i, j) + pi[j];
    Matrix z = inverse(m);
    if (max_abs_diff(m * z, Matrix::identity(n)) > 1e-10)
        throw InvalidArgument("fundamental_matrix: inversion residual above 1e-10");
    return z;
}

PerturbationReport stationary_shift(const TransitionMatrix& p, const TransitionMatrix& p_tilde)
{
    if (p.size() != p_tilde.size()) throw InvalidArgument("stationary_shift: size mismatch");
    require_primitive(p, "stationary_shift (P)");
    require_primitive(p_tilde, "stationary_shift (P~)");
    const std::size_t n = p.size();
    const StationaryDistribution pi = stationary_general(p);
    const StationaryDistribution pi_t = stationary_general(p_tilde);

    PerturbationReport out;
    out.e_matrix = p_tilde.matrix() - p.matrix();
    out.z_matrix = fundamental_matrix(p, pi);
    out.max_norm_e = max_norm(out.e_matrix);
    const Matrix ez = out.e_matrix * out.z_matrix;
    out.delta_first_order = left_multiply(pi.values(), ez);

    // pi~ (I - E Z) = pi
    const Matrix g = inverse(Matrix::identity(n) - ez);
    const Vector pi_pred = left_multiply(pi.values(), g);
    out.delta_predicted.resize(n);
    out.delta_actual.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.delta_predicted[j] = pi_pred[j] - pi[j];
        out.delta_actual[j] = pi_t[j] - pi[j];
    }
    return out;
}

double shift_bound_check(const TransitionMatrix& p, const TransitionMatrix& p_tilde)
{
    if (p.size() != p_tilde.size()) throw InvalidArgument("shift_bound_check: size mismatch");
    const double e = max_abs_diff(p_tilde.matrix(), p.matrix());
    if (!(e > 0.0)) throw InvalidArgument("shift_bound_check: P~ equals P, ratio undefined");
    require_primitive(p, "shift_bound_check (P)");
    require_primitive(p_tilde, "shift_bound_check (P~)");
    const StationaryDistribution pi = stationary_general(p);
    const StationaryDistribution pi_t = stationary_general(p_tilde);
    double d = 0.0;
    for (std::size_t j = 0; j < pi.size(); ++j) d = std::max(d, std::fabs(pi_t[j] - pi[j]));
    return d / e;
}

}  // namespace mplex
