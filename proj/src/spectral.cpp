#include "mplex/spectral.hpp"

#include "mplex/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace mplex {

SymmetricEigen jacobi_eigen(const Matrix& s, bool want_vectors)
{
    if (!s.is_square()) throw InvalidArgument("jacobi_eigen: matrix is not square");
    const std::size_t n = s.rows();
    Matrix a = s;
    Matrix v = want_vectors ? Matrix::identity(n) : Matrix();
    const double target = 1e-13 * frobenius_norm(s);

    auto off_norm = [&] {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) sum += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(sum);
    };

    constexpr int max_sweeps = 100;
    int sweep = 0;
    for (; sweep < max_sweeps && off_norm() > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = v(k, p), vkq = v(k, q);
                        v(k, p) = c * vkp - sn * vkq;
                        v(k, q) = sn * vkp + c * vkq;
                    }
                }
            }
        }
    }
    if (off_norm() > target) throw ConvergenceError("jacobi_eigen: no convergence after 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    SymmetricEigen out;
    out.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.values[j] = a(order[j], order[j]);
    if (want_vectors) {
        out.vectors = Matrix(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
    }
    return out;
}

Vector symmetric_eigenvalues(const Matrix& s)
{
    return jacobi_eigen(s, false).values;
}

namespace {

// Diagonal similarity by powers of two; leaves eigenvalues bit-exact.
void balance(Matrix& a)
{
    constexpr double radix = 2.0;
    constexpr double sqrdx = radix * radix;
    const std::size_t n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) {
                    c += std::fabs(a(j, i));
                    r += std::fabs(a(i, j));
                }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                g = 1.0 / f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

void reduce_to_hessenberg(Matrix& a)
{
    const std::size_t n = a.rows();
    Vector v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double alpha = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) alpha += a(i, k) * a(i, k);
        alpha = std::sqrt(alpha);
        if (alpha == 0.0) continue;
        if (a(k + 1, k) > 0.0) alpha = -alpha;
        std::fill(v.begin(), v.end(), 0.0);
        for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
        v[k + 1] -= alpha;
        double vv = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vv += v[i] * v[i];
        if (vv == 0.0) continue;
        const double beta = 2.0 / vv;
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += v[i] * a(i, j);
            s *= beta;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            s *= beta;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
        }
        a(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

inline double sign_of(double magnitude, double s)
{
    return s >= 0.0 ? std::fabs(magnitude) : -std::fabs(magnitude);
}

// Francis double-shift QR on an upper Hessenberg matrix down to real Schur
// form; eigenvalues are read off the 1x1 and 2x2 diagonal blocks.
std::vector<std::complex<double>> hessenberg_qr(Matrix& a, std::uint64_t hash)
{
    using cd = std::complex<double>;
    const int n = static_cast<int>(a.rows());
    std::vector<cd> w(static_cast<std::size_t>(n));
    const double eps = std::numeric_limits<double>::epsilon();
    const long max_total = 100L * n;
    long total = 0;

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::fabs(a(i, j));

    int nn = n - 1;
    double t = 0.0;
    double p = 0, q = 0, r = 0, s = 0, x = 0, y = 0, z = 0, u = 0, v = 0, ww = 0;
    while (nn >= 0) {
        int its = 0;
        int l = 0;
        do {
            for (l = nn; l > 0; --l) {
                s = std::fabs(a(l - 1, l - 1)) + std::fabs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::fabs(a(l, l - 1)) <= eps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            x = a(nn, nn);
            if (l == nn) {
                w[nn--] = x + t;
            } else {
                y = a(nn - 1, nn - 1);
                ww = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    p = 0.5 * (y - x);
                    q = p * p + ww;
                    z = std::sqrt(std::fabs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_of(z, p);
                        w[nn - 1] = w[nn] = x + z;
                        if (z != 0.0) w[nn] = x - ww / z;
                    } else {
                        w[nn] = cd(x + p, -z);
                        w[nn - 1] = std::conj(w[nn]);
                    }
                    nn -= 2;
                } else {
                    if (++total > max_total) {
                        std::ostringstream os;
                        os << "general_eigenvalues: QR did not converge within " << max_total
                           << " iterations (matrix hash " << std::hex << hash << ")";
                        throw ConvergenceError(os.str());
                    }
                    if (its > 0 && its % 10 == 0) {
                        // Exceptional shift.
                        t += x;
                        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                        s = std::fabs(a(nn, nn - 1)) + std::fabs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        ww = -0.4375 * s * s;
                    }
                    ++its;
                    int m = nn - 2;
                    for (; m >= l; --m) {
                        z = a(m, m);
                        r = x - z;
                        s = y - z;
                        p = (r * s - ww) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - r - s;
                        r = a(m + 2, m + 1);
                        s = std::fabs(p) + std::fabs(q) + std::fabs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        u = std::fabs(a(m, m - 1)) * (std::fabs(q) + std::fabs(r));
                        v = std::fabs(p) * (std::fabs(a(m - 1, m - 1)) + std::fabs(z) + std::fabs(a(m + 1, m + 1)));
                        if (u <= eps * v) break;
                    }
                    for (int i = m; i < nn - 1; ++i) {
                        a(i + 2, i) = 0.0;
                        if (i != m) a(i + 2, i - 1) = 0.0;
                    }
                    for (int k = m; k < nn; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = 0.0;
                            if (k + 1 != nn) r = a(k + 2, k - 1);
                            if ((x = std::fabs(p) + std::fabs(q) + std::fabs(r)) != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        if ((s = sign_of(std::sqrt(p * p + q * q + r * r), p)) != 0.0) {
                            if (k == m) {
                                if (l != m) a(k, k - 1) = -a(k, k - 1);
                            } else {
                                a(k, k - 1) = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for (int j = k; j <= nn; ++j) {
                                p = a(k, j) + q * a(k + 1, j);
                                if (k + 1 != nn) {
                                    p += r * a(k + 2, j);
                                    a(k + 2, j) -= p * z;
                                }
                                a(k + 1, j) -= p * y;
                                a(k, j) -= p * x;
                            }
                            const int mmin = nn < k + 3 ? nn : k + 3;
                            for (int i = l; i <= mmin; ++i) {
                                p = x * a(i, k) + y * a(i, k + 1);
                                if (k + 1 != nn) {
                                    p += z * a(i, k + 2);
                                    a(i, k + 2) -= p * r;
                                }
                                a(i, k + 1) -= p * q;
                                a(i, k) -= p;
                            }
                        }
                    }
                }
            }
        } while (l + 1 < nn);
    }
    return w;
}

}  // namespace

std::vector<std::complex<double>> general_eigenvalues(const Matrix& m)
{
    if (!m.is_square()) throw InvalidArgument("general_eigenvalues: matrix is not square");
    if (m.rows() == 0) return {};
    Matrix a = m;
    balance(a);
    reduce_to_hessenberg(a);
    return hessenberg_qr(a, content_hash(m));
}

SpectralSummary summarize(std::vector<std::complex<double>> eigenvalues, SpectralMethod method)
{
    std::sort(eigenvalues.begin(), eigenvalues.end(), [](const auto& x, const auto& y) {
        const double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay) return ax > ay;
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    SpectralSummary out;
    out.method = method;
    out.moduli.reserve(eigenvalues.size());
    for (const auto& e : eigenvalues) out.moduli.push_back(std::abs(e));
    if (out.moduli.size() >= 2) {
        out.slem = out.moduli[1];
        // A repeated top modulus (periodic or reducible chain) reads as exactly 1.
        if (out.slem >= 1.0 - 1e-12) out.slem = 1.0;
    }
    out.eigenvalues = std::move(eigenvalues);
    return out;
}

Matrix symmetrize(const LayerGraph& layer)
{
    const std::size_t n = layer.size();
    Vector root(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(layer.degree(i) > 0.0)) throw IsolatedNode(i, "symmetrize");
        root[i] = std::sqrt(layer.degree(i));
    }
    Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = layer.weight(i, j);
            if (w == 0.0) continue;
            s(i, j) = s(j, i) = w / (root[i] * root[j]);
        }
    return s;
}

SpectralSummary slem_reversible(const LayerGraph& layer)
{
    const Vector values = symmetric_eigenvalues(symmetrize(layer));
    std::vector<std::complex<double>> ev(values.begin(), values.end());
    return summarize(std::move(ev), SpectralMethod::symmetric);
}

SpectralSummary eig_moduli_nonsymmetric(const TransitionMatrix& m)
{
    return summarize(general_eigenvalues(m.matrix()), SpectralMethod::nonsymmetric);
}

double slem(const TransitionMatrix& m)
{
    return eig_moduli_nonsymmetric(m).slem;
}

double rayleigh_quotient(const Matrix& s, std::span<const double> v)
{
    const double vv = dot(v, v);
    if (!(vv > 0.0)) throw InvalidArgument("rayleigh_quotient: zero vector");
    const Vector sv = s * v;
    return dot(v, sv) / vv;
}

}  // namespace mplex
