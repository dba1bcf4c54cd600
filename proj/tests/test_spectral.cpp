#include <doctest.h>

#include "mplex/fixtures.hpp"
#include "mplex/instances.hpp"
#include "mplex/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace mplex;

namespace {

// det(lambda I - M) for a 3x3 matrix from its invariants.
std::complex<double> char_poly3(const Matrix& m, std::complex<double> z)
{
    const double tr = m(0, 0) + m(1, 1) + m(2, 2);
    const double minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                          m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                       m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                       m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    return z * z * z - tr * z * z + minors * z - det;
}

Matrix random_general(Rng& rng, std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
    return m;
}

}  // namespace

TEST_CASE("3x3 eigenvalues are roots of the characteristic polynomial")
{
    Rng rng(21);
    for (int t = 0; t < 100; ++t) {
        const Matrix m = random_general(rng, 3);
        const auto ev = general_eigenvalues(m);
        REQUIRE(ev.size() == 3);
        for (auto z : ev) CHECK(std::abs(char_poly3(m, z)) < 1e-10);
    }
}

TEST_CASE("trace and determinant identities on larger matrices")
{
    Rng rng(22);
    for (std::size_t n : {2u, 5u, 9u, 16u, 30u}) {
        const Matrix m = random_general(rng, n);
        const auto ev = general_eigenvalues(m);
        std::complex<double> sum = 0, sq = 0;
        for (auto z : ev) {
            sum += z;
            sq += z * z;
        }
        double tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
        const Matrix m2 = m * m;
        double tr2 = 0;
        for (std::size_t i = 0; i < n; ++i) tr2 += m2(i, i);
        CHECK(std::abs(sum - tr) < 1e-9 * static_cast<double>(n));
        CHECK(std::abs(sq - tr2) < 1e-9 * static_cast<double>(n));
    }
}

TEST_CASE("complex pairs and unit-modulus spectra")
{
    const Matrix rot{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    const SpectralSummary s = summarize(general_eigenvalues(rot), SpectralMethod::nonsymmetric);
    for (double m : s.moduli) CHECK(m == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.slem == 1.0);
    int complex_count = 0;
    for (auto z : s.eigenvalues) complex_count += std::fabs(z.imag()) > 1e-8;
    CHECK(complex_count == 2);
}

TEST_CASE("Jacobi eigenpairs of a symmetric matrix")
{
    Rng rng(23);
    Matrix s = random_general(rng, 8);
    s = s + s.transposed();
    const SymmetricEigen e = jacobi_eigen(s, true);
    for (std::size_t j = 0; j + 1 < 8; ++j) CHECK(e.values[j] >= e.values[j + 1]);
    for (std::size_t j = 0; j < 8; ++j) {
        Vector v(8);
        for (std::size_t i = 0; i < 8; ++i) v[i] = e.vectors(i, j);
        const Vector sv = s * v;
        for (std::size_t i = 0; i < 8; ++i) CHECK(std::fabs(sv[i] - e.values[j] * v[i]) < 1e-10);
        CHECK(dot(v, v) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(max_abs_diff(symmetric_eigenvalues(s), e.values) < 1e-12);
}

TEST_CASE("symmetric and nonsymmetric routes agree on reversible walks")
{
    Rng rng(24);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 3 + static_cast<std::size_t>(rng.below(15));
        const LayerGraph g = random_primitive_layer(n, rng);
        const Matrix s = symmetrize(g);
        CHECK(s == s.transposed());
        const double sym = slem_reversible(g).slem;
        CHECK(std::fabs(sym - slem(transition_matrix(g))) < 1e-9);
    }
}

TEST_CASE("Courant-Fischer: Rayleigh quotients off the top eigenvector stay within the spectrum")
{
    Rng rng(25);
    const LayerGraph g = random_primitive_layer(12, rng);
    const Matrix s = symmetrize(g);
    const SymmetricEigen e = jacobi_eigen(s);
    Vector top(12);
    for (std::size_t i = 0; i < 12; ++i) top[i] = std::sqrt(g.degree(i));
    for (int t = 0; t < 200; ++t) {
        Vector v = random_opinions(12, rng);
        const double c = dot(v, top) / dot(top, top);
        for (std::size_t i = 0; i < 12; ++i) v[i] -= c * top[i];
        const double r = rayleigh_quotient(s, v);
        CHECK(r <= e.values[1] + 1e-12);
        CHECK(r >= e.values[11] - 1e-12);
    }
    CHECK_THROWS_AS(rayleigh_quotient(s, Vector(12, 0.0)), InvalidArgument);
}

TEST_CASE("SLEM conventions")
{
    const LayerGraph even_cycle = generate(GeneratorSpec{Circulant{{1, 3}, 1.0}, 4, 0});
    CHECK(slem_reversible(even_cycle).slem == 1.0);
    const LayerGraph k4 = generate(GeneratorSpec{Circulant{{1, 2, 3}, 1.0}, 4, 0});
    CHECK(slem_reversible(k4).slem == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    const auto [l1, l2] = fixtures::circulant_pair();
    CHECK(slem_reversible(l1).slem == doctest::Approx(std::cos(std::numbers::pi / 5)).epsilon(1e-12));
    CHECK(slem_reversible(l1).method == SpectralMethod::symmetric);
    CHECK(eig_moduli_nonsymmetric(transition_matrix(l2)).method == SpectralMethod::nonsymmetric);
}

TEST_CASE("rho2 of powers equals the power of rho2")
{
    Rng rng(26);
    for (int t = 0; t < 10; ++t) {
        const LayerGraph g = random_primitive_layer(3 + static_cast<std::size_t>(rng.below(10)), rng);
        const TransitionMatrix a = transition_matrix(g);
        const double r = slem(a);
        for (std::uint64_t k = 1; k <= 6; ++k)
            CHECK(std::fabs(slem(power(a, k)) - std::pow(r, static_cast<double>(k))) < 1e-8);
    }
}
