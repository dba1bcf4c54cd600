#include <doctest.h>

#include "mplex/error.hpp"
#include "mplex/linalg.hpp"
#include "mplex/matrix.hpp"
#include "mplex/random.hpp"

#include <cmath>

using namespace mplex;

namespace {

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c)
{
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
    return m;
}

Matrix naive_product(const Matrix& a, const Matrix& b)
{
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double s = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

}  // namespace

TEST_CASE("products match the triple loop")
{
    Rng rng(3);
    const Matrix a = random_matrix(rng, 7, 5), b = random_matrix(rng, 5, 9);
    CHECK(max_abs_diff(a * b, naive_product(a, b)) < 1e-14);

    const Vector x{1, 2, 3, 4, 5};
    const Vector y = a * x;
    for (std::size_t i = 0; i < 7; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < 5; ++j) s += a(i, j) * x[j];
        CHECK(y[i] == doctest::Approx(s).epsilon(1e-14));
    }
    const Vector v{1, -1, 2, 0.5, 3, -2, 1};
    const Vector lv = left_multiply(v, a);
    const Vector tv = a.transposed() * v;
    CHECK(max_abs_diff(lv, tv) < 1e-14);
}

TEST_CASE("power by squaring equals repeated multiplication")
{
    Rng rng(4);
    const Matrix m = 0.3 * random_matrix(rng, 4, 4);
    Matrix acc = Matrix::identity(4);
    for (int k = 0; k <= 9; ++k) {
        CHECK(max_abs_diff(power(m, static_cast<std::uint64_t>(k)), acc) < 1e-14);
        acc = acc * m;
    }
}

TEST_CASE("elementwise helpers")
{
    const Matrix a{{1, -4}, {2, 3}};
    CHECK(max_norm(a) == 4.0);
    CHECK(frobenius_norm(a) == doctest::Approx(std::sqrt(30.0)));
    CHECK(a.transposed() == Matrix{{1, 2}, {-4, 3}});
    CHECK((a + a) == 2.0 * a);
    CHECK(max_norm(a - a) == 0.0);
    const Matrix r = rank_one_rows(Vector{0.25, 0.75});
    CHECK(r == Matrix{{0.25, 0.75}, {0.25, 0.75}});
    CHECK(content_hash(a) != content_hash(a.transposed()));
    CHECK(content_hash(a) == content_hash(Matrix{{1, -4}, {2, 3}}));
    CHECK(dot(Vector{1, 2}, Vector{3, 4}) == 11.0);
}

TEST_CASE("LU solves and inverts")
{
    const Matrix a{{4, 3}, {6, 3}};
    const Matrix inv = inverse(a);
    // closed-form 2x2 inverse: [[d, -b], [-c, a]] / det
    const double det = 4 * 3 - 3 * 6;
    CHECK(max_abs_diff(inv, Matrix{{3 / det, -3 / det}, {-6 / det, 4 / det}}) < 1e-15);

    Rng rng(5);
    const Matrix m = random_matrix(rng, 8, 8) + 4.0 * Matrix::identity(8);
    const Vector b{1, 2, 3, 4, 5, 6, 7, 8};
    const Vector x = solve(m, b);
    CHECK(max_abs_diff(m * x, b) < 1e-12);
    CHECK(max_abs_diff(m * inverse(m), Matrix::identity(8)) < 1e-12);
}

TEST_CASE("LU rejects singular systems")
{
    CHECK_THROWS_AS(inverse(Matrix{{1, 2}, {2, 4}}), InvalidArgument);
    CHECK_THROWS_AS(inverse(Matrix(3, 3)), InvalidArgument);
}
