#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "loopchain/errors.hpp"
#include "loopchain/linalg.hpp"
#include "oracles.hpp"

using namespace loopchain;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix sample_a() { return {{1.0, Complex(2, -1), 0.5}, {Complex(0, 3), -1.0, 2.0}, {0.0, Complex(1, 1), 4.0}}; }
ComplexMatrix sample_b() { return {{0.0, 1.0, Complex(0, -2)}, {1.5, Complex(-1, 1), 0.0}, {2.0, 0.5, Complex(3, 0.5)}}; }

}  // namespace

TEST(ComplexMatrix, RejectsBadShapes) {
    EXPECT_THROW(ComplexMatrix(0), InvalidInput);
    EXPECT_THROW(ComplexMatrix(2, std::vector<Complex>(3)), InvalidInput);
    EXPECT_THROW((ComplexMatrix{{1.0, 2.0}, {3.0}}), InvalidInput);
}

TEST(ComplexMatrix, RejectsNonFinite) {
    EXPECT_THROW(ComplexMatrix(1, {Complex(std::nan(""), 0.0)}), InvalidInput);
    EXPECT_THROW((ComplexMatrix{{std::numeric_limits<double>::infinity()}}), InvalidInput);
}

TEST(Arithmetic, IdentityTimesVector) {
    const ComplexVector v{Complex(1, 2), -3.0, Complex(0, 0.5)};
    const auto w = ComplexMatrix::identity(3) * v;
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(w[i], v[i]);
}

TEST(Arithmetic, AdjointOfProduct) {
    const auto lhs = adjoint(sample_a() * sample_b());
    const auto rhs = adjoint(sample_b()) * adjoint(sample_a());
    EXPECT_LT(max_abs_difference(lhs, rhs), 1e-14);
}

TEST(Arithmetic, AddSubtractScale) {
    const auto a = sample_a();
    const auto b = sample_b();
    EXPECT_LT(max_abs_difference((a + b) - b, a), 1e-15);
    const auto twice = Complex(2.0, 0.0) * a;
    EXPECT_LT(max_abs_difference(twice, a + a), 1e-15);
    EXPECT_EQ(scale(a, kI)(0, 0), kI);
}

TEST(Arithmetic, DimensionMismatchThrows) {
    const ComplexMatrix two = ComplexMatrix::identity(2);
    const ComplexMatrix three = ComplexMatrix::identity(3);
    EXPECT_THROW(multiply(two, three), InvalidInput);
    EXPECT_THROW(add(two, three), InvalidInput);
    EXPECT_THROW(subtract(two, three), InvalidInput);
    EXPECT_THROW(multiply(two, ComplexVector(3)), InvalidInput);
    EXPECT_THROW(inner(ComplexVector(2), ComplexVector(3)), InvalidInput);
    EXPECT_THROW(max_abs_difference(two, three), InvalidInput);
}

TEST(Arithmetic, InnerIsConjugateLinearInFirst) {
    const ComplexVector u{kI, 0.0};
    const ComplexVector v{1.0, 0.0};
    EXPECT_EQ(inner(u, v), -kI);
    EXPECT_DOUBLE_EQ(norm(ComplexVector{3.0, Complex(0, 4)}), 5.0);
}

TEST(Arithmetic, DeterminantKnownValues) {
    EXPECT_NEAR(std::abs(determinant(ComplexMatrix::identity(4)) - 1.0), 0.0, 1e-15);
    const ComplexMatrix m{{0.0, 2.0}, {3.0, 1.0}};  // needs pivoting
    EXPECT_NEAR(std::abs(determinant(m) - Complex(-6.0)), 0.0, 1e-14);
    const ComplexMatrix singular{{1.0, 2.0}, {2.0, 4.0}};
    EXPECT_NEAR(std::abs(determinant(singular)), 0.0, 1e-15);
}

TEST(Validated, Hermitian) {
    EXPECT_NO_THROW(HermitianMatrix(ComplexMatrix{{1.0, kI}, {-kI, 2.0}}));
    EXPECT_THROW(HermitianMatrix(ComplexMatrix{{1.0, kI}, {kI, 2.0}}), InvalidInput);
    EXPECT_THROW(HermitianMatrix(ComplexMatrix{{kI}}), InvalidInput);
    // relative tolerance: a 1e-13 mismatch on unit-size entries passes
    EXPECT_NO_THROW(HermitianMatrix(ComplexMatrix{{1.0, 1.0}, {1.0 + 1e-13, 0.0}}));
    EXPECT_THROW(HermitianMatrix(ComplexMatrix{{1.0, 1.0}, {1.0 + 1e-9, 0.0}}), InvalidInput);
}

TEST(Validated, Unitary) {
    const double c = std::cos(0.3), s = std::sin(0.3);
    EXPECT_NO_THROW(UnitaryMatrix(ComplexMatrix{{c, -s}, {s, c}}));
    EXPECT_THROW(UnitaryMatrix(ComplexMatrix{{1.0, 0.1}, {0.0, 1.0}}), InvalidInput);
}

TEST(Validated, HouseholderVectorNorm) {
    EXPECT_NO_THROW(HouseholderVector({1.0, 0.0}));
    EXPECT_THROW(HouseholderVector({1.0, 1.0}), InvalidInput);
    EXPECT_THROW(HouseholderVector({}), InvalidInput);
    EXPECT_THROW(HouseholderVector::normalized({0.0, 0.0}), InvalidInput);
    EXPECT_NEAR(norm(HouseholderVector::normalized({3.0, kI}).components()), 1.0, 1e-15);
}

TEST(Reflection, BasisVector) {
    const auto r = reflection_from_vector(HouseholderVector({1.0, 0.0}));
    EXPECT_LT(max_abs_difference(r.matrix(), ComplexMatrix{{-1.0, 0.0}, {0.0, 1.0}}), 1e-15);
}

TEST(Reflection, DiagonalVector) {
    const double h = 1.0 / std::sqrt(2.0);
    const auto r = reflection_from_vector(HouseholderVector({h, h}));
    EXPECT_LT(max_abs_difference(r.matrix(), ComplexMatrix{{0.0, -1.0}, {-1.0, 0.0}}), 1e-15);
}

TEST(Reflection, LoopMatrixFromItsVector) {
    // The vector (0, sin(theta/2) e^{-i phi}, -cos(theta/2)) gives rows
    // (1,0,0), (0, cos, e^{-i phi} sin), (0, e^{i phi} sin, -cos).
    const double theta = kPi / 3;
    const double phi = kPi / 4;
    const HouseholderVector v({0.0, std::sin(theta / 2) * std::polar(1.0, -phi), -std::cos(theta / 2)});
    const auto r = reflection_from_vector(v);
    EXPECT_LT(max_abs_difference(r.matrix(), oracle::reflection(theta, phi)), 1e-15);
}

TEST(Reflection, PositiveLastComponentFlipsOffDiagonalSign) {
    // With +cos(theta/2) the off-diagonal entries change sign.
    const double theta = kPi / 3;
    const double phi = kPi / 4;
    const HouseholderVector v({0.0, std::sin(theta / 2) * std::polar(1.0, -phi), std::cos(theta / 2)});
    const auto r = reflection_from_vector(v);
    const auto expected = oracle::reflection(theta, phi);
    EXPECT_NEAR(std::abs(r(1, 2) + expected(1, 2)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r(2, 1) + expected(2, 1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r(1, 1) - expected(1, 1)), 0.0, 1e-15);
}

TEST(Reflection, PropertiesOnRandomVectors) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 2 + trial % 6;
        ComplexVector raw(dim);
        for (auto& z : raw) z = Complex(oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1));
        const auto v = HouseholderVector::normalized(raw);
        const auto r = reflection_from_vector(v).matrix();

        EXPECT_LT(max_abs_difference(r * r, ComplexMatrix::identity(dim)), 1e-10);
        EXPECT_LT(max_abs_difference(r, adjoint(r)), 1e-15);
        EXPECT_NEAR(std::abs(determinant(r) - Complex(-1.0)), 0.0, 1e-10);

        const auto rv = r * v.components();
        for (std::size_t i = 0; i < dim; ++i) EXPECT_NEAR(std::abs(rv[i] + v.components()[i]), 0.0, 1e-14);

        // w orthogonal to v is fixed
        ComplexVector w(dim);
        for (auto& z : w) z = Complex(oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1));
        const Complex overlap = inner(v.components(), w);
        for (std::size_t i = 0; i < dim; ++i) w[i] -= overlap * v.components()[i];
        const auto rw = r * w;
        for (std::size_t i = 0; i < dim; ++i) EXPECT_NEAR(std::abs(rw[i] - w[i]), 0.0, 1e-14);
    }
}

TEST(Tridiagonalize, ChainIsLeftAlone) {
    const ComplexMatrix chain{{0.0, 0.5, 0.0}, {0.5, 1.0, Complex(0, 0.25)}, {0.0, Complex(0, -0.25), -1.0}};
    const auto result = tridiagonalize(HermitianMatrix(chain));
    EXPECT_EQ(result.reflections, 0);
    EXPECT_LT(max_abs_difference(result.tridiagonal.matrix(), chain), 1e-15);
    EXPECT_LT(max_abs_difference(result.transform.matrix(), ComplexMatrix::identity(3)), 1e-15);
}

TEST(Tridiagonalize, TwoByTwoUnchanged) {
    const ComplexMatrix h{{1.0, Complex(2, 1)}, {Complex(2, -1), -3.0}};
    const auto result = tridiagonalize(HermitianMatrix(h));
    EXPECT_EQ(result.reflections, 0);
    EXPECT_LT(max_abs_difference(result.tridiagonal.matrix(), h), 1e-15);
    EXPECT_LT(max_abs_difference(result.transform.matrix(), ComplexMatrix::identity(2)), 1e-15);
}

TEST(Tridiagonalize, LoopMatrixNeedsOneReflection) {
    const ComplexMatrix loop{{0.0, 0.5, 0.5}, {0.5, 0.0, 1.0}, {0.5, 1.0, 0.0}};
    const auto result = tridiagonalize(HermitianMatrix(loop));
    EXPECT_EQ(result.reflections, 1);
    EXPECT_LT(off_tridiagonal_magnitude(result.tridiagonal.matrix()), 1e-12);
    const auto& q = result.transform.matrix();
    EXPECT_LT(max_abs_difference(adjoint(q) * loop * q, result.tridiagonal.matrix()), 1e-14);
}

TEST(Tridiagonalize, RejectsNonHermitianAndTooSmall) {
    EXPECT_THROW(HermitianMatrix(ComplexMatrix{{0.0, 1.0}, {2.0, 0.0}}), InvalidInput);
    EXPECT_THROW(tridiagonalize(HermitianMatrix(ComplexMatrix{{1.0}})), InvalidInput);
}

TEST(Tridiagonalize, SeededFourByFourAgainstEigenOracle) {
    std::mt19937_64 rng(4);
    const auto h = oracle::random_hermitian(rng, 4);
    const auto result = tridiagonalize(HermitianMatrix(h));
    EXPECT_EQ(result.reflections, 2);
    EXPECT_LT(off_tridiagonal_magnitude(result.tridiagonal.matrix()), 1e-12 * h.frobenius_norm());
    const auto expected = oracle::eigenvalues_charpoly(h);
    const auto actual = oracle::eigenvalues_sturm(result.tridiagonal.matrix());
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(actual[k], expected[k], 1e-10);
}

TEST(Tridiagonalize, NearlyAlignedColumnIsStable) {
    // Sub-column almost parallel to e_{n+1}: the naive x - |x| e shift would cancel.
    ComplexMatrix h{{1.0, Complex(1.0, 1.0), 1e-9, 0.0},
                    {Complex(1.0, -1.0), 2.0, 0.5, 0.0},
                    {1e-9, 0.5, -1.0, 0.25},
                    {0.0, 0.0, 0.25, 3.0}};
    const auto result = tridiagonalize(HermitianMatrix(h));
    const auto& q = result.transform.matrix();
    EXPECT_LT(max_abs_difference(adjoint(q) * h * q, result.tridiagonal.matrix()), 1e-13);
    EXPECT_LT(off_tridiagonal_magnitude(result.tridiagonal.matrix()), 1e-12);
    EXPECT_LT(max_abs_difference(adjoint(q) * q, ComplexMatrix::identity(4)), 1e-14);
}

TEST(Tridiagonalize, TinyTailIsSkipped) {
    ComplexMatrix h{{1.0, 1.0, 1e-16}, {1.0, 2.0, 0.5}, {1e-16, 0.5, -1.0}};
    const auto result = tridiagonalize(HermitianMatrix(h));
    EXPECT_EQ(result.reflections, 0);
}

TEST(Tridiagonalize, RandomPropertySweep) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 2 + static_cast<std::size_t>(trial % 7);
        const auto h = oracle::random_hermitian(rng, dim);
        const auto result = tridiagonalize(HermitianMatrix(h));
        const auto& t = result.tridiagonal.matrix();
        const auto& q = result.transform.matrix();
        EXPECT_LE(result.reflections, static_cast<int>(dim) - 2);
        EXPECT_LT(off_tridiagonal_magnitude(t), 1e-12 * h.frobenius_norm());
        EXPECT_LT(max_abs_difference(adjoint(q) * q, ComplexMatrix::identity(dim)), 1e-10);
        EXPECT_LT(max_abs_difference(adjoint(q) * h * q, t), 1e-10);
    }
}
