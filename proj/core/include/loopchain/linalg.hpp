#pragma once

// Dense complex linear algebra for desk-scale matrices (dim <= 64):
// arithmetic, Householder reflections and hermitian tridiagonalization.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace loopchain {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr Complex kI{0.0, 1.0};

/// Square complex matrix, row-major. Entries are always finite.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }

    Complex operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }

    std::span<const Complex> entries() const { return entries_; }

    double max_abs() const;
    double frobenius_norm() const;

private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

/// A matrix equal to its conjugate transpose within 1e-12 relative to its
/// largest entry.
class HermitianMatrix {
public:
    static constexpr double kTolerance = 1e-12;

    explicit HermitianMatrix(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.dim(); }
    Complex operator()(std::size_t row, std::size_t col) const { return m_(row, col); }

private:
    ComplexMatrix m_;
};

/// U^dagger U = I within 1e-10 entrywise.
class UnitaryMatrix {
public:
    static constexpr double kTolerance = 1e-10;

    explicit UnitaryMatrix(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.dim(); }
    Complex operator()(std::size_t row, std::size_t col) const { return m_(row, col); }

private:
    ComplexMatrix m_;
};

/// Unit-norm vector |v> defining the reflection I - 2|v><v|.
class HouseholderVector {
public:
    static constexpr double kTolerance = 1e-12;

    /// Throws InvalidInput unless |v| = 1 within tolerance.
    explicit HouseholderVector(ComplexVector components);

    /// Scales a nonzero vector to unit norm.
    static HouseholderVector normalized(ComplexVector components);

    std::size_t dim() const { return v_.size(); }
    const ComplexVector& components() const { return v_; }

private:
    ComplexVector v_;
};

// Arithmetic. Every binary operation throws InvalidInput on dimension mismatch.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector multiply(const ComplexMatrix& a, std::span<const Complex> v);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, Complex factor);

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return multiply(a, b); }
inline ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v) { return multiply(a, v); }
inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) { return subtract(a, b); }
inline ComplexMatrix operator*(Complex factor, const ComplexMatrix& a) { return scale(a, factor); }

/// <u|v>, conjugate-linear in u.
Complex inner(std::span<const Complex> u, std::span<const Complex> v);
double norm(std::span<const Complex> v);

/// LU with partial pivoting.
Complex determinant(const ComplexMatrix& a);

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& a, double relative_tolerance = HermitianMatrix::kTolerance);

/// R = I - 2|v><v|: hermitian, unitary, involutary, det R = -1.
UnitaryMatrix reflection_from_vector(const HouseholderVector& v);

struct Tridiagonalization {
    HermitianMatrix tridiagonal;  ///< T = Q^dagger H Q
    UnitaryMatrix transform;      ///< Q, product of the applied reflections
    int reflections = 0;          ///< number of non-skipped steps, at most dim - 2
};

/// Reduces H to tridiagonal form by successive Householder reflections.
///
/// Step n annihilates column n below the subdiagonal using the vector
/// built from that sub-column. The shift carries the phase of the pivot
/// entry x[n+1], so the subtraction never cancels. A step is skipped when
/// the part of the column to annihilate is already below 1e-14 * |H|_F.
Tridiagonalization tridiagonalize(const HermitianMatrix& h);

/// Largest |T(i,j)| with |i - j| > 1.
double off_tridiagonal_magnitude(const ComplexMatrix& t);

}  // namespace loopchain
