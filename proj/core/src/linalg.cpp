#include "loopchain/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "loopchain/errors.hpp"

namespace loopchain {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
    if (a != b) {
        throw InvalidInput(std::string(op) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                           std::to_string(b) + ")");
    }
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// In-place products with R = I - 2 u u^dagger, where u vanishes above index `from`.
void reflect_rows(ComplexMatrix& a, const ComplexVector& u, std::size_t from) {
    const std::size_t n = a.dim();
    for (std::size_t j = 0; j < n; ++j) {
        Complex w = 0.0;
        for (std::size_t i = from; i < n; ++i) w += std::conj(u[i]) * a(i, j);
        w *= 2.0;
        for (std::size_t i = from; i < n; ++i) a(i, j) -= u[i] * w;
    }
}

void reflect_columns(ComplexMatrix& a, const ComplexVector& u, std::size_t from) {
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i) {
        Complex w = 0.0;
        for (std::size_t j = from; j < n; ++j) w += a(i, j) * u[j];
        w *= 2.0;
        for (std::size_t j = from; j < n; ++j) a(i, j) -= w * std::conj(u[j]);
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    if (dim == 0) throw InvalidInput("matrix dimension must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim == 0) throw InvalidInput("matrix dimension must be positive");
    if (entries_.size() != dim * dim) {
        throw InvalidInput("matrix needs " + std::to_string(dim * dim) + " entries, got " +
                           std::to_string(entries_.size()));
    }
    if (!std::all_of(entries_.begin(), entries_.end(), finite)) {
        throw InvalidInput("matrix entries must be finite");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
    if (dim_ == 0) throw InvalidInput("matrix dimension must be positive");
    entries_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) throw InvalidInput("matrix rows must all have length " + std::to_string(dim_));
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
    if (!std::all_of(entries_.begin(), entries_.end(), finite)) {
        throw InvalidInput("matrix entries must be finite");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

double ComplexMatrix::max_abs() const {
    double best = 0.0;
    for (const auto& z : entries_) best = std::max(best, std::abs(z));
    return best;
}

double ComplexMatrix::frobenius_norm() const {
    double sum = 0.0;
    for (const auto& z : entries_) sum += std::norm(z);
    return std::sqrt(sum);
}

bool is_hermitian(const ComplexMatrix& a, double relative_tolerance) {
    const double bound = relative_tolerance * std::max(a.max_abs(), 1e-300);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = i; j < a.dim(); ++j) {
            if (std::abs(a(i, j) - std::conj(a(j, i))) > bound) return false;
        }
    }
    return true;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (!is_hermitian(m_)) throw InvalidInput("matrix is not hermitian");
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {
    const auto product = multiply(adjoint(m_), m_);
    if (max_abs_difference(product, ComplexMatrix::identity(m_.dim())) > kTolerance) {
        throw InvalidInput("matrix is not unitary");
    }
}

HouseholderVector::HouseholderVector(ComplexVector components) : v_(std::move(components)) {
    if (v_.empty()) throw InvalidInput("Householder vector must be non-empty");
    if (std::abs(norm(v_) - 1.0) > kTolerance) {
        throw InvalidInput("Householder vector must have unit norm, got " + std::to_string(norm(v_)));
    }
}

HouseholderVector HouseholderVector::normalized(ComplexVector components) {
    const double n = norm(components);
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("cannot normalize a zero or non-finite vector");
    for (auto& z : components) z /= n;
    return HouseholderVector(std::move(components));
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "multiply");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexVector multiply(const ComplexMatrix& a, std::span<const Complex> v) {
    require_same_dim(a.dim(), v.size(), "multiply");
    const std::size_t n = a.dim();
    ComplexVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex sum{};
        for (std::size_t j = 0; j < n; ++j) sum += a(i, j) * v[j];
        out[i] = sum;
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out(i, j) = std::conj(a(j, i));
    }
    return out;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "add");
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) += b(i, j);
    }
    return out;
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "subtract");
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) -= b(i, j);
    }
    return out;
}

ComplexMatrix scale(const ComplexMatrix& a, Complex factor) {
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) *= factor;
    }
    return out;
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
    require_same_dim(u.size(), v.size(), "inner");
    Complex sum{};
    for (std::size_t i = 0; i < u.size(); ++i) sum += std::conj(u[i]) * v[i];
    return sum;
}

double norm(std::span<const Complex> v) {
    double sum = 0.0;
    for (const auto& z : v) sum += std::norm(z);
    return std::sqrt(sum);
}

Complex determinant(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix lu = a;
    Complex det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
        }
        if (lu(pivot, col) == Complex{}) return 0.0;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(pivot, j), lu(col, j));
            det = -det;
        }
        det *= lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = lu(r, col) / lu(col, col);
            for (std::size_t j = col; j < n; ++j) lu(r, j) -= f * lu(col, j);
        }
    }
    return det;
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "max_abs_difference");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    }
    return worst;
}

UnitaryMatrix reflection_from_vector(const HouseholderVector& v) {
    const auto& c = v.components();
    const std::size_t n = c.size();
    ComplexMatrix r = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) r(i, j) -= 2.0 * c[i] * std::conj(c[j]);
    }
    return UnitaryMatrix(std::move(r));
}

double off_tridiagonal_magnitude(const ComplexMatrix& t) {
    double worst = 0.0;
    for (std::size_t i = 0; i < t.dim(); ++i) {
        for (std::size_t j = 0; j < t.dim(); ++j) {
            const std::size_t gap = i > j ? i - j : j - i;
            if (gap > 1) worst = std::max(worst, std::abs(t(i, j)));
        }
    }
    return worst;
}

Tridiagonalization tridiagonalize(const HermitianMatrix& h) {
    const std::size_t n = h.dim();
    if (n < 2) throw InvalidInput("tridiagonalize needs dim >= 2");

    ComplexMatrix a = h.matrix();
    ComplexMatrix q = ComplexMatrix::identity(n);
    const double scale_norm = h.matrix().frobenius_norm();
    const double skip_below = 1e-14 * scale_norm;
    int reflections = 0;

    for (std::size_t col = 0; col + 2 < n; ++col) {
        // Sub-column x: entries col+1..n-1 of column col; rows above are zero.
        const std::size_t pivot = col + 1;
        double tail = 0.0;
        for (std::size_t r = pivot + 1; r < n; ++r) tail += std::norm(a(r, col));
        tail = std::sqrt(tail);
        if (tail <= skip_below || tail == 0.0) continue;

        const double length = std::hypot(std::abs(a(pivot, col)), tail);
        const Complex x_pivot = a(pivot, col);
        const Complex phase = x_pivot == Complex{} ? Complex{1.0} : x_pivot / std::abs(x_pivot);

        ComplexVector v(n);
        for (std::size_t r = pivot; r < n; ++r) v[r] = a(r, col);
        v[pivot] += phase * length;
        const auto u = HouseholderVector::normalized(std::move(v));
        reflect_rows(a, u.components(), pivot);
        reflect_columns(a, u.components(), pivot);
        reflect_columns(q, u.components(), pivot);
        ++reflections;

        // The reflection maps x onto -phase*|x| e_{pivot}; clear the rounding residue.
        for (std::size_t row = pivot + 1; row < n; ++row) {
            a(row, col) = 0.0;
            a(col, row) = 0.0;
        }
    }

    // Restore exact hermitian symmetry lost to rounding.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) a(j, i) = std::conj(a(i, j));
    }
    return Tridiagonalization{HermitianMatrix(std::move(a)), UnitaryMatrix(std::move(q)), reflections};
}

}  // namespace loopchain
