#include "ptsim/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace ptsim {

namespace {
void check_dim(int dim) {
    if (dim < 2 || dim > 4)
        throw ValidationError("invalid matrix dimension " + std::to_string(dim) +
                              " (supported: 2, 3, 4)");
}
} // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) { check_dim(dim); }

ComplexMatrix::ComplexMatrix(int dim, std::initializer_list<Complex> row_major) : dim_(dim) {
    check_dim(dim);
    if (static_cast<int>(row_major.size()) != dim * dim)
        throw ValidationError("entry count does not match matrix dimension");
    int k = 0;
    for (Complex z : row_major) {
        (*this)(k / dim, k % dim) = z;
        ++k;
    }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

void ComplexMatrix::check_same_dim(const ComplexMatrix& o) const {
    if (dim_ != o.dim_) throw ValidationError("matrix dimension mismatch");
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
    check_same_dim(o);
    ComplexMatrix r(dim_);
    for (int i = 0; i < 16; ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
    check_same_dim(o);
    ComplexMatrix r(dim_);
    for (int i = 0; i < 16; ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
    check_same_dim(o);
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) {
            const Complex aik = (*this)(i, k);
            if (aik == Complex{}) continue;
            for (int j = 0; j < dim_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

ComplexMatrix ComplexMatrix::operator*(Complex z) const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < 16; ++i) r.a_[i] = a_[i] * z;
    return r;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(i, j) = (*this)(j, i);
    return r;
}

Complex ComplexMatrix::trace() const {
    Complex t{};
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
}

bool ComplexMatrix::is_finite() const {
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            const Complex z = (*this)(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
    return true;
}

double ComplexMatrix::hermiticity_defect() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

double ComplexMatrix::anti_hermiticity_defect() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) + std::conj((*this)(j, i))));
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).max_abs();
}

RealSymmetricMatrix3::RealSymmetricMatrix3() {
    for (auto& row : e_)
        for (double& v : row) v = 0.0;
}

RealSymmetricMatrix3 RealSymmetricMatrix3::symmetrized(const double (&raw)[3][3]) {
    RealSymmetricMatrix3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) m.set(i, j, 0.5 * (raw[i][j] + raw[j][i]));
    return m;
}

ComplexMatrix RealSymmetricMatrix3::as_complex() const {
    ComplexMatrix m(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = e_[i][j];
    return m;
}

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0, 1, 1, 0}); }
ComplexMatrix pauli_y() { return ComplexMatrix(2, {0, Complex(0, -1), Complex(0, 1), 0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1, 0, 0, -1}); }
ComplexMatrix sigma_lower() { return ComplexMatrix(2, {0, 0, 1, 0}); }
ComplexMatrix sigma_raise() { return ComplexMatrix(2, {0, 1, 0, 0}); }

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2)
        throw ValidationError("tensor_product expects two 2x2 factors");
    ComplexMatrix r(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, int which_qubit) {
    if (rho.dim() != 4) throw ValidationError("partial_trace expects a 4x4 matrix");
    if (which_qubit != 1 && which_qubit != 2)
        throw ValidationError("partial_trace: qubit index must be 1 or 2");
    ComplexMatrix r(2);
    if (which_qubit == 1) {
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l)
                r(k, l) = rho(k, l) + rho(2 + k, 2 + l);
    } else {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
    }
    return r;
}

} // namespace ptsim
