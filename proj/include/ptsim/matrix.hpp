#ifndef PTSIM_MATRIX_HPP
#define PTSIM_MATRIX_HPP

#include <array>
#include <complex>
#include <initializer_list>
#include <vector>

#include "ptsim/errors.hpp"

namespace ptsim {

using Complex = std::complex<double>;

/// Dense complex matrix of dimension 2, 3 or 4. Values are stored in a
/// fixed 4x4 block so copies are cheap and allocation-free.
class ComplexMatrix {
  public:
    explicit ComplexMatrix(int dim);
    ComplexMatrix(int dim, std::initializer_list<Complex> row_major);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

    int dim() const { return dim_; }

    Complex& operator()(int i, int j) { return a_[i * 4 + j]; }
    const Complex& operator()(int i, int j) const { return a_[i * 4 + j]; }

    ComplexMatrix operator+(const ComplexMatrix& o) const;
    ComplexMatrix operator-(const ComplexMatrix& o) const;
    ComplexMatrix operator*(const ComplexMatrix& o) const;
    ComplexMatrix operator*(Complex z) const;
    friend ComplexMatrix operator*(Complex z, const ComplexMatrix& m) { return m * z; }

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix transpose() const;

    Complex trace() const;
    double max_abs() const;
    bool is_finite() const;

    /// max_{ij} |a_ij - conj(a_ji)|
    double hermiticity_defect() const;
    /// max_{ij} |a_ij + conj(a_ji)|
    double anti_hermiticity_defect() const;

  private:
    int dim_;
    std::array<Complex, 16> a_{};
    void check_same_dim(const ComplexMatrix& o) const;
};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// 3x3 real symmetric matrix; constructed symmetrized from possibly
/// asymmetric input so entries[i][j] == entries[j][i] holds exactly.
class RealSymmetricMatrix3 {
  public:
    RealSymmetricMatrix3();
    static RealSymmetricMatrix3 symmetrized(const double (&raw)[3][3]);

    double operator()(int i, int j) const { return e_[i][j]; }
    void set(int i, int j, double v) { e_[i][j] = v; e_[j][i] = v; }

    ComplexMatrix as_complex() const;

  private:
    double e_[3][3];
};

// Pauli matrices and the amplitude-damping jump operator. The first basis
// vector |0> is the excited state of a qubit, so the lowering operator is
// |1><0|; this matches the damped-state populations in the 4x4 basis
// |00>,|01>,|10>,|11> with qubit-1 the left tensor factor.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix sigma_lower();
ComplexMatrix sigma_raise();

/// Kronecker product of two 2x2 matrices; qubit-1 is the left (slow) factor.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out the named qubit (1 or 2) of a 4x4 operator.
ComplexMatrix partial_trace(const ComplexMatrix& rho, int which_qubit);

} // namespace ptsim

#endif
