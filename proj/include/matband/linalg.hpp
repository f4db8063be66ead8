#pragma once

#include <cstddef>
#include <vector>

#include "matband/mat2.hpp"

namespace matband {

/// Dense real square matrix, row-major. Doubles as a block matrix: when the
/// dimension is even, entry blocks can be addressed as 2x2 tiles, which is how
/// the band-limiting Gram and Galerkin matrices are assembled.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim, 0.0) {}

    static Matrix identity(int dim);

    int dim() const { return dim_; }
    double& at(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
    double at(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }

    /// 2x2 tile with rows 2*br.., columns 2*bc.. (requires 2*br+1, 2*bc+1 < dim).
    Mat2 block(int br, int bc) const;
    void set_block(int br, int bc, const Mat2& m);

    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    double frobenius() const;
    /// max |a_ij - a_ji|
    double asymmetry() const;

    const std::vector<double>& data() const { return a_; }

  private:
    int dim_ = 0;
    std::vector<double> a_;
};

struct EigenResult {
    std::vector<double> values;  ///< ascending
    Matrix vectors;              ///< column k pairs with values[k]
};

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Rejects inputs whose asymmetry exceeds 1e-10 * frobenius (the measured
/// asymmetry is quoted in the error). Converges when the off-diagonal
/// Frobenius norm falls below tol * frobenius (default 1e-14); throws after
/// 100 sweeps. Eigenvalues ascend; each eigenvector is normalized with its
/// first nonzero component positive so results are reproducible.
EigenResult sym_eig(const Matrix& a, double tol = 1e-14);

/// Convenience overload for 2x2 inputs.
EigenResult sym_eig(const Mat2& a, double tol = 1e-14);

}  // namespace matband
