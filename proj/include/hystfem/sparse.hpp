// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYSTFEM_SPARSE_HPP
#define HYSTFEM_SPARSE_HPP

#include <functional>
#include <span>
#include <vector>

namespace hystfem
{

using Vector = std::vector<double>;

struct Triplet
{
  int row;
  int col;
  double value;
};

//
// Compressed sparse row storage with sorted, unique column indices per row.
//
class CsrMatrix
{
public:
  CsrMatrix() = default;
  CsrMatrix(int n_rows, int n_cols, std::vector<int> row_ptr, std::vector<int> col_idx,
            std::vector<double> vals);

  int Rows() const { return n_rows_; }
  int Cols() const { return n_cols_; }
  int NonZeros() const { return static_cast<int>(vals_.size()); }

  const std::vector<int> &RowPtr() const { return row_ptr_; }
  const std::vector<int> &ColIdx() const { return col_idx_; }
  const std::vector<double> &Values() const { return vals_; }

  // Stored value at (i, j), or zero outside the pattern.
  double At(int i, int j) const;

  double FrobeniusNorm() const;

private:
  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> vals_;
};

// Duplicate (row, col) contributions are summed; entries that sum to zero stay in
// the pattern.
CsrMatrix csr_from_triplets(int n_rows, int n_cols, std::span<const Triplet> triplets);

Vector spmv(const CsrMatrix &A, std::span<const double> x);

// Sparse direct LU (UMFPACK, threshold partial pivoting). The result satisfies
//   |Ax - b| <= 1e-10 (|b| + |A|_F |x|),
// otherwise SingularMatrix is thrown.
Vector solve_linear(const CsrMatrix &A, std::span<const double> b);

double norm2(std::span<const double> x);

struct NewtonSettings
{
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_iter = 25;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double min_step = 1e-4;

  void Validate() const;
};

struct SolveReport
{
  int iterations = 0;
  std::vector<double> residual_history;  // iterations + 1 entries
  std::vector<double> step_sizes;        // one damping factor per iteration
  bool converged = false;

  double InitialResidual() const { return residual_history.front(); }
  double FinalResidual() const { return residual_history.back(); }
  double RelativeResidual() const;
};

using ResidualFn = std::function<Vector(const Vector &)>;
using JacobianFn = std::function<CsrMatrix(const Vector &)>;

struct NewtonResult
{
  Vector u;
  SolveReport report;
};

// Newton's method with Armijo backtracking on the Euclidean residual norm. A step is
// accepted once |R(u + a d)| <= (1 - c a) |R(u)|; if a falls below min_step the
// step is taken with a = min_step. Non-convergence is reported, not thrown.
NewtonResult newton_solve(const ResidualFn &residual, const JacobianFn &jacobian, Vector u0,
                          const NewtonSettings &settings);

}  // namespace hystfem

#endif  // HYSTFEM_SPARSE_HPP
