// Copyright 2026 The hystfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "hystfem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/SparseCore>
#include <Eigen/UmfPackSupport>

#include "hystfem/errors.hpp"

namespace hystfem
{

CsrMatrix::CsrMatrix(int n_rows, int n_cols, std::vector<int> row_ptr, std::vector<int> col_idx,
                     std::vector<double> vals)
  : n_rows_(n_rows), n_cols_(n_cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)),
    vals_(std::move(vals))
{
  if (n_rows_ < 0 || n_cols_ < 0 || static_cast<int>(row_ptr_.size()) != n_rows_ + 1 ||
      row_ptr_.front() != 0 || row_ptr_.back() != static_cast<int>(col_idx_.size()) ||
      col_idx_.size() != vals_.size())
  {
    throw InvalidArgument("inconsistent CSR arrays");
  }
  for (int i = 0; i < n_rows_; i++)
  {
    if (row_ptr_[i] > row_ptr_[i + 1])
    {
      throw InvalidArgument("CSR row pointers must be nondecreasing");
    }
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; k++)
    {
      if (col_idx_[k] < 0 || col_idx_[k] >= n_cols_ ||
          (k > row_ptr_[i] && col_idx_[k] <= col_idx_[k - 1]))
      {
        throw InvalidArgument("CSR column indices must be in range and strictly increasing");
      }
    }
  }
}

double CsrMatrix::At(int i, int j) const
{
  auto first = col_idx_.begin() + row_ptr_[i];
  auto last = col_idx_.begin() + row_ptr_[i + 1];
  auto it = std::lower_bound(first, last, j);
  return (it != last && *it == j) ? vals_[it - col_idx_.begin()] : 0.0;
}

double CsrMatrix::FrobeniusNorm() const
{
  return norm2(vals_);
}

CsrMatrix csr_from_triplets(int n_rows, int n_cols, std::span<const Triplet> triplets)
{
  std::vector<int> count(n_rows + 1, 0);
  for (const auto &t : triplets)
  {
    if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols)
    {
      throw InvalidArgument("triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                            ") out of range");
    }
    count[t.row + 1]++;
  }
  std::partial_sum(count.begin(), count.end(), count.begin());

  // Bucket by row, then sort each row by column with a stable order so the
  // summation sequence is fixed by the input order.
  std::vector<int> order(triplets.size());
  {
    std::vector<int> next(count.begin(), count.end() - 1);
    for (int k = 0; k < static_cast<int>(triplets.size()); k++)
    {
      order[next[triplets[k].row]++] = k;
    }
  }
  std::vector<int> row_ptr(n_rows + 1, 0), col_idx;
  std::vector<double> vals;
  col_idx.reserve(triplets.size());
  vals.reserve(triplets.size());
  for (int i = 0; i < n_rows; i++)
  {
    auto first = order.begin() + count[i];
    auto last = order.begin() + count[i + 1];
    std::stable_sort(first, last,
                     [&](int a, int b) { return triplets[a].col < triplets[b].col; });
    for (auto it = first; it != last; ++it)
    {
      const auto &t = triplets[*it];
      if (static_cast<int>(col_idx.size()) > row_ptr[i] && col_idx.back() == t.col)
      {
        vals.back() += t.value;
      }
      else
      {
        col_idx.push_back(t.col);
        vals.push_back(t.value);
      }
    }
    row_ptr[i + 1] = static_cast<int>(col_idx.size());
  }
  return CsrMatrix(n_rows, n_cols, std::move(row_ptr), std::move(col_idx), std::move(vals));
}

Vector spmv(const CsrMatrix &A, std::span<const double> x)
{
  if (static_cast<int>(x.size()) != A.Cols())
  {
    throw InvalidArgument("spmv dimension mismatch");
  }
  const auto &rp = A.RowPtr();
  const auto &ci = A.ColIdx();
  const auto &v = A.Values();
  Vector y(A.Rows(), 0.0);
  for (int i = 0; i < A.Rows(); i++)
  {
    double s = 0.0;
    for (int k = rp[i]; k < rp[i + 1]; k++)
    {
      s += v[k] * x[ci[k]];
    }
    y[i] = s;
  }
  return y;
}

double norm2(std::span<const double> x)
{
  // Scaled accumulation keeps huge residuals in line-search trials finite.
  double scale = 0.0, ssq = 1.0;
  for (double xi : x)
  {
    if (xi != 0.0)
    {
      const double a = std::abs(xi);
      if (!std::isfinite(a))
      {
        return a;
      }
      if (scale < a)
      {
        ssq = 1.0 + ssq * (scale / a) * (scale / a);
        scale = a;
      }
      else
      {
        ssq += (a / scale) * (a / scale);
      }
    }
  }
  return scale * std::sqrt(ssq);
}

namespace
{

using EigenRowMap = Eigen::Map<const Eigen::SparseMatrix<double, Eigen::RowMajor, int>>;

bool ResidualContract(const CsrMatrix &A, std::span<const double> b, const Vector &x,
                      Vector &r)
{
  r = spmv(A, x);
  for (std::size_t i = 0; i < r.size(); i++)
  {
    r[i] = b[i] - r[i];
  }
  const double rn = norm2(r);
  return std::isfinite(rn) && rn <= 1e-10 * (norm2(b) + A.FrobeniusNorm() * norm2(x));
}

}  // namespace

Vector solve_linear(const CsrMatrix &A, std::span<const double> b)
{
  if (A.Rows() != A.Cols() || static_cast<int>(b.size()) != A.Rows())
  {
    throw InvalidArgument("solve_linear needs a square system of matching size");
  }
  const int n = A.Rows();
  if (n == 0)
  {
    return {};
  }
  EigenRowMap map(n, n, A.NonZeros(), A.RowPtr().data(), A.ColIdx().data(), A.Values().data());
  Eigen::SparseMatrix<double, Eigen::ColMajor, int> colmajor = map;
  Eigen::UmfPackLU<Eigen::SparseMatrix<double, Eigen::ColMajor, int>> lu;
  lu.compute(colmajor);
  if (lu.info() != Eigen::Success)
  {
    throw SingularMatrix("sparse LU factorization failed");
  }
  Eigen::Map<const Eigen::VectorXd> rhs(b.data(), n);
  Eigen::VectorXd sol = lu.solve(rhs);
  Vector x(sol.data(), sol.data() + n);

  Vector r;
  if (ResidualContract(A, b, x, r))
  {
    return x;
  }
  // One round of iterative refinement before declaring the system singular.
  Eigen::Map<const Eigen::VectorXd> res(r.data(), n);
  Eigen::VectorXd dx = lu.solve(res);
  for (int i = 0; i < n; i++)
  {
    x[i] += dx[i];
  }
  if (!ResidualContract(A, b, x, r))
  {
    throw SingularMatrix("linear solve residual exceeds tolerance; matrix is numerically singular");
  }
  return x;
}

void NewtonSettings::Validate() const
{
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
  {
    throw InvalidArgument("Newton tolerances must be positive");
  }
  if (max_iter < 0)
  {
    throw InvalidArgument("Newton max_iter must be nonnegative");
  }
  if (!(armijo_c > 0.0 && armijo_c <= 0.5))
  {
    throw InvalidArgument("Armijo constant must lie in (0, 0.5]");
  }
  if (!(backtrack > 0.0 && backtrack < 1.0))
  {
    throw InvalidArgument("backtracking factor must lie in (0, 1)");
  }
  if (!(min_step > 0.0 && min_step <= 1.0))
  {
    throw InvalidArgument("minimum Newton step must lie in (0, 1]");
  }
}

double SolveReport::RelativeResidual() const
{
  const double r0 = InitialResidual();
  return r0 > 0.0 ? FinalResidual() / r0 : 0.0;
}

NewtonResult newton_solve(const ResidualFn &residual, const JacobianFn &jacobian, Vector u0,
                          const NewtonSettings &settings)
{
  settings.Validate();
  NewtonResult out{std::move(u0), {}};
  Vector &u = out.u;
  SolveReport &report = out.report;

  Vector R = residual(u);
  double r = norm2(R);
  report.residual_history.push_back(r);
  if (!std::isfinite(r))
  {
    return out;
  }
  const double target = std::max(settings.abs_tol, settings.rel_tol * r);

  Vector trial(u.size());
  while (r > target && report.iterations < settings.max_iter)
  {
    Vector rhs(R.size());
    for (std::size_t i = 0; i < R.size(); i++)
    {
      rhs[i] = -R[i];
    }
    const Vector d = solve_linear(jacobian(u), rhs);

    double alpha = 1.0;
    Vector R_trial;
    double r_trial;
    while (true)
    {
      for (std::size_t i = 0; i < u.size(); i++)
      {
        trial[i] = u[i] + alpha * d[i];
      }
      R_trial = residual(trial);
      r_trial = norm2(R_trial);
      if (std::isfinite(r_trial) && r_trial <= (1.0 - settings.armijo_c * alpha) * r)
      {
        break;
      }
      alpha *= settings.backtrack;
      if (alpha < settings.min_step)
      {
        alpha = settings.min_step;
        for (std::size_t i = 0; i < u.size(); i++)
        {
          trial[i] = u[i] + alpha * d[i];
        }
        R_trial = residual(trial);
        r_trial = norm2(R_trial);
        break;
      }
    }
    u.swap(trial);
    R = std::move(R_trial);
    r = r_trial;
    report.iterations++;
    report.residual_history.push_back(r);
    report.step_sizes.push_back(alpha);
    if (!std::isfinite(r))
    {
      break;
    }
  }
  report.converged = std::isfinite(r) && r <= target;
  return out;
}

}  // namespace hystfem
