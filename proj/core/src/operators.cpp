#include "bogctilt/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bogctilt {

TruncatedOperator toeplitz_matrix(const LaurentSeries& f, int M, std::string label) {
  if (M < 1) throw std::invalid_argument("toeplitz_matrix: M < 1");
  TruncatedOperator op{M, Matrix(M, M), std::move(label)};
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) op.entries(i, j) = f.coeff(i - j);
  return op;
}

TruncatedOperator hankel_matrix(const LaurentSeries& f, int M, std::string label) {
  if (M < 1) throw std::invalid_argument("hankel_matrix: M < 1");
  TruncatedOperator op{M, Matrix(M, M), std::move(label)};
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) op.entries(i, j) = f.coeff(i + j + 1);
  return op;
}

TruncatedOperator bogc_kernel(const SymbolFactorization& fact, int M) {
  if (2 * M > fact.truncation_order)
    throw std::invalid_argument("bogc_kernel: truncation supports only M <= half_width/2");
  TruncatedOperator hb = hankel_matrix(fact.b, M, "H(b)");
  TruncatedOperator hc = hankel_matrix(fact.c_tilde, M, "H(c~)");
  TruncatedOperator k{M, hb.entries * hc.entries, "K"};
  return k;
}

LogDet fredholm_logdet(const TruncatedOperator& op, int row_col_start) {
  if (row_col_start < 0 || row_col_start >= op.size)
    throw std::invalid_argument("fredholm_det: row_col_start out of range");
  int n = op.size - row_col_start;
  Matrix block = Matrix::Identity(n, n) - op.entries.block(row_col_start, row_col_start, n, n);
  return logdet_lu(block);
}

FredholmResult fredholm_det(const TruncatedOperator& op, int row_col_start) {
  FredholmResult res;
  res.truncation_size = op.size;
  res.value = fredholm_logdet(op, row_col_start).value();
  int n = op.size - row_col_start;
  int half = n / 2;
  if (half >= 1) {
    Matrix hblock = Matrix::Identity(half, half) -
                    op.entries.block(row_col_start, row_col_start, half, half);
    res.doubling_delta = std::abs(res.value - logdet_lu(hblock).value());
  }
  return res;
}

double verify_wh_identity(const SymbolFactorization& fact, int M) {
  if (2 * M > fact.truncation_order)
    throw std::invalid_argument("verify_wh_identity: M > half_width/2");
  Matrix t_phi = toeplitz_matrix(fact.phi, M).entries;
  Matrix t_plus = toeplitz_matrix(fact.phi_plus, M).entries;
  Matrix t_minus = toeplitz_matrix(fact.phi_minus, M).entries;
  Matrix k = bogc_kernel(fact, M).entries;
  Matrix a = Matrix::Identity(M, M) - k;
  // G T(phi+) (I-K)^{-1} T(phi-), with the resolvent applied by solving.
  Matrix rhs = fact.geometric_mean * (t_plus * lu_solve(a, t_minus));
  int q = M / 2;
  if (q < 1) q = 1;
  return max_abs((t_phi - rhs).topLeftCorner(q, q));
}

namespace {

Matrix submatrix(const Matrix& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix out(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) out(i, j) = a(rows[i], cols[j]);
  return out;
}

}  // namespace

double jacobi_minor_check(const Matrix& a, const std::vector<int>& u_indices,
                          const std::vector<int>& v_indices) {
  const int n = static_cast<int>(a.rows());
  std::vector<char> seen(n, 0);
  for (int i : u_indices) seen.at(i) += 1;
  for (int i : v_indices) seen.at(i) += 1;
  for (int i = 0; i < n; ++i)
    if (seen[i] != 1)
      throw std::invalid_argument("jacobi_minor_check: U, V must partition the index set");

  LogDet det_a = logdet_lu(a);
  if (det_a.singular()) throw std::invalid_argument("jacobi_minor_check: A is singular");
  Matrix a_inv = lu_solve(a, Matrix::Identity(n, n));
  cplx lhs = det_lu(submatrix(a_inv, u_indices, u_indices));
  cplx rhs = det_lu(submatrix(a, v_indices, v_indices)) / det_a.value();
  return std::abs(lhs - rhs);
}

double jacobi_minor_check_oblique(const Matrix& a, const Matrix& r, const Matrix& c) {
  const int n = static_cast<int>(a.rows());
  const int nch = static_cast<int>(r.rows());
  if (c.cols() != nch || c.rows() != n || r.cols() != n)
    throw std::invalid_argument("jacobi_minor_check_oblique: shape mismatch");
  Matrix gamma = r * c;
  LogDet det_gamma = logdet_lu(gamma);
  LogDet det_a = logdet_lu(a);
  if (det_a.singular() || det_gamma.singular())
    throw std::invalid_argument("jacobi_minor_check_oblique: singular A or Gamma");

  cplx lhs = det_lu(r * lu_solve(a, c));

  Matrix k = Matrix::Identity(n, n) - a;
  Matrix pi_v_k = k - c * lu_solve(gamma, r * k);
  Matrix v = null_space_basis(r);
  Matrix restricted = v.adjoint() * pi_v_k * v;
  cplx tail = det_lu(Matrix::Identity(n - nch, n - nch) - restricted);
  cplx rhs = det_gamma.value() * tail / det_a.value();
  return std::abs(lhs - rhs);
}

cplx toeplitz_determinant(const LaurentSeries& phi, int N) {
  return det_lu(toeplitz_matrix(phi, N).entries);
}

}  // namespace bogctilt
