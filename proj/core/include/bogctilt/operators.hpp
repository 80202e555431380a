#pragma once

#include <string>
#include <vector>

#include "bogctilt/dense.hpp"
#include "bogctilt/laurent.hpp"

namespace bogctilt {

/// Dense M x M compression of an operator to span(e_0, ..., e_{M-1}).
struct TruncatedOperator {
  int size = 0;
  Matrix entries;
  std::string label;
};

/// T(f)_{ij} = f^(i-j). Requires the window of f to cover [-(M-1), M-1].
TruncatedOperator toeplitz_matrix(const LaurentSeries& f, int M, std::string label = "T");

/// H(f)_{ij} = f^(i+j+1). Requires the window to cover [1, 2M-1].
TruncatedOperator hankel_matrix(const LaurentSeries& f, int M, std::string label = "H");

/// K = H(b) H(c~), the BOGC kernel of the factorization.
TruncatedOperator bogc_kernel(const SymbolFactorization& fact, int M);

struct FredholmResult {
  cplx value = 1.0;
  int truncation_size = 0;
  double doubling_delta = 0.0;  // |det at full size - det at half size|
};

/// det(I - op) restricted to indices [row_col_start, size), with the
/// half-size re-run recorded in doubling_delta.
FredholmResult fredholm_det(const TruncatedOperator& op, int row_col_start);

/// Same, but the determinant is returned in log form (for values outside
/// binary64 range).
LogDet fredholm_logdet(const TruncatedOperator& op, int row_col_start);

/// Max-norm residual of T(phi) = G T(phi+) (I-K)^{-1} T(phi-) on the
/// top-left quarter of the truncation.
double verify_wh_identity(const SymbolFactorization& fact, int M);

/// |det(A^{-1}[U,U]) - det(A)^{-1} det(A[V,V])| for complementary index sets.
double jacobi_minor_check(const Matrix& a, const std::vector<int>& u_indices,
                          const std::vector<int>& v_indices);

/// Oblique form: |det(R A^{-1} C) - det(A)^{-1} det(RC) det(I_V - Pi_V K|_V)|
/// with K = I - A and V an orthonormal null-space basis of R.
double jacobi_minor_check_oblique(const Matrix& a, const Matrix& r, const Matrix& c);

inline cplx szego_Z(const SymbolFactorization& fact) { return fact.szego_Z; }

/// Direct N x N Toeplitz determinant of the symbol.
cplx toeplitz_determinant(const LaurentSeries& phi, int N);

}  // namespace bogctilt
