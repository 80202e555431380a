#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bogctilt {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Determinant held as sign-free polar data: value = exp(log_abs) * phase.
/// Keeps determinants representable when |det| overflows binary64
/// (the Szego constant grows like e^{L^2}).
struct LogDet {
  double log_abs = 0.0;   // log |det|; -inf for a singular matrix
  cplx phase = 1.0;       // unit modulus, or 0 for a singular matrix

  cplx value() const;
  bool singular() const { return phase == cplx(0.0); }
};

/// LU with partial pivoting; the single determinant backend of the project.
LogDet logdet_lu(const Matrix& a);

inline cplx det_lu(const Matrix& a) { return logdet_lu(a).value(); }

/// Solve A X = B by LU with partial pivoting. Matrix inverses are never
/// formed explicitly; callers solve against identity columns instead.
Matrix lu_solve(const Matrix& a, const Matrix& b);

/// 2-norm condition number (SVD); intended for small chart-sized matrices.
double cond_2(const Matrix& a);

/// Singular values in decreasing order.
std::vector<double> singular_values(const Matrix& a);

/// Numerical rank: number of singular values exceeding threshold.
int numerical_rank(const Matrix& a, double threshold);

/// Orthonormal basis of the null space of the wide matrix R (rows < cols),
/// from a full Householder QR of R^H.
Matrix null_space_basis(const Matrix& r);

double max_abs(const Matrix& a);

}  // namespace bogctilt
