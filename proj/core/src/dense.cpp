#include "bogctilt/dense.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bogctilt {

cplx LogDet::value() const {
  if (singular()) return 0.0;
  return std::exp(log_abs) * phase;
}

LogDet logdet_lu(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("logdet_lu: matrix not square");
  LogDet out;
  if (a.rows() == 0) return out;  // empty determinant is 1
  Eigen::PartialPivLU<Matrix> lu(a);
  double perm_sign = lu.permutationP().determinant();  // +1 or -1
  out.phase = perm_sign;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    cplx d = lu.matrixLU()(i, i);
    double m = std::abs(d);
    if (m == 0.0) {
      out.phase = 0.0;
      out.log_abs = -std::numeric_limits<double>::infinity();
      return out;
    }
    out.log_abs += std::log(m);
    out.phase *= d / m;
  }
  return out;
}

Matrix lu_solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows())
    throw std::invalid_argument("lu_solve: shape mismatch");
  return Eigen::PartialPivLU<Matrix>(a).solve(b);
}

double cond_2(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 1.0;
  double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

std::vector<double> singular_values(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

int numerical_rank(const Matrix& a, double threshold) {
  int rank = 0;
  for (double s : singular_values(a))
    if (s > threshold) ++rank;
  return rank;
}

Matrix null_space_basis(const Matrix& r) {
  const Eigen::Index m = r.cols();  // ambient dimension
  const Eigen::Index n = r.rows();
  if (n >= m) throw std::invalid_argument("null_space_basis: expected a wide matrix");
  Eigen::HouseholderQR<Matrix> qr(r.adjoint());
  Matrix q = qr.householderQ() * Matrix::Identity(m, m);
  return q.rightCols(m - n);
}

double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace bogctilt
