#include "bogctilt/tilt.hpp"

#include <cmath>
#include <stdexcept>

namespace bogctilt {

bool TiltFamily::trivial() const {
  for (const auto& s : xi)
    if (!s.is_one()) return false;
  for (const auto& s : theta)
    if (!s.is_one()) return false;
  return true;
}

TiltFamily TiltFamily::trivial_family(int N) {
  TiltFamily t;
  t.xi.assign(N, LaurentSeries::constant(1.0));
  t.theta.assign(N, LaurentSeries::constant(1.0));
  return t;
}

TiltFamily TiltFamily::from_coeffs(const std::vector<std::vector<cplx>>& xi_coeffs,
                                   const std::vector<std::vector<cplx>>& theta_coeffs) {
  if (xi_coeffs.size() != theta_coeffs.size())
    throw std::invalid_argument("TiltFamily: xi and theta counts differ");
  TiltFamily t;
  for (const auto& c : xi_coeffs) {
    if (c.empty()) throw std::invalid_argument("TiltFamily: empty xi coefficient list");
    t.xi.emplace_back(0, c);
    t.d_xi = std::max(t.d_xi, static_cast<int>(c.size()) - 1);
  }
  for (const auto& c : theta_coeffs) {
    if (c.empty()) throw std::invalid_argument("TiltFamily: empty theta coefficient list");
    std::vector<cplx> rev(c.rbegin(), c.rend());  // stored on exponents [-(len-1), 0]
    t.theta.emplace_back(-(static_cast<int>(c.size()) - 1), rev);
    t.d_theta = std::max(t.d_theta, static_cast<int>(c.size()) - 1);
  }
  return t;
}

TiltFamily TiltFamily::monomial(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("TiltFamily::monomial: size mismatch");
  TiltFamily t;
  for (int e : a) {
    if (e < 0) throw std::invalid_argument("TiltFamily::monomial: negative xi exponent");
    t.xi.push_back(LaurentSeries::monomial(1.0, e));
    t.d_xi = std::max(t.d_xi, e);
  }
  for (int e : b) {
    if (e < 0) throw std::invalid_argument("TiltFamily::monomial: negative theta exponent");
    t.theta.push_back(LaurentSeries::monomial(1.0, -e));
    t.d_theta = std::max(t.d_theta, e);
  }
  return t;
}

TiltFamily TiltFamily::random_polynomial(RngStream& rng, int N, int max_deg) {
  std::vector<std::vector<cplx>> xi(N), th(N);
  for (int j = 0; j < N; ++j) {
    xi[j].resize(max_deg + 1);
    for (auto& c : xi[j]) c = rng.uniform_complex_square(1.0);
  }
  for (int i = 0; i < N; ++i) {
    th[i].resize(max_deg + 1);
    for (auto& c : th[i]) c = rng.uniform_complex_square(1.0);
  }
  return from_coeffs(xi, th);
}

namespace {

/// Xi as an M x M matrix: column j-1 holds the coefficients of z^{j-1} xi_j,
/// identity on columns >= N.
Matrix xi_operator(const TiltFamily& tilts, int N, int M) {
  Matrix m = Matrix::Identity(M, M);
  for (int j = 1; j <= N; ++j) {
    m.col(j - 1).setZero();
    const LaurentSeries& xi = tilts.xi[j - 1];
    for (int k = std::max(0, xi.lo()); k <= xi.hi(); ++k) {
      int row = j - 1 + k;
      if (row < M) m(row, j - 1) = xi.coeff(k);
    }
  }
  return m;
}

/// Theta as an N x M matrix: (Theta h)_i = sum_m theta_i^(-m) h_{i-1+m}.
Matrix theta_operator(const TiltFamily& tilts, int N, int M) {
  Matrix m = Matrix::Zero(N, M);
  for (int i = 1; i <= N; ++i) {
    const LaurentSeries& th = tilts.theta[i - 1];
    for (int mm = 0; mm <= -th.lo(); ++mm) {
      int col = i - 1 + mm;
      if (col < M) m(i - 1, col) = th.coeff(-mm);
    }
  }
  return m;
}

void validate_tilts(const TiltFamily& tilts, int N) {
  if (tilts.size() < N || static_cast<int>(tilts.theta.size()) < N)
    throw std::invalid_argument("tilts: fewer than N tilt functions");
  for (int j = 0; j < N; ++j) {
    auto [lo, hi] = tilts.xi[j].support();
    (void)hi;
    if (lo < 0 && tilts.xi[j].coeff(lo) != cplx(0.0))
      throw std::invalid_argument("tilts: xi has negative exponents");
    auto [tlo, thi] = tilts.theta[j].support();
    (void)tlo;
    if (thi > 0 && tilts.theta[j].coeff(thi) != cplx(0.0))
      throw std::invalid_argument("tilts: theta has positive exponents");
  }
}

}  // namespace

Chart build_chart(const SymbolFactorization& fact, const TiltFamily& tilts, int N, int M) {
  validate_tilts(tilts, N);
  if (N > M - std::max(tilts.d_xi, tilts.d_theta))
    throw std::invalid_argument("build_chart: N too large for truncation and tilt degrees");
  if (2 * M > fact.truncation_order)
    throw std::invalid_argument("build_chart: M > half_width/2");

  Matrix t_plus = toeplitz_matrix(fact.phi_plus, M).entries;
  Matrix t_minus = toeplitz_matrix(fact.phi_minus, M).entries;
  Chart ch;
  ch.R = theta_operator(tilts, N, M) * t_plus;
  ch.C = (t_minus * xi_operator(tilts, N, M)).leftCols(N);
  ch.Gamma = ch.R * ch.C;
  ch.B = ch.R.leftCols(N);
  ch.cond_Gamma = cond_2(ch.Gamma);
  ch.cond_B = cond_2(ch.B);
  return ch;
}

Chart orthogonal_chart(int N, int M) {
  Chart ch;
  ch.R = Matrix::Zero(N, M);
  ch.R.leftCols(N) = Matrix::Identity(N, N);
  ch.C = Matrix::Zero(M, N);
  ch.C.topRows(N) = Matrix::Identity(N, N);
  ch.Gamma = Matrix::Identity(N, N);
  ch.B = Matrix::Identity(N, N);
  ch.cond_Gamma = 1.0;
  ch.cond_B = 1.0;
  return ch;
}

cplx tilted_minor_direct(const LaurentSeries& phi, const TiltFamily& tilts, int N) {
  validate_tilts(tilts, N);
  Matrix m(N, N);
  for (int i = 1; i <= N; ++i) {
    for (int j = 1; j <= N; ++j) {
      // (theta_i xi_j phi)_{i-j}, assembled as a three-series convolution.
      const LaurentSeries& th = tilts.theta[i - 1];
      const LaurentSeries& xi = tilts.xi[j - 1];
      cplx v = 0.0;
      for (int a = th.lo(); a <= std::min(th.hi(), 0); ++a) {
        cplx ta = th.coeff(a);
        if (ta == cplx(0.0)) continue;
        for (int b = std::max(xi.lo(), 0); b <= xi.hi(); ++b)
          v += ta * xi.coeff(b) * phi.coeff(i - j - a - b);
      }
      m(i - 1, j - 1) = v;
    }
  }
  return det_lu(m);
}

FixedTailKernel fixed_tail_kernel(const SymbolFactorization& fact, const TiltFamily& tilts,
                                  int N, int M) {
  Chart ch = build_chart(fact, tilts, N, M);
  if (ch.gamma_degenerate())
    throw DegenerateChartError("fixed_tail_kernel: Gamma condition number above 1e12");
  if (ch.b_degenerate())
    throw DegenerateChartError("fixed_tail_kernel: B condition number above 1e12");

  Matrix k = bogc_kernel(fact, M).entries;
  const int tail = M - N;

  // J_N = Q - P B^{-1} R Q as a map QH -> H (M x tail).
  Matrix j_n = Matrix::Zero(M, tail);
  j_n.bottomRows(tail) = Matrix::Identity(tail, tail);
  j_n.topRows(N) = -lu_solve(ch.B, ch.R.rightCols(tail));

  // K_N = Q (I - C Gamma^{-1} R) K J_N restricted to tail rows.
  Matrix pi_v_k = k - ch.C * lu_solve(ch.Gamma, ch.R * k);
  Matrix full = pi_v_k * j_n;  // M x tail

  FixedTailKernel out;
  out.K_N = full.bottomRows(tail);
  out.F_N = out.K_N - k.bottomRightCorner(tail, tail);
  auto sv_k = singular_values(k);
  out.k_norm = sv_k.empty() ? 0.0 : sv_k.front();
  out.f_rank = numerical_rank(out.F_N, 1e-9 * out.k_norm);
  return out;
}

cplx tilted_fredholm_rhs(const SymbolFactorization& fact, const TiltFamily& tilts, int N, int M) {
  const cplx g_pow = std::pow(fact.geometric_mean, N);
  if (tilts.trivial()) {
    // Shared code path with the plain identity: Gamma is exactly unimodular
    // and the fixed-tail kernel is exactly QKQ.
    TruncatedOperator k = bogc_kernel(fact, M);
    return g_pow * fact.szego_Z * fredholm_det(k, N).value;
  }

  Chart ch = build_chart(fact, tilts, N, M);
  if (ch.gamma_degenerate())
    throw DegenerateChartError("tilted_fredholm_rhs: Gamma condition number above 1e12");

  Matrix k = bogc_kernel(fact, M).entries;
  cplx det_gamma = det_lu(ch.Gamma);

  // Primary path: fixed-tail kernel (needs B invertible).
  // Cross-check path: orthonormal null-space basis of R (no B hypothesis).
  Matrix pi_v_k = k - ch.C * lu_solve(ch.Gamma, ch.R * k);
  Matrix v = null_space_basis(ch.R);
  Matrix restricted = v.adjoint() * pi_v_k * v;
  const int tail = M - N;
  cplx tail_det_null = det_lu(Matrix::Identity(tail, tail) - restricted);

  if (ch.b_degenerate()) return g_pow * fact.szego_Z * det_gamma * tail_det_null;

  FixedTailKernel ft = fixed_tail_kernel(fact, tilts, N, M);
  cplx tail_det_fixed = det_lu(Matrix::Identity(tail, tail) - ft.K_N);

  cplx primary = g_pow * fact.szego_Z * det_gamma * tail_det_fixed;
  cplx check = g_pow * fact.szego_Z * det_gamma * tail_det_null;
  double scale = std::max(std::abs(primary), 1e-300);
  if (std::abs(primary - check) / scale > 1e-7)
    throw std::runtime_error(
        "tilted_fredholm_rhs: fixed-tail and null-space evaluations disagree");
  return primary;
}

std::vector<RankOnePair> oblique_correction(const Chart& chart, const TruncatedOperator& k) {
  const int n = static_cast<int>(chart.Gamma.rows());
  if (!(cond_2(chart.Gamma) < Chart::kDegenerateCond))
    throw DegenerateChartError("oblique_correction: Gamma not invertible");
  Matrix psi_all = lu_solve(chart.Gamma, chart.R * k.entries);  // N x M
  std::vector<RankOnePair> out;
  out.reserve(n);
  for (int a = 0; a < n; ++a)
    out.push_back(RankOnePair{chart.C.col(a), psi_all.row(a).transpose()});

  // Reconstruction residual must vanish to truncation accuracy.
  Matrix recon = k.entries;
  for (const auto& p : out) recon -= p.c * p.psi.transpose();
  Matrix pi_v_k = k.entries - chart.C * psi_all;
  if (max_abs(recon - pi_v_k) > 1e-10 * std::max(1.0, max_abs(k.entries)))
    throw std::runtime_error("oblique_correction: reconstruction residual too large");
  return out;
}

std::pair<cplx, cplx> rank_one_chart_eval(const Vector& alpha, const Vector& beta,
                                          const SymbolFactorization& fact, int M) {
  if (alpha.size() != M || beta.size() != M)
    throw std::invalid_argument("rank_one_chart_eval: vectors must have length M");
  Matrix k = bogc_kernel(fact, M).entries;
  Matrix a = Matrix::Identity(M, M) - k;
  cplx gamma = (beta.adjoint() * alpha)(0, 0);  // beta* alpha
  if (gamma == cplx(0.0)) throw DegenerateChartError("rank_one_chart_eval: beta* alpha = 0");

  cplx lhs = (beta.adjoint() * lu_solve(a, Matrix(alpha)))(0, 0);

  cplx b0 = std::conj(beta(0));  // beta* e_0
  const int tail = M - 1;
  cplx tail_det;
  if (std::abs(b0) > 1e-12 * beta.norm()) {
    // Fixed-tail path: K_1 = Q1 K Q1 - (Q1 K e0) beta*|_Q1 / (beta* e0)
    //                        - (Q1 alpha) (beta* K J_1) / (beta* alpha).
    Matrix k1 = k.bottomRightCorner(tail, tail);
    Vector ke0 = k.col(0).tail(tail);
    Eigen::RowVectorXcd beta_tail = beta.tail(tail).adjoint();
    k1 -= (ke0 * beta_tail) / b0;
    Eigen::RowVectorXcd beta_k = beta.adjoint() * k;  // 1 x M
    // (beta* K J_1)_y = beta* K (y - (beta* y / beta* e0) e0) for y in Q1 H.
    Eigen::RowVectorXcd bkj = beta_k.tail(tail) - (beta_k(0) / b0) * beta_tail;
    k1 -= (alpha.tail(tail) * bkj) / gamma;
    tail_det = det_lu(Matrix::Identity(tail, tail) - k1);
  } else {
    // beta* e0 = 0: fall back to the orthonormal null-space basis of beta*.
    Matrix r = beta.adjoint();
    Matrix v = null_space_basis(r);
    Matrix pi_v_k = k - (alpha * (beta.adjoint() * k)) / gamma;
    tail_det = det_lu(Matrix::Identity(tail, tail) - v.adjoint() * pi_v_k * v);
  }
  cplx rhs = fact.szego_Z * gamma * tail_det;
  return {lhs, rhs};
}

}  // namespace bogctilt
