#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "bogctilt/laurent.hpp"
#include "bogctilt/operators.hpp"
#include "bogctilt/rng.hpp"

namespace bogctilt {

/// Thrown when a chart fails its invertibility hypotheses (Gamma or B
/// ill-conditioned beyond the 1e12 cutoff).
struct DegenerateChartError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Column tilts xi_j (analytic in the disk, exponents >= 0) and row tilts
/// theta_i (analytic outside, exponents <= 0).
struct TiltFamily {
  std::vector<LaurentSeries> xi;
  std::vector<LaurentSeries> theta;
  int d_xi = 0;     // max degree of xi_j in z
  int d_theta = 0;  // max degree of theta_i in z^{-1}

  int size() const { return static_cast<int>(xi.size()); }
  bool trivial() const;

  static TiltFamily trivial_family(int N);
  /// Config form: xi_coeffs[j] = coefficients of z^0, z^1, ...;
  /// theta_coeffs[i] = coefficients of z^0, z^{-1}, ...
  static TiltFamily from_coeffs(const std::vector<std::vector<cplx>>& xi_coeffs,
                                const std::vector<std::vector<cplx>>& theta_coeffs);
  /// Monomial tilts xi_j = z^{a_j}, theta_i = z^{-b_i}.
  static TiltFamily monomial(const std::vector<int>& a, const std::vector<int>& b);
  /// Seeded random polynomial tilts of degree <= max_deg with coefficients
  /// uniform in the complex square [-1,1] x [-1,1].
  static TiltFamily random_polynomial(RngStream& rng, int N, int max_deg);
};

/// Finite chart data at truncation M: R = Theta T(phi+), C = T(phi-) Xi P_N,
/// Gamma = R C, B = R P_N.
struct Chart {
  Matrix R;      // N x M
  Matrix C;      // M x N
  Matrix Gamma;  // N x N
  Matrix B;      // N x N
  double cond_Gamma = 0.0;
  double cond_B = 0.0;

  static constexpr double kDegenerateCond = 1e12;
  bool gamma_degenerate() const { return !(cond_Gamma < kDegenerateCond); }
  bool b_degenerate() const { return !(cond_B < kDegenerateCond); }
};

Chart build_chart(const SymbolFactorization& fact, const TiltFamily& tilts, int N, int M);

/// The orthogonal R = C = P_N chart of the classical identity.
Chart orthogonal_chart(int N, int M);

/// Direct evaluation of D_N = det[(theta_i xi_j phi)_{i-j}].
cplx tilted_minor_direct(const LaurentSeries& phi, const TiltFamily& tilts, int N);

/// Fixed-tail kernel K_N on indices [N, M) together with the decomposition
/// K_N = QKQ + F_N and the numerical rank of the correction.
struct FixedTailKernel {
  Matrix K_N;          // (M-N) x (M-N)
  Matrix F_N;          // correction K_N - QKQ
  int f_rank = 0;      // singular values of F_N above 1e-9 * ||K||_2
  double k_norm = 0.0; // 2-norm of the full kernel K
};

FixedTailKernel fixed_tail_kernel(const SymbolFactorization& fact, const TiltFamily& tilts,
                                  int N, int M);

/// Right-hand side of the tilted identity:
/// G^N Z det(Gamma) det(I - K_N) on the fixed tail, cross-checked against the
/// null-space-basis evaluation of det_{Ker R}(I - Pi_V K).
cplx tilted_fredholm_rhs(const SymbolFactorization& fact, const TiltFamily& tilts, int N, int M);

/// The rank-one pairs of the oblique correction Pi_V K = K - sum c_a (x) psi_a.
struct RankOnePair {
  Vector c;    // C f_a
  Vector psi;  // f_a^T Gamma^{-1} R K
};
std::vector<RankOnePair> oblique_correction(const Chart& chart, const TruncatedOperator& k);

/// Rank-one chart of the transparent N=1 form: returns (beta* A^{-1} alpha,
/// Z (beta* alpha) det(I - K_1)) with K_1 built from the two explicit
/// rank-one corrections; falls back to the null-space path when beta*e0 = 0.
std::pair<cplx, cplx> rank_one_chart_eval(const Vector& alpha, const Vector& beta,
                                          const SymbolFactorization& fact, int M);

}  // namespace bogctilt
