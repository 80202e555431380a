#pragma once

#include <utility>
#include <vector>

#include "bogctilt/laurent.hpp"
#include "bogctilt/tilt.hpp"

namespace bogctilt {

/// Weakly decreasing nonnegative integer tuple.
struct Partition {
  std::vector<int> parts;  // trailing zeros allowed but not stored

  Partition() = default;
  explicit Partition(std::vector<int> p);

  int weight() const;
  int length() const;                  // number of nonzero parts
  int part(int i) const;               // zero-extended, 0-based
  bool contains(const Partition& inner) const;
  bool operator==(const Partition& o) const { return parts == o.parts; }
};

/// All partitions with |mu| <= max_weight and length <= max_length, each
/// exactly once, in weight-then-lex order.
std::vector<Partition> enumerate_partitions(int max_weight, int max_length);

/// S_xi(Y) = det[y_i^{N-j} xi_{N-j+1}(y_i)] / Vandermonde(Y).
cplx bialternant(const std::vector<LaurentSeries>& xi, const std::vector<cplx>& y);

/// Schur polynomial via the bialternant with monomial tilts.
cplx schur_bialternant(const Partition& lambda, const std::vector<cplx>& y);

/// lhs = D_N^{xi,1}(phi) with phi = phi_+ * rational-minus(Y); rhs =
/// S_xi(Y) * prod phi_+(y_l).
std::pair<cplx, cplx> bialternant_factorization_check(const std::vector<LaurentSeries>& xi,
                                                      const std::vector<cplx>& y,
                                                      const SymbolFactorization& fact);

enum class GrothVariant { G, G_tilde };

/// Symmetric Grothendieck polynomial (variant G: xi_j = z^{l_j} (1+bz)^{N-j})
/// or the alternative bialternant (variant G~: xi_j = (1+bz)^{l_j}).
cplx grothendieck_eval(const Partition& lambda, cplx beta, const std::vector<cplx>& y,
                       GrothVariant variant);

/// Row-indexed one-sided coefficient sequences c^{(i)}_r, r >= 0.
struct JTSequences {
  std::vector<std::vector<cplx>> seqs;

  cplx at(int i, int r) const {  // zero-extension below index 0 and past the window
    if (r < 0 || r >= static_cast<int>(seqs[i].size())) return 0.0;
    return seqs[i][r];
  }
  int size() const { return static_cast<int>(seqs.size()); }
};

/// det[ c^{(i)}_{mu_j - j + i} ], indices 1-based as in the determinant.
cplx jacobi_trudi(const Partition& mu, const JTSequences& seqs);

struct CauchyBinetResult {
  cplx partial_sum = 0.0;
  double tail_estimate = 0.0;
  int cutoff_used = 0;
};

/// Partition-sum expansion of the tilted minor: sum over |mu| <= cutoff of
/// JT_mu(a<-) JT_mu(b<-) G^N, with the tail bounded via Cauchy's estimate
/// on |z| = rho.
CauchyBinetResult cauchy_binet_sum(const SymbolFactorization& fact, const TiltFamily& tilts,
                                   int N, int weight_cutoff, double rho);

/// Complete homogeneous coefficients h_0..h_order of a pure-alpha alphabet.
std::vector<cplx> complete_homogeneous(const std::vector<cplx>& alphabet, int order);

/// Skew Schur polynomial s_{eta/lam} of a pure-alpha alphabet, via the
/// Jacobi-Trudi determinant det[h_{eta_i - lam_j - i + j}].
cplx skew_schur(const Partition& eta, const Partition& lam, const std::vector<cplx>& alphabet);

/// Pure-shift skew expansion check: partial sum of s_{eta/lam}(x) s_{eta/nu}(y)
/// over |eta| <= cutoff against the direct minor with monomial tilts.
std::pair<cplx, cplx> skew_schur_expansion_check(const SymbolFactorization& fact,
                                                 const Partition& lam, const Partition& nu,
                                                 int N, int cutoff);

/// Brute-force semistandard-tableau enumeration, the independent ground truth
/// for Schur values. Exponent bookkeeping is exact; only the final monomial
/// products are floating point.
cplx schur_ssyt(const Partition& lambda, const std::vector<cplx>& alphabet);
cplx skew_schur_ssyt(const Partition& eta, const Partition& lam,
                     const std::vector<cplx>& alphabet);

}  // namespace bogctilt
