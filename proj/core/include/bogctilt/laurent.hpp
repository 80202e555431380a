#pragma once

#include <complex>
#include <vector>

#include "bogctilt/dense.hpp"

namespace bogctilt {

/// Truncated two-sided Laurent series: coeffs_[k] is the coefficient of
/// z^{lo+k}. The universal currency for symbols, tilts and Wiener-Hopf
/// factors. Immutable in spirit: operations return new values.
class LaurentSeries {
 public:
  LaurentSeries();  // the zero series on exponent 0
  LaurentSeries(int lo, std::vector<cplx> coeffs);

  static LaurentSeries constant(cplx v);
  static LaurentSeries monomial(cplx v, int exponent);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  cplx coeff(int exponent) const;
  const std::vector<cplx>& raw() const { return coeffs_; }

  /// Smallest window [lo, hi] containing all coefficients above `eps` in
  /// modulus; the full window when everything is below eps.
  std::pair<int, int> support(double eps = 0.0) const;

  LaurentSeries restricted(int window_lo, int window_hi) const;
  LaurentSeries reflected() const;      // z -> 1/z
  LaurentSeries shifted(int k) const;   // multiply by z^k
  LaurentSeries scaled(cplx v) const;

  bool is_one(double eps = 0.0) const;

 private:
  int lo_;
  std::vector<cplx> coeffs_;
};

LaurentSeries series_add(const LaurentSeries& f, const LaurentSeries& g);

/// Exact finite convolution restricted to [window_lo, window_hi].
LaurentSeries series_multiply(const LaurentSeries& f, const LaurentSeries& g,
                              int window_lo, int window_hi);

/// exp(f) for f supported strictly on positive (or strictly negative)
/// exponents, via the recurrence n g_n = sum_k k f_k g_{n-k}.
LaurentSeries series_exp(const LaurentSeries& f, int order);

/// Horner-style evaluation of the truncated series.
cplx series_eval(const LaurentSeries& f, cplx z);

/// Coefficients of exp(sum_r t_r (z^r + z^{-r})) on [-half_width, half_width].
LaurentSeries make_exponential_symbol(const std::vector<double>& times, int half_width);

enum class FactorSide { plus, minus };

/// side == minus: prod_l (1 - y_l/z)^{-1} on [-half_width, 0];
/// side == plus:  prod_k (1 - x_k z)^{-1} on [0, half_width].
LaurentSeries make_rational_factor(const std::vector<cplx>& points, FactorSide side,
                                   int half_width);

/// The two admissible symbol families. Symbols are always supplied in one of
/// these symbolic forms, so log phi is available exactly (exponential case)
/// or via the Mercator series of each factor (rational case); no numerical
/// winding computation ever happens.
struct SymbolSpec {
  enum class Kind { exponential, rational };
  Kind kind = Kind::exponential;
  std::vector<double> times;     // exponential: exp(sum t_r (z^r + z^{-r}))
  std::vector<cplx> plus_points;   // rational: prod (1 - x_k z)^{-1}
  std::vector<cplx> minus_points;  // rational: prod (1 - y_l/z)^{-1}

  static SymbolSpec exponential(std::vector<double> times);
  static SymbolSpec rational(std::vector<cplx> plus_points, std::vector<cplx> minus_points);
};

/// Full Wiener-Hopf data of one symbol: phi = G(phi) phi_- phi_+ with
/// phi_+(0) = phi_-(inf) = 1, b = phi_-/phi_+, c = 1/b, c~(z) = c(1/z),
/// and the strong Szego constant Z = exp(sum_k k (log phi)_k (log phi)_{-k}).
struct SymbolFactorization {
  SymbolSpec spec;
  LaurentSeries phi;
  LaurentSeries log_phi;
  LaurentSeries phi_plus;   // exponents >= 0, constant term exactly 1
  LaurentSeries phi_minus;  // exponents <= 0, constant term exactly 1
  LaurentSeries b;
  LaurentSeries c_tilde;
  cplx geometric_mean = 1.0;
  cplx szego_Z = 1.0;
  double szego_tail_bound = 0.0;  // bound on the dropped part of log Z
  int truncation_order = 0;       // half-width of the retained window
};

/// Split-log Wiener-Hopf factorization at truncation half_width. Accepts
/// only the two symbolic families above.
SymbolFactorization series_log_split(const SymbolSpec& spec, int half_width);

}  // namespace bogctilt
