#include "bogctilt/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bogctilt {

namespace {

void require_finite(const std::vector<cplx>& coeffs) {
  for (const cplx& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("LaurentSeries: non-finite coefficient");
}

}  // namespace

LaurentSeries::LaurentSeries() : lo_(0), coeffs_(1, cplx(0.0)) {}

LaurentSeries::LaurentSeries(int lo, std::vector<cplx> coeffs) : lo_(lo), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("LaurentSeries: empty coefficient list");
  require_finite(coeffs_);
}

LaurentSeries LaurentSeries::constant(cplx v) { return LaurentSeries(0, {v}); }

LaurentSeries LaurentSeries::monomial(cplx v, int exponent) { return LaurentSeries(exponent, {v}); }

cplx LaurentSeries::coeff(int exponent) const {
  int k = exponent - lo_;
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[k];
}

std::pair<int, int> LaurentSeries::support(double eps) const {
  int a = lo_, b = hi();
  while (a < b && std::abs(coeff(a)) <= eps) ++a;
  while (b > a && std::abs(coeff(b)) <= eps) --b;
  return {a, b};
}

LaurentSeries LaurentSeries::restricted(int window_lo, int window_hi) const {
  if (window_lo > window_hi) throw std::invalid_argument("restricted: empty window");
  std::vector<cplx> out(window_hi - window_lo + 1, cplx(0.0));
  for (int k = window_lo; k <= window_hi; ++k) out[k - window_lo] = coeff(k);
  return LaurentSeries(window_lo, std::move(out));
}

LaurentSeries LaurentSeries::reflected() const {
  std::vector<cplx> out(coeffs_.rbegin(), coeffs_.rend());
  return LaurentSeries(-hi(), std::move(out));
}

LaurentSeries LaurentSeries::shifted(int k) const { return LaurentSeries(lo_ + k, coeffs_); }

LaurentSeries LaurentSeries::scaled(cplx v) const {
  std::vector<cplx> out(coeffs_);
  for (cplx& c : out) c *= v;
  return LaurentSeries(lo_, std::move(out));
}

bool LaurentSeries::is_one(double eps) const {
  auto [a, b] = support(eps);
  return a == 0 && b == 0 && std::abs(coeff(0) - cplx(1.0)) <= eps;
}

LaurentSeries series_add(const LaurentSeries& f, const LaurentSeries& g) {
  int lo = std::min(f.lo(), g.lo());
  int hi = std::max(f.hi(), g.hi());
  std::vector<cplx> out(hi - lo + 1, cplx(0.0));
  for (int k = lo; k <= hi; ++k) out[k - lo] = f.coeff(k) + g.coeff(k);
  return LaurentSeries(lo, std::move(out));
}

LaurentSeries series_multiply(const LaurentSeries& f, const LaurentSeries& g,
                              int window_lo, int window_hi) {
  if (window_lo > window_hi) throw std::invalid_argument("series_multiply: empty window");
  std::vector<cplx> out(window_hi - window_lo + 1, cplx(0.0));
  for (int a = f.lo(); a <= f.hi(); ++a) {
    cplx fa = f.coeff(a);
    if (fa == cplx(0.0)) continue;
    int b_lo = std::max(g.lo(), window_lo - a);
    int b_hi = std::min(g.hi(), window_hi - a);
    for (int b = b_lo; b <= b_hi; ++b) out[a + b - window_lo] += fa * g.coeff(b);
  }
  return LaurentSeries(window_lo, std::move(out));
}

LaurentSeries series_exp(const LaurentSeries& f, int order) {
  if (order < 0) throw std::invalid_argument("series_exp: negative order");
  auto [a, b] = f.support();
  bool zero = (a == b && f.coeff(a) == cplx(0.0));
  if (!zero && a <= 0 && b >= 0 && f.coeff(0) != cplx(0.0))
    throw std::invalid_argument("series_exp: nonzero constant term");
  if (!zero && a < 0 && b > 0)
    throw std::invalid_argument("series_exp: mixed-sign support");

  bool negative_side = !zero && b < 0;
  const LaurentSeries fs = negative_side ? f.reflected() : f;

  // n g_n = sum_{k=1}^{n} k f_k g_{n-k}, g_0 = 1.
  std::vector<cplx> g(order + 1, cplx(0.0));
  g[0] = 1.0;
  for (int n = 1; n <= order; ++n) {
    cplx acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += static_cast<double>(k) * fs.coeff(k) * g[n - k];
    g[n] = acc / static_cast<double>(n);
  }
  LaurentSeries out(0, std::move(g));
  return negative_side ? out.reflected() : out;
}

cplx series_eval(const LaurentSeries& f, cplx z) {
  auto [a, b] = f.support();
  if (a < 0 && z == cplx(0.0))
    throw std::invalid_argument("series_eval: z = 0 with negative support");
  // Horner on the nonnegative part, Horner in 1/z on the negative part.
  cplx pos = 0.0;
  for (int k = std::max(b, 0); k >= 0; --k) pos = pos * z + f.coeff(k);
  cplx neg = 0.0;
  if (a < 0) {
    cplx w = cplx(1.0) / z;
    for (int k = std::min(a, -1); k <= -1; ++k) neg = neg * w + f.coeff(k);
    // neg now holds sum_{k=a}^{-1} f_k z^{k} premultiplied by one extra w
    neg *= w;
  }
  return pos + neg;
}

LaurentSeries make_exponential_symbol(const std::vector<double>& times, int half_width) {
  const int mt = static_cast<int>(times.size());
  for (double t : times)
    if (!std::isfinite(t)) throw std::invalid_argument("make_exponential_symbol: non-finite time");
  if (half_width < 2 * mt)
    throw std::invalid_argument(
        "make_exponential_symbol: half_width < 2*|times| would clip the exponent polynomial");
  if (mt == 0) return LaurentSeries::constant(1.0).restricted(-half_width, half_width);

  std::vector<cplx> plus_exps(mt + 1, cplx(0.0));
  for (int r = 1; r <= mt; ++r) plus_exps[r] = times[r - 1];
  LaurentSeries ppart(0, plus_exps);
  LaurentSeries ep = series_exp(ppart, half_width);
  LaurentSeries em = ep.reflected();  // exp(sum t_r z^{-r}); symmetric by construction
  return series_multiply(ep, em, -half_width, half_width);
}

LaurentSeries make_rational_factor(const std::vector<cplx>& points, FactorSide side,
                                   int half_width) {
  if (half_width < 1) throw std::invalid_argument("make_rational_factor: half_width < 1");
  for (size_t i = 0; i < points.size(); ++i) {
    if (std::abs(points[i]) >= 1.0)
      throw std::invalid_argument("make_rational_factor: |point| >= 1, factor not analytic");
    for (size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j])
        throw std::invalid_argument("make_rational_factor: duplicate points");
  }
  // prod (1 - x z)^{-1} by iterated geometric-series convolution on [0, hw].
  std::vector<cplx> acc(half_width + 1, cplx(0.0));
  acc[0] = 1.0;
  for (cplx x : points) {
    std::vector<cplx> geo(half_width + 1);
    cplx p = 1.0;
    for (int k = 0; k <= half_width; ++k, p *= x) geo[k] = p;
    std::vector<cplx> next(half_width + 1, cplx(0.0));
    for (int a = 0; a <= half_width; ++a) {
      if (acc[a] == cplx(0.0)) continue;
      for (int b = 0; a + b <= half_width; ++b) next[a + b] += acc[a] * geo[b];
    }
    acc.swap(next);
  }
  LaurentSeries plus(0, std::move(acc));
  return side == FactorSide::plus ? plus : plus.reflected();
}

SymbolSpec SymbolSpec::exponential(std::vector<double> times) {
  SymbolSpec s;
  s.kind = Kind::exponential;
  s.times = std::move(times);
  return s;
}

SymbolSpec SymbolSpec::rational(std::vector<cplx> plus_points, std::vector<cplx> minus_points) {
  SymbolSpec s;
  s.kind = Kind::rational;
  s.plus_points = std::move(plus_points);
  s.minus_points = std::move(minus_points);
  return s;
}

namespace {

// log of the rational factor data via the Mercator series:
// -log(1 - x z) = sum_{n>=1} x^n z^n / n, truncated at half_width.
LaurentSeries rational_log_plus(const std::vector<cplx>& points, int half_width) {
  std::vector<cplx> out(half_width + 1, cplx(0.0));
  for (cplx x : points) {
    cplx p = x;
    for (int n = 1; n <= half_width; ++n, p *= x) out[n] += p / static_cast<double>(n);
  }
  return LaurentSeries(0, std::move(out));
}

}  // namespace

SymbolFactorization series_log_split(const SymbolSpec& spec, int half_width) {
  if (half_width < 1) throw std::invalid_argument("series_log_split: half_width < 1");

  // Assemble log phi split into strictly-positive and strictly-negative parts.
  LaurentSeries log_plus, log_minus_reflected;  // both supported on exponents >= 0, constant 0
  switch (spec.kind) {
    case SymbolSpec::Kind::exponential: {
      const int mt = static_cast<int>(spec.times.size());
      if (half_width < 2 * mt)
        throw std::invalid_argument("series_log_split: half_width < 2*|times|");
      std::vector<cplx> e(std::max(mt, 1) + 1, cplx(0.0));
      for (int r = 1; r <= mt; ++r) e[r] = spec.times[r - 1];
      log_plus = LaurentSeries(0, e);
      log_minus_reflected = log_plus;  // symmetric symbol
      break;
    }
    case SymbolSpec::Kind::rational: {
      for (cplx x : spec.plus_points)
        if (std::abs(x) >= 1.0)
          throw std::invalid_argument("series_log_split: rational point with |x| >= 1");
      for (cplx y : spec.minus_points)
        if (std::abs(y) >= 1.0)
          throw std::invalid_argument("series_log_split: rational point with |y| >= 1");
      log_plus = rational_log_plus(spec.plus_points, half_width);
      log_minus_reflected = rational_log_plus(spec.minus_points, half_width);
      break;
    }
    default:
      throw std::invalid_argument("series_log_split: unknown symbol kind");
  }

  SymbolFactorization f;
  f.spec = spec;
  f.truncation_order = half_width;
  f.geometric_mean = 1.0;  // both families have (log phi)_0 = 0

  f.phi_plus = series_exp(log_plus, half_width);
  f.phi_minus = series_exp(log_minus_reflected, half_width).reflected();
  f.log_phi = series_add(log_plus, log_minus_reflected.reflected());

  // b = phi_- / phi_+ = exp(log_-) * exp(-log_+), two one-sided exponentials.
  LaurentSeries exp_m = series_exp(log_minus_reflected, half_width).reflected();
  LaurentSeries exp_pinv = series_exp(log_plus.scaled(-1.0), half_width);
  f.b = series_multiply(exp_m, exp_pinv, -half_width, half_width);

  // c~(z) = c(1/z), c = 1/b: reflect the split pieces.
  LaurentSeries exp_p_refl = series_exp(log_plus, half_width).reflected();
  LaurentSeries exp_minv_refl = series_exp(log_minus_reflected.scaled(-1.0), half_width);
  f.c_tilde = series_multiply(exp_p_refl, exp_minv_refl, -half_width, half_width);

  // phi itself and the strong Szego constant.
  f.phi = series_multiply(f.phi_minus, f.phi_plus, -half_width, half_width);
  cplx logZ = 0.0;
  for (int k = 1; k <= half_width; ++k)
    logZ += static_cast<double>(k) * log_plus.coeff(k) * log_minus_reflected.coeff(k);
  f.szego_Z = std::exp(logZ);

  // Tail bound for the dropped part of log Z. Exponential symbols have a
  // finite log, so the tail is exactly zero; rational logs decay like
  // (max|x| max|y|)^k.
  if (spec.kind == SymbolSpec::Kind::rational) {
    double mx = 0.0, my = 0.0;
    for (cplx x : spec.plus_points) mx = std::max(mx, std::abs(x));
    for (cplx y : spec.minus_points) my = std::max(my, std::abs(y));
    double q = mx * my;
    if (q > 0.0 && q < 1.0) {
      // sum_{k>m} k (mx^k/k)(my^k/k) <= sum_{k>m} q^k = q^{m+1}/(1-q)
      double np = static_cast<double>(spec.plus_points.size());
      double nm = static_cast<double>(spec.minus_points.size());
      f.szego_tail_bound = np * nm * std::pow(q, half_width + 1) / (1.0 - q);
    }
  }
  return f;
}

}  // namespace bogctilt
