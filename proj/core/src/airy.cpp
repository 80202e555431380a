#include "bogctilt/airy.hpp"

#include <cmath>
#include <stdexcept>

#include "bogctilt/laurent.hpp"
#include "bogctilt/operators.hpp"

namespace bogctilt {

namespace {

// ---------------------------------------------------------------------------
// Double-double helpers (error-free transformations). The Maclaurin pair for
// Ai loses ~10 digits to cancellation near |x| ~ 10 in plain binary64; the
// compensated accumulation keeps the absolute error near 1e-20 over the whole
// central range.
// ---------------------------------------------------------------------------

struct dd {
  double hi = 0.0, lo = 0.0;
};

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  double err = std::fma(a, b, -p);
  return {p, err};
}

inline dd dd_add(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  double lo = s.lo + a.lo + b.lo;
  dd t = two_sum(s.hi, lo);
  return t;
}

inline dd dd_mul(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  dd t = two_sum(p.hi, p.lo);
  return t;
}

inline dd dd_mul_d(dd a, double b) {
  dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return two_sum(p.hi, p.lo);
}

inline dd dd_div_d(dd a, double b) {
  double q1 = a.hi / b;
  dd p = two_prod(q1, b);
  double r = ((a.hi - p.hi) - p.lo + a.lo) / b;
  return two_sum(q1, r);
}

// Ai(0) and -Ai'(0) to double-double precision:
// c1 = 3^{-2/3}/Gamma(2/3), c2 = 3^{-1/3}/Gamma(1/3).
constexpr double kC1_hi = 0.3550280538878172;
constexpr double kC1_lo = 2.05233632436212e-17;
constexpr double kC2_hi = 0.2588194037928068;
constexpr double kC2_lo = -2.522243111610832e-17;

constexpr double kSeriesRadius = 12.5;
constexpr double kSupportedRadius = 30.0;

/// Maclaurin pair: f = 1 + x^3/(2*3) + ..., g = x + x^4/(3*4) + ...; both
/// solve y'' = xy. Returns (f, f', g, g') or the second derivatives.
struct SeriesEval {
  double f, fp, fpp;
  double g, gp, gpp;
};

SeriesEval airy_series(double x) {
  // term recurrences: f_{k+1} = f_k x^3 / ((3k+2)(3k+3)),
  //                   g_{k+1} = g_k x^3 / ((3k+3)(3k+4)).
  const double x3 = x * x * x;
  dd f{1.0, 0.0}, fp{0.0, 0.0}, fpp{0.0, 0.0};
  dd g{x, 0.0}, gp{1.0, 0.0}, gpp{0.0, 0.0};
  dd tf{1.0, 0.0};  // current f term, value at exponent 3k
  dd tg{x, 0.0};    // current g term, exponent 3k+1
  for (int k = 0; k < 400; ++k) {
    dd ntf = dd_div_d(dd_mul_d(tf, x3), (3.0 * k + 2.0) * (3.0 * k + 3.0));
    dd ntg = dd_div_d(dd_mul_d(tg, x3), (3.0 * k + 3.0) * (3.0 * k + 4.0));
    f = dd_add(f, ntf);
    g = dd_add(g, ntg);
    // derivative terms: d/dx x^{3k+3} = (3k+3) x^{3k+2}, etc.
    if (x != 0.0) {
      fp = dd_add(fp, dd_mul_d(dd_div_d(ntf, x), 3.0 * k + 3.0));
      fpp = dd_add(fpp, dd_mul_d(dd_div_d(dd_div_d(ntf, x), x), (3.0 * k + 3.0) * (3.0 * k + 2.0)));
      gp = dd_add(gp, dd_mul_d(dd_div_d(ntg, x), 3.0 * k + 4.0));
      gpp = dd_add(gpp, dd_mul_d(dd_div_d(dd_div_d(ntg, x), x), (3.0 * k + 4.0) * (3.0 * k + 3.0)));
    }
    tf = ntf;
    tg = ntg;
    if (std::abs(ntf.hi) < 1e-40 && std::abs(ntg.hi) < 1e-40 && k > 4) break;
  }
  if (x == 0.0) {  // only the k=0 derivative terms survive differently at 0
    gp = dd{1.0, 0.0};
    fp = dd{0.0, 0.0};
    fpp = dd{0.0, 0.0};
    gpp = dd{0.0, 0.0};
  }
  return {f.hi + f.lo, fp.hi + fp.lo, fpp.hi + fpp.lo,
          g.hi + g.lo, gp.hi + gp.lo, gpp.hi + gpp.lo};
}

struct AiryFull {
  double ai, aip, aipp;
};

/// Asymptotic expansion for x >> 0: Ai ~ e^{-z}/(2 sqrt(pi) x^{1/4}) sum (-1)^k u_k z^{-k}.
AiryFull airy_asymptotic_right(double x) {
  const double sq = std::sqrt(x);
  const double zeta = 2.0 / 3.0 * x * sq;
  double u = 1.0;  // u_k; v_k = -(6k+1)/(6k-1) u_k
  double su = 1.0, sv = 1.0;
  double zk = 1.0;
  double prev = 1.0;
  for (int k = 0; k < 60; ++k) {
    double uk1 = u * (3.0 * k + 2.5) * (3.0 * k + 1.5) * (3.0 * k + 0.5) /
                 (54.0 * (k + 1.0) * (k + 0.5));
    double vk1 = -uk1 * (6.0 * (k + 1) + 1.0) / (6.0 * (k + 1) - 1.0);
    zk /= -zeta;
    double term_u = uk1 * zk;
    if (std::abs(term_u) > prev) break;  // truncate at the smallest term
    prev = std::abs(term_u);
    su += term_u;
    sv += vk1 * zk;
    u = uk1;
  }
  const double pref = std::exp(-zeta) / (2.0 * std::sqrt(M_PI));
  double ai = pref * su / std::pow(x, 0.25);
  double aip = -pref * std::pow(x, 0.25) * sv;
  double aipp = x * ai;  // not independent; the right-tail residual check
                         // uses the series region only
  return {ai, aip, aipp};
}

/// Oscillatory expansion for x << 0 (DLMF 9.7.9-9.7.10).
AiryFull airy_asymptotic_left(double x) {
  const double t = -x;
  const double sq = std::sqrt(t);
  const double zeta = 2.0 / 3.0 * t * sq;
  // P ~ sum (-1)^k u_{2k} zeta^{-2k}, Q ~ sum (-1)^k u_{2k+1} zeta^{-2k-1}
  std::vector<double> us(40);
  us[0] = 1.0;
  for (int k = 0; k + 1 < 40; ++k) {
    us[k + 1] = us[k] * (3.0 * k + 2.5) * (3.0 * k + 1.5) * (3.0 * k + 0.5) /
                (54.0 * (k + 1.0) * (k + 0.5));
  }
  auto alt_sum = [&](int offset) {
    double s = 0.0, zp = std::pow(zeta, -offset);
    double prev = 1e300;
    for (int k = 0; 2 * k + offset < 40; ++k) {
      double term = us[2 * k + offset] * zp * ((k % 2) ? -1.0 : 1.0);
      if (std::abs(term) > prev) break;
      prev = std::abs(term);
      s += term;
      zp /= zeta * zeta;
    }
    return s;
  };
  auto alt_sum_v = [&](int offset) {
    double s = 0.0, zp = std::pow(zeta, -offset);
    double prev = 1e300;
    for (int k = 0; 2 * k + offset < 40; ++k) {
      int idx = 2 * k + offset;
      double vk = (idx == 0) ? 1.0 : -us[idx] * (6.0 * idx + 1.0) / (6.0 * idx - 1.0);
      double term = vk * zp * ((k % 2) ? -1.0 : 1.0);
      if (std::abs(term) > prev) break;
      prev = std::abs(term);
      s += term;
      zp /= zeta * zeta;
    }
    return s;
  };
  const double ph = zeta - M_PI / 4.0;
  const double c = std::cos(ph), sn = std::sin(ph);
  double ai = (c * alt_sum(0) + sn * alt_sum(1)) / (std::sqrt(M_PI) * std::pow(t, 0.25));
  double aip = (std::pow(t, 0.25) / std::sqrt(M_PI)) * (sn * alt_sum_v(0) - c * alt_sum_v(1));
  return {ai, aip, x * ai};
}

AiryFull airy_full(double x) {
  if (std::abs(x) > kSupportedRadius)
    throw std::invalid_argument("airy_ai: |x| > 30 unsupported");
  if (std::abs(x) <= kSeriesRadius) {
    SeriesEval s = airy_series(x);
    double ai = kC1_hi * s.f - kC2_hi * s.g + (kC1_lo * s.f - kC2_lo * s.g);
    double aip = kC1_hi * s.fp - kC2_hi * s.gp + (kC1_lo * s.fp - kC2_lo * s.gp);
    double aipp = kC1_hi * s.fpp - kC2_hi * s.gpp + (kC1_lo * s.fpp - kC2_lo * s.gpp);
    return {ai, aip, aipp};
  }
  return x > 0 ? airy_asymptotic_right(x) : airy_asymptotic_left(x);
}

}  // namespace

AiryValue airy_ai(double x) {
  AiryFull f = airy_full(x);
  return {f.ai, f.aip};
}

double airy_ai_second(double x) { return airy_full(x).aipp; }

double airy_kernel(double x, double y) {
  AiryValue ax = airy_ai(x);
  if (std::abs(x - y) < 1e-6) {
    // confluent diagonal form Ai'(m)^2 - m Ai(m)^2 at the midpoint
    double m = 0.5 * (x + y);
    AiryValue am = airy_ai(m);
    return am.ai_prime * am.ai_prime - m * am.ai * am.ai;
  }
  AiryValue ay = airy_ai(y);
  return (ax.ai * ay.ai_prime - ax.ai_prime * ay.ai) / (x - y);
}

namespace {

/// Gauss-Legendre nodes/weights on (-1, 1) by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (t * p0 - p1) / (t * t - 1.0);
      double dt = p0 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

}  // namespace

double phi_w(double x, double w) {
  if (!(w > 0.0)) throw std::invalid_argument("phi_w: w must be positive");
  // int_0^T e^{-wt} Ai(x+t) dt with T past both decay scales.
  double t_airy = std::max(0.0, 14.0 - x);  // Ai(x+t) < 1e-40 beyond
  double t_exp = 46.0 / w;                  // e^{-wt} < 1e-20 beyond
  double T = std::min(std::max(t_airy, 4.0) + 18.0, t_airy + t_exp);
  T = std::min(T, kSupportedRadius - x - 1e-9);  // stay in the supported Ai range
  if (T <= 0.0) return 0.0;
  static thread_local std::vector<double> gx, gw;
  if (gx.size() != 24) gauss_legendre(24, gx, gw);
  const int panels = std::max(8, static_cast<int>(T / 2.0));
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    double a = T * p / panels, b = T * (p + 1) / panels;
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double loc = 0.0;
    for (size_t i = 0; i < gx.size(); ++i) {
      double t = mid + half * gx[i];
      loc += gw[i] * std::exp(-w * t) * airy_ai(x + t).ai;
    }
    acc += loc * half;
  }
  return acc;
}

QuadratureGrid nystrom_grid(double s, int order, VarMap map) {
  if (order < 2) throw std::invalid_argument("nystrom_grid: order too small");
  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  QuadratureGrid grid;
  grid.order = order;
  grid.nodes.resize(order);
  grid.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double u = 0.5 * (gx[i] + 1.0);  // (0,1)
    double du = 0.5 * gw[i];
    if (map == VarMap::log_stretch) {
      grid.nodes[i] = s - 2.0 * std::log1p(-u);
      grid.weights[i] = du * 2.0 / (1.0 - u);
    } else {
      grid.nodes[i] = s + u / (1.0 - u);
      grid.weights[i] = du / ((1.0 - u) * (1.0 - u));
    }
  }
  return grid;
}

double nystrom_fredholm(const std::function<double(double, double)>& kernel, double s,
                        int order, VarMap map) {
  QuadratureGrid g = nystrom_grid(s, order, map);
  // Clip nodes beyond the supported Airy range: the kernels there are below
  // underflow anyway, so rows/cols are dropped by zero weights.
  Matrix m = Matrix::Identity(order, order);
  std::vector<double> sqw(order);
  for (int i = 0; i < order; ++i) sqw[i] = std::sqrt(std::max(0.0, g.weights[i]));
  for (int i = 0; i < order; ++i) {
    if (g.nodes[i] > kSupportedRadius - 1.0) continue;
    for (int j = 0; j < order; ++j) {
      if (g.nodes[j] > kSupportedRadius - 1.0) continue;
      m(i, j) -= sqw[i] * kernel(g.nodes[i], g.nodes[j]) * sqw[j];
    }
  }
  return det_lu(m).real();
}

std::pair<double, double> bbp_pushthrough_check(double w, double s, int order) {
  if (!(w > 0.0)) throw std::invalid_argument("bbp_pushthrough_check: w must be positive");
  auto boundary = [&](double x, double y) {
    return airy_kernel(x, y) - std::exp(-w * (x - s)) * airy_kernel(s, y);
  };
  auto bbp = [&](double x, double y) {
    return airy_kernel(x, y) - phi_w(x, w) * airy_ai(y).ai;
  };
  double det_boundary = nystrom_fredholm(boundary, s, order);
  double det_bbp = nystrom_fredholm(bbp, s, order);
  return {det_boundary, det_bbp};
}

// ---------------------------------------------------------------------------
// Spiked finite-L machinery
// ---------------------------------------------------------------------------

double SpikedSymbolParams::edge_scale() const { return std::cbrt(a - 8.0 * b); }

int SpikedSymbolParams::N_L() const {
  return static_cast<int>(std::floor(chi() * L + edge_scale() * std::cbrt(L) * s));
}

double SpikedSymbolParams::alpha_L() const {
  return -std::exp(-w / (edge_scale() * std::cbrt(L)));
}

void SpikedSymbolParams::validate() const {
  if (!(a > 0.0) || !(b > 0.0) || !(b < a / 8.0))
    throw std::invalid_argument("SpikedSymbolParams: need a > 0, 0 < b < a/8");
  if (!(L > 0.0) || !(w > 0.0))
    throw std::invalid_argument("SpikedSymbolParams: need L > 0, w > 0");
}

SpikedKernelPair spiked_column_kernel_exact(const SpikedSymbolParams& p, int M) {
  p.validate();
  const int n = p.N_L();
  if (n + 8 > M) throw std::invalid_argument("spiked_column_kernel_exact: N too close to M");

  const int hw = 2 * M;
  SymbolFactorization fact =
      series_log_split(SymbolSpec::exponential({p.a * p.L, p.b * p.L}), hw);

  const double alpha = p.alpha_L();
  const int tilt_deg = M - n;  // geometric tilt truncated into the available window

  TiltFamily tilts = TiltFamily::trivial_family(n);
  std::vector<cplx> geo(tilt_deg + 1);
  double ap = 1.0;
  for (int k = 0; k <= tilt_deg; ++k, ap *= alpha) geo[k] = ap;
  tilts.xi[n - 1] = LaurentSeries(0, geo);
  tilts.d_xi = tilt_deg;

  SpikedKernelPair out;
  out.tilt_tail_bound = std::pow(std::abs(alpha), tilt_deg);

  FixedTailKernel ft = fixed_tail_kernel(fact, tilts, n, M);
  out.lhs = ft.K_N;

  Matrix k = bogc_kernel(fact, M).entries;
  const int tail = M - n;
  out.rhs = k.bottomRightCorner(tail, tail);
  for (int i = 0; i < tail; ++i) {
    double fac = std::pow(alpha, i + 1);  // alpha^{i - N + 1} at row i + N
    for (int j = 0; j < tail; ++j) out.rhs(i, j) -= fac * k(n - 1, n + j);
  }

  // Boundary-row identity: (C e_{N-1})_{N-1} = sum_m h_m alpha^m with h_m the
  // coefficients of phi_-.
  Chart ch = build_chart(fact, tilts, n, M);
  cplx direct = ch.C(n - 1, n - 1);
  cplx series_val = series_eval(fact.phi_minus.reflected(), alpha);
  out.boundary_row_residual = std::abs(direct - series_val);
  return out;
}

double laurent_exp_coeff_circle(double la, double lb, long n, int nodes) {
  // b_L coefficients: (1/2pi) int exp(-i(2 la sin t + 2 lb sin 2t) - i n t) dt.
  double acc = 0.0;
  for (int k = 0; k < nodes; ++k) {
    double t = 2.0 * M_PI * k / nodes;
    acc += std::cos(2.0 * la * std::sin(t) + 2.0 * lb * std::sin(2.0 * t) + n * t);
  }
  return acc / nodes;
}

std::vector<SpikedScalingPoint> spiked_scaling_check(const SpikedSymbolParams& base,
                                                     const std::vector<double>& l_list) {
  base.validate();
  std::vector<SpikedScalingPoint> out;
  const double chi = base.chi();
  const double c = base.edge_scale();

  // x-grid of the scaling window; the far right tail is where both sides are
  // tiny, the left edge probes the oscillatory onset.
  std::vector<double> xs;
  for (double x = -2.0; x <= 8.0 + 1e-9; x += 1.0) xs.push_back(x);

  for (double L : l_list) {
    SpikedScalingPoint pt;
    pt.L = L;
    const double sc = c * std::cbrt(L);
    const int nodes = static_cast<int>(64 * std::ceil(std::sqrt(L))) * 8;
    const int nmax = static_cast<int>(3.0 * chi * L + 40.0 * sc + 64);
    std::vector<double> bl(2 * nmax + 1);
    for (int n = -nmax; n <= nmax; ++n)
      bl[n + nmax] = laurent_exp_coeff_circle(base.a * L, base.b * L, n, nodes);
    auto bval = [&](long n) {
      return (n >= -nmax && n <= nmax) ? bl[n + nmax] : 0.0;
    };

    for (double x : xs) {
      long n = std::lround(chi * L + sc * x);
      double x_eff = (n - chi * L) / sc;
      double sign = (n % 2 == 0) ? 1.0 : -1.0;
      double lhs = sign * sc * bval(n);
      pt.err_coeff = std::max(pt.err_coeff, std::abs(lhs - airy_ai(x_eff).ai));
    }

    const int tail_len = static_cast<int>(30.0 * sc) + 64;
    auto kernel_entry = [&](long i, long j) {
      double acc = 0.0;
      for (int l = 0; l < tail_len; ++l) acc += bval(i + l + 1) * bval(j + l + 1);
      return acc;
    };
    for (size_t a = 0; a < xs.size(); a += 2) {
      for (size_t b2 = 0; b2 < xs.size(); b2 += 2) {
        long i = std::lround(chi * L + sc * xs[a]);
        long j = std::lround(chi * L + sc * xs[b2]);
        double xe = (i - chi * L) / sc, ye = (j - chi * L) / sc;
        double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        double lhs = sc * sign * kernel_entry(i, j);
        pt.err_kernel = std::max(pt.err_kernel, std::abs(lhs - airy_kernel(xe, ye)));
      }
    }

    // rank-one factor: (-1)^{r+1} alpha^{r+1} vs e^{-w(x - s)} at lattice r.
    const double alpha = SpikedSymbolParams{base.a, base.b, L, base.w, base.s}.alpha_L();
    for (double x = 0.0; x <= 6.0 + 1e-9; x += 0.5) {
      long r = std::lround(sc * (x - base.s)) - 1;
      if (r < 0) r = 0;
      double sign = ((r + 1) % 2 == 0) ? 1.0 : -1.0;
      double lhs = sign * std::pow(alpha, static_cast<double>(r + 1));
      double rhs = std::exp(-base.w * (x - base.s));
      pt.err_rank_one = std::max(pt.err_rank_one, std::abs(lhs - rhs));
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace bogctilt
