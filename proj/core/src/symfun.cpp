#include "bogctilt/symfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bogctilt {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 0) throw std::invalid_argument("Partition: negative part");
    if (i > 0 && parts[i] > parts[i - 1])
      throw std::invalid_argument("Partition: parts not weakly decreasing");
  }
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
}

int Partition::weight() const {
  int w = 0;
  for (int p : parts) w += p;
  return w;
}

int Partition::length() const { return static_cast<int>(parts.size()); }

int Partition::part(int i) const {
  return (i >= 0 && i < length()) ? parts[i] : 0;
}

bool Partition::contains(const Partition& inner) const {
  for (int i = 0; i < inner.length(); ++i)
    if (part(i) < inner.part(i)) return false;
  return true;
}

namespace {

void enumerate_rec(int remaining, int max_part, int max_len, std::vector<int>& acc,
                   std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(acc);
    return;
  }
  if (max_len == 0) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    acc.push_back(p);
    enumerate_rec(remaining - p, p, max_len - 1, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int max_weight, int max_length) {
  if (max_weight < 0) throw std::invalid_argument("enumerate_partitions: negative weight");
  std::vector<Partition> out;
  for (int w = 0; w <= max_weight; ++w) {
    std::vector<Partition> stratum;
    std::vector<int> acc;
    enumerate_rec(w, w, max_length, acc, stratum);
    std::sort(stratum.begin(), stratum.end(),
              [](const Partition& a, const Partition& b) { return a.parts < b.parts; });
    out.insert(out.end(), stratum.begin(), stratum.end());
  }
  return out;
}

namespace {

constexpr double kMinPairwiseGap = 1e-6;

void validate_alphabet(const std::vector<cplx>& y) {
  for (size_t i = 0; i < y.size(); ++i) {
    if (std::abs(y[i]) >= 1.0)
      throw std::invalid_argument("bialternant: |y| >= 1");
    for (size_t j = i + 1; j < y.size(); ++j)
      if (std::abs(y[i] - y[j]) <= kMinPairwiseGap)
        throw std::invalid_argument("bialternant: near-coincident points");
  }
}

cplx vandermonde(const std::vector<cplx>& y) {
  cplx v = 1.0;
  for (size_t i = 0; i < y.size(); ++i)
    for (size_t j = i + 1; j < y.size(); ++j) v *= y[i] - y[j];
  return v;
}

}  // namespace

cplx bialternant(const std::vector<LaurentSeries>& xi, const std::vector<cplx>& y) {
  const int n = static_cast<int>(y.size());
  if (static_cast<int>(xi.size()) != n)
    throw std::invalid_argument("bialternant: |xi| != |Y|");
  validate_alphabet(y);
  if (n == 0) return 1.0;
  Matrix m(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      m(i - 1, j - 1) = std::pow(y[i - 1], n - j) * series_eval(xi[n - j], y[i - 1]);
  return det_lu(m) / vandermonde(y);
}

cplx schur_bialternant(const Partition& lambda, const std::vector<cplx>& y) {
  const int n = static_cast<int>(y.size());
  std::vector<LaurentSeries> xi;
  for (int j = 1; j <= n; ++j)
    xi.push_back(LaurentSeries::monomial(1.0, lambda.part(n - j)));  // hat-lambda_j
  return bialternant(xi, y);
}

std::pair<cplx, cplx> bialternant_factorization_check(const std::vector<LaurentSeries>& xi,
                                                      const std::vector<cplx>& y,
                                                      const SymbolFactorization& fact) {
  const int n = static_cast<int>(y.size());
  TiltFamily tilts;
  tilts.xi = xi;
  tilts.theta.assign(n, LaurentSeries::constant(1.0));
  for (const auto& s : xi) tilts.d_xi = std::max(tilts.d_xi, std::max(s.hi(), 0));
  cplx lhs = tilted_minor_direct(fact.phi, tilts, n);
  cplx rhs = bialternant(xi, y);
  for (cplx p : y) rhs *= series_eval(fact.phi_plus, p);
  return {lhs, rhs};
}

cplx grothendieck_eval(const Partition& lambda, cplx beta, const std::vector<cplx>& y,
                       GrothVariant variant) {
  const int n = static_cast<int>(y.size());
  validate_alphabet(y);
  if (n == 0) return 1.0;
  Matrix m(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      cplx yi = y[i - 1];
      cplx v;
      if (variant == GrothVariant::G)
        v = std::pow(yi, lambda.part(j - 1) + n - j) * std::pow(cplx(1.0) + beta * yi, j - 1);
      else
        v = std::pow(yi, n - j) * std::pow(cplx(1.0) + beta * yi, lambda.part(j - 1));
      m(i - 1, j - 1) = v;
    }
  }
  return det_lu(m) / vandermonde(y);
}

cplx jacobi_trudi(const Partition& mu, const JTSequences& seqs) {
  const int n = seqs.size();
  if (mu.length() > n) throw std::invalid_argument("jacobi_trudi: partition longer than N");
  if (n == 0) return 1.0;
  Matrix m(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) m(i - 1, j - 1) = seqs.at(i - 1, mu.part(j - 1) - j + i);
  return det_lu(m);
}

namespace {

/// Crude sup of |f| on the circle |z| = r by sampling.
double sup_on_circle(const LaurentSeries& f, double r, int samples = 256) {
  double m = 0.0;
  for (int k = 0; k < samples; ++k) {
    double th = 2.0 * M_PI * k / samples;
    m = std::max(m, std::abs(series_eval(f, std::polar(r, th))));
  }
  return m;
}

double factorial_d(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

CauchyBinetResult cauchy_binet_sum(const SymbolFactorization& fact, const TiltFamily& tilts,
                                   int N, int weight_cutoff, double rho) {
  if (rho <= 1.0) throw std::invalid_argument("cauchy_binet_sum: rho must exceed 1");
  const int hw = fact.truncation_order;

  // a^{(j)}: coefficients of xi_j phi_+ on z^r, r >= 0;
  // b^{(i)}: coefficients of theta_i phi_- on z^{-r}, r >= 0 (stored reversed).
  JTSequences a_rev, b_rev;  // already in the reversed family order
  a_rev.seqs.resize(N);
  b_rev.seqs.resize(N);
  double c_a = 0.0, c_b = 0.0;
  for (int j = 1; j <= N; ++j) {
    LaurentSeries prod = series_multiply(tilts.xi[j - 1], fact.phi_plus, 0, hw);
    auto& dst = a_rev.seqs[N - j];  // a<- reverses the family order
    dst.resize(hw + 1);
    for (int r = 0; r <= hw; ++r) dst[r] = prod.coeff(r);
    c_a = std::max(c_a, sup_on_circle(prod, rho));
  }
  for (int i = 1; i <= N; ++i) {
    LaurentSeries prod = series_multiply(tilts.theta[i - 1], fact.phi_minus, -hw, 0);
    auto& dst = b_rev.seqs[N - i];
    dst.resize(hw + 1);
    for (int r = 0; r <= hw; ++r) dst[r] = prod.coeff(-r);
    c_b = std::max(c_b, sup_on_circle(prod, 1.0 / rho));
  }

  CauchyBinetResult out;
  out.cutoff_used = weight_cutoff;
  const cplx g_pow = std::pow(fact.geometric_mean, N);
  for (const Partition& mu : enumerate_partitions(weight_cutoff, N))
    out.partial_sum += jacobi_trudi(mu, a_rev) * jacobi_trudi(mu, b_rev);
  out.partial_sum *= g_pow;

  // Tail bound: each JT minor is at most N! (C rho^{N-1})^N rho^{-(|mu| + N(N-1)/2)},
  // and partitions of weight w with <= N parts number at most (w+1)^{N-1}.
  const double q = 1.0 / (rho * rho);
  const double pref = factorial_d(N) * factorial_d(N) *
                      std::pow(c_a * std::pow(rho, N - 1), N) *
                      std::pow(c_b * std::pow(rho, N - 1), N) *
                      std::pow(q, N * (N - 1) / 2.0) * std::abs(g_pow);
  double tail = 0.0;
  double term;
  int w = weight_cutoff + 1;
  do {
    term = std::pow(static_cast<double>(w + 1), N - 1) * std::pow(q, w);
    tail += term;
    ++w;
  } while (term > 1e-300 * tail && w < weight_cutoff + 100000 && tail * pref > 1e-30);
  out.tail_estimate = pref * tail;
  return out;
}

std::vector<cplx> complete_homogeneous(const std::vector<cplx>& alphabet, int order) {
  // h-series = prod (1 - x z)^{-1}; reuse the rational factor constructor.
  if (order < 1) order = 1;
  LaurentSeries h = make_rational_factor(alphabet, FactorSide::plus, order);
  std::vector<cplx> out(order + 1);
  for (int r = 0; r <= order; ++r) out[r] = h.coeff(r);
  return out;
}

cplx skew_schur(const Partition& eta, const Partition& lam, const std::vector<cplx>& alphabet) {
  const int n = std::max(eta.length(), std::max(lam.length(), 1));
  std::vector<cplx> h = complete_homogeneous(alphabet, eta.weight() + n + 1);
  Matrix m(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      int idx = eta.part(i - 1) - lam.part(j - 1) - i + j;
      m(i - 1, j - 1) = (idx >= 0 && idx < static_cast<int>(h.size())) ? h[idx] : cplx(0.0);
    }
  }
  return det_lu(m);
}

std::pair<cplx, cplx> skew_schur_expansion_check(const SymbolFactorization& fact,
                                                 const Partition& lam, const Partition& nu,
                                                 int N, int cutoff) {
  if (fact.spec.kind != SymbolSpec::Kind::rational)
    throw std::invalid_argument("skew_schur_expansion_check: needs a rational symbol");
  if (lam.length() > N || nu.length() > N)
    throw std::invalid_argument("skew_schur_expansion_check: partition longer than N");

  const std::vector<cplx>& xs = fact.spec.plus_points;
  const std::vector<cplx>& ys = fact.spec.minus_points;

  cplx partial = 0.0;
  for (const Partition& eta : enumerate_partitions(cutoff, N))
    partial += skew_schur(eta, lam, xs) * skew_schur(eta, nu, ys);

  std::vector<int> a(N), b(N);
  for (int j = 1; j <= N; ++j) a[j - 1] = lam.part(N - j);
  for (int i = 1; i <= N; ++i) b[i - 1] = nu.part(N - i);
  TiltFamily tilts = TiltFamily::monomial(a, b);
  cplx direct = tilted_minor_direct(fact.phi, tilts, N);
  return {partial, direct};
}

namespace {

void ssyt_fill(const Partition& eta, const Partition& lam, int n_letters,
               const std::vector<std::pair<int, int>>& cells, size_t pos,
               std::vector<std::vector<int>>& grid, cplx monomial,
               const std::vector<cplx>& alphabet, cplx& acc) {
  if (pos == cells.size()) {
    acc += monomial;
    return;
  }
  auto [r, c] = cells[pos];
  int lo = 1;
  if (c - 1 > lam.part(r))  // left neighbour present in the skew row
    lo = std::max(lo, grid[r][c - 1]);
  if (r >= 1 && c <= eta.part(r - 1) && c > lam.part(r - 1))  // upper neighbour present
    lo = std::max(lo, grid[r - 1][c] + 1);
  for (int v = lo; v <= n_letters; ++v) {
    grid[r][c] = v;
    ssyt_fill(eta, lam, n_letters, cells, pos + 1, grid, monomial * alphabet[v - 1], alphabet,
              acc);
  }
  grid[r][c] = 0;
}

}  // namespace

cplx skew_schur_ssyt(const Partition& eta, const Partition& lam,
                     const std::vector<cplx>& alphabet) {
  if (!eta.contains(lam)) return 0.0;
  const int n_letters = static_cast<int>(alphabet.size());
  std::vector<std::pair<int, int>> cells;  // row-major, 1-based columns
  for (int r = 0; r < eta.length(); ++r)
    for (int c = lam.part(r) + 1; c <= eta.part(r); ++c) cells.emplace_back(r, c);
  if (cells.empty()) return 1.0;
  std::vector<std::vector<int>> grid(eta.length(), std::vector<int>(eta.part(0) + 1, 0));
  cplx acc = 0.0;
  ssyt_fill(eta, lam, n_letters, cells, 0, grid, cplx(1.0), alphabet, acc);
  return acc;
}

cplx schur_ssyt(const Partition& lambda, const std::vector<cplx>& alphabet) {
  return skew_schur_ssyt(lambda, Partition{}, alphabet);
}

}  // namespace bogctilt
