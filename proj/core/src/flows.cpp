#include "bogctilt/flows.hpp"

#include <cmath>
#include <stdexcept>

namespace bogctilt {

namespace {

int default_half_width(int M) { return 2 * M; }

SymbolFactorization factorize_times(const std::vector<double>& times, int M) {
  return series_log_split(SymbolSpec::exponential(times), default_half_width(M));
}

Matrix shift_matrix(int M) {  // S e_k = e_{k+1}
  Matrix s = Matrix::Zero(M, M);
  for (int k = 0; k + 1 < M; ++k) s(k + 1, k) = 1.0;
  return s;
}

}  // namespace

Matrix universal_resolvent(const SymbolFactorization& fact, int m, int n, int M) {
  if (2 * m > M || 2 * n > M)
    throw std::invalid_argument("universal_resolvent: m, n must be <= M/2");
  Matrix t_plus = toeplitz_matrix(fact.phi_plus, M).entries;
  Matrix t_minus = toeplitz_matrix(fact.phi_minus, M).entries;
  Matrix k = bogc_kernel(fact, M).entries;
  Matrix a = Matrix::Identity(M, M) - k;
  Matrix c_n = t_minus.leftCols(n);
  Matrix x = lu_solve(a, c_n);
  return t_plus.topRows(m) * x;
}

std::pair<Matrix, Matrix> banded_tilt_matrices(const TiltFamily& tilts, int N, int m, int n) {
  if (tilts.d_xi > n - N || tilts.d_theta > m - N)
    throw std::invalid_argument("banded_tilt_matrices: degree bounds violated");
  Matrix a_theta = Matrix::Zero(N, m);
  Matrix a_xi = Matrix::Zero(n, N);
  for (int i = 1; i <= N; ++i)
    for (int p = 0; p < m; ++p) a_theta(i - 1, p) = tilts.theta[i - 1].coeff(i - 1 - p);
  for (int q = 0; q < n; ++q)
    for (int j = 1; j <= N; ++j) a_xi(q, j - 1) = tilts.xi[j - 1].coeff(q - j + 1);
  return {a_theta, a_xi};
}

double banded_identity_residual(const SymbolFactorization& fact, const TiltFamily& tilts,
                                int N, int m, int n, int M) {
  auto [a_theta, a_xi] = banded_tilt_matrices(tilts, N, m, n);
  Matrix y = universal_resolvent(fact, m, n, M);
  cplx lhs = det_lu(a_theta * y * a_xi);
  cplx rhs = tilted_minor_direct(fact.phi, tilts, N) / std::pow(fact.geometric_mean, N);
  return std::abs(lhs - rhs);
}

namespace {

/// rho_a^{(r)}[l] = b_{l+a+1-r}(t) as a length-M vector.
Vector rho_vector(const LaurentSeries& b, int r, int a, int M) {
  Vector v(M);
  for (int l = 0; l < M; ++l) v(l) = b.coeff(l + a + 1 - r);
  return v;
}

}  // namespace

Matrix flow_rhs_H(const TimeVector& t, int r, int M) {
  if (r < 1 || r > t.count()) throw std::invalid_argument("flow_rhs_H: r out of range");
  SymbolFactorization fact = factorize_times(t.times, M);
  Matrix h = hankel_matrix(fact.b, M).entries;
  Matrix s = shift_matrix(M);
  Matrix sr = s;
  for (int i = 1; i < r; ++i) sr = sr * s;
  Matrix out = sr.transpose() * h - sr * h;
  for (int a = 0; a <= r - 1; ++a) {
    Vector rho = rho_vector(fact.b, r, a, M);
    out.row(a) -= rho.transpose();
  }
  return out;
}

Matrix flow_rhs_K(const TimeVector& t, int r, int M) {
  if (r < 1 || r > t.count()) throw std::invalid_argument("flow_rhs_K: r out of range");
  SymbolFactorization fact = factorize_times(t.times, M);
  Matrix h = hankel_matrix(fact.b, M).entries;
  Matrix k = h * h.transpose();  // c~ = b for the symmetric flow
  Matrix s = shift_matrix(M);
  Matrix sr = s;
  for (int i = 1; i < r; ++i) sr = sr * s;
  Matrix st = sr.transpose();
  Matrix out = st * k - sr * k + k * sr - k * st;
  for (int a = 0; a <= r - 1; ++a) {
    Vector rho = rho_vector(fact.b, r, a, M);
    Vector ha = h * rho;
    out.col(a) -= ha;              // - h_a e_a^T contributes to column a
    out.row(a) -= ha.transpose();  // - e_a h_a^T contributes to row a
  }
  return out;
}

namespace {

struct ChartBlocks {
  Matrix r, c, q_inv_applied;  // Y = R Q C with Q = (I-K)^{-1}
  Matrix y;
  Matrix k;
  Matrix t_plus, t_minus;
};

ChartBlocks assemble_blocks(const std::vector<double>& times, const TiltFamily& tilts,
                            int N, int M, std::optional<std::pair<int, int>> rect) {
  ChartBlocks bl;
  SymbolFactorization fact = factorize_times(times, M);
  bl.k = bogc_kernel(fact, M).entries;
  Matrix a = Matrix::Identity(M, M) - bl.k;
  bl.t_plus = toeplitz_matrix(fact.phi_plus, M).entries;
  bl.t_minus = toeplitz_matrix(fact.phi_minus, M).entries;
  if (rect) {
    bl.r = bl.t_plus.topRows(rect->first);
    bl.c = bl.t_minus.leftCols(rect->second);
  } else {
    Chart ch = build_chart(fact, tilts, N, M);
    bl.r = ch.R;
    bl.c = ch.C;
  }
  bl.q_inv_applied = lu_solve(a, bl.c);
  bl.y = bl.r * bl.q_inv_applied;
  return bl;
}

Matrix y_of_times(const std::vector<double>& times, const TiltFamily& tilts, int N, int M,
                  std::optional<std::pair<int, int>> rect) {
  return assemble_blocks(times, tilts, N, M, rect).y;
}

}  // namespace

FlowReport flow_rhs_Y(const TimeVector& t, const TiltFamily& tilts, int N, int r, int M,
                      std::optional<std::pair<int, int>> rect) {
  if (r < 1 || r > t.count()) throw std::invalid_argument("flow_rhs_Y: r out of range");
  SymbolFactorization fact = factorize_times(t.times, M);
  ChartBlocks bl = assemble_blocks(t.times, tilts, N, M, rect);
  Matrix a = Matrix::Identity(M, M) - bl.k;

  Matrix s = shift_matrix(M);
  Matrix sr = s;
  for (int i = 1; i < r; ++i) sr = sr * s;
  Matrix st = sr.transpose();

  // dY = R (S*)^r Q C + R Q S^r C - sum_a [(R Q e_a)(h_a^T Q C) + (R Q h_a)(e_a^T Q C)].
  const Matrix& qc = bl.q_inv_applied;                                // Q C
  Matrix rq = lu_solve(a.transpose(), bl.r.transpose()).transpose();  // R Q
  Matrix analytic = bl.r * st * qc + rq * (sr * bl.c);
  Matrix h = hankel_matrix(fact.b, M).entries;
  for (int aa = 0; aa <= r - 1; ++aa) {
    Vector rho = rho_vector(fact.b, r, aa, M);
    Vector ha = h * rho;
    Vector rqe = rq.col(aa);
    Vector rqh = rq * ha;
    Eigen::RowVectorXcd haqc = (qc.transpose() * ha).transpose();
    Eigen::RowVectorXcd eaqc = qc.row(aa);
    analytic -= rqe * haqc + rqh * eaqc;
  }

  // Central differences at h and h/2, one Richardson step: (4 D_{h/2} - D_h)/3.
  FlowReport rep;
  rep.r = r;
  rep.fd_step = 1e-4 * std::max(1.0, std::abs(t.times[r - 1]));
  auto central = [&](double step) {
    std::vector<double> tp = t.times, tm = t.times;
    tp[r - 1] += step;
    tm[r - 1] -= step;
    Matrix yp = y_of_times(tp, tilts, N, M, rect);
    Matrix ym = y_of_times(tm, tilts, N, M, rect);
    return Matrix((yp - ym) / (2.0 * step));
  };
  Matrix d1 = central(rep.fd_step);
  Matrix d2 = central(rep.fd_step / 2.0);
  rep.numeric = (4.0 * d2 - d1) / 3.0;
  rep.analytic = analytic;
  rep.max_abs_error = max_abs(rep.numeric - rep.analytic);
  return rep;
}

std::pair<cplx, cplx> tau_log_derivative(const TimeVector& t, const TiltFamily& tilts,
                                         int N, int r, int M) {
  if (N == 0) return {0.0, 0.0};  // empty chart: T = 1 identically
  FlowReport flow = flow_rhs_Y(t, tilts, N, r, M);
  Matrix y = y_of_times(t.times, tilts, N, M, std::nullopt);
  LogDet det_y = logdet_lu(y);
  if (det_y.singular()) throw std::runtime_error("tau_log_derivative: Y is singular");

  cplx trace = lu_solve(y, flow.analytic).trace();
  double rr = static_cast<double>(r);
  cplx analytic = -2.0 * rr * t.times[r - 1] + trace;

  // Finite differences of log T, T = Z^{-1} det(R Q C); log Z = sum_s s t_s^2.
  auto log_tau = [&](const std::vector<double>& times) {
    double log_z = 0.0;
    for (int s = 1; s <= static_cast<int>(times.size()); ++s)
      log_z += s * times[s - 1] * times[s - 1];
    LogDet d = logdet_lu(y_of_times(times, tilts, N, M, std::nullopt));
    return cplx(d.log_abs - log_z, std::arg(d.phase));
  };
  double h = 1e-4 * std::max(1.0, std::abs(t.times[r - 1]));
  auto fd = [&](double step) {
    std::vector<double> tp = t.times, tm = t.times;
    tp[r - 1] += step;
    tm[r - 1] -= step;
    cplx lp = log_tau(tp), lm = log_tau(tm);
    cplx diff = lp - lm;
    // keep the branch of the phase difference in (-pi, pi]
    double im = std::remainder(diff.imag(), 2.0 * M_PI);
    return cplx(diff.real(), im) / (2.0 * step);
  };
  cplx d1 = fd(h), d2 = fd(h / 2.0);
  cplx numeric = (4.0 * d2 - d1) / 3.0;
  return {analytic, numeric};
}

// ---------------------------------------------------------------------------
// Closure experiment
// ---------------------------------------------------------------------------

namespace {

struct MatchedTilts {
  // Matched family: theta_i(z) = xi_i(1/z); coeffs[i][s] multiplies z^s in
  // xi_{i+1} and z^{-s} in theta_{i+1}.
  std::vector<std::vector<double>> coeffs;
  int degree = 0;
};

MatchedTilts sample_matched_tilts(RngStream& rng, int n, int d) {
  MatchedTilts mt;
  mt.degree = d;
  mt.coeffs.resize(n);
  for (auto& row : mt.coeffs) {
    row.resize(d + 1);
    for (double& c : row) c = rng.uniform(-1.0, 1.0);
  }
  return mt;
}

/// Entry of the tilted Toeplitz block with an extra row shift (theta side,
/// off = +shift) or column shift (xi side, off = -shift):
/// sum_{s1,s2} th[i][s1] th[j][s2] phi^(i - j + off + s1 - s2), 1-based i, j.
cplx toeplitz_entry(const LaurentSeries& phi, const MatchedTilts& mt, int i, int j, int off) {
  cplx v = 0.0;
  for (int s1 = 0; s1 <= mt.degree; ++s1)
    for (int s2 = 0; s2 <= mt.degree; ++s2)
      v += mt.coeffs[i - 1][s1] * mt.coeffs[j - 1][s2] * phi.coeff(i - j + off + s1 - s2);
  return v;
}

/// All minors of the N x N block, sizes 1..N, row-major over (size, I, J).
void all_minor_index_sets(int n, std::vector<std::pair<std::vector<int>, std::vector<int>>>& out) {
  std::vector<std::vector<int>> subsets_by_size[16];
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> s;
    for (int b = 0; b < n; ++b)
      if (mask & (1 << b)) s.push_back(b);
    subsets_by_size[s.size()].push_back(s);
  }
  for (int k = 1; k <= n; ++k)
    for (const auto& I : subsets_by_size[k])
      for (const auto& J : subsets_by_size[k]) out.emplace_back(I, J);
}

struct QuantitySample {
  std::vector<cplx> base;        // all minors
  std::vector<cplx> shifted;     // the nearest boundary-shifted full minors
  std::vector<cplx> derivatives; // d/dt_r of all minors (diagnostic)
};

/// Toeplitz-route quantities at one time point.
QuantitySample toeplitz_quantities(const std::vector<double>& times, const MatchedTilts& mt,
                                   int n, bool with_derivatives) {
  const int hw = 4 * (mt.degree + n + 4);
  SymbolFactorization fact = series_log_split(SymbolSpec::exponential(times), hw);
  const LaurentSeries& phi = fact.phi;

  Matrix block(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) block(i - 1, j - 1) = toeplitz_entry(phi, mt, i, j, 0);

  QuantitySample qs;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> sets;
  all_minor_index_sets(n, sets);
  for (const auto& [I, J] : sets) {
    Matrix sub(I.size(), J.size());
    for (size_t a = 0; a < I.size(); ++a)
      for (size_t b = 0; b < J.size(); ++b) sub(a, b) = block(I[a], J[b]);
    qs.base.push_back(det_lu(sub));
  }

  // Nearest boundary shifts: drop any one row and append the z^{-1}-shifted
  // boundary row (theta_N -> z^{-1} theta_N), and the column counterpart.
  Vector sh_row(n), sh_col(n);
  for (int j = 1; j <= n; ++j) sh_row(j - 1) = toeplitz_entry(phi, mt, n, j, +1);
  for (int i = 1; i <= n; ++i) sh_col(i - 1) = toeplitz_entry(phi, mt, i, n, -1);
  for (int drop = 0; drop < n; ++drop) {
    Matrix m(n, n);
    int rr = 0;
    for (int i = 0; i < n; ++i)
      if (i != drop) m.row(rr++) = block.row(i);
    m.row(n - 1) = sh_row.transpose();
    qs.shifted.push_back(det_lu(m));
  }
  for (int drop = 0; drop < n; ++drop) {
    Matrix m(n, n);
    int cc = 0;
    for (int j = 0; j < n; ++j)
      if (j != drop) m.col(cc++) = block.col(j);
    m.col(n - 1) = sh_col;
    qs.shifted.push_back(det_lu(m));
  }

  if (with_derivatives) {
    const double step = 1e-5;
    for (int r = 1; r <= static_cast<int>(times.size()); ++r) {
      std::vector<double> tp = times, tm = times;
      tp[r - 1] += step;
      tm[r - 1] -= step;
      QuantitySample qp = toeplitz_quantities(tp, mt, n, false);
      QuantitySample qm = toeplitz_quantities(tm, mt, n, false);
      for (size_t i = 0; i < qp.base.size(); ++i)
        qs.derivatives.push_back((qp.base[i] - qm.base[i]) / (2.0 * step));
    }
  }
  return qs;
}

/// Resolvent-route quantities: every minor is a tilted determinant with
/// shifted sub-tilts, evaluated as det(A_theta' Y^{m,n} A_xi').
QuantitySample resolvent_quantities(const std::vector<double>& times, const MatchedTilts& mt,
                                    int n, int M) {
  const int m_univ = n + mt.degree + 1 + (n - 1);  // covers shifted sub-tilt degrees
  SymbolFactorization fact = series_log_split(SymbolSpec::exponential(times), 2 * M);
  Matrix y = universal_resolvent(fact, m_univ, m_univ, M);

  auto banded_row_for = [&](const std::vector<std::pair<int, int>>& rows) {
    // rows: list of (tilt index 1-based, extra shift); row l uses
    // theta' = z^{-(i_l - l - extra)} ... total shift = (i_l - (l+1)) + extra.
    Matrix a = Matrix::Zero(rows.size(), m_univ);
    for (size_t l = 0; l < rows.size(); ++l) {
      int i = rows[l].first;
      int shift = (i - 1 - static_cast<int>(l)) + rows[l].second;
      for (int s = 0; s <= mt.degree; ++s) {
        int p = static_cast<int>(l) + s + shift;
        if (p >= 0 && p < m_univ) a(l, p) = mt.coeffs[i - 1][s];
      }
    }
    return a;
  };
  auto banded_col_for = [&](const std::vector<std::pair<int, int>>& cols) {
    Matrix a = Matrix::Zero(m_univ, cols.size());
    for (size_t l = 0; l < cols.size(); ++l) {
      int j = cols[l].first;
      int shift = (j - 1 - static_cast<int>(l)) + cols[l].second;
      for (int s = 0; s <= mt.degree; ++s) {
        int q = static_cast<int>(l) + s + shift;
        if (q >= 0 && q < m_univ) a(q, l) = mt.coeffs[j - 1][s];
      }
    }
    return a;
  };

  QuantitySample qs;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> sets;
  all_minor_index_sets(n, sets);
  for (const auto& [I, J] : sets) {
    std::vector<std::pair<int, int>> rows, cols;
    for (int i : I) rows.emplace_back(i + 1, 0);
    for (int j : J) cols.emplace_back(j + 1, 0);
    qs.base.push_back(det_lu(banded_row_for(rows) * y * banded_col_for(cols)));
  }
  for (int drop = 0; drop < n; ++drop) {
    std::vector<std::pair<int, int>> rows, cols;
    for (int i = 0; i < n; ++i)
      if (i != drop) rows.emplace_back(i + 1, 0);
    rows.emplace_back(n, 1);  // boundary row shifted one step
    for (int j = 1; j <= n; ++j) cols.emplace_back(j, 0);
    qs.shifted.push_back(det_lu(banded_row_for(rows) * y * banded_col_for(cols)));
  }
  for (int drop = 0; drop < n; ++drop) {
    std::vector<std::pair<int, int>> rows, cols;
    for (int i = 1; i <= n; ++i) rows.emplace_back(i, 0);
    for (int j = 0; j < n; ++j)
      if (j != drop) cols.emplace_back(j + 1, 0);
    cols.emplace_back(n, 1);
    qs.shifted.push_back(det_lu(banded_row_for(rows) * y * banded_col_for(cols)));
  }
  return qs;
}

int rank_of_samples(const std::vector<std::vector<cplx>>& rows, double threshold,
                    std::vector<double>* sv_out) {
  const int nr = static_cast<int>(rows.size());
  const int nc = static_cast<int>(rows.front().size());
  Matrix m(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = rows[i][j];
  // Column normalization so the rank counts independent functions, not
  // magnitudes.
  for (int j = 0; j < nc; ++j) {
    double norm = m.col(j).norm();
    if (norm > 0.0) m.col(j) /= norm;
  }
  std::vector<double> sv = singular_values(m);
  double top = sv.empty() ? 0.0 : sv.front();
  if (sv_out) {
    sv_out->clear();
    for (double s : sv) sv_out->push_back(top > 0 ? s / top : 0.0);
  }
  int rank = 0;
  for (double s : sv)
    if (s > threshold * top) ++rank;
  return rank;
}

}  // namespace

ClosureResult closure_experiment(std::uint64_t seed, int N, int d, int sample_count,
                                 std::pair<double, double> time_box, int M,
                                 bool use_resolvent_route) {
  if (sample_count < 40)
    throw std::invalid_argument("closure_experiment: sample_count must be at least 40");
  if (N < 1 || N > 8) throw std::invalid_argument("closure_experiment: N out of range");

  ClosureResult res;
  res.seed = seed;
  res.box_lo = time_box.first;
  res.box_hi = time_box.second;
  res.sample_count = sample_count;
  res.rank_threshold = 1e-7;

  RngStream tilt_rng(seed, "closure/tilts");
  MatchedTilts mt = sample_matched_tilts(tilt_rng, N, d);
  RngStream time_rng(seed, "closure/times");

  const int n_times = 2;  // two active times; the boundary shift adjoins the
                          // nearest (one-step) minors only
  std::vector<std::vector<cplx>> base_rows, with_rows, deriv_rows;
  double route_diff = 0.0;
  for (int s = 0; s < sample_count; ++s) {
    std::vector<double> times(n_times);
    for (double& t : times) t = time_rng.uniform(time_box.first, time_box.second);
    bool degenerate_box = time_box.first == time_box.second;
    if (degenerate_box)
      for (double& t : times) t = time_box.first;

    QuantitySample qs = toeplitz_quantities(times, mt, N, true);
    if (use_resolvent_route) {
      QuantitySample qr = resolvent_quantities(times, mt, N, M);
      for (size_t i = 0; i < qs.base.size(); ++i)
        route_diff = std::max(route_diff, std::abs(qs.base[i] - qr.base[i]));
      for (size_t i = 0; i < qs.shifted.size(); ++i)
        route_diff = std::max(route_diff, std::abs(qs.shifted[i] - qr.shifted[i]));
      // The resolvent route is the one whose ranks are reported.
      std::vector<cplx> row = qr.base;
      base_rows.push_back(row);
      row.insert(row.end(), qr.shifted.begin(), qr.shifted.end());
      with_rows.push_back(row);
    } else {
      std::vector<cplx> row = qs.base;
      base_rows.push_back(row);
      row.insert(row.end(), qs.shifted.begin(), qs.shifted.end());
      with_rows.push_back(row);
    }
    std::vector<cplx> drow = qs.base;
    drow.insert(drow.end(), qs.derivatives.begin(), qs.derivatives.end());
    deriv_rows.push_back(drow);
  }
  res.route_agreement = route_diff;
  res.rank_without_shifts = rank_of_samples(base_rows, res.rank_threshold, &res.sv_without);
  res.rank_with_shifts = rank_of_samples(with_rows, res.rank_threshold, &res.sv_with);
  res.rank_with_derivatives = rank_of_samples(deriv_rows, res.rank_threshold, nullptr);

  std::vector<std::pair<std::vector<int>, std::vector<int>>> sets;
  all_minor_index_sets(N, sets);
  for (const auto& [I, J] : sets) {
    std::string name = "minor[";
    for (int i : I) name += std::to_string(i + 1);
    name += "|";
    for (int j : J) name += std::to_string(j + 1);
    name += "]";
    res.quantity_names.push_back(name);
  }
  for (int drop = 0; drop < N; ++drop)
    res.quantity_names.push_back("det[row" + std::to_string(drop + 1) + "->shifted]");
  for (int drop = 0; drop < N; ++drop)
    res.quantity_names.push_back("det[col" + std::to_string(drop + 1) + "->shifted]");
  return res;
}

}  // namespace bogctilt
