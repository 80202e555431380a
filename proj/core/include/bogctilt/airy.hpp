#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "bogctilt/dense.hpp"
#include "bogctilt/tilt.hpp"

namespace bogctilt {

struct AiryValue {
  double ai = 0.0;
  double ai_prime = 0.0;
};

/// Ai and Ai' on |x| <= 30: compensated Maclaurin pair on the central range,
/// Airy-type asymptotic expansions beyond (oscillatory form on the left).
AiryValue airy_ai(double x);

/// Second derivative summed independently (term-differentiated series or
/// differentiated asymptotics), for ODE-residual checks.
double airy_ai_second(double x);

/// Airy kernel (Ai(x)Ai'(y) - Ai'(x)Ai(y))/(x-y), confluent form on the
/// diagonal.
double airy_kernel(double x, double y);

/// Phi_w(x) = int_0^inf e^{-wt} Ai(x+t) dt, composite Gauss-Legendre.
double phi_w(double x, double w);

enum class VarMap { log_stretch, rational };

/// Nodes/weights on (s, inf) after the change of variables; weights include
/// the Jacobian.
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

QuadratureGrid nystrom_grid(double s, int order, VarMap map);

/// Fredholm determinant Det_{L^2(s,inf)}(I - kernel) by the Nystrom method.
double nystrom_fredholm(const std::function<double(double, double)>& kernel, double s,
                        int order, VarMap map = VarMap::log_stretch);

/// Boundary-form vs pushthrough-form spiked determinants:
/// det(I - K_Ai + E_w (x) K_Ai(s,.)) and det(I - K_Ai + Phi_w (x) Ai).
std::pair<double, double> bbp_pushthrough_check(double w, double s, int order);

/// Parameters of the spiked finite Laurent symbol
/// phi_L = exp L(a(z+1/z) + b(z^2+1/z^2)).
struct SpikedSymbolParams {
  double a = 0.25;
  double b = 0.02;
  double L = 20.0;
  double w = 1.0;
  double s = 0.0;

  double chi() const { return 2.0 * a - 4.0 * b; }
  double edge_scale() const;  // c = (a - 8b)^{1/3}
  int N_L() const;            // floor(chi L + c L^{1/3} s)
  double alpha_L() const;     // -exp(-w / (c L^{1/3}))
  void validate() const;
};

/// lhs = fixed-tail kernel from the tilt pipeline with the single column
/// tilt xi_N = (1 - alpha_L z)^{-1}; rhs = the closed-form rank-one
/// correction K_L(i,j) - alpha_L^{i-N+1} K_L(N-1,j). Both on tail indices
/// [N, M).
struct SpikedKernelPair {
  Matrix lhs;
  Matrix rhs;
  double boundary_row_residual = 0.0;  // |(C e_{N-1})_{N-1} - sum h_m alpha^m|
  double tilt_tail_bound = 0.0;        // |alpha|^(truncation degree)
};
SpikedKernelPair spiked_column_kernel_exact(const SpikedSymbolParams& p, int M);

/// Symbol-coefficient Fourier quadrature on |z| = 1 (trapezoid; exact up to
/// aliasing, which decays superexponentially for these entire symbols).
double laurent_exp_coeff_circle(double la, double lb, long n, int nodes);

struct SpikedScalingPoint {
  double L = 0.0;
  double err_coeff = 0.0;    // max |(-1)^n c L^{1/3} b_{L,n} - Ai(x)| on the grid
  double err_kernel = 0.0;   // max |c L^{1/3} (-1)^{i+j} K_L(i,j) - K_Ai(x,y)|
  double err_rank_one = 0.0; // rank-one factor vs e^{-w(x-s)} on the grid
};

std::vector<SpikedScalingPoint> spiked_scaling_check(const SpikedSymbolParams& base,
                                                     const std::vector<double>& l_list);

}  // namespace bogctilt
