#pragma once

#include "tailweight/weights.hpp"

namespace tailweight {

/// A point of the weighted Pareto model: tail index gamma > 0, divergence
/// tuning parameter alpha, and the weight function applied to relative ranks.
struct ModelPoint {
  double gamma;
  double alpha;
  WeightId weight;
};

/// Standard Pareto density gamma^-1 x^(-1-1/gamma) on x >= 1.
double ell_gamma(double gamma, double x);

/// Weighted density J(x^(-1/gamma)) * ell_gamma(x).
double ell_gamma_J(const ModelPoint& p, double x);

/// ell_gamma_J(x)^alpha, with 0^alpha = 0 where the weight vanishes.
double ell_gamma_J_pow(const ModelPoint& p, double x);

/// First gamma-derivative of ell_gamma_J^alpha at x. Requires alpha > 0.
/// Closed form: (alpha/gamma) ell^alpha (gamma^-1 log x - 1 - L(x^(-1/gamma))).
double psi1(const ModelPoint& p, double x);

/// psi1 expressed through log x; the hot path used by the estimators.
double psi1_logx(const ModelPoint& p, double logx);

/// m-th gamma-derivative of ell_gamma_J^alpha, m in {2,3}, by
/// Richardson-extrapolated central differences of psi1 (base step 1e-4 gamma).
double psi_m(const ModelPoint& p, double x, int m);

/// int_1^inf psi1 of the (alpha+1)-power, i.e. the population side of the
/// estimating equation. Computed in the substituted variable s = x^(-1/gamma).
double integral_psi1(const ModelPoint& p);

/// int_1^inf ell_gamma_J(x)^power dx, power > 0, via the same substitution.
double integral_power(const ModelPoint& p, double power);

// s-domain views, s = x^(-1/gamma) in (0,1). Under this substitution
// ell_gamma_J(x) dx = J(s) ds and ell_gamma_J(x) = gamma^-1 J(s) s^(gamma+1).

/// log ell_gamma_J(s^(-gamma)).
double log_density_s(const ModelPoint& p, double s);

/// psi(s) := psi1 evaluated at x = s^(-gamma).
double psi_s(const ModelPoint& p, double s);

/// d psi / d s, in closed form (the weight's log-derivative and L' supply
/// every term; power factors are combined in log space).
double dpsi_s(const ModelPoint& p, double s);

/// J(s) * dpsi_s(s): the signed weight against which the Brownian-bridge
/// covariance and the bias integrands are integrated. Bounded as s -> 1.
double bridge_weight_s(const ModelPoint& p, double s);

}  // namespace tailweight
