#pragma once

#include "tailweight/pareto.hpp"
#include "tailweight/weights.hpp"

namespace tailweight {

/// Inputs for the limiting law of the tail-index estimator. tau < 0 is the
/// second-order parameter and lambda the limit of sqrt(k) a(n/k); both are
/// user-supplied (the library does not derive them per model).
struct AsymptoticSpec {
  double gamma0;
  double alpha;
  WeightId weight;
  double tau = -1.0;
  double lambda = 0.0;
};

/// Scaling constant of the CLT: (1+alpha) int (psi1 at alpha=1)^2
/// ell^(alpha-1) dx, always positive.
double eta(const AsymptoticSpec& spec);

/// Limiting variance: the Brownian-bridge covariance form applied to the
/// signed measure J(s) dpsi(s) over (0,1)^2, with the diagonal kink split
/// into the two triangles.
double sigma2(const AsymptoticSpec& spec);

/// First-order asymptotic bias constant (against dpsi of the first
/// gamma-derivative).
double bias_b1(const AsymptoticSpec& spec);

/// Second-order companion (against dpsi of the second gamma-derivative,
/// which is finite-difference based).
double bias_b2(const AsymptoticSpec& spec);

struct CltLimit {
  double variance;    // lim Var sqrt(k) (gamma_hat - gamma0)
  double mean_shift;  // lim E sqrt(k) (gamma_hat - gamma0)
};

/// Limiting law of sqrt(k)(gamma_hat - gamma0): variance
/// (1+1/alpha)^2 sigma^2 / eta^2 and mean lambda (1+1/alpha) B1 / eta.
CltLimit clt_variance(const AsymptoticSpec& spec);

}  // namespace tailweight
