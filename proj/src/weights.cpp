#include "tailweight/weights.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tailweight {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (1 - s^2)^q family: order q and leading constant c.
struct PolyWeight {
  int q;
  double c;
};

bool poly_params(WeightId w, PolyWeight& p) {
  switch (w) {
    case WeightId::J1: p = {1, 2.0 / 3.0}; return true;
    case WeightId::J2: p = {2, 15.0 / 8.0}; return true;
    case WeightId::J3: p = {3, 35.0 / 16.0}; return true;
    case WeightId::J4: p = {4, 315.0 / 128.0}; return true;
    default: return false;
  }
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= double(n - k + i) / double(i);
  return r;
}

// s^2 log s / (s^2 - 1) with its removable singularity at s = 1.
double core_L(double s) {
  const double u = s - 1.0;
  if (std::abs(u) < 1e-6) return 0.5 + 0.5 * u - u * u / 12.0;
  return s * s * std::log(s) / (u * (s + 1.0));
}

// d/ds of core_L.
double core_L_deriv(double s) {
  const double u = s - 1.0;
  if (std::abs(u) < 1e-6) return 0.5 - u / 6.0;
  const double d = u * (s + 1.0);  // s^2 - 1 without cancellation
  return s * (d - 2.0 * std::log(s)) / (d * d);
}

}  // namespace

double j_value(WeightId w, double s) {
  if (!(s > 0.0) || s > 1.0) return 0.0;
  switch (w) {
    case WeightId::JLog: return s == 1.0 ? 0.0 : -std::log(s);
    case WeightId::J0: return 1.0;
    default: break;
  }
  PolyWeight p{};
  poly_params(w, p);
  const double t = 1.0 - s * s;
  return p.c * std::pow(t, p.q);
}

double j_derivative(WeightId w, double s, int m) {
  if (m < 1 || m > 3) throw std::invalid_argument("j_derivative: m must be in 1..3");
  switch (w) {
    case WeightId::J0: return 0.0;
    case WeightId::JLog:
      switch (m) {
        case 1: return -1.0 / s;
        case 2: return 1.0 / (s * s);
        default: return -2.0 / (s * s * s);
      }
    default: break;
  }
  PolyWeight p{};
  poly_params(w, p);
  // c (1-s^2)^q = sum_j c binom(q,j) (-1)^j s^(2j); differentiate term-wise.
  double r = 0.0;
  for (int j = 0; j <= p.q; ++j) {
    const int deg = 2 * j;
    if (deg < m) continue;
    double coef = p.c * binom(p.q, j) * ((j % 2 == 0) ? 1.0 : -1.0);
    for (int d = 0; d < m; ++d) coef *= double(deg - d);
    r += coef * std::pow(s, deg - m);
  }
  return r;
}

double j_log_value(WeightId w, double s) {
  switch (w) {
    case WeightId::J0: return 0.0;
    case WeightId::JLog: return s == 1.0 ? -kInf : std::log(-std::log(s));
    default: break;
  }
  PolyWeight p{};
  poly_params(w, p);
  if (s == 1.0) return -kInf;
  return std::log(p.c) + double(p.q) * std::log1p(-s * s);
}

double j_log_derivative(WeightId w, double s) {
  switch (w) {
    case WeightId::J0: return 0.0;
    case WeightId::JLog: return 1.0 / (s * std::log(s));
    default: break;
  }
  PolyWeight p{};
  poly_params(w, p);
  return -2.0 * p.q * s / (1.0 - s * s);
}

double ell_L(WeightId w, double s) {
  switch (w) {
    case WeightId::J0: return 0.0;
    case WeightId::JLog: return 1.0;
    default: break;
  }
  PolyWeight p{};
  poly_params(w, p);
  return 2.0 * p.q * core_L(s);
}

double ell_L_derivative(WeightId w, double s) {
  switch (w) {
    case WeightId::J0:
    case WeightId::JLog: return 0.0;
    default: break;
  }
  PolyWeight p{};
  poly_params(w, p);
  return 2.0 * p.q * core_L_deriv(s);
}

double beta(WeightId w) {
  switch (w) {
    case WeightId::J0: return 1.0;
    case WeightId::JLog: return 2.0;  // int_0^1 (log s)^2 ds
    default: break;
  }
  PolyWeight p{};
  poly_params(w, p);
  // -int s^(2j) log s ds = 1/(2j+1)^2
  double r = 0.0;
  for (int j = 0; j <= p.q; ++j) {
    const double d = 2.0 * j + 1.0;
    r += binom(p.q, j) * ((j % 2 == 0) ? 1.0 : -1.0) / (d * d);
  }
  return p.c * r;
}

double weight_cdf(WeightId w, double s) {
  if (!(s > 0.0)) return 0.0;
  if (s > 1.0) s = 1.0;
  switch (w) {
    case WeightId::J0: return s;
    case WeightId::JLog: return s * (1.0 - std::log(s));
    default: break;
  }
  PolyWeight p{};
  poly_params(w, p);
  double r = 0.0;
  for (int j = 0; j <= p.q; ++j) {
    const double d = 2.0 * j + 1.0;
    r += binom(p.q, j) * ((j % 2 == 0) ? 1.0 : -1.0) * std::pow(s, d) / d;
  }
  return p.c * r;
}

double kernel_from_weight(WeightId w, double s) {
  if (!(s > 0.0) || s > 1.0) return 0.0;
  if (w == WeightId::J0) return 1.0;
  return weight_cdf(w, s) / (s * beta(w));
}

std::string weight_name(WeightId w) {
  switch (w) {
    case WeightId::JLog: return "JLog";
    case WeightId::J0: return "J0";
    case WeightId::J1: return "J1";
    case WeightId::J2: return "J2";
    case WeightId::J3: return "J3";
    case WeightId::J4: return "J4";
  }
  return "?";
}

WeightId parse_weight(const std::string& name) {
  for (WeightId w : kWeightCatalog)
    if (weight_name(w) == name) return w;
  throw std::invalid_argument("unknown weight function '" + name +
                              "' (expected one of JLog, J0, J1, J2, J3, J4)");
}

}  // namespace tailweight
