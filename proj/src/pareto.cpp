#include "tailweight/pareto.hpp"

#include <cmath>
#include <stdexcept>

#include "tailweight/quadrature.hpp"

namespace tailweight {

namespace {

void check_point(const ModelPoint& p) {
  if (!(p.gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
}

void check_alpha(const ModelPoint& p) {
  if (!(p.alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
}

void check_x(double x) {
  if (!(x >= 1.0)) throw std::invalid_argument("x must be >= 1");
}

}  // namespace

double ell_gamma(double gamma, double x) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  check_x(x);
  return std::pow(x, -1.0 - 1.0 / gamma) / gamma;
}

double ell_gamma_J(const ModelPoint& p, double x) {
  check_point(p);
  check_x(x);
  const double s = std::exp(-std::log(x) / p.gamma);
  return j_value(p.weight, s) * std::pow(x, -1.0 - 1.0 / p.gamma) / p.gamma;
}

double ell_gamma_J_pow(const ModelPoint& p, double x) {
  check_point(p);
  check_alpha(p);
  check_x(x);
  const double logx = std::log(x);
  const double s = std::exp(-logx / p.gamma);
  const double lw = j_log_value(p.weight, s) - std::log(p.gamma) -
                    (1.0 + 1.0 / p.gamma) * logx;
  return std::exp(p.alpha * lw);
}

double psi1_logx(const ModelPoint& p, double logx) {
  const double g = p.gamma;
  const double s = std::exp(-logx / g);
  const double lw =
      j_log_value(p.weight, s) - std::log(g) - (1.0 + 1.0 / g) * logx;
  const double pw = std::exp(p.alpha * lw);
  if (pw == 0.0) return 0.0;
  return p.alpha / g * pw * (logx / g - 1.0 - ell_L(p.weight, s));
}

double psi1(const ModelPoint& p, double x) {
  check_point(p);
  check_alpha(p);
  check_x(x);
  return psi1_logx(p, std::log(x));
}

double psi_m(const ModelPoint& p, double x, int m) {
  check_point(p);
  check_alpha(p);
  check_x(x);
  if (m < 2 || m > 3) throw std::invalid_argument("psi_m: m must be 2 or 3");
  auto at = [&](double g, int order) {
    ModelPoint q{g, p.alpha, p.weight};
    return order == 1 ? psi1(q, x) : psi_m(q, x, 2);
  };
  const int order = m - 1;
  const double h = (m == 2 ? 1e-4 : 1e-3) * p.gamma;
  auto central = [&](double step) {
    return (at(p.gamma + step, order) - at(p.gamma - step, order)) /
           (2.0 * step);
  };
  const double d_h = central(h);
  const double d_h2 = central(0.5 * h);
  return (4.0 * d_h2 - d_h) / 3.0;
}

double log_density_s(const ModelPoint& p, double s) {
  return j_log_value(p.weight, s) - std::log(p.gamma) +
         (p.gamma + 1.0) * std::log(s);
}

double psi_s(const ModelPoint& p, double s) {
  const double pw = std::exp(p.alpha * log_density_s(p, s));
  if (pw == 0.0) return 0.0;
  return p.alpha / p.gamma * pw *
         (-std::log(s) - 1.0 - ell_L(p.weight, s));
}

double dpsi_s(const ModelPoint& p, double s) {
  const double g = p.gamma;
  const double pw = std::exp(p.alpha * log_density_s(p, s));
  const double dlw = j_log_derivative(p.weight, s) + (g + 1.0) / s;
  const double br = -std::log(s) - 1.0 - ell_L(p.weight, s);
  const double dbr = -1.0 / s - ell_L_derivative(p.weight, s);
  if (pw == 0.0) return 0.0;
  return p.alpha / g * pw * (p.alpha * dlw * br + dbr);
}

double bridge_weight_s(const ModelPoint& p, double s) {
  // J(s) dpsi_s(s) with J absorbed into the power so the J'/J blow-up at the
  // right endpoint cancels: exponent (1+alpha) log J stays.
  const double g = p.gamma;
  const double a = p.alpha;
  const double lj = j_log_value(p.weight, s);
  const double amp = std::exp((1.0 + a) * lj +
                              a * ((g + 1.0) * std::log(s) - std::log(g)));
  if (amp == 0.0) return 0.0;
  const double dlw = j_log_derivative(p.weight, s) + (g + 1.0) / s;
  const double br = -std::log(s) - 1.0 - ell_L(p.weight, s);
  const double dbr = -1.0 / s - ell_L_derivative(p.weight, s);
  return a / g * amp * (a * dlw * br + dbr);
}

double integral_psi1(const ModelPoint& p) {
  check_point(p);
  check_alpha(p);
  const double g = p.gamma;
  const double a = p.alpha;
  const double pre = (a + 1.0) * std::pow(g, -a - 1.0);
  auto integrand = [&](double s) {
    const double e = std::exp((a + 1.0) * j_log_value(p.weight, s) +
                              a * (g + 1.0) * std::log(s));
    if (e == 0.0) return 0.0;
    return e * (-ell_L(p.weight, s) - std::log(s) - 1.0);
  };
  return pre * integrate(integrand, 0.0, 1.0, 1e-10 / std::abs(pre), 1e-9);
}

double integral_power(const ModelPoint& p, double power) {
  check_point(p);
  if (!(power > 0.0)) throw std::invalid_argument("power must be > 0");
  const double g = p.gamma;
  const double pre = std::pow(g, 1.0 - power);
  auto integrand = [&](double s) {
    return std::exp(power * j_log_value(p.weight, s) +
                    (power - 1.0) * (g + 1.0) * std::log(s));
  };
  return pre * integrate(integrand, 0.0, 1.0, 1e-12 / std::abs(pre), 1e-10);
}

}  // namespace tailweight
