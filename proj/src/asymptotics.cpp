#include "tailweight/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "tailweight/quadrature.hpp"

namespace tailweight {

namespace {

ModelPoint point(const AsymptoticSpec& spec) {
  if (!(spec.gamma0 > 0.0)) throw std::invalid_argument("gamma0 must be > 0");
  if (!(spec.alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  return ModelPoint{spec.gamma0, spec.alpha, spec.weight};
}

void check_tau(const AsymptoticSpec& spec) {
  if (!(spec.tau < 0.0)) throw std::invalid_argument("tau must be < 0");
}

// Rough magnitude of f over (0,1), to scale absolute quadrature tolerances.
template <class F>
double amplitude(F&& f, int points = 33) {
  double amp = 0.0;
  for (int i = 1; i <= points; ++i)
    amp = std::max(amp, std::abs(f(double(i) / double(points + 1))));
  return amp > 0.0 ? amp : 1e-300;
}

// (s^-tau - 1) / (tau gamma), the second-order regular variation factor.
double rv_factor(double s, double tau, double gamma) {
  return std::expm1(-tau * std::log(s)) / (tau * gamma);
}

}  // namespace

double eta(const AsymptoticSpec& spec) {
  const ModelPoint p = point(spec);
  const double g = p.gamma;
  const double a = p.alpha;
  auto integrand = [&](double s) {
    const double e = std::exp((a + 1.0) * j_log_value(p.weight, s) +
                              a * (g + 1.0) * std::log(s));
    if (e == 0.0) return 0.0;
    const double br = std::log(s) + 1.0 + ell_L(p.weight, s);
    return e * br * br;
  };
  const double pre = (1.0 + a) * std::pow(g, -2.0 - a);
  return pre * integrate(integrand, 0.0, 1.0, 1e-11 / pre, 1e-10);
}

double sigma2(const AsymptoticSpec& spec) {
  const ModelPoint p = point(spec);
  auto bw = [&](double s) { return bridge_weight_s(p, s); };
  const double amp = amplitude(bw);
  auto inner = [&](double t) {
    return integrate([&](double s) { return s * bw(s); }, 0.0, t,
                     1e-14 * amp, 1e-12);
  };
  auto outer = [&](double t) { return bw(t) * (1.0 - t) * inner(t); };
  return 2.0 * integrate(outer, 0.0, 1.0, 1e-13 * amp * amp, 1e-11, 20000);
}

double bias_b1(const AsymptoticSpec& spec) {
  const ModelPoint p = point(spec);
  check_tau(spec);
  auto bw = [&](double s) { return bridge_weight_s(p, s); };
  const double amp = amplitude(bw);
  auto integrand = [&](double s) {
    return s * rv_factor(s, spec.tau, spec.gamma0) * bw(s);
  };
  return -integrate(integrand, 0.0, 1.0, 1e-12 * amp, 1e-9);
}

double bias_b2(const AsymptoticSpec& spec) {
  const ModelPoint p = point(spec);
  check_tau(spec);
  const double g = spec.gamma0;
  // psi2(s) = second gamma-derivative evaluated at x = s^-gamma; its
  // s-derivative by Richardson central differences, steps kept inside (0,1).
  auto psi2 = [&](double s) { return psi_m(p, std::pow(s, -g), 2); };
  auto dpsi2 = [&](double s) {
    const double h = 1e-4 * std::min({s, 1.0 - s, 0.25});
    auto central = [&](double step) {
      return (psi2(s + step) - psi2(s - step)) / (2.0 * step);
    };
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
  };
  auto integrand = [&](double s) {
    const double jw = j_value(p.weight, s);
    if (jw == 0.0) return 0.0;
    return s * rv_factor(s, spec.tau, g) * jw * dpsi2(s);
  };
  const double amp = amplitude(integrand);
  return -integrate(integrand, 1e-9, 1.0 - 1e-9, 1e-9 * amp, 1e-7, 20000);
}

CltLimit clt_variance(const AsymptoticSpec& spec) {
  const double e = eta(spec);
  const double s2 = sigma2(spec);
  const double scale = 1.0 + 1.0 / spec.alpha;
  CltLimit out;
  out.variance = scale * scale * s2 / (e * e);
  out.mean_shift =
      spec.lambda == 0.0 ? 0.0 : scale * spec.lambda * bias_b1(spec) / e;
  return out;
}

}  // namespace tailweight
