#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "tailweight/asymptotics.hpp"
#include "tailweight/quadrature.hpp"
#include "tailweight/rng.hpp"

using namespace tailweight;

namespace {

const std::array<WeightId, 5> kGridWeights = {
    WeightId::J0, WeightId::J2, WeightId::J3, WeightId::J4, WeightId::JLog};

// For the indicator weight everything is elementary: with A = alpha(gamma+1),
// psi'(s) = alpha gamma^-(1+alpha) s^(A-1) (A(-log s) - A - 1), and the
// double integral over the bridge covariance has the closed form below.
double sigma2_j0_closed(double g, double a) {
  const double A = a * (g + 1.0);
  const double C = A / ((A + 1.0) * (A + 1.0)) - 1.0;
  const double t1 = A * A / (A + 1.0) *
                    (2.0 / std::pow(2.0 * A + 1.0, 3) -
                     2.0 / std::pow(2.0 * A + 2.0, 3));
  const double t2 = A * (C - 1.0) *
                    (1.0 / std::pow(2.0 * A + 1.0, 2) -
                     1.0 / std::pow(2.0 * A + 2.0, 2));
  const double t3 =
      -(A + 1.0) * C * (1.0 / (2.0 * A + 1.0) - 1.0 / (2.0 * A + 2.0));
  return a * a * std::pow(g, -2.0 - 2.0 * a) * 2.0 * (t1 + t2 + t3);
}

double eta_j0_closed(double g, double a) {
  const double A = a * (g + 1.0);
  return (1.0 + a) * std::pow(g, -2.0 - a) * (A * A + 1.0) /
         std::pow(A + 1.0, 3);
}

// Monte Carlo variance of int B(s) J(s) dpsi(s) over simulated Brownian
// bridges: W sampled exactly at the cell midpoints (increment construction),
// psi increments taken in closed form over each cell.
double sigma2_bridge_mc(const AsymptoticSpec& spec, int reps, int cells,
                        std::uint64_t seed) {
  const ModelPoint p{spec.gamma0, spec.alpha, spec.weight};
  std::vector<double> coef(static_cast<std::size_t>(cells));
  for (int i = 0; i < cells; ++i) {
    const double lo = std::max(double(i) / double(cells), 1e-12);
    const double hi = std::min(double(i + 1) / double(cells), 1.0 - 1e-12);
    const double mid = (double(i) + 0.5) / double(cells);
    coef[std::size_t(i)] =
        j_value(spec.weight, mid) * (psi_s(p, hi) - psi_s(p, lo));
  }
  const double half_step = 0.5 / double(cells);
  const double sd_first = std::sqrt(half_step);
  const double sd_step = std::sqrt(1.0 / double(cells));
  const double sd_last = std::sqrt(half_step);
  std::vector<double> w(static_cast<std::size_t>(cells));
  double sum = 0.0, sumsq = 0.0;
  const CounterRng rng(SeedSpec{seed, 0});
  std::uint64_t counter = 0;
  auto normal = [&]() {
    const double u1 = rng.uniform(counter++);
    const double u2 = rng.uniform(counter++);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  };
  for (int r = 0; r < reps; ++r) {
    double acc = sd_first * normal();
    for (int i = 0; i < cells; ++i) {
      if (i > 0) acc += sd_step * normal();
      w[std::size_t(i)] = acc;
    }
    const double w1 = acc + sd_last * normal();
    double z = 0.0;
    for (int i = 0; i < cells; ++i) {
      const double mid = (double(i) + 0.5) / double(cells);
      z += (w[std::size_t(i)] - mid * w1) * coef[std::size_t(i)];
    }
    sum += z;
    sumsq += z * z;
  }
  const double m = sum / double(reps);
  return sumsq / double(reps) - m * m;
}

// Same double integral with the roles of the inner and outer variables
// swapped: outer s, inner over (s, 1).
double sigma2_transposed(const AsymptoticSpec& spec) {
  const ModelPoint p{spec.gamma0, spec.alpha, spec.weight};
  auto bw = [&](double s) { return bridge_weight_s(p, s); };
  double amp = 0.0;
  for (int i = 1; i <= 33; ++i)
    amp = std::max(amp, std::abs(bw(double(i) / 34.0)));
  auto inner = [&](double s) {
    return integrate([&](double t) { return (1.0 - t) * bw(t); }, s, 1.0,
                     1e-14 * amp, 1e-12);
  };
  auto outer = [&](double s) { return bw(s) * s * inner(s); };
  return 2.0 * integrate(outer, 0.0, 1.0, 1e-13 * amp * amp, 1e-11, 20000);
}

}  // namespace

TEST_CASE("eta closed form and positivity") {
  CHECK(eta({1.0, 1.0, WeightId::J0}) ==
        doctest::Approx(10.0 / 27.0).epsilon(1e-9));
  for (double g : {0.25, 0.5, 1.0, 2.0})
    for (double a : {0.1, 0.5, 1.0}) {
      CHECK(eta({g, a, WeightId::J0}) ==
            doctest::Approx(eta_j0_closed(g, a)).epsilon(1e-9));
      for (WeightId w : kGridWeights) CHECK(eta({g, a, w}) > 0.0);
    }
}

TEST_CASE("eta against a brute-force Riemann sum") {
  for (WeightId w : {WeightId::J0, WeightId::J3}) {
    const AsymptoticSpec spec{0.7, 0.6, w};
    auto integrand = [&](double s) {
      const double e = std::exp((spec.alpha + 1.0) * j_log_value(w, s) +
                                spec.alpha * (spec.gamma0 + 1.0) * std::log(s));
      const double br = std::log(s) + 1.0 + ell_L(w, s);
      return e * br * br;
    };
    const double pre =
        (1.0 + spec.alpha) * std::pow(spec.gamma0, -2.0 - spec.alpha);
    const double brute = pre * oracles::riemann(integrand, 0.0, 1.0, 1000000);
    CHECK(oracles::close_rel(eta(spec), brute, 1e-6));
  }
}

TEST_CASE("eta via the explicit psi1-squared route") {
  for (double g : {0.5, 1.0})
    for (double a : {0.5, 1.0, 2.0})
      for (WeightId w : kGridWeights) {
        const ModelPoint unit{g, 1.0, w};
        const ModelPoint p{g, a, w};
        auto integrand = [&](double s) {
          const double x = std::pow(s, -g);
          const double dens = ell_gamma_J(p, x);
          if (dens == 0.0) return 0.0;
          const double v = psi1(unit, x);
          return (1.0 + a) * v * v * std::pow(dens, a - 1.0) * g *
                 std::pow(s, -g - 1.0);
        };
        const double direct = integrate(integrand, 0.0, 1.0, 1e-12, 1e-10);
        CHECK(oracles::close_rel(eta({g, a, w}), direct, 1e-8));
      }
}

TEST_CASE("sigma2 closed form, positivity, and transposition") {
  CHECK(sigma2({1.0, 1.0, WeightId::J0}) ==
        doctest::Approx(877.0 / 10125.0).epsilon(1e-8));
  for (double g : {0.5, 1.0, 2.0})
    for (double a : {0.1, 0.5, 1.0})
      CHECK(sigma2({g, a, WeightId::J0}) ==
            doctest::Approx(sigma2_j0_closed(g, a)).epsilon(1e-8));
  for (double g : {0.5, 1.0})
    for (double a : {0.1, 0.5, 1.0})
      for (WeightId w : kGridWeights) {
        const AsymptoticSpec spec{g, a, w};
        const double v = sigma2(spec);
        CHECK(v > 0.0);
        CHECK(std::abs(v - sigma2_transposed(spec)) <=
              1e-10 * std::max(1.0, std::abs(v)));
      }
}

TEST_CASE("sigma2 against simulated Brownian bridges") {
  // dual-oracle fixtures: quadrature vs Monte Carlo within 1 percent
  {
    const AsymptoticSpec spec{1.0, 1.0, WeightId::J0};
    const double quad = sigma2(spec);
    const double mc = sigma2_bridge_mc(spec, 400000, 256, 20250809u);
    CHECK(oracles::close_rel(quad, mc, 0.01));
    CHECK(quad == doctest::Approx(877.0 / 10125.0).epsilon(1e-8));
  }
  {
    const AsymptoticSpec spec{0.5, 0.5, WeightId::J3};
    const double quad = sigma2(spec);
    const double mc = sigma2_bridge_mc(spec, 400000, 256, 77001u);
    CHECK(oracles::close_rel(quad, mc, 0.01));
  }
}

TEST_CASE("bias_b1 finiteness, Riemann oracle, and x-domain form") {
  for (double g : {0.5, 1.0})
    for (double a : {0.5, 1.0})
      for (WeightId w : kGridWeights)
        CHECK(std::isfinite(bias_b1({g, a, w, -1.0, 0.0})));

  // brute-force midpoint sum in the substituted variable
  {
    const AsymptoticSpec spec{1.0, 1.0, WeightId::J0, -1.0, 0.0};
    const ModelPoint p{1.0, 1.0, WeightId::J0};
    auto integrand = [&](double s) {
      return -s * (std::expm1(-spec.tau * std::log(s)) / (spec.tau * 1.0)) *
             bridge_weight_s(p, s);
    };
    const double brute = oracles::riemann(integrand, 0.0, 1.0, 1000000);
    CHECK(oracles::close_rel(bias_b1(spec), brute, 1e-5));
  }

  // same integral in the raw variable, derivative by finite differences
  for (WeightId w : kGridWeights) {
    const AsymptoticSpec spec{0.8, 0.7, w, -0.7, 0.0};
    const ModelPoint p{0.8, 0.7, w};
    auto dpsi_x = [&](double x) {
      const double h = std::min(1e-4 * x, 0.25 * (x - 1.0));
      auto f = [&](double t) { return psi1(p, t); };
      return oracles::richardson_diff(f, x, h);
    };
    double x_side = 0.0;
    for (int dec = 0; dec < 10; ++dec) {
      const double lo = dec == 0 ? 1.0 + 1e-7 : std::pow(10.0, dec);
      const double hi = std::pow(10.0, dec + 1);
      x_side += integrate(
          [&](double x) {
            const double s = std::pow(x, -1.0 / spec.gamma0);
            return s *
                   (std::expm1(-spec.tau * std::log(s)) /
                    (spec.tau * spec.gamma0)) *
                   j_value(w, s) * dpsi_x(x);
          },
          lo, hi, 1e-11, 1e-9, 20000);
    }
    CHECK(oracles::close_rel(bias_b1(spec), x_side, 1e-4, 1e-8));
  }
}

TEST_CASE("bias_b1 tau to zero continuity") {
  for (WeightId w : {WeightId::J0, WeightId::J3}) {
    const double g = 1.0, a = 1.0;
    const ModelPoint p{g, a, w};
    // analytic limit integrand: (s^-tau - 1)/(tau g) -> -log s / g
    auto limit_integrand = [&](double s) {
      return -s * (-std::log(s) / g) * bridge_weight_s(p, s);
    };
    const double limit = integrate(limit_integrand, 0.0, 1.0, 1e-12, 1e-10);
    const double near = bias_b1({g, a, w, -1e-8, 0.0});
    CHECK(std::abs(near - limit) <= 1e-4 * (1.0 + std::abs(limit)));
  }
}

TEST_CASE("bias_b2 finiteness, Riemann oracle, and tau continuity") {
  for (WeightId w : kGridWeights)
    CHECK(std::isfinite(bias_b2({1.0, 0.5, w, -1.0, 0.0})));

  {
    const AsymptoticSpec spec{1.0, 1.0, WeightId::J3, -1.0, 0.0};
    const ModelPoint p{1.0, 1.0, WeightId::J3};
    auto psi2 = [&](double s) { return psi_m(p, std::pow(s, -1.0), 2); };
    auto integrand = [&](double s) {
      const double h = 1e-4 * std::min({s, 1.0 - s, 0.25});
      const double d =
          (4.0 * (psi2(s + 0.5 * h) - psi2(s - 0.5 * h)) / h -
           (psi2(s + h) - psi2(s - h)) / (2.0 * h)) /
          3.0;
      return -s * (std::expm1(-spec.tau * std::log(s)) / spec.tau) *
             j_value(spec.weight, s) * d;
    };
    const double brute = oracles::riemann(integrand, 1e-6, 1.0 - 1e-6, 200000);
    CHECK(oracles::close_rel(bias_b2(spec), brute, 1e-4, 1e-8));
  }

  for (double tau : {-2.0, -0.5, -0.01}) {
    const double b = bias_b2({1.0, 1.0, WeightId::J2, tau, 0.0});
    const double b_eps = bias_b2({1.0, 1.0, WeightId::J2, tau * (1.0 + 1e-6), 0.0});
    CHECK(std::abs(b - b_eps) <= 1e-4 * (1.0 + std::abs(b)));
  }

  // tau -> 0 limit: the regular-variation factor collapses to -log s / gamma
  {
    const double g = 1.0;
    const ModelPoint p{g, 1.0, WeightId::J2};
    auto psi2 = [&](double s) { return psi_m(p, std::pow(s, -g), 2); };
    auto limit_integrand = [&](double s) {
      const double h = 1e-4 * std::min({s, 1.0 - s, 0.25});
      const double d =
          (4.0 * (psi2(s + 0.5 * h) - psi2(s - 0.5 * h)) / h -
           (psi2(s + h) - psi2(s - h)) / (2.0 * h)) /
          3.0;
      return -s * (-std::log(s) / g) * j_value(WeightId::J2, s) * d;
    };
    const double limit =
        integrate(limit_integrand, 1e-9, 1.0 - 1e-9, 1e-9, 1e-7, 20000);
    const double near = bias_b2({g, 1.0, WeightId::J2, -1e-8, 0.0});
    CHECK(std::abs(near - limit) <= 1e-4 * (1.0 + std::abs(limit)));
  }
}

TEST_CASE("bias_b1 continuous across the tau range") {
  for (double tau : {-5.0, -2.0, -1.0, -0.1, -0.001, -1e-6}) {
    const double b = bias_b1({0.5, 0.5, WeightId::J3, tau, 0.0});
    const double b_eps =
        bias_b1({0.5, 0.5, WeightId::J3, tau * (1.0 + 1e-6), 0.0});
    CHECK(std::isfinite(b));
    CHECK(std::abs(b - b_eps) <= 1e-6 * (1.0 + std::abs(b)));
  }
}

TEST_CASE("clt limit") {
  const CltLimit centered = clt_variance({1.0, 1.0, WeightId::J0, -1.0, 0.0});
  CHECK(centered.mean_shift == 0.0);
  // closed-form variance for the indicator weight
  auto var_j0 = [](double g, double a) {
    const double A = a * (g + 1.0);
    return g * g * (sigma2_j0_closed(g, a) / (a * a * std::pow(g, -2 - 2 * a))) *
           std::pow(A + 1.0, 6) / std::pow(A * A + 1.0, 2);
  };
  for (double g : {0.5, 1.0})
    for (double a : {0.5, 1.0}) {
      const CltLimit lim = clt_variance({g, a, WeightId::J0, -1.0, 0.0});
      CHECK(lim.variance == doctest::Approx(var_j0(g, a)).epsilon(1e-7));
    }
  // the small-alpha limit recovers the maximum-likelihood variance gamma^2
  const CltLimit hill_like = clt_variance({0.5, 1e-3, WeightId::J0, -1.0, 0.0});
  CHECK(std::abs(hill_like.variance - 0.25) < 0.05 * 0.25);
  // nonzero lambda shifts the mean by lambda (1+1/alpha) B1 / eta
  const AsymptoticSpec shifted{1.0, 1.0, WeightId::J3, -1.0, 2.0};
  const CltLimit lim = clt_variance(shifted);
  const double expect =
      2.0 * (1.0 + 1.0 / shifted.alpha) * bias_b1(shifted) / eta(shifted);
  CHECK(lim.mean_shift == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("asymptotic spec validation") {
  CHECK_THROWS_AS(eta({-1.0, 1.0, WeightId::J0}), std::invalid_argument);
  CHECK_THROWS_AS(eta({1.0, 0.0, WeightId::J0}), std::invalid_argument);
  CHECK_THROWS_AS(bias_b1({1.0, 1.0, WeightId::J0, 0.5, 0.0}),
                  std::invalid_argument);
}
