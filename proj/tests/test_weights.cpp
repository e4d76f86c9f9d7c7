#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tailweight/quadrature.hpp"
#include "tailweight/weights.hpp"

using namespace tailweight;

namespace {
const std::array<WeightId, 5> kNormalized = {
    WeightId::JLog, WeightId::J0, WeightId::J2, WeightId::J3, WeightId::J4};
}

TEST_CASE("j_value closed forms") {
  CHECK(j_value(WeightId::J1, 1e-12) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(j_value(WeightId::J0, 0.7) == 1.0);
  CHECK(j_value(WeightId::J3, 0.5) ==
        doctest::Approx(945.0 / 1024.0).epsilon(1e-14));
  CHECK(j_value(WeightId::JLog, 0.5) == doctest::Approx(std::log(2.0)));
  // zero extension outside (0,1); left limit at s == 1
  for (WeightId w : kWeightCatalog) {
    CHECK(j_value(w, -0.5) == 0.0);
    CHECK(j_value(w, 0.0) == 0.0);
    CHECK(j_value(w, 1.5) == 0.0);
  }
  CHECK(j_value(WeightId::J0, 1.0) == 1.0);
  CHECK(j_value(WeightId::J3, 1.0) == 0.0);
  CHECK(j_value(WeightId::JLog, 1.0) == 0.0);
}

TEST_CASE("weight functions integrate to one (J1 keeps its tabulated 2/3)") {
  for (WeightId w : kNormalized) {
    const double total = integrate([&](double s) { return j_value(w, s); },
                                   0.0, 1.0, 1e-13, 1e-12);
    CHECK(std::abs(total - 1.0) < 1e-10);
  }
  const double j1 = integrate([](double s) { return j_value(WeightId::J1, s); },
                              0.0, 1.0, 1e-13, 1e-12);
  CHECK(j1 == doctest::Approx(4.0 / 9.0).epsilon(1e-10));
}

TEST_CASE("weights are nonincreasing on (0,1)") {
  for (WeightId w : kWeightCatalog) {
    double prev = j_value(w, 1e-4);
    for (int i = 1; i <= 999; ++i) {
      const double s = double(i) / 1000.0;
      const double v = j_value(w, s);
      CHECK(v <= prev + 1e-12);
      CHECK(v >= 0.0);
      prev = v;
    }
  }
}

TEST_CASE("j_derivative examples and finite-difference oracle") {
  CHECK(j_derivative(WeightId::J0, 0.3, 1) == 0.0);
  CHECK(j_derivative(WeightId::J1, 0.5, 1) ==
        doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
  CHECK(j_derivative(WeightId::JLog, 0.25, 1) == doctest::Approx(-4.0));

  for (WeightId w : kWeightCatalog) {
    for (int i = 1; i <= 9; ++i) {
      const double s = 0.1 * double(i);
      auto f = [&](double t) { return j_value(w, t); };
      const double fd = oracles::richardson_diff(f, s, 1e-5);
      CHECK(oracles::close_rel(j_derivative(w, s, 1), fd, 1e-6, 1e-10));
      auto f1 = [&](double t) { return j_derivative(w, t, 1); };
      CHECK(oracles::close_rel(j_derivative(w, s, 2),
                               oracles::richardson_diff(f1, s, 1e-5), 1e-6,
                               1e-10));
      auto f2 = [&](double t) { return j_derivative(w, t, 2); };
      CHECK(oracles::close_rel(j_derivative(w, s, 3),
                               oracles::richardson_diff(f2, s, 1e-5), 1e-5,
                               1e-10));
    }
  }
  CHECK_THROWS_AS(j_derivative(WeightId::J3, 0.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(j_derivative(WeightId::J3, 0.5, 4), std::invalid_argument);
}

TEST_CASE("ell_L closed forms match the defining ratio") {
  CHECK(ell_L(WeightId::J0, 0.4) == 0.0);
  CHECK(ell_L(WeightId::J3, 0.5) ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(ell_L(WeightId::JLog, 0.3) == 1.0);

  // definitional cross-check: L(s) = s (J'(s)/J(s)) log s
  for (WeightId w : {WeightId::J1, WeightId::J2, WeightId::J3, WeightId::J4,
                     WeightId::JLog}) {
    for (int i = 1; i <= 19; ++i) {
      const double s = 0.05 * double(i);
      const double def =
          s * (j_derivative(w, s, 1) / j_value(w, s)) * std::log(s);
      CHECK(oracles::close_rel(ell_L(w, s), def, 1e-10, 1e-12));
    }
  }

  // removable singularity at s -> 1: limit is the kernel order q
  CHECK(ell_L(WeightId::J3, 1.0 - 1e-9) == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(ell_L(WeightId::J2, 1.0 - 1e-12) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(ell_L(WeightId::J4, 1.0 - 1e-7) == doctest::Approx(4.0).epsilon(1e-6));
  // continuity across the series switchover
  CHECK(ell_L(WeightId::J3, 1.0 - 2e-6) ==
        doctest::Approx(ell_L(WeightId::J3, 1.0 - 0.5e-6)).epsilon(1e-5));
}

TEST_CASE("ell_L_derivative examples and finite-difference oracle") {
  CHECK(ell_L_derivative(WeightId::J0, 0.6) == 0.0);
  CHECK(ell_L_derivative(WeightId::JLog, 0.6) == 0.0);
  const double expected =
      6.0 * 0.5 * (0.25 - 2.0 * std::log(0.5) - 1.0) / (0.75 * 0.75);
  CHECK(ell_L_derivative(WeightId::J3, 0.5) ==
        doctest::Approx(expected).epsilon(1e-13));

  for (WeightId w : {WeightId::J1, WeightId::J2, WeightId::J3, WeightId::J4}) {
    for (int i = 1; i <= 9; ++i) {
      const double s = 0.1 * double(i);
      auto f = [&](double t) { return ell_L(w, t); };
      CHECK(oracles::close_rel(ell_L_derivative(w, s),
                               oracles::richardson_diff(f, s, 1e-5), 1e-6,
                               1e-10));
    }
  }
}

TEST_CASE("ell_L and its derivative stay bounded over (0,1)") {
  for (WeightId w : kWeightCatalog) {
    for (int i = 1; i < 5000; ++i) {
      const double s = double(i) / 5000.0;
      CHECK(std::isfinite(ell_L(w, s)));
      CHECK(std::abs(ell_L(w, s)) < 10.0);
      CHECK(std::isfinite(ell_L_derivative(w, s)));
      CHECK(std::abs(ell_L_derivative(w, s)) < 10.0);
    }
  }
}

TEST_CASE("beta closed forms against quadrature") {
  CHECK(beta(WeightId::J0) == 1.0);
  CHECK(beta(WeightId::JLog) == 2.0);
  CHECK(beta(WeightId::J1) == doctest::Approx(16.0 / 27.0).epsilon(1e-14));
  for (WeightId w : kWeightCatalog) {
    const double quad =
        -integrate([&](double s) { return j_value(w, s) * std::log(s); }, 0.0,
                   1.0, 1e-13, 1e-12);
    CHECK(beta(w) == doctest::Approx(quad).epsilon(1e-11));
  }
}

TEST_CASE("kernel_from_weight") {
  // the log weight's kernel, normalized by beta = 2
  for (double s : {0.1, 0.35, 0.8}) {
    CHECK(kernel_from_weight(WeightId::JLog, s) ==
          doctest::Approx((1.0 - std::log(s)) / 2.0).epsilon(1e-13));
  }
  CHECK(kernel_from_weight(WeightId::J0, 0.5) == 1.0);

  for (WeightId w : kWeightCatalog) {
    const double total = integrate(
        [&](double s) { return kernel_from_weight(w, s); }, 0.0, 1.0, 1e-12,
        1e-11);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    // phi matches quadrature of J
    const double phi = integrate([&](double s) { return j_value(w, s); }, 0.0,
                                 0.37, 1e-13, 1e-12);
    CHECK(weight_cdf(w, 0.37) == doctest::Approx(phi).epsilon(1e-11));
    // nonincreasing
    double prev = kernel_from_weight(w, 1e-3);
    for (int i = 1; i <= 999; ++i) {
      const double v = kernel_from_weight(w, double(i) / 1000.0);
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("weight names round trip") {
  for (WeightId w : kWeightCatalog) CHECK(parse_weight(weight_name(w)) == w);
  CHECK_THROWS_AS(parse_weight("J7"), std::invalid_argument);
}
