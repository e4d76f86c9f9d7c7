#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace tailweight {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1]; index 7 is the center.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};

// Gauss weights attach to Kronrod nodes 1, 3, 5 and the center.
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  double resk = 0.0, resg = 0.0, resabs = 0.0;
  const double fc = f(c);
  fv[14] = fc;
  resk = kKronrodWeights[7] * fc;
  resg = kGaussWeights[3] * fc;
  resabs = kKronrodWeights[7] * std::abs(fc);
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kKronrodNodes[i];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    fv[2 * i] = f1;
    fv[2 * i + 1] = f2;
    resk += kKronrodWeights[i] * (f1 + f2);
    resabs += kKronrodWeights[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) resg += kGaussWeights[i / 2] * (f1 + f2);
  }
  const double mean = 0.5 * resk;
  double resasc = kKronrodWeights[7] * std::abs(fc - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kKronrodWeights[i] *
              (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));
  resasc *= h;
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  err = std::max(err, 50.0 * eps * resabs * h);
  return {a, b, resk * h, err};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b]. Splits the segment
/// with the largest error estimate until the total estimate drops below
/// max(abs_tol, rel_tol * |integral|); throws QuadratureError if the segment
/// budget is exhausted or the integrand is not finite on a minimal interval.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10,
                 double rel_tol = 1e-8, int max_segments = 4096) {
  if (!(b > a)) {
    if (a == b) return 0.0;
    throw std::invalid_argument("integrate: requires a < b");
  }
  const double eps = std::numeric_limits<double>::epsilon();
  std::priority_queue<detail::Segment> queue;
  auto first = detail::gauss_kronrod(f, a, b);
  double total = first.value;
  double total_err = first.error;
  queue.push(first);
  int segments = 1;
  double frozen_val = 0.0, frozen_err = 0.0;  // segments too narrow to split
  while (total_err + frozen_err >
         std::max(abs_tol, rel_tol * std::abs(total + frozen_val))) {
    if (queue.empty() || segments >= max_segments)
      throw QuadratureError("adaptive quadrature failed to converge on [" +
                            std::to_string(a) + ", " + std::to_string(b) +
                            "] (error " + std::to_string(total_err + frozen_err) + ")");
    detail::Segment worst = queue.top();
    queue.pop();
    total -= worst.value;
    total_err -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    const double width = worst.b - worst.a;
    if (!(width > 8.0 * eps * std::max({std::abs(worst.a), std::abs(worst.b), 1.0}))) {
      if (!std::isfinite(worst.value))
        throw QuadratureError("integrand not finite near " + std::to_string(mid));
      frozen_val += worst.value;
      frozen_err += worst.error;
      continue;
    }
    auto left = detail::gauss_kronrod(f, worst.a, mid);
    auto right = detail::gauss_kronrod(f, mid, worst.b);
    ++segments;
    total += left.value + right.value;
    total_err += left.error + right.error;
    queue.push(left);
    queue.push(right);
  }
  const double result = total + frozen_val;
  if (!std::isfinite(result))
    throw QuadratureError("integral is not finite on [" + std::to_string(a) +
                          ", " + std::to_string(b) + "]");
  return result;
}

}  // namespace tailweight
