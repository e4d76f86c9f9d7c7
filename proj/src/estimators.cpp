#include "tailweight/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tailweight {

SortedSample SortedSample::from_data(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  Eigen::ArrayXd v =
      Eigen::Map<const Eigen::ArrayXd>(values.data(), Eigen::Index(values.size()));
  return from_sorted(std::move(v));
}

SortedSample SortedSample::from_sorted(Eigen::ArrayXd values) {
  if (values.size() < 3)
    throw std::invalid_argument("sample must contain at least 3 values");
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw std::invalid_argument("sample values must be positive and finite");
    if (i > 0 && values[i] < values[i - 1])
      throw std::invalid_argument("sample values must be nondecreasing");
  }
  return SortedSample(std::move(values));
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Hill: return "hill";
    case Method::Cdm: return "cdm";
    case Method::Wlse: return "wlse";
    case Method::Mdpd: return "mdpd";
    case Method::Wmdpd: return "wmdpd";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::Hill, Method::Cdm, Method::Wlse, Method::Mdpd,
                   Method::Wmdpd})
    if (method_name(m) == name) return m;
  throw std::invalid_argument(
      "unknown method '" + name +
      "' (expected one of hill, cdm, wlse, mdpd, wmdpd)");
}

Eigen::ArrayXd log_excesses(const SortedSample& sample, int k) {
  const Eigen::Index n = sample.size();
  if (!(k > 1 && k < n))
    throw std::invalid_argument("k must satisfy 1 < k < n (k=" +
                                std::to_string(k) + ", n=" + std::to_string(n) +
                                ")");
  const double threshold = sample.values()[n - k - 1];
  Eigen::ArrayXd out(k);
  for (int i = 1; i <= k; ++i)
    out[i - 1] = std::log(sample.values()[n - i] / threshold);
  return out;
}

namespace internal {

double hill_core(const Eigen::ArrayXd& logexc) {
  // summed in index order so the indicator-weight WLSE matches bit for bit
  double acc = 0.0;
  for (Eigen::Index i = 0; i < logexc.size(); ++i) acc += logexc[i];
  return acc / double(logexc.size());
}

double wlse_core(const Eigen::ArrayXd& logexc, WeightId w) {
  const int k = int(logexc.size());
  double acc = 0.0;
  for (int i = 1; i <= k; ++i)
    acc += j_value(w, double(i) / double(k + 1)) * logexc[i - 1];
  return acc / (beta(w) * double(k));
}

double cdm_core(const Eigen::ArrayXd& logexc, WeightId w) {
  // Kernel form over consecutive spacings, with the plug-in kernel
  // K_i = (i beta)^-1 sum_{j<=i} J(j/(k+1)); summation by parts makes this
  // identical to the weighted least squares estimator.
  const int k = int(logexc.size());
  const double b = beta(w);
  double prefix = 0.0;
  double acc = 0.0;
  for (int i = 1; i <= k; ++i) {
    prefix += j_value(w, double(i) / double(k + 1));
    const double kernel = prefix / (double(i) * b);
    const double spacing =
        logexc[i - 1] - (i < k ? logexc[i] : 0.0);  // log X_(i) - log X_(i+1)
    acc += double(i) / double(k) * kernel * spacing;
  }
  return acc;
}

double estimating_core(const Eigen::ArrayXd& logexc,
                       const EstimatorConfig& cfg, double gamma) {
  if (!(cfg.alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  const int k = int(logexc.size());
  const ModelPoint p{gamma, cfg.alpha, cfg.weight};
  double acc = 0.0;
  for (int i = 1; i <= k; ++i)
    acc += j_value(cfg.weight, double(i) / double(k + 1)) *
           psi1_logx(p, logexc[i - 1]);
  return integral_psi1(p) - (1.0 + 1.0 / cfg.alpha) * acc / double(k);
}

namespace {

struct ScanBracket {
  double lo, hi, f_lo, f_hi;
};

// Derivative-free refinement; stops on |f| <= f_tol or width <= x_tol.
template <class F>
Estimate brent_refine(F&& f, ScanBracket br, double x_tol, double f_tol,
                      int max_iter) {
  double a = br.lo, b = br.hi, c = br.hi;
  double fa = br.f_lo, fb = br.f_hi, fc = fb;
  double d = b - a, e = b - a;
  const double eps = std::numeric_limits<double>::epsilon();
  Estimate est;
  est.bracket_used = {br.lo, br.hi};
  int it = 0;
  for (; it < max_iter; ++it) {
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * x_tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(fb) <= f_tol || std::abs(xm) <= tol1 || fb == 0.0) {
      est.gamma_hat = b;
      est.residual = fb;
      est.iterations = it;
      est.converged = std::abs(fb) <= f_tol;
      return est;
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  throw NonConvergence("root refinement exceeded " + std::to_string(max_iter) +
                       " iterations");
}

}  // namespace

Estimate wmdpd_core(const Eigen::ArrayXd& logexc, const EstimatorConfig& cfg) {
  if (!(cfg.gamma_lo > 0.0) || !(cfg.gamma_lo < cfg.gamma_hi))
    throw std::invalid_argument("bracket must satisfy 0 < gamma_lo < gamma_hi");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  auto f = [&](double g) { return estimating_core(logexc, cfg, g); };

  double pilot = wlse_core(logexc, cfg.weight);
  pilot = std::clamp(pilot, cfg.gamma_lo, cfg.gamma_hi);
  const double fp = f(pilot);

  // Outward geometric scan from the pilot, factor 1.5, both directions.
  struct Chain {
    double x, fx;
    bool alive;
  };
  Chain up{pilot, fp, pilot < cfg.gamma_hi};
  Chain dn{pilot, fp, pilot > cfg.gamma_lo};
  ScanBracket found{};
  bool have = false;
  double best_dist = std::numeric_limits<double>::infinity();
  while (up.alive || dn.alive) {
    if (up.alive) {
      const double nxt = std::min(up.x * 1.5, cfg.gamma_hi);
      const double fn = f(nxt);
      if (up.fx * fn <= 0.0) {
        const double dist = std::abs(std::log(0.5 * (up.x + nxt) / pilot));
        if (!have || dist < best_dist) {
          found = {up.x, nxt, up.fx, fn};
          best_dist = dist;
          have = true;
        }
      }
      up = {nxt, fn, nxt < cfg.gamma_hi};
    }
    if (dn.alive) {
      const double nxt = std::max(dn.x / 1.5, cfg.gamma_lo);
      const double fn = f(nxt);
      if (dn.fx * fn <= 0.0) {
        const double dist = std::abs(std::log(0.5 * (dn.x + nxt) / pilot));
        if (!have || dist < best_dist) {
          found = {nxt, dn.x, fn, dn.fx};
          best_dist = dist;
          have = true;
        }
      }
      dn = {nxt, fn, nxt > cfg.gamma_lo};
    }
    if (have) break;
  }
  if (!have) {
    std::ostringstream msg;
    msg << "no sign change of the estimating function in (" << cfg.gamma_lo
        << ", " << cfg.gamma_hi << ") for k=" << logexc.size()
        << ", alpha=" << cfg.alpha << ", weight=" << weight_name(cfg.weight);
    throw NoRootInBracket(msg.str());
  }

  Estimate est = brent_refine(f, found, cfg.tol * std::max(pilot, 1e-12),
                              cfg.tol, cfg.max_iter);
  est.method = Method::Wmdpd;
  return est;
}

}  // namespace internal

Estimate hill(const SortedSample& sample, int k) {
  Estimate e;
  e.gamma_hat = internal::hill_core(log_excesses(sample, k));
  e.method = Method::Hill;
  return e;
}

Estimate wlse(const SortedSample& sample, int k, WeightId w) {
  Estimate e;
  e.gamma_hat = internal::wlse_core(log_excesses(sample, k), w);
  e.method = Method::Wlse;
  return e;
}

Estimate cdm_kernel(const SortedSample& sample, int k, WeightId w) {
  Estimate e;
  e.gamma_hat = internal::cdm_core(log_excesses(sample, k), w);
  e.method = Method::Cdm;
  return e;
}

double estimating_function(const SortedSample& sample,
                           const EstimatorConfig& cfg, double gamma) {
  return internal::estimating_core(log_excesses(sample, cfg.k), cfg, gamma);
}

Estimate wmdpd(const SortedSample& sample, const EstimatorConfig& cfg) {
  if (!(cfg.alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  return internal::wmdpd_core(log_excesses(sample, cfg.k), cfg);
}

Estimate mdpd(const SortedSample& sample, int k, double alpha) {
  EstimatorConfig cfg;
  cfg.k = k;
  cfg.alpha = alpha;
  cfg.weight = WeightId::J0;
  Estimate e = wmdpd(sample, cfg);
  e.method = Method::Mdpd;
  return e;
}

}  // namespace tailweight
