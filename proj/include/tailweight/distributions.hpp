#pragma once

#include <memory>
#include <string>
#include <variant>

#include "tailweight/estimators.hpp"
#include "tailweight/rng.hpp"

namespace tailweight {

/// Simulation models: Burr(gamma, delta), Frechet(gamma), strict
/// Pareto(gamma), and one-level epsilon-contaminated mixtures of those.
class HeavyTailModel {
 public:
  static HeavyTailModel burr(double gamma, double delta);
  static HeavyTailModel frechet(double gamma);
  static HeavyTailModel pareto(double gamma);
  static HeavyTailModel mixture(double epsilon, HeavyTailModel base,
                                HeavyTailModel contaminant);

  double cdf(double x) const;

  /// Quantile at p in (0,1): closed forms for the simple models, monotone
  /// bisection on the cdf for mixtures (1e-12 relative).
  double quantile(double p) const;

  /// The tail index the estimators target: gamma of the simple model, and of
  /// the BASE component for mixtures (bias is measured against the
  /// uncontaminated truth, independent of epsilon).
  double target_gamma() const;

  /// n iid draws by inverse transform, sorted ascending. Mixtures draw a
  /// Bernoulli(epsilon) branch per observation and invert the chosen
  /// component, which is equivalent in law to inverting the mixture cdf.
  SortedSample sample(int n, SeedSpec seed) const;

  bool is_mixture() const;
  double mixture_epsilon() const;

  /// Textual form: burr:G:D, frechet:G, pareto:G, mix:EPS:<base>:<cont>.
  std::string to_string() const;
  static HeavyTailModel parse(const std::string& text);

 private:
  struct Burr {
    double gamma, delta;
  };
  struct Frechet {
    double gamma;
  };
  struct Pareto {
    double gamma;
  };
  struct Mixture {
    double epsilon;
    std::shared_ptr<const HeavyTailModel> base;
    std::shared_ptr<const HeavyTailModel> contaminant;
  };

  std::variant<Burr, Frechet, Pareto, Mixture> spec_;

  template <class T>
  explicit HeavyTailModel(T spec) : spec_(std::move(spec)) {}
};

}  // namespace tailweight
