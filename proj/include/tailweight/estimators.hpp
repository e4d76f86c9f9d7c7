#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tailweight/pareto.hpp"
#include "tailweight/weights.hpp"

namespace tailweight {

/// Thrown when the outward scan finds no sign change of the estimating
/// function inside (gamma_lo, gamma_hi).
struct NoRootInBracket : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when the root refinement exceeds its iteration budget.
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ascending order statistics of a positive sample, n >= 3.
class SortedSample {
 public:
  static SortedSample from_data(std::vector<double> values);
  static SortedSample from_sorted(Eigen::ArrayXd values);

  const Eigen::ArrayXd& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }

 private:
  explicit SortedSample(Eigen::ArrayXd v) : values_(std::move(v)) {}
  Eigen::ArrayXd values_;
};

enum class Method { Hill, Cdm, Wlse, Mdpd, Wmdpd };

std::string method_name(Method m);
Method parse_method(const std::string& name);

struct EstimatorConfig {
  int k = 0;
  double alpha = 1.0;
  WeightId weight = WeightId::J3;
  double gamma_lo = 0.01;
  double gamma_hi = 10.0;
  double tol = 1e-8;
  int max_iter = 200;
};

struct Estimate {
  double gamma_hat = 0.0;
  Method method = Method::Hill;
  double residual = 0.0;  // estimating-function value at the root (WMDPD only)
  int iterations = 0;
  std::pair<double, double> bracket_used{0.0, 0.0};
  bool converged = true;
};

/// log(X_{n-i+1:n} / X_{n-k:n}) for i = 1..k (index 0 = largest observation).
/// Validates 1 < k < n.
Eigen::ArrayXd log_excesses(const SortedSample& sample, int k);

Estimate hill(const SortedSample& sample, int k);
Estimate cdm_kernel(const SortedSample& sample, int k, WeightId w);
Estimate wlse(const SortedSample& sample, int k, WeightId w);

/// The estimating function pi_k(gamma) whose root is the WMDPD estimate:
/// population integral minus (1 + 1/alpha) times the weighted sample mean of
/// psi1 at the relative excesses.
double estimating_function(const SortedSample& sample,
                           const EstimatorConfig& cfg, double gamma);

Estimate wmdpd(const SortedSample& sample, const EstimatorConfig& cfg);

/// Unweighted comparator: wmdpd with the indicator weight.
Estimate mdpd(const SortedSample& sample, int k, double alpha);

namespace internal {
// Shared cores working on precomputed log-excesses; the Monte Carlo driver
// reuses these to avoid re-slicing the order statistics per cell.
double hill_core(const Eigen::ArrayXd& logexc);
double wlse_core(const Eigen::ArrayXd& logexc, WeightId w);
double cdm_core(const Eigen::ArrayXd& logexc, WeightId w);
double estimating_core(const Eigen::ArrayXd& logexc,
                       const EstimatorConfig& cfg, double gamma);
Estimate wmdpd_core(const Eigen::ArrayXd& logexc, const EstimatorConfig& cfg);
}  // namespace internal

}  // namespace tailweight
