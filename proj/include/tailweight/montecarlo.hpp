#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tailweight/distributions.hpp"
#include "tailweight/estimators.hpp"

namespace tailweight {

/// Thrown when more than half of the replications of one (method, weight,
/// alpha, k) cell fail to produce an estimate.
struct DegenerateCell : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimulationPlan {
  HeavyTailModel model;
  int n = 500;
  int reps = 200;
  std::vector<int> k_grid;
  std::vector<double> alphas;      // used by mdpd / wmdpd rows
  std::vector<WeightId> weights;   // used by cdm / wlse / wmdpd rows
  std::vector<Method> methods;
  std::uint64_t base_seed = 0;
  double gamma_lo = 0.01;
  double gamma_hi = 10.0;
  double tol = 1e-8;
  int max_iter = 200;
};

/// One aggregation cell. weight is empty for hill rows; alpha is 0 for the
/// alpha-free estimators.
struct CellSpec {
  Method method;
  std::optional<WeightId> weight;
  double alpha;
  int k;
};

struct ReportRow {
  CellSpec cell;
  double mean_estimate;
  double abias;
  double mse;
  int failure_count;
};

struct SimulationReport {
  std::vector<ReportRow> rows;
  Eigen::ArrayXXd estimates;  // reps x cells, NaN where a replication failed
  std::vector<CellSpec> cells;
  std::string model;
  double target_gamma;
  int n = 0;
  int reps = 0;
  std::uint64_t base_seed = 0;
  double elapsed_seconds = 0.0;
};

/// |mean - target| and the mean squared deviation from target.
std::pair<double, double> abias_mse(const std::vector<double>& estimates,
                                    double target);

/// The four contamination scenarios: S1 Burr+Burr(2,0.5), S2
/// Frechet+Frechet(2), S3 Frechet+Burr(2,0.5), S4 Burr+Frechet(2).
/// delta applies to the base Burr component where present.
HeavyTailModel scenario(const std::string& tag, double gamma, double delta,
                        double epsilon);

/// Runs the plan: one sample per replication (stream_id = replication
/// index), the full estimator battery per sample, streamed aggregation.
/// Deterministic for a fixed base_seed regardless of the worker count
/// (TAILWEIGHT_THREADS caps it; 0 or unset means auto).
SimulationReport run(const SimulationPlan& plan);

std::string report_to_csv(const SimulationReport& report);

/// Long-format per-figure data: metric in {estimate, abias, mse} against k,
/// one series per (method, weight, alpha). aggregate = "mean" plots the
/// replication mean of the estimate, "single" the first replication's path.
std::string report_to_plotdata(const SimulationReport& report,
                               const std::string& aggregate);

int resolve_thread_count();

}  // namespace tailweight
