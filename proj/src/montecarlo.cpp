#include "tailweight/montecarlo.hpp"

#include "tailweight/io.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <mutex>
#include <thread>

namespace tailweight {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<CellSpec> build_cells(const SimulationPlan& plan) {
  std::vector<CellSpec> cells;
  for (Method m : plan.methods) {
    switch (m) {
      case Method::Hill:
        for (int k : plan.k_grid) cells.push_back({m, std::nullopt, 0.0, k});
        break;
      case Method::Cdm:
      case Method::Wlse:
        for (WeightId w : plan.weights)
          for (int k : plan.k_grid) cells.push_back({m, w, 0.0, k});
        break;
      case Method::Mdpd:
        for (double a : plan.alphas)
          for (int k : plan.k_grid) cells.push_back({m, WeightId::J0, a, k});
        break;
      case Method::Wmdpd:
        for (WeightId w : plan.weights)
          for (double a : plan.alphas)
            for (int k : plan.k_grid) cells.push_back({m, w, a, k});
        break;
    }
  }
  return cells;
}

void validate(const SimulationPlan& plan) {
  if (plan.reps < 1) throw std::invalid_argument("reps must be >= 1");
  if (plan.n < 3) throw std::invalid_argument("n must be >= 3");
  if (plan.k_grid.empty()) throw std::invalid_argument("k grid is empty");
  for (int k : plan.k_grid)
    if (!(k > 1 && k < plan.n))
      throw std::invalid_argument("every k must satisfy 1 < k < n");
  if (plan.methods.empty()) throw std::invalid_argument("no methods selected");
  const bool needs_alpha =
      std::any_of(plan.methods.begin(), plan.methods.end(), [](Method m) {
        return m == Method::Mdpd || m == Method::Wmdpd;
      });
  if (needs_alpha) {
    if (plan.alphas.empty())
      throw std::invalid_argument("mdpd/wmdpd need at least one alpha");
    for (double a : plan.alphas)
      if (!(a > 0.0))
        throw std::invalid_argument("alphas must be > 0 for mdpd/wmdpd");
  }
  const bool needs_weight =
      std::any_of(plan.methods.begin(), plan.methods.end(), [](Method m) {
        return m == Method::Cdm || m == Method::Wlse || m == Method::Wmdpd;
      });
  if (needs_weight && plan.weights.empty())
    throw std::invalid_argument("cdm/wlse/wmdpd need at least one weight");
}

std::string cell_label(const CellSpec& c) {
  std::ostringstream out;
  out << method_name(c.method);
  if (c.weight) out << "/" << weight_name(*c.weight);
  if (c.alpha > 0.0) out << "/alpha=" << c.alpha;
  out << "/k=" << c.k;
  return out.str();
}

}  // namespace

int resolve_thread_count() {
  const char* env = std::getenv("TAILWEIGHT_THREADS");
  long requested = 0;
  if (env != nullptr && *env != '\0') requested = std::strtol(env, nullptr, 10);
  if (requested > 0) return int(std::min(requested, 64L));
  const unsigned hw = std::thread::hardware_concurrency();
  return int(std::clamp(hw, 1u, 8u));
}

std::pair<double, double> abias_mse(const std::vector<double>& estimates,
                                    double target) {
  if (estimates.empty())
    throw std::invalid_argument("abias_mse: empty estimate list");
  double sum = 0.0, sq = 0.0;
  for (double e : estimates) {
    sum += e;
    const double d = e - target;
    sq += d * d;
  }
  const double n = double(estimates.size());
  return {std::abs(sum / n - target), sq / n};
}

HeavyTailModel scenario(const std::string& tag, double gamma, double delta,
                        double epsilon) {
  if (tag == "S1")
    return HeavyTailModel::mixture(epsilon, HeavyTailModel::burr(gamma, delta),
                                   HeavyTailModel::burr(2.0, 0.5));
  if (tag == "S2")
    return HeavyTailModel::mixture(epsilon, HeavyTailModel::frechet(gamma),
                                   HeavyTailModel::frechet(2.0));
  if (tag == "S3")
    return HeavyTailModel::mixture(epsilon, HeavyTailModel::frechet(gamma),
                                   HeavyTailModel::burr(2.0, 0.5));
  if (tag == "S4")
    return HeavyTailModel::mixture(epsilon, HeavyTailModel::burr(gamma, delta),
                                   HeavyTailModel::frechet(2.0));
  throw std::invalid_argument("unknown scenario '" + tag +
                              "' (expected S1, S2, S3 or S4)");
}

SimulationReport run(const SimulationPlan& plan) {
  validate(plan);
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<CellSpec> cells = build_cells(plan);
  const int ncells = int(cells.size());

  // Cells sharing a k reuse the same log-excess slice; group once.
  std::vector<int> k_values = plan.k_grid;
  std::sort(k_values.begin(), k_values.end());
  k_values.erase(std::unique(k_values.begin(), k_values.end()),
                 k_values.end());

  Eigen::ArrayXXd estimates(plan.reps, ncells);
  estimates.setConstant(kNaN);

  auto run_rep = [&](int rep) {
    const SortedSample sample =
        plan.model.sample(plan.n, SeedSpec{plan.base_seed, std::uint64_t(rep)});
    for (int k : k_values) {
      const Eigen::ArrayXd logexc = log_excesses(sample, k);
      for (int c = 0; c < ncells; ++c) {
        if (cells[c].k != k) continue;
        const CellSpec& cell = cells[c];
        double value = kNaN;
        try {
          switch (cell.method) {
            case Method::Hill:
              value = internal::hill_core(logexc);
              break;
            case Method::Cdm:
              value = internal::cdm_core(logexc, *cell.weight);
              break;
            case Method::Wlse:
              value = internal::wlse_core(logexc, *cell.weight);
              break;
            case Method::Mdpd:
            case Method::Wmdpd: {
              EstimatorConfig cfg;
              cfg.k = k;
              cfg.alpha = cell.alpha;
              cfg.weight = *cell.weight;
              cfg.gamma_lo = plan.gamma_lo;
              cfg.gamma_hi = plan.gamma_hi;
              cfg.tol = plan.tol;
              cfg.max_iter = plan.max_iter;
              value = internal::wmdpd_core(logexc, cfg).gamma_hat;
              break;
            }
          }
        } catch (const NoRootInBracket&) {
        } catch (const NonConvergence&) {
        }
        estimates(rep, c) = value;
      }
    }
  };

  const int nthreads = std::min(resolve_thread_count(), plan.reps);
  if (nthreads <= 1) {
    for (int r = 0; r < plan.reps; ++r) run_rep(r);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(nthreads));
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        try {
          for (int r = next.fetch_add(1); r < plan.reps; r = next.fetch_add(1))
            run_rep(r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  SimulationReport report;
  report.cells = cells;
  report.estimates = std::move(estimates);
  report.model = plan.model.to_string();
  report.target_gamma = plan.model.target_gamma();
  report.n = plan.n;
  report.reps = plan.reps;
  report.base_seed = plan.base_seed;
  report.rows.reserve(cells.size());
  for (int c = 0; c < ncells; ++c) {
    std::vector<double> ok;
    ok.reserve(std::size_t(plan.reps));
    for (int r = 0; r < plan.reps; ++r)
      if (!std::isnan(report.estimates(r, c)))
        ok.push_back(report.estimates(r, c));
    const int failures = plan.reps - int(ok.size());
    if (failures * 2 > plan.reps)
      throw DegenerateCell("cell " + cell_label(cells[c]) + " failed in " +
                           std::to_string(failures) + "/" +
                           std::to_string(plan.reps) + " replications");
    const auto [abias, mse] = abias_mse(ok, report.target_gamma);
    double mean = 0.0;
    for (double e : ok) mean += e;
    mean /= double(ok.size());
    report.rows.push_back({cells[c], mean, abias, mse, failures});
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

std::string report_to_csv(const SimulationReport& report) {
  std::ostringstream out;
  out << "method,weight,alpha,k,mean,abias,mse,failures\n";
  for (const ReportRow& row : report.rows) {
    out << method_name(row.cell.method) << ","
        << (row.cell.weight ? weight_name(*row.cell.weight) : "-") << ","
        << format_double(row.cell.alpha) << "," << row.cell.k << ","
        << format_double(row.mean_estimate) << "," << format_double(row.abias) << ","
        << format_double(row.mse) << "," << row.failure_count << "\n";
  }
  return out.str();
}

std::string report_to_plotdata(const SimulationReport& report,
                               const std::string& aggregate) {
  if (aggregate != "mean" && aggregate != "single")
    throw std::invalid_argument("aggregate must be 'mean' or 'single'");
  std::ostringstream out;
  out << "metric,method,weight,alpha,k,value\n";
  auto emit = [&](const char* metric, const CellSpec& cell, double value) {
    out << metric << "," << method_name(cell.method) << ","
        << (cell.weight ? weight_name(*cell.weight) : "-") << ","
        << format_double(cell.alpha) << "," << cell.k << "," << format_double(value)
        << "\n";
  };
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const ReportRow& row = report.rows[i];
    double path = row.mean_estimate;
    if (aggregate == "single") path = report.estimates(0, Eigen::Index(i));
    emit("estimate", row.cell, path);
    emit("abias", row.cell, row.abias);
    emit("mse", row.cell, row.mse);
  }
  return out.str();
}

}  // namespace tailweight
