#include "tailweight/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "tailweight/asymptotics.hpp"
#include "tailweight/io.hpp"
#include "tailweight/montecarlo.hpp"
#include "tailweight/quadrature.hpp"
#include "tailweight/version.hpp"

namespace tailweight {

namespace {

using nlohmann::json;

std::vector<int> parse_k_grid(const std::string& text) {
  std::vector<int> ks;
  int a = 0, b = 0, step = 1;
  const int got = std::sscanf(text.c_str(), "%d:%d:%d", &a, &b, &step);
  if (got < 2 || step <= 0 || b < a)
    throw std::invalid_argument("--k-grid expects A:B:STEP with A <= B, STEP > 0");
  for (int k = a; k <= b; k += step) ks.push_back(k);
  return ks;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string timestamp_utc() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::string& out_path, const std::string& subcommand,
                    const json& params, const std::vector<std::string>& argv) {
  json manifest;
  manifest["subcommand"] = subcommand;
  manifest["parameters"] = params;
  manifest["version"] = kVersion;
  manifest["timestamp"] = timestamp_utc();
  json args = json::array();
  args.push_back(subcommand);
  for (const auto& a : argv) args.push_back(a);
  manifest["argv"] = args;
  std::ofstream f(out_path + ".manifest.json");
  f << manifest.dump(2) << "\n";
}

void deliver(const std::string& text, const std::string& out_path,
             std::ostream& fallback) {
  if (out_path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write to '" + out_path + "'");
  f << text;
}

struct EstimateArgs {
  std::string input;
  int k = 0;
  std::string k_grid;
  double alpha = 1.0;
  std::string weight = "J3";
  std::string method;
  double gamma_lo = 0.01, gamma_hi = 10.0, tol = 1e-8;
  int max_iter = 200;
  std::string out;
};

int run_estimate(const EstimateArgs& a, const std::vector<std::string>& argv,
                 std::ostream& out) {
  const SortedSample sample = read_sample(a.input);
  std::vector<int> ks;
  if (!a.k_grid.empty()) {
    ks = parse_k_grid(a.k_grid);
    if (ks.empty()) throw std::invalid_argument("--k-grid produced no values");
  } else {
    ks.push_back(a.k);
  }
  for (int k : ks)
    if (!(k > 1 && k < sample.size()))
      throw std::invalid_argument(
          "--k must satisfy 1 < k < n (got k=" + std::to_string(k) +
          ", n=" + std::to_string(sample.size()) + ")");
  const Method method = parse_method(a.method);
  const WeightId w = parse_weight(a.weight);

  std::ostringstream csv;
  csv << "k,method,alpha,weight,gamma_hat,converged,residual,iterations\n";
  for (int k : ks) {
    Estimate e;
    double alpha_col = 0.0;
    std::string weight_col = weight_name(w);
    switch (method) {
      case Method::Hill:
        e = hill(sample, k);
        weight_col = "-";
        break;
      case Method::Cdm: e = cdm_kernel(sample, k, w); break;
      case Method::Wlse: e = wlse(sample, k, w); break;
      case Method::Mdpd:
        e = mdpd(sample, k, a.alpha);
        alpha_col = a.alpha;
        weight_col = weight_name(WeightId::J0);
        break;
      case Method::Wmdpd: {
        EstimatorConfig cfg;
        cfg.k = k;
        cfg.alpha = a.alpha;
        cfg.weight = w;
        cfg.gamma_lo = a.gamma_lo;
        cfg.gamma_hi = a.gamma_hi;
        cfg.tol = a.tol;
        cfg.max_iter = a.max_iter;
        e = wmdpd(sample, cfg);
        alpha_col = a.alpha;
        break;
      }
    }
    csv << k << "," << method_name(method) << "," << format_double(alpha_col)
        << "," << weight_col << "," << format_double(e.gamma_hat) << ","
        << (e.converged ? "true" : "false") << "," << format_double(e.residual)
        << "," << e.iterations << "\n";
  }
  deliver(csv.str(), a.out, out);
  if (!a.out.empty()) {
    json params = {{"input", a.input},       {"k", a.k},
                   {"k_grid", a.k_grid},     {"alpha", a.alpha},
                   {"weight", a.weight},     {"method", a.method},
                   {"gamma_lo", a.gamma_lo}, {"gamma_hi", a.gamma_hi},
                   {"tol", a.tol},           {"max_iter", a.max_iter},
                   {"out", a.out}};
    write_manifest(a.out, "estimate", params, argv);
  }
  return 0;
}

struct SimulateArgs {
  std::string model;
  std::string scenario_tag;
  double gamma = 0.0, delta = 0.25, eps = 0.1;
  int n = 500, reps = 200;
  std::string k_grid;
  std::string alphas = "0.5";
  std::string weights = "J3";
  std::string methods = "wmdpd";
  std::uint64_t seed = 0;
  std::string out = "results.csv";
  std::string plotdata;
  std::string aggregate = "mean";
  double gamma_lo = 0.01, gamma_hi = 10.0, tol = 1e-8;
  int max_iter = 200;
};

int run_simulate(const SimulateArgs& a, const std::vector<std::string>& argv,
                 std::ostream& out) {
  SimulationPlan plan{
      a.model.empty() ? scenario(a.scenario_tag, a.gamma, a.delta, a.eps)
                      : HeavyTailModel::parse(a.model)};
  plan.n = a.n;
  plan.reps = a.reps;
  plan.k_grid = parse_k_grid(a.k_grid);
  for (const auto& tok : split_list(a.alphas))
    plan.alphas.push_back(std::stod(tok));
  for (const auto& tok : split_list(a.weights))
    plan.weights.push_back(parse_weight(tok));
  for (const auto& tok : split_list(a.methods))
    plan.methods.push_back(parse_method(tok));
  plan.base_seed = a.seed;
  plan.gamma_lo = a.gamma_lo;
  plan.gamma_hi = a.gamma_hi;
  plan.tol = a.tol;
  plan.max_iter = a.max_iter;

  const SimulationReport report = run(plan);
  deliver(report_to_csv(report), a.out, out);

  json params = {{"model", plan.model.to_string()},
                 {"n", a.n},
                 {"reps", a.reps},
                 {"k_grid", a.k_grid},
                 {"alphas", a.alphas},
                 {"weights", a.weights},
                 {"methods", a.methods},
                 {"seed", a.seed},
                 {"aggregate", a.aggregate},
                 {"gamma_lo", a.gamma_lo},
                 {"gamma_hi", a.gamma_hi},
                 {"tol", a.tol},
                 {"max_iter", a.max_iter},
                 {"out", a.out},
                 {"plotdata", a.plotdata},
                 {"elapsed_seconds", report.elapsed_seconds}};
  if (!a.out.empty()) write_manifest(a.out, "simulate", params, argv);
  if (!a.plotdata.empty()) {
    deliver(report_to_plotdata(report, a.aggregate), a.plotdata, out);
    write_manifest(a.plotdata, "simulate", params, argv);
  }
  return 0;
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"weighted tail-index estimation toolkit"};
  app.require_subcommand(1);

  // --- weights ---
  auto* weights_cmd =
      app.add_subcommand("weights", "tabulate a weight function");
  std::string w_table = "J3";
  int w_grid = 99;
  std::string w_out;
  weights_cmd->add_option("--table", w_table, "weight id (JLog, J0..J4)");
  weights_cmd->add_option("--grid", w_grid, "number of interior grid points")
      ->check(CLI::PositiveNumber);
  weights_cmd->add_option("--out", w_out, "output CSV path");

  // --- model ---
  auto* model_cmd =
      app.add_subcommand("model", "tabulate the weighted Pareto density");
  double m_gamma = 1.0, m_alpha = 1.0;
  std::string m_weight = "J3", m_out;
  int m_grid = 99;
  model_cmd->add_option("--gamma", m_gamma)->check(CLI::PositiveNumber);
  model_cmd->add_option("--alpha", m_alpha)->check(CLI::PositiveNumber);
  model_cmd->add_option("--weight", m_weight);
  model_cmd->add_option("--grid", m_grid)->check(CLI::PositiveNumber);
  model_cmd->add_option("--out", m_out);

  // --- estimate ---
  auto* est_cmd =
      app.add_subcommand("estimate", "tail-index estimates from a data file");
  EstimateArgs ea;
  est_cmd->add_option("--input", ea.input, "newline-separated positive values")
      ->required();
  est_cmd->add_option("--k", ea.k, "number of top order statistics");
  est_cmd->add_option("--k-grid", ea.k_grid, "A:B:STEP range of k values");
  est_cmd->add_option("--alpha", ea.alpha, "divergence tuning parameter");
  est_cmd->add_option("--weight", ea.weight, "weight id");
  est_cmd->add_option("--method", ea.method, "hill|cdm|wlse|wmdpd|mdpd")
      ->required();
  est_cmd->add_option("--gamma-lo", ea.gamma_lo);
  est_cmd->add_option("--gamma-hi", ea.gamma_hi);
  est_cmd->add_option("--tol", ea.tol);
  est_cmd->add_option("--max-iter", ea.max_iter);
  est_cmd->add_option("--out", ea.out);

  // --- simulate ---
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo experiments");
  SimulateArgs sa;
  sim_cmd->add_option("--model", sa.model,
                      "burr:G:D | frechet:G | pareto:G | mix:EPS:<b>:<c>");
  sim_cmd->add_option("--scenario", sa.scenario_tag, "S1..S4");
  sim_cmd->add_option("--gamma", sa.gamma, "base tail index (scenarios)");
  sim_cmd->add_option("--delta", sa.delta, "Burr delta (scenarios)");
  sim_cmd->add_option("--eps", sa.eps, "contamination fraction (scenarios)");
  sim_cmd->add_option("--n", sa.n)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--reps", sa.reps)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--k-grid", sa.k_grid, "A:B:STEP")->required();
  sim_cmd->add_option("--alphas", sa.alphas, "comma list");
  sim_cmd->add_option("--weights", sa.weights, "comma list");
  sim_cmd->add_option("--methods", sa.methods, "comma list");
  sim_cmd->add_option("--seed", sa.seed);
  sim_cmd->add_option("--out", sa.out);
  sim_cmd->add_option("--plotdata", sa.plotdata, "long-format figure data");
  sim_cmd->add_option("--aggregate", sa.aggregate, "mean|single");
  sim_cmd->add_option("--gamma-lo", sa.gamma_lo);
  sim_cmd->add_option("--gamma-hi", sa.gamma_hi);
  sim_cmd->add_option("--tol", sa.tol);
  sim_cmd->add_option("--max-iter", sa.max_iter);

  // --- asymptotics ---
  auto* asy_cmd =
      app.add_subcommand("asymptotics", "limiting constants of the CLT");
  double y_gamma0 = 0.0, y_alpha = 0.0, y_tau = -1.0, y_lambda = 0.0;
  std::string y_weight = "J3", y_out;
  asy_cmd->add_option("--gamma0", y_gamma0)->required();
  asy_cmd->add_option("--alpha", y_alpha)->required();
  asy_cmd->add_option("--weight", y_weight);
  asy_cmd->add_option("--tau", y_tau, "second-order parameter (< 0)");
  asy_cmd->add_option("--lambda", y_lambda, "limit of sqrt(k) a(n/k)");
  asy_cmd->add_option("--out", y_out);

  std::vector<std::string> argv_copy = args;
  std::vector<const char*> argv;
  argv.push_back("tailweight");
  for (const auto& a : argv_copy) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (weights_cmd->parsed()) {
      const WeightId w = parse_weight(w_table);
      std::ostringstream csv;
      csv << "s,J,J1,L,L1,K\n";
      for (int i = 1; i <= w_grid; ++i) {
        const double s = double(i) / double(w_grid + 1);
        csv << format_double(s) << "," << format_double(j_value(w, s)) << ","
            << format_double(j_derivative(w, s, 1)) << ","
            << format_double(ell_L(w, s)) << ","
            << format_double(ell_L_derivative(w, s)) << ","
            << format_double(kernel_from_weight(w, s)) << "\n";
      }
      deliver(csv.str(), w_out, out);
      if (!w_out.empty())
        write_manifest(w_out, "weights",
                       json{{"table", w_table}, {"grid", w_grid}, {"out", w_out}},
                       args);
      return 0;
    }
    if (model_cmd->parsed()) {
      const ModelPoint p{m_gamma, m_alpha, parse_weight(m_weight)};
      std::ostringstream csv;
      csv << "s,x,ell,ell_J,psi1,psi2\n";
      for (int i = 1; i <= m_grid; ++i) {
        const double s = double(i) / double(m_grid + 1);
        const double x = std::pow(s, -m_gamma);
        csv << format_double(s) << "," << format_double(x) << ","
            << format_double(ell_gamma(m_gamma, x)) << ","
            << format_double(ell_gamma_J(p, x)) << ","
            << format_double(psi1(p, x)) << ","
            << format_double(psi_m(p, x, 2)) << "\n";
      }
      deliver(csv.str(), m_out, out);
      if (!m_out.empty())
        write_manifest(m_out, "model",
                       json{{"gamma", m_gamma},
                            {"alpha", m_alpha},
                            {"weight", m_weight},
                            {"grid", m_grid},
                            {"out", m_out}},
                       args);
      return 0;
    }
    if (est_cmd->parsed()) {
      const bool k_given = est_cmd->count("--k") > 0;
      const bool grid_given = est_cmd->count("--k-grid") > 0;
      if (k_given == grid_given)
        throw std::invalid_argument(
            "estimate needs exactly one of --k or --k-grid");
      if (grid_given) ea.k = 0;
      return run_estimate(ea, args, out);
    }
    if (sim_cmd->parsed()) {
      if (sa.model.empty() == sa.scenario_tag.empty())
        throw std::invalid_argument(
            "simulate needs exactly one of --model or --scenario");
      if (!sa.scenario_tag.empty() && !(sa.gamma > 0.0))
        throw std::invalid_argument("--scenario requires --gamma > 0");
      return run_simulate(sa, args, out);
    }
    if (asy_cmd->parsed()) {
      const AsymptoticSpec spec{y_gamma0, y_alpha, parse_weight(y_weight),
                                y_tau, y_lambda};
      const CltLimit limit = clt_variance(spec);
      json result = {{"eta", eta(spec)},
                     {"sigma2", sigma2(spec)},
                     {"b1", bias_b1(spec)},
                     {"b2", bias_b2(spec)},
                     {"clt_variance", limit.variance},
                     {"clt_mean_shift", limit.mean_shift}};
      deliver(result.dump(2) + "\n", y_out, out);
      if (!y_out.empty())
        write_manifest(y_out, "asymptotics",
                       json{{"gamma0", y_gamma0},
                            {"alpha", y_alpha},
                            {"weight", y_weight},
                            {"tau", y_tau},
                            {"lambda", y_lambda},
                            {"out", y_out}},
                       args);
      return 0;
    }
  } catch (const NoRootInBracket& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const NonConvergence& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const QuadratureError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateCell& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace tailweight
