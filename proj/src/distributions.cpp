#include "tailweight/distributions.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tailweight {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be > 0");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double to_number(const std::string& tok) {
  std::size_t pos = 0;
  double v = std::stod(tok, &pos);
  if (pos != tok.size()) throw std::invalid_argument("bad number '" + tok + "'");
  return v;
}

// Shortest decimal form that parses back to the same double.
std::string shortest(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::stod(buf) == v) break;
  }
  return buf;
}

}  // namespace

HeavyTailModel HeavyTailModel::burr(double gamma, double delta) {
  require_positive(gamma, "gamma");
  require_positive(delta, "delta");
  return HeavyTailModel(Burr{gamma, delta});
}

HeavyTailModel HeavyTailModel::frechet(double gamma) {
  require_positive(gamma, "gamma");
  return HeavyTailModel(Frechet{gamma});
}

HeavyTailModel HeavyTailModel::pareto(double gamma) {
  require_positive(gamma, "gamma");
  return HeavyTailModel(Pareto{gamma});
}

HeavyTailModel HeavyTailModel::mixture(double epsilon, HeavyTailModel base,
                                       HeavyTailModel contaminant) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (base.is_mixture() || contaminant.is_mixture())
    throw std::invalid_argument("mixtures may not be nested");
  return HeavyTailModel(
      Mixture{epsilon, std::make_shared<HeavyTailModel>(std::move(base)),
              std::make_shared<HeavyTailModel>(std::move(contaminant))});
}

bool HeavyTailModel::is_mixture() const {
  return std::holds_alternative<Mixture>(spec_);
}

double HeavyTailModel::mixture_epsilon() const {
  if (!is_mixture()) throw std::invalid_argument("not a mixture model");
  return std::get<Mixture>(spec_).epsilon;
}

double HeavyTailModel::cdf(double x) const {
  if (const auto* b = std::get_if<Burr>(&spec_)) {
    if (!(x > 0.0)) return 0.0;
    return 1.0 - std::pow(1.0 + std::pow(x, 1.0 / b->delta),
                          -b->delta / b->gamma);
  }
  if (const auto* f = std::get_if<Frechet>(&spec_)) {
    if (!(x > 0.0)) return 0.0;
    return std::exp(-std::pow(x, -1.0 / f->gamma));
  }
  if (const auto* p = std::get_if<Pareto>(&spec_)) {
    if (!(x > 1.0)) return 0.0;
    return 1.0 - std::pow(x, -1.0 / p->gamma);
  }
  const auto& m = std::get<Mixture>(spec_);
  return (1.0 - m.epsilon) * m.base->cdf(x) + m.epsilon * m.contaminant->cdf(x);
}

double HeavyTailModel::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("quantile requires p in (0, 1)");
  if (const auto* b = std::get_if<Burr>(&spec_))
    return std::pow(std::pow(1.0 - p, -b->gamma / b->delta) - 1.0, b->delta);
  if (const auto* f = std::get_if<Frechet>(&spec_))
    return std::pow(-std::log(p), -f->gamma);
  if (const auto* pa = std::get_if<Pareto>(&spec_))
    return std::pow(1.0 - p, -pa->gamma);
  const auto& m = std::get<Mixture>(spec_);
  // The mixture quantile lies between the component quantiles.
  double lo = std::min(m.base->quantile(p), m.contaminant->quantile(p));
  double hi = std::max(m.base->quantile(p), m.contaminant->quantile(p));
  if (lo == hi) return lo;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) >= p)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi))) return 0.5 * (lo + hi);
  }
  throw std::runtime_error("mixture quantile inversion did not converge");
}

double HeavyTailModel::target_gamma() const {
  if (const auto* b = std::get_if<Burr>(&spec_)) return b->gamma;
  if (const auto* f = std::get_if<Frechet>(&spec_)) return f->gamma;
  if (const auto* p = std::get_if<Pareto>(&spec_)) return p->gamma;
  return std::get<Mixture>(spec_).base->target_gamma();
}

SortedSample HeavyTailModel::sample(int n, SeedSpec seed) const {
  if (n < 3) throw std::invalid_argument("sample size must be at least 3");
  CounterRng rng(seed);
  std::vector<double> draws(static_cast<std::size_t>(n));
  const auto* m = std::get_if<Mixture>(&spec_);
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform(2 * std::uint64_t(i) + 1);
    if (m != nullptr) {
      const bool contaminated = rng.uniform(2 * std::uint64_t(i)) < m->epsilon;
      draws[std::size_t(i)] = contaminated ? m->contaminant->quantile(u)
                                           : m->base->quantile(u);
    } else {
      draws[std::size_t(i)] = quantile(u);
    }
  }
  return SortedSample::from_data(std::move(draws));
}

std::string HeavyTailModel::to_string() const {
  if (const auto* b = std::get_if<Burr>(&spec_))
    return "burr:" + shortest(b->gamma) + ":" + shortest(b->delta);
  if (const auto* f = std::get_if<Frechet>(&spec_))
    return "frechet:" + shortest(f->gamma);
  if (const auto* p = std::get_if<Pareto>(&spec_))
    return "pareto:" + shortest(p->gamma);
  const auto& m = std::get<Mixture>(spec_);
  return "mix:" + shortest(m.epsilon) + ":" + m.base->to_string() + ":" +
         m.contaminant->to_string();
}

namespace {

HeavyTailModel parse_tokens(const std::vector<std::string>& toks,
                            std::size_t& pos) {
  if (pos >= toks.size())
    throw std::invalid_argument("truncated model specification");
  const std::string head = toks[pos++];
  auto num = [&]() {
    if (pos >= toks.size())
      throw std::invalid_argument("missing parameter after '" + head + "'");
    return to_number(toks[pos++]);
  };
  if (head == "burr") {
    const double g = num();
    const double d = num();
    return HeavyTailModel::burr(g, d);
  }
  if (head == "frechet") return HeavyTailModel::frechet(num());
  if (head == "pareto") return HeavyTailModel::pareto(num());
  if (head == "mix") {
    const double eps = num();
    HeavyTailModel base = parse_tokens(toks, pos);
    HeavyTailModel cont = parse_tokens(toks, pos);
    return HeavyTailModel::mixture(eps, std::move(base), std::move(cont));
  }
  throw std::invalid_argument("unknown model '" + head +
                              "' (expected burr, frechet, pareto, mix)");
}

}  // namespace

HeavyTailModel HeavyTailModel::parse(const std::string& text) {
  const auto toks = split(text, ':');
  std::size_t pos = 0;
  HeavyTailModel model = parse_tokens(toks, pos);
  if (pos != toks.size())
    throw std::invalid_argument("trailing tokens in model '" + text + "'");
  return model;
}

}  // namespace tailweight
