// Command-line interface: controller design, margin analysis, Schur
// stability checks, closed-loop simulation, verification suites, and
// margin sweeps, with JSON/CSV output for scripting.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dfc/charpoly.hpp"
#include "dfc/coeffs.hpp"
#include "dfc/dynamics.hpp"
#include "dfc/errors.hpp"
#include "dfc/extremal.hpp"
#include "dfc/margin.hpp"
#include "dfc/trigpoly.hpp"

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // verification failure or instability
constexpr int kExitUsage = 2;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_coeff_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size())
      throw std::invalid_argument("bad coefficient token: " + token);
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("empty coefficient list");
  return values;
}

dfc::CoefficientVector load_coeffs(const std::string& inline_list,
                                   const std::string& file, int period) {
  dfc::CoefficientVector coeffs;
  coeffs.period = period;
  if (!inline_list.empty()) {
    coeffs.a = parse_coeff_list(inline_list);
  } else if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open " + file);
    const json j = json::parse(in);
    coeffs.a = j.at("a").get<std::vector<double>>();
    if (period <= 0 && j.contains("T")) coeffs.period = j.at("T").get<int>();
    if (j.contains("epsilon")) coeffs.epsilon = j.at("epsilon").get<double>();
  } else {
    throw std::invalid_argument("provide --coeffs or --coeffs-file");
  }
  if (coeffs.period <= 0)
    throw std::invalid_argument("provide --period (or a file carrying T)");
  coeffs.depth = static_cast<int>(coeffs.a.size());
  for (double v : coeffs.a)
    if (!std::isfinite(v))
      throw std::invalid_argument("coefficients must be finite");
  return coeffs;
}

json coeffs_json(const dfc::CoefficientVector& coeffs) {
  return json{{"T", coeffs.period},
              {"N", coeffs.depth},
              {"epsilon", coeffs.epsilon},
              {"a", coeffs.a}};
}

json margin_json(const dfc::MarginReport& report,
                 const dfc::CoefficientVector& coeffs) {
  json points = json::array();
  for (const auto& p : report.constraint_points)
    points.push_back(json{{"t", p.t}, {"C", p.c}, {"S", p.s}});
  json j{{"mu_tilde", report.mu_tilde},
         {"witness_t", report.witness_t},
         {"witness_value", report.witness_value},
         {"method", dfc::to_string(report.method)},
         {"constraint_points", std::move(points)},
         {"coeffs", coeffs_json(coeffs)}};
  if (report.method == dfc::MarginMethod::curve)
    j["no_negative_crossing"] = report.no_negative_crossing;
  return j;
}

json verdict_json(const dfc::StabilityVerdict& verdict) {
  json j{{"stable", verdict.stable},
         {"marginal", verdict.marginal},
         {"method", verdict.method == dfc::StabilityMethod::schur_cohn
                        ? "schur_cohn"
                        : "roots"}};
  if (verdict.max_modulus)
    j["max_modulus"] = *verdict.max_modulus;
  else
    j["max_modulus"] = nullptr;
  return j;
}

json cycle_json(const dfc::CycleDescriptor& cycle) {
  return json{{"period", cycle.period},
              {"points", cycle.points},
              {"multiplier", cycle.multiplier},
              {"residual", cycle.residual}};
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
}

// --- config file support -------------------------------------------------
//
// A config file is a flat JSON object whose keys mirror the long option
// names of the invoked subcommand. Explicit command-line flags win; unknown
// keys are rejected by the normal option parser after augmentation.

std::vector<std::string> augment_with_config(
    const std::vector<std::string>& args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw std::invalid_argument("cannot open config " + config_path);
  const json config = json::parse(in);
  if (!config.is_object())
    throw std::invalid_argument("config must be a flat JSON object");

  const auto already_given = [&](const std::string& flag) {
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };

  std::vector<std::string> result = args;
  for (const auto& [key, value] : config.items()) {
    const std::string flag = "--" + key;
    if (already_given(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) result.push_back(flag);
    } else if (value.is_number_integer()) {
      result.push_back(flag);
      result.push_back(std::to_string(value.get<long long>()));
    } else if (value.is_number()) {
      const double v = value.get<double>();
      if (!std::isfinite(v))
        throw std::invalid_argument("config value for " + key +
                                    " is not finite");
      result.push_back(flag);
      result.push_back(format_double(v));
    } else if (value.is_string()) {
      result.push_back(flag);
      result.push_back(value.get<std::string>());
    } else {
      throw std::invalid_argument("config key " + key +
                                  " must be a scalar value");
    }
  }
  return result;
}

// --- verification suites --------------------------------------------------

struct SuiteState {
  int failures = 0;

  void report(const std::string& suite, const std::string& name, bool pass,
              const std::string& detail = "") {
    if (!pass) ++failures;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << suite << " " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
  }
};

std::mt19937_64 suite_rng(std::uint64_t seed, int period, int depth) {
  return std::mt19937_64(seed * 1000003ULL +
                         static_cast<std::uint64_t>(period) * 7919ULL +
                         static_cast<std::uint64_t>(depth) * 101ULL + 17ULL);
}

dfc::CoefficientVector random_unit_sum(std::mt19937_64& rng, int period,
                                       int depth) {
  std::uniform_real_distribution<double> entry(-1.0, 2.0);
  std::vector<double> a(static_cast<std::size_t>(depth));
  while (true) {
    double sum = 0.0;
    for (double& v : a) sum += (v = entry(rng));
    if (std::abs(sum) < 0.25) continue;
    for (double& v : a) v /= sum;
    break;
  }
  dfc::CoefficientVector coeffs;
  coeffs.period = period;
  coeffs.depth = depth;
  coeffs.a = std::move(a);
  return coeffs;
}

// Value at 0 of the quadratic through three samples (Lagrange form).
double extrapolate_to_zero(const double x[3], const double y[3]) {
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    double weight = 1.0;
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      weight *= -x[j] / (x[i] - x[j]);
    }
    total += y[i] * weight;
  }
  return total;
}

double t1_limit(int depth) {
  const double t = std::tan(kPi / (2.0 * (depth + 1)));
  return -t * t;  // -tan^2, the eps -> 0 witness limit
}

// Both designed-margin suites emit, per depth and in case-name order, the
// eps -> 0 extrapolation, the finite-eps margin identity, and (up to depth
// 8) the optimality barrier on 500 random unit-sum lists.
void suite_thm5(SuiteState& state, int max_depth, std::uint64_t seed) {
  const double eps_grid[3] = {1e-2, 1e-3, 1e-4};
  for (int depth = 1; depth <= max_depth; ++depth) {
    char label[32];
    std::snprintf(label, sizeof label, "N=%02d", depth);

    bool identity_ok = true;
    double witnesses[3];
    for (int i = 0; i < 3; ++i) {
      const double eps = eps_grid[i];
      const auto report = dfc::margin_t1(dfc::fejer_coeffs_t1(depth, eps));
      const double binding = (t1_limit(depth) - eps) / (1.0 + eps);
      witnesses[i] = report.witness_value;
      if (std::abs(report.mu_tilde - 1.0 / binding) > 1e-8 ||
          std::abs(report.witness_value - binding) > 1e-10)
        identity_ok = false;
    }
    const double extrapolated = extrapolate_to_zero(eps_grid, witnesses);
    state.report("thm5", std::string(label) + " limit-extrapolation",
                 std::abs(extrapolated - t1_limit(depth)) <= 1e-6);
    state.report("thm5", std::string(label) + " margin-identity", identity_ok);

    if (depth > 8) continue;
    const double bound = 1.0 / t1_limit(depth);  // -cot^2(pi/(2(N+1)))
    auto rng = suite_rng(seed, 1, depth);
    bool ok = true;
    for (int trial = 0; trial < 500 && ok; ++trial)
      ok = dfc::margin_t1(random_unit_sum(rng, 1, depth)).mu_tilde >=
           bound - 1e-8;
    state.report("thm5", std::string(label) + " optimal-bound-500-random", ok);
  }
}

void suite_thm6(SuiteState& state, int max_depth, std::uint64_t seed) {
  const double eps_grid[3] = {1e-2, 1e-3, 1e-4};
  for (int depth = 1; depth <= max_depth; ++depth) {
    char label[32];
    std::snprintf(label, sizeof label, "N=%02d", depth);

    bool identity_ok = true;
    double margins[3];
    for (int i = 0; i < 3; ++i) {
      const double eps = eps_grid[i];
      const auto report = dfc::margin_t2(dfc::fejer_coeffs_t2(depth, eps));
      const double m = (1.0 / depth + eps) / (1.0 + eps);
      margins[i] = report.mu_tilde;
      if (std::abs(std::sqrt(-report.witness_value) - m) > 1e-8)
        identity_ok = false;
    }
    const double extrapolated = extrapolate_to_zero(eps_grid, margins);
    const double limit = -static_cast<double>(depth) * depth;
    state.report("thm6", std::string(label) + " limit-extrapolation",
                 std::abs(extrapolated - limit) <= 1e-5 * std::abs(limit));
    state.report("thm6", std::string(label) + " margin-identity", identity_ok);

    if (depth > 8) continue;
    auto rng = suite_rng(seed, 2, depth);
    bool ok = true;
    for (int trial = 0; trial < 500 && ok; ++trial)
      ok = dfc::margin_t2(random_unit_sum(rng, 2, depth)).mu_tilde >=
           limit - 1e-8;
    state.report("thm6", std::string(label) + " optimal-bound-500-random", ok);
  }
}

void suite_lemma2(SuiteState& state, int max_depth, std::uint64_t seed) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  for (int n = 1; n <= std::min(max_depth, 8); ++n) {
    char label[32];
    std::snprintf(label, sizeof label, "n=%02d", n);
    auto rng = suite_rng(seed, 3, n);
    bool ok = true;
    for (int trial = 0; trial < 25 && ok; ++trial) {
      std::vector<std::complex<double>> a(static_cast<std::size_t>(n));
      for (auto& c : a) c = {entry(rng), entry(rng)};
      ok = dfc::lemma2_disc_check(a);
    }
    state.report("lemma2", std::string(label) + " disc-covering-25-random", ok);
  }
}

void suite_lemma3(SuiteState& state, int max_depth, std::uint64_t seed) {
  for (int depth = 1; depth <= std::min(max_depth, 10); ++depth) {
    char label[32];
    std::snprintf(label, sizeof label, "N=%02d", depth);
    auto rng = suite_rng(seed, 4, depth);
    const double cap = -std::ldexp(1.0, -depth) + 1e-9;
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial)
      ok = dfc::margin_t1(random_unit_sum(rng, 1, depth)).witness_value <= cap;
    state.report("lemma3", std::string(label) + " constrained-min-50-random",
                 ok);
  }
}

void suite_jacobian(SuiteState& state) {
  for (int depth : {1, 2, 3}) {
    for (int period : {1, 2}) {
      for (double r : {3.2, 3.8, 3.9}) {
        char label[64];
        std::snprintf(label, sizeof label, "N=%d T=%d r=%.1f", depth, period,
                      r);
        const dfc::MapSpec map = dfc::MapSpec::logistic(r);
        const auto cycles = dfc::find_cycle(map, period);
        const auto& cycle = period == 1 ? cycles.back() : cycles.front();
        const auto coeffs = period == 1 ? dfc::fejer_coeffs_t1(depth, 1e-3)
                                        : dfc::fejer_coeffs_t2(depth, 1e-3);
        const auto lhs = dfc::augmented_charpoly(map, cycle, coeffs);
        const auto rhs =
            dfc::build_char_poly(coeffs, period, cycle.multiplier);
        bool ok = lhs.degree() == rhs.degree();
        const double scale = rhs.max_abs_coefficient();
        for (int k = 0; ok && k <= rhs.degree(); ++k)
          ok = std::abs(lhs.coefficient(k) - rhs.coefficient(k)) <=
               1e-8 * scale;
        state.report("jacobian", label, ok);
      }
    }
  }
}

void suite_interval(SuiteState& state, int max_depth) {
  for (int depth = 1; depth <= std::min(max_depth, 10); ++depth) {
    char label[32];
    std::snprintf(label, sizeof label, "N=%02d", depth);
    const auto coeffs = dfc::fejer_coeffs_t1(depth, 1e-3);
    const double mu_tilde = dfc::margin_t1(coeffs).mu_tilde;
    bool ok = true;
    const double lo = mu_tilde + 1e-4;
    const double hi = 1.0 - 1e-4;
    for (int i = 0; i < 100 && ok; ++i) {
      const double mu = lo + (hi - lo) * i / 99.0;
      ok = dfc::schur_stable(dfc::build_char_poly(coeffs, 1, mu)).stable;
    }
    if (ok)
      ok = !dfc::schur_stable(dfc::build_char_poly(coeffs, 1, mu_tilde - 1e-4))
                .stable;
    state.report("interval", std::string(label) + " stable-inside-unstable-below",
                 ok);
  }
}

// --- subcommands -----------------------------------------------------------

int run_design(int period, int depth, double epsilon,
               const std::string& out) {
  const auto coeffs = period == 1 ? dfc::fejer_coeffs_t1(depth, epsilon)
                                  : dfc::fejer_coeffs_t2(depth, epsilon);
  emit(coeffs_json(coeffs), out);
  return kExitOk;
}

int run_margin(const dfc::CoefficientVector& coeffs,
               const std::string& method, const std::string& out) {
  json j;
  if (method == "closed") {
    if (coeffs.period == 1)
      j = margin_json(dfc::margin_t1(coeffs), coeffs);
    else if (coeffs.period == 2)
      j = margin_json(dfc::margin_t2(coeffs), coeffs);
    else
      throw std::invalid_argument(
          "closed-form margins exist for period 1 and 2; use --method curve");
  } else if (method == "curve") {
    j = margin_json(dfc::margin_curve(coeffs, coeffs.period), coeffs);
  } else if (method == "bisect") {
    j = json{{"mu_tilde", dfc::margin_bisect(coeffs, coeffs.period)},
             {"method", "bisect"},
             {"coeffs", coeffs_json(coeffs)}};
  } else {
    throw std::invalid_argument("unknown method " + method);
  }
  emit(j, out);
  return kExitOk;
}

int run_schur(const dfc::CoefficientVector& coeffs, double mu,
              bool with_roots, const std::string& out) {
  const auto p = dfc::build_char_poly(coeffs, coeffs.period, mu);
  const auto verdict =
      with_roots ? dfc::stability_from_roots(p) : dfc::schur_stable(p);
  json j = verdict_json(verdict);
  j["mu"] = mu;
  j["coeffs"] = coeffs_json(coeffs);
  if (with_roots) {
    json roots = json::array();
    for (const auto& z : dfc::roots(p))
      roots.push_back(json{{"re", z.real()}, {"im", z.imag()}});
    j["roots"] = std::move(roots);
  }
  emit(j, out);
  return verdict.stable ? kExitOk : kExitFailure;
}

int run_stabilize(const std::string& map_kind, double param,
                  const std::string& map_coeffs, const std::string& domain,
                  int period, int depth, double epsilon, double perturb,
                  long long steps, double tol, int cycle_index,
                  const std::string& trace_path) {
  std::optional<dfc::MapSpec> map;
  if (map_kind == "logistic") {
    map = dfc::MapSpec::logistic(param);
  } else if (map_kind == "quadratic") {
    map = dfc::MapSpec::quadratic(param);
  } else if (map_kind == "custom") {
    if (map_coeffs.empty())
      throw std::invalid_argument("custom maps need --map-coeffs");
    const auto bounds = parse_coeff_list(domain);
    if (bounds.size() != 2)
      throw std::invalid_argument("--domain must be lo,hi");
    map = dfc::MapSpec::polynomial(
        dfc::RealPolynomial(parse_coeff_list(map_coeffs)), bounds[0],
        bounds[1]);
  } else {
    throw std::invalid_argument("unknown map kind " + map_kind);
  }
  if (period != 1 && period != 2)
    throw std::invalid_argument("designed controllers exist for period 1 and 2");

  const auto cycles = dfc::find_cycle(*map, period);
  const dfc::CycleDescriptor* cycle = nullptr;
  if (cycle_index >= 0) {
    if (cycle_index >= static_cast<int>(cycles.size()))
      throw std::invalid_argument("cycle index out of range");
    cycle = &cycles[static_cast<std::size_t>(cycle_index)];
  } else {
    for (const auto& c : cycles)
      if (c.multiplier < 1.0) {
        cycle = &c;
        break;
      }
    if (cycle == nullptr) {
      std::cerr << "no cycle with multiplier below 1; control of this type "
                   "cannot stabilize any orbit of this map\n";
      return kExitFailure;
    }
  }

  const auto coeffs = period == 1 ? dfc::fejer_coeffs_t1(depth, epsilon)
                                  : dfc::fejer_coeffs_t2(depth, epsilon);
  const auto margin = period == 1 ? dfc::margin_t1(coeffs)
                                  : dfc::margin_t2(coeffs);
  const bool predicted =
      dfc::schur_stable(
          dfc::build_char_poly(coeffs, period, cycle->multiplier))
          .stable;

  const auto history = dfc::perturbed_history(*cycle, depth, perturb);
  const auto trace = dfc::simulate(*map, coeffs, period, history, steps, cycle);
  const auto verdict = dfc::detect_convergence(trace, *cycle, tol);

  std::ofstream csv(trace_path);
  if (!csv) throw std::invalid_argument("cannot write " + trace_path);
  dfc::write_trace_csv(csv, trace);

  json j{{"map", map_kind},
         {"param", param},
         {"period", period},
         {"depth", depth},
         {"epsilon", epsilon},
         {"perturb", perturb},
         {"steps", steps},
         {"tol", tol},
         {"cycle", cycle_json(*cycle)},
         {"mu", cycle->multiplier},
         {"mu_tilde", margin.mu_tilde},
         {"predicted_stable", predicted},
         {"coeffs", coeffs_json(coeffs)},
         {"diverged", trace.diverged},
         {"converged", verdict.converged},
         {"converged_at", verdict.step},
         {"final_u", trace.steps.empty() ? 0.0 : trace.steps.back().u},
         {"final_dist", trace.steps.empty() ? 0.0 : trace.steps.back().dist},
         {"trace", trace_path}};
  emit(j, "");
  return verdict.converged ? kExitOk : kExitFailure;
}

int run_verify(const std::string& suite, int max_depth, std::uint64_t seed) {
  SuiteState state;
  const bool all = suite == "all";
  if (all || suite == "thm5") suite_thm5(state, max_depth, seed);
  if (all || suite == "thm6") suite_thm6(state, max_depth, seed);
  if (all || suite == "lemma2") suite_lemma2(state, max_depth, seed);
  if (all || suite == "lemma3") suite_lemma3(state, max_depth, seed);
  if (all || suite == "jacobian") suite_jacobian(state);
  if (all || suite == "interval") suite_interval(state, max_depth);
  std::cout << (state.failures == 0 ? "all checks passed\n"
                                    : "checks failed\n");
  return state.failures == 0 ? kExitOk : kExitFailure;
}

int run_sweep(int period, const std::string& depths, double epsilon,
              const std::string& out_path) {
  int lo = 1, hi = 10;
  const auto split = depths.find("..");
  if (split == std::string::npos) {
    lo = hi = std::stoi(depths);
  } else {
    lo = std::stoi(depths.substr(0, split));
    hi = std::stoi(depths.substr(split + 2));
  }
  if (lo < 1 || hi < lo) throw std::invalid_argument("bad --depths range");

  std::ostringstream table;
  table << "N,mu_tilde,bound,gap\n";
  for (int depth = lo; depth <= hi; ++depth) {
    const auto coeffs = period == 1 ? dfc::fejer_coeffs_t1(depth, epsilon)
                                    : dfc::fejer_coeffs_t2(depth, epsilon);
    const auto report =
        period == 1 ? dfc::margin_t1(coeffs) : dfc::margin_t2(coeffs);
    const double bound = period == 1
                             ? 1.0 / t1_limit(depth)
                             : -static_cast<double>(depth) * depth;
    table << depth << ',' << format_double(report.mu_tilde) << ','
          << format_double(bound) << ','
          << format_double(report.mu_tilde - bound) << "\n";
  }
  if (out_path.empty()) {
    std::cout << table.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << table.str();
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delayed-feedback controller design and Schur-stability "
               "analysis for cycles of one-dimensional discrete maps"};
  app.require_subcommand(1);

  std::string config_path;

  // design
  auto* design = app.add_subcommand("design", "Generate control weights");
  int d_period = 1, d_depth = 1;
  double d_epsilon = 1e-3;
  std::string d_out;
  design->add_option("--period", d_period, "Cycle period (1 or 2)")
      ->check(CLI::IsMember({1, 2}));
  design->add_option("--depth", d_depth, "Prehistory depth N")->required();
  design->add_option("--epsilon", d_epsilon, "Regularization (default 1e-3)");
  design->add_option("--out", d_out, "Write JSON here instead of stdout");
  design->add_option("--config", config_path, "JSON config file");

  // margin
  auto* margin = app.add_subcommand("margin", "Stability margin of weights");
  int m_period = 0;
  std::string m_coeffs, m_file, m_method = "closed", m_out;
  margin->add_option("--period", m_period, "Cycle period T");
  margin->add_option("--coeffs", m_coeffs, "Comma-separated weights");
  margin->add_option("--coeffs-file", m_file, "JSON file with an 'a' array");
  margin->add_option("--method", m_method, "closed | curve | bisect")
      ->check(CLI::IsMember({"closed", "curve", "bisect"}));
  margin->add_option("--out", m_out, "Write JSON here instead of stdout");
  margin->add_option("--config", config_path, "JSON config file");

  // schur
  auto* schur = app.add_subcommand("schur", "Schur stability at a multiplier");
  int s_period = 0;
  double s_mu = 0.0;
  bool s_roots = false;
  std::string s_coeffs, s_file, s_out;
  schur->add_option("--period", s_period, "Cycle period T");
  schur->add_option("--coeffs", s_coeffs, "Comma-separated weights");
  schur->add_option("--coeffs-file", s_file, "JSON file with an 'a' array");
  schur->add_option("--mu", s_mu, "Cycle multiplier")->required();
  schur->add_flag("--roots", s_roots, "Also compute the roots");
  schur->add_option("--out", s_out, "Write JSON here instead of stdout");
  schur->add_option("--config", config_path, "JSON config file");

  // stabilize
  auto* stabilize =
      app.add_subcommand("stabilize", "Design, simulate, and export a trace");
  std::string st_map = "logistic", st_map_coeffs, st_domain = "-1,1";
  double st_param = 3.9, st_epsilon = 1e-3, st_perturb = 1e-3, st_tol = 1e-6;
  int st_period = 1, st_depth = 2, st_cycle_index = -1;
  long long st_steps = 10000;
  std::string st_out = "trace.csv";
  stabilize->add_option("--map", st_map, "logistic | quadratic | custom");
  stabilize->add_option("--param", st_param, "Map parameter (r or c)");
  stabilize->add_option("--map-coeffs", st_map_coeffs,
                        "Polynomial coefficients (custom map, ascending)");
  stabilize->add_option("--domain", st_domain, "lo,hi (custom map)");
  stabilize->add_option("--period", st_period, "Cycle period (1 or 2)");
  stabilize->add_option("--depth", st_depth, "Prehistory depth N");
  stabilize->add_option("--epsilon", st_epsilon, "Regularization");
  stabilize->add_option("--perturb", st_perturb, "Initial offset from orbit");
  stabilize->add_option("--steps", st_steps, "Simulation steps");
  stabilize->add_option("--tol", st_tol, "Convergence tolerance");
  stabilize->add_option("--cycle-index", st_cycle_index,
                        "Pick a located cycle (default: first stabilizable)");
  stabilize->add_option("--out", st_out, "Trace CSV path");
  stabilize->add_option("--config", config_path, "JSON config file");

  // verify
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  std::string v_suite = "all";
  int v_max_depth = 10;
  std::uint64_t v_seed = 0;
  verify->add_option("--suite", v_suite,
                     "thm5 | thm6 | lemma2 | lemma3 | jacobian | interval | all")
      ->check(CLI::IsMember(
          {"thm5", "thm6", "lemma2", "lemma3", "jacobian", "interval", "all"}));
  verify->add_option("--max-depth", v_max_depth, "Largest N exercised");
  verify->add_option("--seed", v_seed, "Random seed (default 0)");
  verify->add_option("--config", config_path, "JSON config file");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Margin-vs-bound table per depth");
  int w_period = 1;
  std::string w_depths = "1..10", w_out;
  double w_epsilon = 1e-3;
  sweep->add_option("--period", w_period, "Cycle period (1 or 2)")
      ->check(CLI::IsMember({1, 2}));
  sweep->add_option("--depths", w_depths, "Range A..B (default 1..10)");
  sweep->add_option("--epsilon", w_epsilon, "Regularization");
  sweep->add_option("--out", w_out, "CSV path (default stdout)");
  sweep->add_option("--config", config_path, "JSON config file");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = augment_with_config(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    std::vector<const char*> raw;
    raw.push_back(argv[0]);
    for (const auto& a : args) raw.push_back(a.c_str());
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (design->parsed())
      return run_design(d_period, d_depth, d_epsilon, d_out);
    if (margin->parsed())
      return run_margin(load_coeffs(m_coeffs, m_file, m_period), m_method,
                        m_out);
    if (schur->parsed())
      return run_schur(load_coeffs(s_coeffs, s_file, s_period), s_mu, s_roots,
                       s_out);
    if (stabilize->parsed())
      return run_stabilize(st_map, st_param, st_map_coeffs, st_domain,
                           st_period, st_depth, st_epsilon, st_perturb,
                           st_steps, st_tol, st_cycle_index, st_out);
    if (verify->parsed()) return run_verify(v_suite, v_max_depth, v_seed);
    if (sweep->parsed()) return run_sweep(w_period, w_depths, w_epsilon, w_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dfc::InvalidDepth& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dfc::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dfc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
