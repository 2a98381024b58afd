#include "cli/app.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli/render.hpp"
#include "cli/svg.hpp"
#include "fewn/conjunction.hpp"
#include "fewn/design_planner.hpp"
#include "fewn/errors.hpp"
#include "fewn/hier_sim.hpp"
#include "fewn/sample_tests.hpp"

namespace fewn::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kDefaultPowerReps = 20000;
constexpr std::size_t kDefaultSimReps = 10000;
constexpr int kConfigSchemaVersion = 1;

struct Options {
  double alpha = 0.05;
  double beta = 1.0;
  double p_crit = 0.05;
  std::string sided;  // empty: the command's default
  std::string direction = "positive";
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  std::string format = "human";
  std::string out_path;

  // ttest / signtest
  std::vector<double> diffs;
  std::string signs;
  std::string zeros = "error";

  // plan
  double sample_d = 0.0;
  double first_diff = 0.0;
  double population_d = 0.0;
  std::size_t n = 0;
  double target_power = 0.8;
  std::size_t cap = kDefaultSearchCap;

  // conjunction / figure1
  std::size_t k = 0;
  double gamma = 0.0;
  double gamma_min = 0.01;
  double gamma_max = 0.95;
  double step = 0.01;

  // simulate
  std::string config_path;
  std::string methods;
};

Sidedness resolve_sidedness(const std::string& sided, const std::string& direction,
                            Sidedness fallback) {
  if (sided.empty()) return fallback;
  if (sided == "two") return Sidedness::two_sided;
  return direction == "negative" ? Sidedness::one_sided_negative
                                 : Sidedness::one_sided_positive;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string valid_method_names() {
  std::string names;
  for (Method m : kAllMethods) {
    if (!names.empty()) names += ", ";
    names += to_string(m);
  }
  return names;
}

Method method_or_usage(const std::string& name) {
  const auto m = parse_method(name);
  if (!m) {
    throw UsageError("unknown method '" + name + "'; valid methods: " + valid_method_names());
  }
  return *m;
}

void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    f.close();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

// ---------------------------------------------------------------------------
// Commands

Output cmd_ttest(const Options& o) {
  const Sidedness sided = resolve_sidedness(o.sided, o.direction, Sidedness::two_sided);
  const EffectSample sample{o.diffs, "input"};
  const TestResult r = paired_t_test(sample, Probability(o.alpha), sided);
  const SampleMoments m = moments(sample.differences);

  Output out;
  out.command = "ttest";
  json diffs = json::array();
  for (double d : o.diffs) diffs.push_back(round_to_printed(d));
  out.params = {{"diffs", diffs}, {"alpha", round_to_printed(o.alpha)},
                {"sidedness", to_string(sided)}};
  out.table.columns = {"n",  "mean",    "sd",    "statistic",   "df",
                       "p_value", "alpha", "significant", "sidedness", "cohens_d"};
  out.table.rows.push_back({std::uint64_t{m.n}, m.mean, m.sd, r.statistic, *r.df,
                            r.p_value.value(), o.alpha, r.significant,
                            std::string(to_string(sided)), m.mean / m.sd});
  return out;
}

Output cmd_signtest(const Options& o) {
  const Sidedness sided = resolve_sidedness(o.sided, o.direction, Sidedness::two_sided);
  if (o.signs.empty() == o.diffs.empty()) {
    throw UsageError("signtest needs exactly one of --signs or --diffs");
  }
  std::vector<Sign> signs;
  std::uint64_t zeros = 0;
  if (!o.signs.empty()) {
    for (char c : o.signs) {
      if (c == '+') {
        signs.push_back(Sign::plus);
      } else if (c == '-') {
        signs.push_back(Sign::minus);
      } else if (c == '0') {
        if (o.zeros != "drop") {
          throw UsageError("zero sign present; pass --zeros drop to exclude ties");
        }
        ++zeros;
      } else if (c != ',' && c != ' ') {
        throw UsageError(std::string("--signs accepts '+', '-', '0' and ',' only, got '") +
                         c + "'");
      }
    }
  } else {
    for (double d : o.diffs) {
      if (d == 0.0) {
        if (o.zeros != "drop") {
          throw UsageError("zero difference present; pass --zeros drop to exclude ties");
        }
        ++zeros;
      } else {
        signs.push_back(d > 0.0 ? Sign::plus : Sign::minus);
      }
    }
  }
  const TestResult r = sign_test(signs, Probability(o.alpha), sided);
  const auto plus = static_cast<std::uint64_t>(std::ranges::count(signs, Sign::plus));

  Output out;
  out.command = "signtest";
  out.params = {{"alpha", round_to_printed(o.alpha)},
                {"sidedness", to_string(sided)},
                {"zeros", o.zeros}};
  out.table.columns = {"n",       "n_plus", "n_minus",     "zeros_dropped",
                       "p_value", "alpha",  "significant", "sidedness"};
  out.table.rows.push_back({std::uint64_t{signs.size()}, plus, signs.size() - plus, zeros,
                            r.p_value.value(), o.alpha, r.significant,
                            std::string(to_string(sided))});
  return out;
}

Output cmd_plan_min_n(const Options& o) {
  const Sidedness sided = resolve_sidedness(o.sided, o.direction, Sidedness::two_sided);
  const Probability alpha(o.alpha);
  const auto n = min_n_sample_d(o.sample_d, alpha, sided, o.cap);
  if (!n) {
    throw NotFoundError("no N <= " + std::to_string(o.cap) + " reaches significance");
  }
  // Both readings of "at least N animals" are reported.
  const auto one = min_n_sample_d(o.sample_d, alpha, Sidedness::one_sided_positive, o.cap);
  const auto two = min_n_sample_d(o.sample_d, alpha, Sidedness::two_sided, o.cap);

  Output out;
  out.command = "plan min-n";
  out.params = {{"sample_d", round_to_printed(o.sample_d)},
                {"alpha", round_to_printed(o.alpha)},
                {"sidedness", to_string(sided)},
                {"cap", o.cap}};
  out.table.columns = {"sample_d", "alpha", "sidedness", "min_n", "min_n_one_sided",
                       "min_n_two_sided"};
  auto cell = [](const std::optional<std::size_t>& v) -> Cell {
    if (v) return std::uint64_t{*v};
    return std::string("not-found");
  };
  out.table.rows.push_back({o.sample_d, o.alpha, std::string(to_string(sided)),
                            std::uint64_t{*n}, cell(one), cell(two)});
  return out;
}

Output cmd_plan_sign(const Options& o) {
  const Sidedness sided = resolve_sidedness(o.sided, o.direction, Sidedness::two_sided);
  const std::size_t n = min_n_sign(Probability(o.alpha), sided);
  Output out;
  out.command = "plan sign";
  out.params = {{"alpha", round_to_printed(o.alpha)}, {"sidedness", to_string(sided)}};
  out.table.columns = {"alpha", "sidedness", "min_n"};
  out.table.rows.push_back({o.alpha, std::string(to_string(sided)), std::uint64_t{n}});
  return out;
}

Output cmd_plan_window(const Options& o) {
  const SecondAnimalWindow w = second_animal_window(o.first_diff, Probability(o.alpha));
  Output out;
  out.command = "plan window";
  out.params = {{"first_diff", round_to_printed(o.first_diff)},
                {"alpha", round_to_printed(o.alpha)}};
  out.table.columns = {"first_diff", "alpha",      "critical_t", "lo",
                       "hi",         "lo_percent", "hi_percent"};
  out.table.rows.push_back({o.first_diff, o.alpha, w.critical_t, w.lo, w.hi,
                            100.0 * w.lo / o.first_diff, 100.0 * w.hi / o.first_diff});
  return out;
}

Output cmd_plan_power(const Options& o, bool have_n) {
  const Sidedness sided = resolve_sidedness(o.sided, o.direction, Sidedness::two_sided);
  const std::size_t reps = o.reps ? o.reps : kDefaultPowerReps;
  Output out;
  out.command = "plan power";
  out.params = {{"population_d", round_to_printed(o.population_d)},
                {"alpha", round_to_printed(o.alpha)},
                {"sidedness", to_string(sided)},
                {"seed", o.seed},
                {"reps", reps}};
  if (have_n) {
    out.params["n"] = o.n;
    const PowerQuery q{o.population_d, o.n, Probability(o.alpha), sided,
                       Probability(o.target_power)};
    const PowerEstimate e = power_t_mc(q, reps, o.seed);
    out.table.columns = {"population_d", "n",    "alpha",           "sidedness",
                         "power",        "mc_reps", "mc_halfwidth_95", "degenerate_count",
                         "seed"};
    out.table.rows.push_back({o.population_d, std::uint64_t{o.n}, o.alpha,
                              std::string(to_string(sided)), e.power.value(),
                              std::uint64_t{e.mc_reps}, e.mc_halfwidth_95,
                              std::uint64_t{e.degenerate_count}, e.seed});
    return out;
  }
  out.params["target_power"] = round_to_printed(o.target_power);
  out.params["cap"] = o.cap;
  const auto n = min_n_power(o.population_d, Probability(o.target_power), Probability(o.alpha),
                             sided, reps, o.seed, o.cap);
  if (!n) {
    throw NotFoundError("no n <= " + std::to_string(o.cap) + " reaches the target power");
  }
  const PowerEstimate e = power_t_mc(
      {o.population_d, *n, Probability(o.alpha), sided, Probability(o.target_power)}, reps,
      o.seed);
  out.table.columns = {"population_d", "target_power", "alpha", "sidedness", "min_n",
                       "power_at_min_n", "mc_halfwidth_95", "seed"};
  out.table.rows.push_back({o.population_d, o.target_power, o.alpha,
                            std::string(to_string(sided)), std::uint64_t{*n}, e.power.value(),
                            e.mc_halfwidth_95, o.seed});
  return out;
}

void warn_beta(const Options& o, std::ostream& err) {
  if (o.beta < 1.0) {
    err << "warning: beta < 1 assumes non-significant animals may be false negatives; "
           "the typicality bound then grows without limit as beta falls\n";
  }
}

Output cmd_conjunction_gamma(const Options& o, bool have_k, std::ostream& err) {
  warn_beta(o, err);
  ConjunctionQuery q;
  q.n_total = o.n;
  q.n_significant = have_k ? o.k : o.n;
  q.alpha = Probability(o.alpha);
  q.beta = Probability(o.beta);
  q.p_crit = Probability(o.p_crit);
  const TypicalityResult r = typicality_bound(q);

  Output out;
  out.command = "conjunction gamma";
  out.params = {{"n", q.n_total},
                {"k", q.n_significant},
                {"alpha", round_to_printed(o.alpha)},
                {"beta", round_to_printed(o.beta)},
                {"p_crit", round_to_printed(o.p_crit)}};
  out.table.columns = {"k",       "n",      "alpha",         "beta",     "p_crit",
                       "gamma_c", "method", "weak_evidence", "saturated"};
  out.table.rows.push_back({std::uint64_t{q.n_significant}, std::uint64_t{q.n_total}, o.alpha,
                            o.beta, o.p_crit, r.gamma_c.value(),
                            std::string(to_string(r.method)), r.weak_evidence, r.saturated});
  std::ostringstream h;
  h << "gamma_c: " << format_fixed(r.gamma_c.value(), 2) << '\n'
    << "significant: " << q.n_significant << " of " << q.n_total << '\n'
    << "method: " << to_string(r.method) << '\n';
  if (r.weak_evidence) h << "note: observed count does not bound typicality above zero\n";
  if (r.saturated) h << "note: bound saturated at 1\n";
  out.human = h.str();
  return out;
}

Output cmd_conjunction_n(const Options& o, std::ostream& err) {
  warn_beta(o, err);
  const RequiredN need = required_n(Probability(o.gamma), Probability(o.alpha),
                                    Probability(o.beta), Probability(o.p_crit));
  Output out;
  out.command = "conjunction n";
  out.params = {{"gamma_c", round_to_printed(o.gamma)},
                {"alpha", round_to_printed(o.alpha)},
                {"beta", round_to_printed(o.beta)},
                {"p_crit", round_to_printed(o.p_crit)}};
  out.table.columns = {"gamma_c", "alpha", "beta", "p_crit", "n_real", "n_int"};
  out.table.rows.push_back(
      {o.gamma, o.alpha, o.beta, o.p_crit, need.n_real, std::uint64_t{need.n_int}});
  return out;
}

Output cmd_figure1(const Options& o, std::ostream& err) {
  warn_beta(o, err);
  const auto rows = figure1_table(o.gamma_min, o.gamma_max, o.step, Probability(o.alpha),
                                  Probability(o.beta), Probability(o.p_crit));
  Output out;
  out.command = "figure1";
  out.params = {{"gamma_min", round_to_printed(o.gamma_min)},
                {"gamma_max", round_to_printed(o.gamma_max)},
                {"step", round_to_printed(o.step)},
                {"alpha", round_to_printed(o.alpha)},
                {"beta", round_to_printed(o.beta)},
                {"p_crit", round_to_printed(o.p_crit)}};
  out.table.columns = {"gamma_c", "n_real", "n_int"};
  for (const auto& r : rows) {
    out.table.rows.push_back({r.gamma_c, r.n_real, std::uint64_t{r.n_int}});
  }
  out.svg = render_figure1_svg(rows, o.alpha, o.beta, o.p_crit);
  return out;
}

// Simulation config: one JSON object with an explicit schema_version.
//
//   {"schema_version": 1,
//    "design": {"mu_pop": 0, "sigma_animal": 1, "sigma_uo": 0.1, "uo_counts": [60, 40]},
//    "methods": ["pooled-fixed"], "alpha": 0.05, "sided": "two",
//    "direction": "positive", "reps": 10000, "seed": 7}
struct SimConfig {
  HierarchicalDesign design;
  std::vector<Method> methods;
  std::optional<double> alpha;
  std::string sided;
  std::string direction;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
};

SimConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object");

  static const std::vector<std::string> kTopKeys = {
      "schema_version", "design", "methods", "alpha", "sided", "direction", "reps", "seed"};
  static const std::vector<std::string> kDesignKeys = {"mu_pop", "sigma_animal", "sigma_uo",
                                                       "uo_counts"};
  auto check_keys = [](const nlohmann::json& obj, const std::vector<std::string>& allowed,
                       const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
      if (std::ranges::find(allowed, key) == allowed.end()) {
        throw UsageError("unknown key '" + key + "' in " + where);
      }
    }
  };
  check_keys(doc, kTopKeys, "config");

  SimConfig c;
  try {
    if (!doc.contains("schema_version") ||
        doc.at("schema_version").get<int>() != kConfigSchemaVersion) {
      throw UsageError("config schema_version must be " + std::to_string(kConfigSchemaVersion));
    }
    if (!doc.contains("design") || !doc.at("design").is_object()) {
      throw UsageError("config needs a 'design' object");
    }
    const auto& d = doc.at("design");
    check_keys(d, kDesignKeys, "design");
    if (!d.contains("uo_counts")) throw UsageError("design needs 'uo_counts'");
    c.design.mu_pop = d.value("mu_pop", 0.0);
    c.design.sigma_animal = d.value("sigma_animal", 0.0);
    c.design.sigma_uo = d.value("sigma_uo", 1.0);
    c.design.uo_counts = d.at("uo_counts").get<std::vector<std::size_t>>();
    if (doc.contains("methods")) {
      for (const auto& name : doc.at("methods").get<std::vector<std::string>>()) {
        c.methods.push_back(method_or_usage(name));
      }
    }
    if (doc.contains("alpha")) c.alpha = doc.at("alpha").get<double>();
    c.sided = doc.value("sided", std::string());
    c.direction = doc.value("direction", std::string());
    if (doc.contains("reps")) c.reps = doc.at("reps").get<std::size_t>();
    if (doc.contains("seed")) c.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config has a field of the wrong type: ") + e.what());
  }
  if (!c.sided.empty() && c.sided != "one" && c.sided != "two") {
    throw UsageError("config 'sided' must be \"one\" or \"two\"");
  }
  if (!c.direction.empty() && c.direction != "positive" && c.direction != "negative") {
    throw UsageError("config 'direction' must be \"positive\" or \"negative\"");
  }
  return c;
}

struct SimulateFlags {
  bool seed = false;
  bool reps = false;
  bool alpha = false;
  bool direction = false;
};

Output cmd_simulate(const Options& o, const SimulateFlags& given) {
  SimConfig c = load_config(o.config_path);
  if (!o.methods.empty()) {
    c.methods.clear();
    for (const auto& name : split_list(o.methods)) c.methods.push_back(method_or_usage(name));
  }
  const std::string sided = !o.sided.empty() ? o.sided : c.sided;
  const std::string direction =
      given.direction || c.direction.empty() ? o.direction : c.direction;
  // Default: two-sided, except that conjunction runs need a direction.
  const bool wants_conjunction =
      std::ranges::find(c.methods, Method::conjunction_all_significant) != c.methods.end();
  const Sidedness fallback = wants_conjunction
                                 ? resolve_sidedness("one", direction, Sidedness::two_sided)
                                 : Sidedness::two_sided;
  const Sidedness sidedness = resolve_sidedness(sided, direction, fallback);
  if (c.methods.empty()) {
    c.methods = {Method::pooled_fixed, Method::random_across_animals};
    if (is_one_sided(sidedness)) c.methods.push_back(Method::conjunction_all_significant);
  }

  std::uint64_t seed = 0;
  if (given.seed) {
    seed = o.seed;
  } else if (c.seed) {
    seed = *c.seed;
  } else {
    throw UsageError("simulate requires a seed (--seed or config 'seed')");
  }
  const std::size_t reps = given.reps ? o.reps : c.reps.value_or(kDefaultSimReps);
  const double alpha = given.alpha ? o.alpha : c.alpha.value_or(o.alpha);

  const auto reports = estimate_error_rates(c.design, c.methods, Probability(alpha), sidedness,
                                            reps, seed);
  Output out;
  out.command = "simulate";
  json methods = json::array();
  for (Method m : c.methods) methods.push_back(std::string(to_string(m)));
  out.params = {{"design",
                 {{"mu_pop", round_to_printed(c.design.mu_pop)},
                  {"sigma_animal", round_to_printed(c.design.sigma_animal)},
                  {"sigma_uo", round_to_printed(c.design.sigma_uo)},
                  {"uo_counts", c.design.uo_counts}}},
                {"methods", methods},
                {"alpha", round_to_printed(alpha)},
                {"sidedness", to_string(sidedness)},
                {"reps", reps},
                {"seed", seed}};
  out.table.columns = {"method",           "rejection_rate",  "rejections", "reps",
                       "degenerate_count", "mc_halfwidth_95", "seed",       "alpha",
                       "sidedness"};
  for (const auto& r : reports) {
    out.table.rows.push_back({std::string(to_string(r.method)), r.rejection_rate.value(),
                              std::uint64_t{r.rejections}, std::uint64_t{r.reps},
                              std::uint64_t{r.degenerate_count}, r.mc_halfwidth_95, seed, alpha,
                              std::string(to_string(sidedness))});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Option wiring

void add_output(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "svg", "human"}));
  sub->add_option("--out", o.out_path, "Write output to PATH instead of stdout");
}

void add_alpha(CLI::App* sub, Options& o) {
  sub->add_option("--alpha", o.alpha, "Per-test false-positive rate (default 0.05)");
}

void add_sided(CLI::App* sub, Options& o) {
  sub->add_option("--sided", o.sided, "one|two")->check(CLI::IsMember({"one", "two"}));
  sub->add_option("--direction", o.direction, "Direction of a one-sided test")
      ->check(CLI::IsMember({"positive", "negative"}));
}

void add_conjunction_params(CLI::App* sub, Options& o) {
  add_alpha(sub, o);
  sub->add_option("--beta", o.beta, "Assumed per-test sensitivity (default 1)");
  sub->add_option("--p-crit", o.p_crit, "Criterion probability (default 0.05)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Inference calculators for studies with few animals", "fewn"};
  app.require_subcommand(1);

  auto* ttest = app.add_subcommand("ttest", "Paired t test on per-unit differences");
  ttest->add_option("--diffs", o.diffs, "Comma-separated differences")
      ->required()
      ->delimiter(',');
  add_alpha(ttest, o);
  add_sided(ttest, o);
  add_output(ttest, o);

  auto* signtest = app.add_subcommand("signtest", "Exact binomial sign test");
  signtest->add_option("--signs", o.signs, "String of '+'/'-' signs, e.g. ++++-");
  signtest->add_option("--diffs", o.diffs, "Comma-separated differences")->delimiter(',');
  signtest->add_option("--zeros", o.zeros, "Tie policy: error|drop")
      ->check(CLI::IsMember({"error", "drop"}));
  add_alpha(signtest, o);
  add_sided(signtest, o);
  add_output(signtest, o);

  auto* plan = app.add_subcommand("plan", "Random-effect design planning");
  plan->require_subcommand(1);
  auto* plan_min_n = plan->add_subcommand("min-n", "Minimum N for a sample Cohen's d");
  plan_min_n->add_option("--sample-d", o.sample_d, "Sample Cohen's d")->required();
  plan_min_n->add_option("--cap", o.cap, "Search cap (default 10000)");
  add_alpha(plan_min_n, o);
  add_sided(plan_min_n, o);
  add_output(plan_min_n, o);

  auto* plan_sign = plan->add_subcommand("sign", "Minimum N for a significant sign test");
  add_alpha(plan_sign, o);
  add_sided(plan_sign, o);
  add_output(plan_sign, o);

  auto* plan_window = plan->add_subcommand("window", "Second-animal window for N = 2");
  plan_window->add_option("--first-diff", o.first_diff, "First animal's difference")
      ->required();
  add_alpha(plan_window, o);
  add_output(plan_window, o);

  auto* plan_power = plan->add_subcommand("power", "Monte Carlo power, or minimum n for a power");
  plan_power->add_option("--d", o.population_d, "Population Cohen's d")->required();
  auto* power_n = plan_power->add_option("--n", o.n, "Animals; omit to search for minimum n");
  plan_power->add_option("--target", o.target_power, "Target power (default 0.8)");
  plan_power->add_option("--cap", o.cap, "Search cap (default 10000)");
  plan_power->add_option("--seed", o.seed, "RNG seed")->required();
  plan_power->add_option("--reps", o.reps, "Monte Carlo replications (default 20000)");
  add_alpha(plan_power, o);
  add_sided(plan_power, o);
  add_output(plan_power, o);

  auto* conj = app.add_subcommand("conjunction", "Typicality from per-animal significance");
  conj->require_subcommand(1);
  auto* conj_gamma = conj->add_subcommand("gamma", "Typicality lower bound from k of N");
  conj_gamma->add_option("--n", o.n, "Animals tested")->required();
  auto* conj_k = conj_gamma->add_option("--k", o.k, "Animals significant (default N)");
  add_conjunction_params(conj_gamma, o);
  add_output(conj_gamma, o);

  auto* conj_n = conj->add_subcommand("n", "Animals required for a typicality bound");
  conj_n->add_option("--gamma", o.gamma, "Required typicality lower bound")->required();
  add_conjunction_params(conj_n, o);
  add_output(conj_n, o);

  auto* figure1 = app.add_subcommand("figure1", "Required N against typicality bound");
  figure1->add_option("--gamma-min", o.gamma_min, "Grid start (default 0.01)");
  figure1->add_option("--gamma-max", o.gamma_max, "Grid end (default 0.95)");
  figure1->add_option("--step", o.step, "Grid step (default 0.01)");
  add_conjunction_params(figure1, o);
  add_output(figure1, o);

  auto* simulate = app.add_subcommand("simulate", "Hierarchical Monte Carlo error rates");
  simulate->add_option("--config", o.config_path, "JSON scenario file")->required();
  auto* sim_seed = simulate->add_option("--seed", o.seed, "RNG seed (overrides config)");
  auto* sim_reps = simulate->add_option("--reps", o.reps, "Replications (overrides config)");
  simulate->add_option("--methods", o.methods, "Comma-separated methods (overrides config)");
  add_alpha(simulate, o);
  add_sided(simulate, o);
  add_output(simulate, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Output result;
    if (*ttest) {
      result = cmd_ttest(o);
    } else if (*signtest) {
      result = cmd_signtest(o);
    } else if (*plan_min_n) {
      result = cmd_plan_min_n(o);
    } else if (*plan_sign) {
      result = cmd_plan_sign(o);
    } else if (*plan_window) {
      result = cmd_plan_window(o);
    } else if (*plan_power) {
      result = cmd_plan_power(o, power_n->count() > 0);
    } else if (*conj_gamma) {
      result = cmd_conjunction_gamma(o, conj_k->count() > 0, err);
    } else if (*conj_n) {
      result = cmd_conjunction_n(o, err);
    } else if (*figure1) {
      result = cmd_figure1(o, err);
    } else if (*simulate) {
      SimulateFlags given;
      given.seed = sim_seed->count() > 0;
      given.reps = sim_reps->count() > 0;
      given.alpha = simulate->get_option("--alpha")->count() > 0;
      given.direction = simulate->get_option("--direction")->count() > 0;
      result = cmd_simulate(o, given);
    }

    std::string text;
    if (o.format == "json") {
      text = render_json(result);
    } else if (o.format == "csv") {
      text = render_csv(result.table);
    } else if (o.format == "svg") {
      if (!result.svg) throw UsageError("--format svg is only available for figure1");
      text = *result.svg;
    } else {
      text = render_human(result);
    }

    if (o.out_path.empty()) {
      out << text;
    } else {
      write_atomically(o.out_path, text);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotFoundError& e) {
    err << "not found: " << e.what() << '\n';
    return kExitNotFound;
  } catch (const DegenerateSampleError& e) {
    err << "degenerate sample: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const InsufficientDataError& e) {
    err << "insufficient data: " << e.what() << '\n';
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace fewn::cli
