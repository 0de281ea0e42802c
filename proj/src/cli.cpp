#include "treegraph/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "treegraph/bounds.hpp"
#include "treegraph/errors.hpp"
#include "treegraph/instance.hpp"
#include "treegraph/rng.hpp"
#include "treegraph/scheme.hpp"

namespace treegraph {

namespace {

/// Floor for the key-inequality gap; the gap is a plain sum of inputs.
constexpr double kGapFloor = -1e-12;

struct Settings {
  double tol = 1e-9;
  bool parallel = false;
  unsigned workers = 0;
  bool allow_large = false;

  SumOptions sums() const {
    return {parallel ? Execution::parallel : Execution::sequential, allow_large, workers};
  }
  BoundOptions bound() const {
    BoundOptions o;
    o.sums = sums();
    o.rel_tol = tol;
    return o;
  }
};

class Report {
 public:
  Report(std::string command, const std::vector<std::string>& args, const Settings& settings) {
    doc_["command"] = std::move(command);
    doc_["args"] = Json(std::vector<std::string>(args.begin() + 1, args.end()));
    doc_["instance_digest"] = nullptr;
    doc_["mode"] = settings.parallel ? "parallel" : "sequential";
    doc_["tolerance"] = settings.tol;
    doc_["checks"] = Json::array();
  }

  Json& operator[](const char* key) { return doc_[key]; }

  void rng(std::uint64_t seed) {
    doc_["rng"] = {{"name", std::string(SplitMix64::kName)}, {"seed", seed}};
  }

  void check(std::string name, bool pass, Json values, double tolerance,
             std::optional<std::string> counterexample = std::nullopt) {
    Json c;
    c["name"] = std::move(name);
    c["pass"] = pass;
    c["values"] = std::move(values);
    c["tolerance"] = tolerance;
    c["counterexample"] = counterexample ? Json(*counterexample) : Json(nullptr);
    doc_["checks"].push_back(std::move(c));
  }

  bool passed() const {
    for (const Json& c : doc_["checks"]) {
      if (!c["pass"].get<bool>()) {
        return false;
      }
    }
    return true;
  }

  Json finish(double seconds) {
    doc_["status"] = passed() ? "pass" : "fail";
    doc_["runtime_seconds"] = seconds;
    return doc_;
  }

 private:
  Json doc_;
};

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json subset_json(VertexSubset s) {
  Json vertices = Json::array();
  for (int v : subset_vertices(s)) {
    vertices.push_back(v + 1);
  }
  return vertices;
}

double relative_error(std::complex<double> value, std::complex<double> reference) {
  return std::abs(value - reference) / (1.0 + std::abs(reference));
}

// ---- verify-scheme ------------------------------------------------------

struct SchemeArgs {
  int n = 3;
  std::string order = "lex";
  std::uint64_t seed = 1;
  int orders = 1;
};

void run_verify_scheme(const SchemeArgs& a, Report& report) {
  if (a.n < 2 || a.n > kMaxPartitionVerification) {
    throw CapacityError("verify-scheme is exhaustive and limited to 2 <= n <= 6");
  }
  report["n"] = a.n;
  report["order"] = a.order;
  SplitMix64 rng(a.seed);
  if (a.order == "random") {
    report.rng(a.seed);
  } else if (a.order != "lex") {
    throw InputError("usage", "--order must be lex or random");
  }
  const int runs = a.order == "lex" ? 1 : a.orders;
  for (int k = 0; k < runs; ++k) {
    const EdgeOrder order = a.order == "lex" ? EdgeOrder::lexicographic(a.n) : EdgeOrder::random(a.n, rng);
    const PartitionReport result = verify_partition(a.n, order);
    Json histogram = Json::object();
    for (const auto& [size, trees] : result.interval_size_histogram) {
      histogram[std::to_string(size)] = trees;
    }
    Json values = {{"ranks", order.ranks()},
                   {"connected_count", result.connected_count},
                   {"tree_count", result.tree_count},
                   {"interval_size_sum", result.interval_sum},
                   {"interval_size_histogram", std::move(histogram)},
                   {"failed_check", result.pass ? Json(nullptr) : Json(result.failed_check)}};
    const std::string name =
        a.order == "lex" ? "partition[lex]" : "partition[random#" + std::to_string(k) + "]";
    report.check(name, result.pass, std::move(values), 0.0,
                 result.pass ? std::nullopt : std::optional<std::string>(result.counterexample));
  }
}

// ---- verify-identity ----------------------------------------------------

struct IdentityArgs {
  int n = 4;
  int trials = 200;
  std::uint64_t seed = 1;
  std::vector<double> range = {-2.0, 3.0};
  int random_orders = 5;
};

void run_verify_identity(const IdentityArgs& a, const Settings& settings, Report& report) {
  if (a.n > kMaxDirectSum) {
    throw CapacityError("verify-identity needs the direct oracle, limited to n <= 7");
  }
  const Distribution dist = Distribution::uniform(a.range.at(0), a.range.at(1));
  report["n"] = a.n;
  report["trials"] = a.trials;
  report["distribution"] = dist.describe();
  report.rng(a.seed);

  SplitMix64 master(a.seed);
  double worst_sorted = 0.0;
  double worst_random = 0.0;
  double worst_majorant_excess = -std::numeric_limits<double>::infinity();
  std::optional<std::string> sorted_fail;
  std::optional<std::string> random_fail;
  std::optional<std::string> majorant_fail;
  for (int trial = 0; trial < a.trials; ++trial) {
    const std::uint64_t instance_seed = master.next();
    SplitMix64 order_rng(master.next());
    const Potential u = generate_instance(a.n, dist, instance_seed);
    const std::complex<double> direct = connected_sum_direct(u);
    const EdgeOrder sorted = edge_order_from_potential(u);
    const std::string where = "trial " + std::to_string(trial) + " (instance seed " +
                              std::to_string(instance_seed) + ")";

    const double err = relative_error(connected_sum_resummed(u, sorted, settings.sums()), direct);
    worst_sorted = std::max(worst_sorted, err);
    if (err > settings.tol && !sorted_fail) {
      sorted_fail = where;
    }
    for (int k = 0; k < a.random_orders; ++k) {
      const EdgeOrder order = EdgeOrder::random(a.n, order_rng);
      const double e = relative_error(connected_sum_resummed(u, order, settings.sums()), direct);
      worst_random = std::max(worst_random, e);
      if (e > settings.tol && !random_fail) {
        random_fail = where + ", random order " + std::to_string(k);
      }
    }
    const double majorant = resummed_majorant(u, sorted, settings.sums());
    const double lhs = std::abs(direct);
    worst_majorant_excess = std::max(worst_majorant_excess, lhs - majorant);
    if (!within_bound(lhs, majorant, settings.tol, 1e-12) && !majorant_fail) {
      majorant_fail = where;
    }
  }
  report.check("resummation[nondecreasing]", !sorted_fail,
               {{"max_relative_error", worst_sorted}, {"trials", a.trials}}, settings.tol, sorted_fail);
  report.check("resummation[random-orders]", !random_fail,
               {{"max_relative_error", worst_random},
                {"orders_per_trial", a.random_orders},
                {"trials", a.trials}},
               settings.tol, random_fail);
  report.check("majorant", !majorant_fail,
               {{"max_lhs_minus_majorant", a.trials > 0 ? worst_majorant_excess : 0.0}},
               settings.tol, majorant_fail);
}

// ---- verify-key ---------------------------------------------------------

struct KeyArgs {
  int n = 4;
  int trials = 50;
  std::uint64_t seed = 1;
  bool complex = false;
  std::vector<double> range = {-2.0, 3.0};
};

void run_verify_key(const KeyArgs& a, const Settings& settings, Report& report) {
  const int limit = settings.allow_large ? kMaxTreeSumLimit : kDefaultTreeSumLimit;
  if (a.n > limit) {
    throw CapacityError("verify-key enumerates all trees; n=" + std::to_string(a.n) +
                        " exceeds the n <= " + std::to_string(limit) + " limit");
  }
  const Distribution dist =
      a.complex ? Distribution::complex_uniform(a.range.at(0), a.range.at(1), -std::numbers::pi,
                                                std::numbers::pi)
                : Distribution::uniform(a.range.at(0), a.range.at(1));
  report["n"] = a.n;
  report["trials"] = a.trials;
  report["distribution"] = dist.describe();
  report.rng(a.seed);

  SplitMix64 master(a.seed);
  double min_gap = std::numeric_limits<double>::infinity();
  double min_gap_random = std::numeric_limits<double>::infinity();
  std::optional<std::string> failure;
  std::uint64_t evaluated = 0;
  for (int trial = 0; trial < a.trials; ++trial) {
    const std::uint64_t instance_seed = master.next();
    SplitMix64 order_rng(master.next());
    const Potential u = generate_instance(a.n, dist, instance_seed);
    const EdgeOrder sorted = edge_order_from_potential(u);
    const EdgeOrder shuffled = EdgeOrder::random(a.n, order_rng);
    for (const Tree& t : enumerate_trees(a.n)) {
      const double gap = key_inequality_gap(t, u, sorted);
      ++evaluated;
      if (gap < min_gap) {
        min_gap = gap;
      }
      if (gap < kGapFloor && !failure) {
        failure = "trial " + std::to_string(trial) + " (instance seed " +
                  std::to_string(instance_seed) + "), gap " + std::to_string(gap);
      }
      min_gap_random = std::min(min_gap_random, key_inequality_gap(t, u, shuffled));
    }
  }
  report.check("key-inequality", !failure,
               {{"min_gap", a.trials > 0 ? min_gap : 0.0},
                {"trees_times_trials", evaluated},
                {"complex", a.complex}},
               -kGapFloor, failure);
  // Random orders are outside the theorem; recorded, not asserted.
  report["random_order_min_gap"] = a.trials > 0 ? min_gap_random : 0.0;
}

// ---- instance commands --------------------------------------------------

struct InstanceArgs {
  std::string instance;
  std::string b;
  bool complex = false;
};

struct LoadedInstance {
  Instance instance;
  std::optional<StabilityCertificate> certificate;  // empty = auto
};

/// --b FILE reads a certificate, --b auto forces the minimal uniform one, and
/// no flag falls back to the instance's own "b" (auto when absent).
LoadedInstance load(const InstanceArgs& a, Report& report) {
  LoadedInstance loaded{parse_instance(a.instance), std::nullopt};
  report["instance"] = a.instance;
  report["instance_digest"] = instance_digest(loaded.instance);
  report["n"] = loaded.instance.potential.vertex_count();
  report["kind"] = loaded.instance.potential.is_complex() ? "complex" : "real";
  if (a.b.empty()) {
    loaded.certificate = loaded.instance.b;
  } else if (a.b != "auto") {
    loaded.certificate = parse_certificate(a.b, loaded.instance.potential.vertex_count());
  }
  return loaded;
}

Json certificate_json(const BoundReport& r, const std::optional<StabilityCertificate>& b) {
  if (b) {
    return {{"source", "given"}, {"b", b->values()}};
  }
  return {{"source", "auto"}, {"uniform_b", *r.uniform_b}};
}

void run_bound(const InstanceArgs& a, const Settings& settings, Report& report) {
  const LoadedInstance loaded = load(a, report);
  BoundOptions options = settings.bound();
  options.force_complex = a.complex;
  const BoundReport r = evaluate_bound(loaded.instance.potential, loaded.certificate, options);
  Json values = {
      {"lhs_magnitude", r.lhs_magnitude ? Json(*r.lhs_magnitude) : Json(nullptr)},
      {"lhs_value", r.lhs_value ? complex_json(*r.lhs_value) : Json(nullptr)},
      {"rhs_improved", r.rhs_improved},
      {"rhs_naive", r.rhs_naive},
      {"stability_prefactor", r.stability_prefactor},
      {"certificate", certificate_json(r, loaded.certificate)},
      {"tree_count", r.tree_count},
      {"complex_form", r.complex_form},
      {"satisfied", r.satisfied},
      {"execution", std::string(to_string(r.execution))}};
  report["bound"] = values;
  report.check("tree-graph-bound", r.satisfied,
               {{"lhs_magnitude", values["lhs_magnitude"]},
                {"rhs_improved", r.rhs_improved},
                {"lhs_evaluated", r.lhs_magnitude.has_value()}},
               settings.tol);
  report.check("improved<=naive", within_bound(r.rhs_improved, r.rhs_naive, settings.tol, 0.0),
               {{"rhs_improved", r.rhs_improved}, {"rhs_naive", r.rhs_naive}}, settings.tol);
}

void run_stability(const InstanceArgs& a, Report& report) {
  const LoadedInstance loaded = load(a, report);
  const Potential& u = loaded.instance.potential;
  const double b_star = minimal_uniform_stability(u);
  report["minimal_uniform_b"] = b_star;
  report.check("minimal-uniform-certificate",
               check_stability(u, StabilityCertificate::uniform(u.vertex_count(), b_star)).stable(),
               {{"minimal_uniform_b", b_star}}, 0.0);
  if (loaded.certificate) {
    const StabilityResult result = check_stability(u, *loaded.certificate);
    Json values = {{"b", loaded.certificate->values()},
                   {"violating_subset", result.violation ? subset_json(*result.violation) : Json(nullptr)}};
    if (result.violation) {
      values["pair_sum"] = result.pair_sum;
      values["b_sum"] = result.b_sum;
    }
    std::optional<std::string> counterexample;
    if (result.violation) {
      counterexample = "subset " + dump_json(subset_json(*result.violation)) + ": pair sum " +
                       std::to_string(result.pair_sum) + " < -" + std::to_string(result.b_sum);
    }
    report.check("certificate", result.stable(), std::move(values), 0.0, counterexample);
  }
}

void run_compare(const InstanceArgs& a, const Settings& settings, Report& report) {
  const LoadedInstance loaded = load(a, report);
  const Potential& u = loaded.instance.potential;
  std::optional<double> uniform_b;
  const StabilityCertificate b = loaded.certificate ? *loaded.certificate : [&] {
    uniform_b = minimal_uniform_stability(u);
    return StabilityCertificate::uniform(u.vertex_count(), *uniform_b);
  }();
  const bool complex = u.is_complex() || a.complex;
  const double improved = complex ? tree_bound_complex(u, b, settings.sums())
                                  : tree_bound_real(u, b, settings.sums());
  const double naive = naive_tree_bound(u, b, settings.sums());
  Json values = {{"rhs_improved", improved},
                 {"rhs_naive", naive},
                 {"ratio", naive > 0.0 ? Json(improved / naive) : Json(nullptr)},
                 {"complex_form", complex},
                 {"certificate", uniform_b ? Json{{"source", "auto"}, {"uniform_b", *uniform_b}}
                                           : Json{{"source", "given"}, {"b", b.values()}}}};
  report.check("improved<=naive", within_bound(improved, naive, settings.tol, 0.0), values,
               settings.tol);
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  int n = 4;
  std::string dist = "uniform:-2,3";
  std::uint64_t seed = 1;
  std::string out;
};

void print_summary(std::ostream& err, const Json& doc) {
  err << doc["command"].get<std::string>() << ": " << doc["status"].get<std::string>() << '\n';
  if (doc.contains("checks")) {
    for (const Json& c : doc["checks"]) {
      err << "  [" << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "] "
          << c["name"].get<std::string>() << ' ' << dump_json(c["values"]) << '\n';
      if (!c["counterexample"].is_null()) {
        err << "        counterexample: " << c["counterexample"].get<std::string>() << '\n';
      }
    }
  }
}

int emit_error(std::ostream& out, std::ostream& err, const std::string& command,
               const std::string& kind, const std::string& code, const std::string& message,
               Json extra = Json::object()) {
  Json doc;
  doc["command"] = command;
  doc["status"] = "error";
  Json error = {{"kind", kind}, {"code", code}, {"message", message}};
  for (auto& [key, value] : extra.items()) {
    error[key] = value;
  }
  doc["error"] = std::move(error);
  out << dump_json(doc, 2) << '\n';
  err << command << ": error (" << code << "): " << message << '\n';
  return kind == "capacity" ? kExitCapacityError : kExitInputError;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tree-graph bound toolkit: Kruskal partition scheme, tree resummation, "
               "stability certificates and bound evaluation"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings settings;
  app.add_option("--tol", settings.tol, "Relative tolerance for identity/bound checks")
      ->check(CLI::PositiveNumber);
  app.add_flag("--parallel", settings.parallel, "Split tree sums across threads");
  app.add_option("--workers", settings.workers, "Worker threads in parallel mode (0 = auto)");
  app.add_flag("--allow-large", settings.allow_large, "Raise the tree-sum limit from n=9 to n=12");

  SchemeArgs scheme;
  auto* verify_scheme = app.add_subcommand("verify-scheme", "Exhaustively verify the Kruskal partition scheme");
  verify_scheme->add_option("--n", scheme.n, "Vertex count (2..6)")->required();
  verify_scheme->add_option("--order", scheme.order, "Edge order: lex | random");
  verify_scheme->add_option("--seed", scheme.seed, "Seed for random orders");
  verify_scheme->add_option("--orders", scheme.orders, "Number of random orders")->check(CLI::PositiveNumber);

  IdentityArgs identity;
  auto* verify_identity =
      app.add_subcommand("verify-identity", "Compare the tree resummation against the direct graph sum");
  verify_identity->add_option("--n", identity.n, "Vertex count (2..7)")->required();
  verify_identity->add_option("--trials", identity.trials, "Random potentials")->check(CLI::NonNegativeNumber);
  verify_identity->add_option("--seed", identity.seed, "Seed");
  verify_identity->add_option("--range", identity.range, "Uniform range LO HI")->expected(2);
  verify_identity->add_option("--random-orders", identity.random_orders, "Random edge orders per trial")
      ->check(CLI::NonNegativeNumber);

  KeyArgs key;
  auto* verify_key = app.add_subcommand("verify-key", "Minimum key-inequality gap over all trees");
  verify_key->add_option("--n", key.n, "Vertex count")->required();
  verify_key->add_option("--trials", key.trials, "Random potentials")->check(CLI::NonNegativeNumber);
  verify_key->add_option("--seed", key.seed, "Seed");
  verify_key->add_option("--range", key.range, "Uniform range LO HI (of Re u)")->expected(2);
  verify_key->add_flag("--complex", key.complex, "Complex potentials, Im uniform in [-pi, pi]");

  InstanceArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Evaluate both sides of the tree-graph bound");
  bound_cmd->add_option("--instance", bound.instance, "Instance JSON file")->required();
  bound_cmd->add_option("--b", bound.b, "Certificate JSON file, or 'auto'");
  bound_cmd->add_flag("--complex", bound.complex, "Use the complex form of the bound");

  InstanceArgs stability;
  auto* stability_cmd = app.add_subcommand("stability", "Minimal uniform stability constant / certificate check");
  stability_cmd->add_option("--instance", stability.instance, "Instance JSON file")->required();
  stability_cmd->add_option("--b", stability.b, "Certificate JSON file");

  InstanceArgs compare;
  auto* compare_cmd = app.add_subcommand("compare", "Improved versus naive tree bound");
  compare_cmd->add_option("--instance", compare.instance, "Instance JSON file")->required();
  compare_cmd->add_option("--b", compare.b, "Certificate JSON file, or 'auto'");
  compare_cmd->add_flag("--complex", compare.complex, "Use the complex form of the bound");

  GenerateArgs generate;
  auto* generate_cmd = app.add_subcommand("generate", "Write a random instance file");
  generate_cmd->add_option("--n", generate.n, "Vertex count")->required();
  generate_cmd->add_option("--dist", generate.dist,
                           "uniform:LO,HI | gaussian:MU,SIGMA | complex-uniform:RLO,RHI,ILO,IHI");
  generate_cmd->add_option("--seed", generate.seed, "Seed");
  generate_cmd->add_option("--out", generate.out, "Output path (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    return emit_error(out, err, "usage", "input", "usage", e.what());
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    if (command == "generate") {
      const Potential u = generate_instance(generate.n, Distribution::parse(generate.dist), generate.seed);
      const std::string text = dump_json(emit_instance(Instance{u, std::nullopt}), 2) + "\n";
      if (generate.out.empty()) {
        out << text;
      } else {
        std::ofstream file(generate.out);
        if (!(file << text)) {
          throw InputError("unwritable", "cannot write " + generate.out);
        }
      }
      err << "generate: n=" << generate.n << " " << generate.dist << " seed=" << generate.seed << '\n';
      return kExitPass;
    }

    Report report(command, args, settings);
    if (command == "verify-scheme") {
      run_verify_scheme(scheme, report);
    } else if (command == "verify-identity") {
      run_verify_identity(identity, settings, report);
    } else if (command == "verify-key") {
      run_verify_key(key, settings, report);
    } else if (command == "bound") {
      run_bound(bound, settings, report);
    } else if (command == "stability") {
      run_stability(stability, report);
    } else if (command == "compare") {
      run_compare(compare, settings, report);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const Json doc = report.finish(seconds);
    out << dump_json(doc, 2) << '\n';
    print_summary(err, doc);
    return report.passed() ? kExitPass : kExitCheckFailed;
  } catch (const InputError& e) {
    return emit_error(out, err, command, "input", e.code(), e.what());
  } catch (const StabilityError& e) {
    return emit_error(out, err, command, "domain", "unstable", e.what(),
                      {{"violating_subset", subset_json(e.subset())}});
  } catch (const DomainError& e) {
    return emit_error(out, err, command, "domain", "domain", e.what());
  } catch (const CapacityError& e) {
    return emit_error(out, err, command, "capacity", "capacity", e.what());
  }
}

}  // namespace treegraph
