#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rispace/experiments.hpp"
#include "rispace/parallel.hpp"

using namespace rispace;

namespace {

enum ExitCode { kPass = 0, kVerifyFailed = 1, kInputError = 2, kConfigError = 3 };

// Raised for anything the user has to fix in the command line or environment.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Raised for unreadable or unwritable files.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string space;
  std::string input;
  std::string out;
  std::string format = "json";
  std::string coeffs;
  std::optional<int> n_max;
  std::optional<int> random_n_max;
  std::optional<int> trials;
  std::optional<int> indicator_trials;
  std::optional<int> grid;
  std::optional<int> oracle_instances;
  int n = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string suite;
};

const std::vector<std::string> kSuites{"theorem1", "sign",      "derand", "envelope",   "g1chain",
                                       "gg1",      "hinge",     "rearrange", "luxemburg", "fundamental"};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

std::vector<double> parse_coeffs(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v)) {
      throw ConfigError("bad coefficient '" + item + "' in --coeffs");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("--coeffs needs at least one value");
  return out;
}

int cmd_norm(const RunConfig& cfg) {
  const SpaceSpec E = parse_space(cfg.space);
  const StepFunction f = load_step_function(cfg.input);
  std::printf("%.12f\n", ri_norm(f, E));
  return kPass;
}

int cmd_rearrange(const RunConfig& cfg) {
  const StepFunction f = load_step_function(cfg.input);
  write_output(cfg.out, format_step_function(rearrange(f)));
  return kPass;
}

int cmd_rademacher(const RunConfig& cfg) {
  std::optional<SpaceSpec> E;
  if (!cfg.space.empty()) E = parse_space(cfg.space);
  StepFunction f;
  if (!cfg.coeffs.empty()) {
    const std::vector<double> a = parse_coeffs(cfg.coeffs);
    if (a.size() > static_cast<std::size_t>(kMaxEnumeration)) {
      throw ConfigError("--coeffs: at most 24 coefficients");
    }
    f = signed_sum(a, SignVector::all_plus(a.size()));
    if (E) std::printf("%.12f\n", rademacher_sum_norm(a, *E));
  } else {
    if (cfg.n < 1 || cfg.n > kMaxEnumeration) throw ConfigError("--n must be in [1,24]");
    f = rademacher(cfg.n);
    if (E) std::printf("%.12f\n", ri_norm(f, *E));
  }
  if (!cfg.out.empty()) {
    write_output(cfg.out, format_step_function(f));
  } else if (!E) {
    write_output("", format_step_function(f));
  }
  return kPass;
}

ExperimentReport run_suite(const RunConfig& cfg) {
  const std::uint64_t seed = cfg.seed;
  auto need_no_space = [&] {
    if (!cfg.space.empty()) throw ConfigError("suite '" + cfg.suite + "' does not take --space");
  };
  const std::string& s = cfg.suite;
  if (s == "theorem1") {
    const SpaceSpec E = parse_space(cfg.space.empty() ? "G" : cfg.space);
    const int n_max = cfg.n_max.value_or(16);
    return theorem1_report(E, n_max, cfg.trials.value_or(200), seed,
                           cfg.random_n_max.value_or(std::min(n_max, 14)));
  }
  if (s == "sign") {
    need_no_space();
    return sign_suite(cfg.n_max.value_or(10), cfg.trials.value_or(1000), seed);
  }
  if (s == "derand") {
    need_no_space();
    return derandomization_suite(cfg.n_max.value_or(12), cfg.trials.value_or(200), seed);
  }
  if (s == "envelope") {
    const int trials = cfg.trials.value_or(1000);
    const int ind = cfg.indicator_trials.value_or(std::max(1, trials / 2));
    if (cfg.space.empty()) return envelope_suite(trials, seed, ind);
    return envelope_lemma_check(parse_space(cfg.space), trials, seed, ind);
  }
  if (s == "g1chain") {
    need_no_space();
    return g1_chain_check(cfg.trials.value_or(1000), seed, cfg.grid.value_or(200));
  }
  if (s == "gg1") {
    need_no_space();
    return g_g1_indicator_comparison(cfg.grid.value_or(200));
  }
  if (s == "hinge") {
    need_no_space();
    return hinge_suite(cfg.trials.value_or(1000), seed, cfg.oracle_instances.value_or(20));
  }
  if (s == "rearrange") {
    need_no_space();
    return rearrangement_suite(cfg.trials.value_or(10000), seed);
  }
  if (s == "luxemburg") {
    need_no_space();
    return luxemburg_suite(cfg.trials.value_or(1000), seed, cfg.grid.value_or(100));
  }
  if (s == "fundamental") {
    need_no_space();
    return fundamental_suite(cfg.grid.value_or(20));
  }
  throw ConfigError("unknown suite '" + s + "'");
}

int cmd_verify(const RunConfig& cfg) {
  const ExperimentReport r = run_suite(cfg);
  std::string text;
  if (cfg.format == "json") {
    text = r.to_json();
  } else if (cfg.format == "csv") {
    text = r.to_csv();
  } else {
    text = r.to_text();
  }
  write_output(cfg.out, text);
  if (!cfg.out.empty() && cfg.out != "-") {
    std::printf("%s: %s -> %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", cfg.out.c_str());
  }
  return r.pass ? kPass : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Norms, rearrangements and Rademacher sums in rearrangement-invariant spaces on [0,1]"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* norm = app.add_subcommand("norm", "Print the norm of a stepfn v1 function in a space");
  norm->add_option("--space", cfg.space, "Space descriptor (G, G1, MG, L1, Lp:p, Linf, orlicz:..., ...)")
      ->required();
  norm->add_option("--input", cfg.input, "stepfn v1 input file")->required();

  auto* rearr = app.add_subcommand("rearrange", "Write the non-increasing rearrangement of a function");
  rearr->add_option("--input", cfg.input, "stepfn v1 input file")->required();
  rearr->add_option("--out", cfg.out, "Output file (stdout if omitted)");

  auto* rad = app.add_subcommand("rademacher", "Write r_n, or the dyadic sum of a_i r_i with --coeffs");
  rad->add_option("--n", cfg.n, "Index of the Rademacher function (1..24)");
  rad->add_option("--coeffs", cfg.coeffs, "Comma-separated coefficients a_1,...,a_n");
  rad->add_option("--space", cfg.space, "Also print the norm in this space");
  rad->add_option("--out", cfg.out, "Output file");

  auto* verify = app.add_subcommand("verify", "Run a verification suite and write its report");
  verify->add_option("suite", cfg.suite, "Suite name")->required()->check(CLI::IsMember(kSuites));
  verify->add_option("--space", cfg.space, "Space descriptor (theorem1, envelope)");
  verify->add_option("--nmax,--n", cfg.n_max, "Largest n");
  verify->add_option("--random-nmax", cfg.random_n_max, "Largest n for random coefficients (theorem1)");
  verify->add_option("--trials", cfg.trials, "Random instances");
  verify->add_option("--indicator-trials", cfg.indicator_trials, "0/1-valued instances (envelope)");
  verify->add_option("--grid", cfg.grid, "Grid size");
  verify->add_option("--oracle-instances", cfg.oracle_instances, "mu-grid oracle instances (hinge)");
  verify->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  verify->add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  verify->add_option("--out", cfg.out, "Report file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }

  try {
    worker_count();
    if (norm->parsed()) return cmd_norm(cfg);
    if (rearr->parsed()) return cmd_rearrange(cfg);
    if (rad->parsed()) return cmd_rademacher(cfg);
    return cmd_verify(cfg);
  } catch (const ParseError& e) {
    if (e.line() == 0) {
      std::cerr << "error: cannot read '" << cfg.input << "'\n";
    } else {
      std::cerr << "error: " << cfg.input << ": " << e.what() << "\n";
    }
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    // descriptor errors, out-of-range sizes, bad RISPACE_WORKERS
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}
