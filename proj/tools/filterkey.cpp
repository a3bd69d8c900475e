// Copyright 2026 The filterkey project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "filterkey/keyrate.hpp"
#include "filterkey/report_io.hpp"
#include "filterkey/sim.hpp"
#include "filterkey/verify.hpp"

namespace {

using namespace filterkey;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

double resolve_x(const std::string& s, double theta) {
  if (s == "ideal") return 1.0;
  if (s == "practical") return (1.0 + std::cos(theta)) / 2.0;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size()) {
    throw std::invalid_argument("--x expects a number, 'ideal' or 'practical'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
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

double parse_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size()) throw std::invalid_argument(what + ": bad number '" + s + "'");
  return v;
}

std::vector<double> parse_double_list(const std::string& s,
                                      const std::string& what) {
  std::vector<double> out;
  for (const std::string& item : split(s, ',')) {
    out.push_back(parse_double(item, what));
  }
  return out;
}

std::uint64_t parse_count(const std::string& s, const std::string& what) {
  const double v = parse_double(s, what);
  if (!(v >= 1.0 && v <= 9.22e18)) {
    throw std::invalid_argument(what + ": count out of range '" + s + "'");
  }
  const double r = std::floor(v + 0.5);
  if (std::fabs(v - r) > 1e-6 * r) {
    throw std::invalid_argument(what + ": not an integer '" + s + "'");
  }
  return static_cast<std::uint64_t>(r);
}

// Either a comma list of counts or a decade range "A:B:log10".
std::vector<std::uint64_t> parse_count_axis(const std::string& s,
                                            const std::string& what) {
  const std::vector<std::string> parts = split(s, ':');
  if (parts.size() == 3) {
    if (parts[2] != "log10") {
      throw std::invalid_argument(what + ": only 'A:B:log10' ranges are "
                                         "supported");
    }
    const double lo = parse_double(parts[0], what);
    const double hi = parse_double(parts[1], what);
    if (!(lo >= 1.0) || !(hi >= lo)) {
      throw std::invalid_argument(what + ": degenerate range '" + s + "'");
    }
    std::vector<std::uint64_t> out;
    for (double v = lo; v <= hi * (1.0 + 1e-9); v *= 10.0) {
      out.push_back(parse_count(std::to_string(v), what));
    }
    return out;
  }
  if (parts.size() != 1) {
    throw std::invalid_argument(what + ": bad range '" + s + "'");
  }
  std::vector<std::uint64_t> out;
  for (const std::string& item : split(s, ',')) {
    out.push_back(parse_count(item, what));
  }
  return out;
}

std::string trim_ws(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

// CLI11 reads config files only for the root command, so subcommand config
// files are applied by hand: flat key=value lines (with '#' comments), each
// key naming a flag of the owning subcommand. A value is used only when the
// matching flag was not given on the command line, so explicit flags win.
void apply_config(CLI::App& cmd, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim_ws(line);
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(where + ": expected key=value");
    }
    const std::string key = trim_ws(line.substr(0, eq));
    const std::string value = trim_ws(line.substr(eq + 1));
    CLI::Option* op =
        key == "config" ? nullptr : cmd.get_option_no_throw("--" + key);
    if (op == nullptr) {
      throw std::invalid_argument(where + ": unknown key '" + key + "'");
    }
    if (op->count() > 0) continue;
    if (op->get_expected_min() == 0) {
      if (value == "true" || value == "1") {
        op->add_result("true");
        op->run_callback();
      } else if (value != "false" && value != "0") {
        throw std::invalid_argument(where + ": flag '" + key +
                                    "' expects true or false");
      }
      continue;
    }
    op->add_result(value);
    op->run_callback();
  }
}

// Required flags are checked after the config file is merged, so a value may
// come from either place.
void require_flags(const CLI::App& cmd,
                   std::initializer_list<const char*> names) {
  for (const char* name : names) {
    if (cmd.get_option(name)->count() == 0) {
      throw std::invalid_argument(std::string(name) + " is required");
    }
  }
}

struct KeyrateArgs {
  double theta = 0.0, q = 0.0, eps = 0.0, test_frac = 0.25;
  std::uint64_t n_total = 0;
  std::string x = "ideal", n0 = "expected", format = "csv", out, config;
  double eps_cor = 0.0, n0_slack = 0.0;
  bool has_eps_cor = false, has_n0_slack = false;
};

N0Policy parse_n0_policy(const KeyrateArgs& a) {
  if (a.has_n0_slack) {
    if (a.n0 != "expected") {
      throw std::invalid_argument("--n0 and --n0-slack are mutually exclusive");
    }
    return N0Policy::slack(a.n0_slack);
  }
  if (a.n0 == "expected") return N0Policy::expected();
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(a.n0, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != a.n0.size()) {
    throw std::invalid_argument("--n0 expects a count or 'expected'");
  }
  return N0Policy::explicit_count(v);
}

int run_keyrate(const KeyrateArgs& a) {
  ProtocolSpec spec;
  spec.n_total = a.n_total;
  spec.test_frac = a.test_frac;
  spec.eps = a.eps;
  spec.params = B92Params{a.theta, resolve_x(a.x, a.theta), a.q};
  spec.n0_policy = parse_n0_policy(a);
  if (a.has_eps_cor) spec.eps_cor = a.eps_cor;

  const KeyRateReport r = b92_key_length(spec);
  const std::string text =
      a.format == "json" ? report_json(r) + "\n"
                         : std::string(kCsvHeader) + "\n" + csv_row(r) + "\n";
  write_output(a.out, text);
  if (r.no_key) {
    std::cerr << "no extractable key\n";
    return 1;
  }
  return 0;
}

struct SweepArgs {
  std::string theta_list, x_list = "ideal", q_list, f_list = "0.25",
              eps_list = "1e-6", n_axis, out, config;
  bool asymptote = false;
};

int run_sweep(const SweepArgs& a) {
  const std::vector<double> thetas = parse_double_list(a.theta_list, "--theta-list");
  const std::vector<std::string> xs = split(a.x_list, ',');
  const std::vector<double> qs = parse_double_list(a.q_list, "--q-list");
  const std::vector<double> fs = parse_double_list(a.f_list, "--test-frac-list");
  const std::vector<double> epss = parse_double_list(a.eps_list, "--eps-list");
  const std::vector<std::uint64_t> ns = parse_count_axis(a.n_axis, "--n-total");

  std::string text = std::string(kCsvHeader) + "\n";
  std::uint64_t emitted = 0;
  for (double theta : thetas) {
    for (const std::string& xspec : xs) {
      SweepGrid grid;
      grid.theta = {theta};
      grid.x = {resolve_x(xspec, theta)};
      grid.q = qs;
      grid.test_frac = fs;
      grid.eps = epss;
      grid.n_total = ns;
      grid.append_asymptote = a.asymptote;
      for (const SweepRow& row : sweep(grid)) {
        if (row.error) {
          std::cerr << "sweep point skipped (theta=" << theta
                    << ", x=" << xspec << "): " << *row.error << "\n";
          continue;
        }
        text += csv_row(row) + "\n";
        ++emitted;
      }
    }
  }
  if (emitted == 0) {
    throw std::invalid_argument("every sweep point failed; nothing to write");
  }
  write_output(a.out, text);
  return 0;
}

struct VerifyArgs {
  std::string suite, out;
  std::uint64_t seed = 1, max_n = 8, sim_rounds = 200000;
  bool self_test = false;
};

int run_verify(const VerifyArgs& a) {
  VerifyOptions opt;
  opt.seed = a.seed;
  opt.gamma_max_n = a.max_n;
  opt.sim_rounds = a.sim_rounds;
  if (a.self_test) opt.filter_tol = 1e-17;  // tighter than double rounding

  const std::vector<SuiteResult> results = run_suites(a.suite, opt);
  bool all_passed = true;
  nlohmann::ordered_json summary;
  summary["suites"] = nlohmann::ordered_json::array();
  for (const SuiteResult& r : results) {
    if (r.passed()) {
      std::cerr << "suite " << r.name << ": PASS (" << r.checks
                << " checks)\n";
    } else {
      all_passed = false;
      std::cerr << "suite " << r.name << ": FAIL (" << r.failures.size()
                << "/" << r.checks << " checks failed)\n";
      for (const std::string& f : r.failures) {
        std::cerr << "  - " << f << "\n";
      }
    }
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["checks"] = r.checks;
    j["failed"] = r.failures.size();
    j["failures"] = r.failures;
    summary["suites"].push_back(j);
  }
  summary["all_passed"] = all_passed;
  write_output(a.out, summary.dump(2) + "\n");
  return all_passed ? 0 : 1;
}

struct SimulateArgs {
  std::uint64_t rounds = 0, test_m = 0, n0_min = 0, seed = 1;
  double theta = 0.0, q = 0.0, delta = 0.0, q_max = 1.0;
  std::string x = "ideal", out, config;
};

int run_simulate(const SimulateArgs& a) {
  SimConfig cfg;
  cfg.rounds = a.rounds;
  cfg.m = a.test_m;
  cfg.params = B92Params{a.theta, resolve_x(a.x, a.theta), a.q};
  cfg.delta = a.delta;
  cfg.q_max = a.q_max;
  cfg.n0_min = a.n0_min;
  cfg.seed = a.seed;
  const Transcript t = run_protocol_trace(cfg);
  write_output(a.out, transcript_json(cfg, t) + "\n");
  if (t.aborted) {
    std::cerr << "protocol aborted\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-size key rates and Monte Carlo simulation for the "
               "filtered two-state protocol"};
  app.require_subcommand(1);

  KeyrateArgs ka;
  CLI::App* kr = app.add_subcommand(
      "keyrate", "Key length and rate for one parameter point");
  kr->add_option("--config", ka.config,
                 "flat key=value file mirroring the flag names; explicit "
                 "flags override the file");
  kr->add_option("--theta", ka.theta, "signal angle in radians (required)");
  kr->add_option("--q", ka.q, "depolarizing noise level (required)");
  kr->add_option("--eps", ka.eps, "target security level (required)");
  kr->add_option("--n-total", ka.n_total, "total signals N (required)");
  kr->add_option("--x", ka.x, "device quality: number, 'ideal' or 'practical'");
  kr->add_option("--test-frac", ka.test_frac, "test fraction f, m = floor(fN)");
  kr->add_option("--n0", ka.n0, "accepted-round count or 'expected'");
  CLI::Option* slack =
      kr->add_option("--n0-slack", ka.n0_slack,
                     "k-sigma binomial slack on the expected n0");
  CLI::Option* cor =
      kr->add_option("--eps-cor", ka.eps_cor, "correctness budget");
  kr->add_option("--format", ka.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  kr->add_option("--out", ka.out, "output path (default stdout)");

  SweepArgs sa;
  CLI::App* sw = app.add_subcommand(
      "sweep", "Cartesian parameter sweep emitting one CSV row per point");
  sw->add_option("--config", sa.config,
                 "flat key=value file mirroring the flag names; explicit "
                 "flags override the file");
  sw->add_option("--theta-list", sa.theta_list,
                 "comma list of angles (required)");
  sw->add_option("--x-list", sa.x_list,
                 "comma list of device qualities (number/ideal/practical)");
  sw->add_option("--q-list", sa.q_list, "comma list of noise levels (required)");
  sw->add_option("--test-frac-list", sa.f_list, "comma list of test fractions");
  sw->add_option("--eps-list", sa.eps_list, "comma list of security levels");
  sw->add_option("--n-total", sa.n_axis,
                 "comma list of block sizes, or a range A:B:log10 (required)");
  sw->add_flag("--asymptote", sa.asymptote,
               "append the infinite-key rate as a pseudo-row with N=inf");
  sw->add_option("--out", sa.out, "output path (default stdout)");

  VerifyArgs va;
  CLI::App* vf = app.add_subcommand(
      "verify", "Run the oracle verification suites");
  vf->add_option("--suite", va.suite, "run a single suite by name");
  vf->add_option("--seed", va.seed, "seed for the randomized checks");
  vf->add_option("--max-n", va.max_n,
                 "word-length ceiling for the exhaustive ambiguity sweep");
  vf->add_option("--sim-rounds", va.sim_rounds,
                 "rounds per point in the simulator suite");
  vf->add_flag("--self-test", va.self_test,
               "flip a tolerance to confirm failures are detected");
  vf->add_option("--out", va.out, "path for the JSON summary (default stdout)");

  SimulateArgs ma;
  CLI::App* si = app.add_subcommand(
      "simulate", "Run the seeded protocol simulation once");
  si->add_option("--config", ma.config,
                 "flat key=value file mirroring the flag names; explicit "
                 "flags override the file");
  si->add_option("--rounds", ma.rounds, "total rounds N (required)");
  si->add_option("--theta", ma.theta, "signal angle in radians (required)");
  si->add_option("--q", ma.q, "depolarizing noise level (required)");
  si->add_option("--x", ma.x, "device quality: number, 'ideal' or 'practical'");
  si->add_option("--test-m", ma.test_m, "test subset size (required)");
  si->add_option("--delta", ma.delta, "sampling tolerance (reported only)");
  si->add_option("--q-max", ma.q_max, "abort threshold on the observed rate");
  si->add_option("--n0-min", ma.n0_min, "abort threshold on accepted rounds");
  si->add_option("--seed", ma.seed, "simulation seed");
  si->add_option("--out", ma.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (kr->parsed()) {
      apply_config(*kr, ka.config);
      ka.has_n0_slack = slack->count() > 0;
      ka.has_eps_cor = cor->count() > 0;
      require_flags(*kr, {"--theta", "--q", "--eps", "--n-total"});
      return run_keyrate(ka);
    }
    if (sw->parsed()) {
      apply_config(*sw, sa.config);
      require_flags(*sw, {"--theta-list", "--q-list", "--n-total"});
      return run_sweep(sa);
    }
    if (vf->parsed()) return run_verify(va);
    if (si->parsed()) {
      apply_config(*si, ma.config);
      require_flags(*si, {"--rounds", "--theta", "--q", "--test-m"});
      return run_simulate(ma);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
