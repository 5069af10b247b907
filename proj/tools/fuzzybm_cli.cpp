#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "fuzzybm/config.hpp"
#include "fuzzybm/io.hpp"
#include "fuzzybm/monte_carlo.hpp"
#include "fuzzybm/selftest.hpp"
#include "fuzzybm/verify.hpp"

namespace fs = std::filesystem;
using namespace fuzzybm;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> workers;
  std::optional<std::string> format;
  std::vector<std::string> inputs;
};

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  return buf;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

void write_json(const fs::path& p, const Json& j) { write_text(p, j.dump(2) + "\n"); }

void write_report(const fs::path& dir, const std::string& stem, const VerificationReport& r,
                  const std::string& format) {
  if (format == "csv") {
    std::ofstream out(dir / (stem + ".csv"), std::ios::binary);
    write_report_csv(out, r);
  } else {
    write_json(dir / (stem + ".json"), report_to_json(r));
  }
}

void print_summary(const VerificationReport& r) {
  std::size_t failed = 0;
  for (const auto& c : r.checks) failed += c.pass ? 0 : 1;
  std::cout << r.name << " [" << r.sampler << "] seed=" << r.seed << " checks=" << r.checks.size()
            << " failed=" << failed << " -> " << (r.pass ? "PASS" : "FAIL") << "\n";
  for (const auto& v : r.verdicts) {
    std::cout << "  " << v.name << ": " << (v.pass ? "pass" : "fail");
    if (!v.note.empty()) std::cout << " (" << v.note << ")";
    std::cout << "\n";
  }
}

int cmd_selftest(const RunConfig& config) {
  const VerificationReport r = run_selftest(config.seed);
  print_summary(r);
  write_report(config.output.dir, "selftest", r, config.output.format);
  return r.pass ? kExitPass : kExitFail;
}

int cmd_simulate(const RunConfig& config) {
  const SamplerPtr sampler = build_sampler(config);
  Json paths = Json::array();
  for (std::size_t k = 0; k < config.paths; ++k) {
    const SampledPath s = sampler->sample_with_driver(replicate_seed(config.seed, k));
    if (config.output.format == "csv") {
      const fs::path dir(config.output.dir);
      std::ofstream driver(dir / ("path_" + std::to_string(k) + ".csv"), std::ios::binary);
      write_path_csv(driver, s.driver);
      std::ofstream surface(dir / ("surface_" + std::to_string(k) + ".csv"), std::ios::binary);
      write_surface_csv(surface, embed(s.path.values.back()));
    } else {
      paths.push_back({{"replicate", k},
                       {"seed", replicate_seed(config.seed, k)},
                       {"driver", {{"times", s.driver.times}, {"points", s.driver.points}}},
                       {"path", fuzzy_path_to_json(s.path)}});
    }
  }
  if (config.output.format == "json") {
    write_json(fs::path(config.output.dir) / "paths.json",
               {{"sampler", sampler->describe()},
                {"grid", grid_to_json(*sampler->grid())},
                {"paths", std::move(paths)}});
  }
  std::cout << "simulate [" << sampler->describe() << "] wrote " << config.paths << " paths to "
            << config.output.dir << "\n";
  return kExitPass;
}

int cmd_verify(const RunConfig& config) {
  const SamplerPtr sampler = build_sampler(config);
  CharacterizationOptions opts;
  opts.workers = config.workers;
  opts.covariance_triples = config.covariance_triples;
  opts.cross_pairs = config.cross_pairs;
  opts.z = config.z;
  const VerificationReport r = characterization_suite(
      *sampler, config.functional_count, snap_times(*sampler, config.times), config.samples,
      config.seed, opts);
  print_summary(r);
  write_report(config.output.dir, "verify", r, config.output.format);
  return r.pass ? kExitPass : kExitFail;
}

int cmd_degeneracy(const RunConfig& config) {
  const SamplerPtr sampler = build_sampler(config);
  DegeneracyOptions opts;
  opts.workers = config.workers;
  opts.z = config.z;
  opts.detector_atoms = config.detector_atoms;
  std::vector<double> alphas = config.alpha_levels;
  alphas.push_back(0.0);  // the support set
  const VerificationReport r = degeneracy_test(*sampler, snap_times(*sampler, config.times), alphas,
                                               config.samples, config.seed, opts);
  print_summary(r);
  write_report(config.output.dir, "degeneracy", r, config.output.format);
  return r.pass ? kExitPass : kExitFail;
}

int cmd_report(const RunConfig& config, const std::vector<std::string>& extra) {
  std::vector<std::string> inputs = config.reports;
  inputs.insert(inputs.end(), extra.begin(), extra.end());
  if (inputs.empty()) throw ConfigError("report: no input reports (config.reports or positional)");
  VerificationReport merged;
  merged.name = "summary";
  merged.sampler = "merged";
  merged.seed = config.seed;
  merged.z = 0.0;
  merged.pass = true;
  Json members = Json::array();
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) throw ConfigError("report: cannot open " + path);
    VerificationReport r;
    try {
      r = report_from_json(Json::parse(in));
    } catch (const Json::exception& e) {
      throw ConfigError("report: " + path + ": " + e.what());
    }
    members.push_back({{"name", r.name}, {"sampler", r.sampler}, {"seed", r.seed}, {"pass", r.pass}});
    merged.pass = merged.pass && r.pass;
    merged.z = std::max(merged.z, r.z);
    for (auto c : r.checks) {
      c.test = r.name + "/" + c.test;
      merged.checks.push_back(std::move(c));
    }
    for (auto v : r.verdicts) {
      v.name = r.name + "/" + v.name;
      merged.verdicts.push_back(std::move(v));
    }
  }
  print_summary(merged);
  if (config.output.format == "csv") {
    write_report(config.output.dir, "summary", merged, "csv");
  } else {
    Json j = report_to_json(merged);
    j["reports"] = std::move(members);
    write_json(fs::path(config.output.dir) / "summary.json", j);
  }
  return merged.pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy set-valued Brownian motion: simulation and verification"};
  app.require_subcommand(1, 1);
  Flags flags;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "JSON run config");
    sub->add_option("--seed", flags.seed, "overrides config seed");
    sub->add_option("--out", flags.out, "output directory");
    sub->add_option("--workers", flags.workers, "worker threads (0 = all cores)");
    sub->add_option("--format", flags.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  };
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"selftest", "exact invariant suites"},
      {"simulate", "write sample paths"},
      {"verify", "Brownian characterization suite"},
      {"degeneracy", "two-step degeneracy test"},
      {"report", "merge JSON reports into one summary"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub);
    if (name == "report") sub->add_option("inputs", flags.inputs, "report JSON files");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig config;
  try {
    if (!flags.config_path.empty()) config = load_config(flags.config_path);
    if (flags.seed) config.seed = *flags.seed;
    if (flags.out) config.output.dir = *flags.out;
    if (flags.workers) config.workers = *flags.workers;
    if (flags.format) config.output.format = *flags.format;
    validate(config);
    fs::create_directories(config.output.dir);
  } catch (const std::exception& e) {
    std::cerr << "fuzzybm: malformed config: " << e.what() << "\n";
    return kExitConfig;
  }

  const std::string started = iso_now();
  const auto t0 = std::chrono::steady_clock::now();
  int code = kExitFail;
  try {
    if (command == "selftest") {
      code = cmd_selftest(config);
    } else if (command == "simulate") {
      code = cmd_simulate(config);
    } else if (command == "verify") {
      code = cmd_verify(config);
    } else if (command == "degeneracy") {
      code = cmd_degeneracy(config);
    } else {
      code = cmd_report(config, flags.inputs);
    }
  } catch (const ConfigError& e) {
    std::cerr << "fuzzybm: malformed config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "fuzzybm: " << command << " failed: " << e.what() << "\n";
    return kExitFail;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  // Wall-clock data stays out of the reports so they can be diffed.
  try {
    write_json(fs::path(config.output.dir) / "run_meta.json",
               {{"command", command},
                {"started", started},
                {"finished", iso_now()},
                {"seconds", seconds},
                {"workers", resolve_workers(config.workers)},
                {"exit_code", code},
                {"config", config_to_json(config)}});
  } catch (const std::exception& e) {
    std::cerr << "fuzzybm: cannot write run metadata: " << e.what() << "\n";
  }
  return code;
}
