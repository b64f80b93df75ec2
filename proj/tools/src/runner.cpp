#include "runner.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "experiments.hpp"
#include "xlayer/numerics.hpp"

#ifndef XLAYER_VERSION
#define XLAYER_VERSION "unknown"
#endif

namespace xlayer::cli {
namespace {

void print_keys(std::ostream& out) {
  for (const auto& k : registered_keys()) {
    out << k.name << " = " << k.fallback << "  # " << k.description;
    if (!k.choices.empty()) {
      out << " (";
      for (std::size_t i = 0; i < k.choices.size(); ++i) out << (i ? "|" : "") << k.choices[i];
      out << ")";
    }
    out << '\n';
  }
}

std::string metadata(const Experiment& e, const RunContext& ctx) {
  std::string line = std::string("xlayer ") + XLAYER_VERSION + " experiment=" + e.name +
                     " seed=" + std::to_string(ctx.seed) + " trials=" + std::to_string(ctx.trials);
  for (const auto& kv : ctx.config.resolved()) line += " " + kv;
  return line;
}

}  // namespace

int exit_code_for(std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const numerics::NumericalError&) {
    return 2;
  } catch (...) {
    return 1;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  for (const auto& e : experiments()) names.push_back(e.name);

  CLI::App app{"Runs one experiment of the cross-layer energy-efficiency model and writes CSV."};
  std::string name, config_path, out_path;
  std::vector<std::string> assignments;
  std::uint64_t seed = 1;
  std::size_t trials = 0;
  unsigned threads = 0;
  bool list_keys = false;
  app.add_option("experiment", name, "Experiment to run")->check(CLI::IsMember(names));
  app.add_option("--config", config_path, "JSON file with parameter overrides")->check(CLI::ExistingFile);
  app.add_option("--set", assignments, "Override one key, key=value (repeatable)");
  app.add_option("--seed", seed, "Random seed");
  auto* trials_option = app.add_option("--trials", trials, "Monte Carlo trials (frames for MAC experiments)");
  app.add_option("--out", out_path, "Output CSV path (default: standard output)");
  app.add_option("--threads", threads, "Worker threads (0: hardware concurrency)");
  app.add_flag("--keys", list_keys, "List configuration keys with their defaults and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  if (list_keys) {
    print_keys(out);
    return 0;
  }
  if (name.empty()) {
    err << "error: an experiment name is required; one of:";
    for (const auto& n : names) err << ' ' << n;
    err << '\n';
    return 1;
  }

  try {
    const Experiment& experiment = *find_experiment(name);
    Config config;
    for (const auto& [key, value] : experiment.defaults) config.set(key, value);
    if (!config_path.empty()) config.load(config_path);
    for (const auto& a : assignments) config.assign(a);

    RunContext ctx{config, seed, trials_option->count() ? trials : experiment.default_trials, threads};
    const Table table = experiment.run(ctx);

    std::ostringstream csv;
    write_csv(csv, metadata(experiment, ctx), table);
    if (out_path.empty()) {
      out << csv.str();
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!(file << csv.str()) || !file.flush()) throw std::runtime_error("cannot write " + out_path);
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(std::current_exception());
  }
}

}  // namespace xlayer::cli
