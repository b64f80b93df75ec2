#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace xlayer::cli {

struct RunContext {
  const Config& config;
  std::uint64_t seed = 1;
  std::size_t trials = 0;
  unsigned threads = 0;
};

struct Table {
  std::vector<std::string> columns;  // "name [unit]"
  std::vector<std::vector<double>> rows;
};

/// Writes the metadata comment, the header and the rows; floats use 12 significant digits.
void write_csv(std::ostream& out, const std::string& metadata, const Table& table);

struct Experiment {
  std::string name;
  std::string summary;
  std::size_t default_trials;
  std::vector<std::pair<std::string, std::string>> defaults;  // applied over the key fallbacks
  std::function<Table(const RunContext&)> run;
};

const std::vector<Experiment>& experiments();
const Experiment* find_experiment(const std::string& name);

/// Grid from the sweep.lo / sweep.hi / sweep.points / sweep.spacing keys.
std::vector<double> sweep_grid(const Config& config);

}  // namespace xlayer::cli
