#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "mfdbsde/assumptions.hpp"
#include "mfdbsde/levy_sim.hpp"
#include "mfdbsde/picard.hpp"
#include "mfdbsde/problem.hpp"
#include "mfdbsde/regression.hpp"

namespace mfdbsde::app {

/// Invalid configuration document. The message names the file, line and
/// JSON pointer of the offending entry where known.
class ConfigFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputConfig {
  std::filesystem::path dir = "mfdbsde_out";
  std::string solution_csv = "solution.csv";
  std::string report = "report.txt";
  std::string sweep_csv = "sweep.csv";
};

struct RunConfig {
  ProblemSpec problem;
  SimConfig sim;
  RegressionConfig regression;
  PicardConfig picard;
  AssumptionSamplerConfig validation;
  OutputConfig output;
  std::string source;  // file name, for messages
};

/// Line of each JSON pointer in a document ("/problem/delay/delta" -> 7).
/// Array elements are keyed by index.
std::map<std::string, std::size_t> locate_pointers(const std::string& text);

RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> particles;
  std::optional<std::filesystem::path> out_dir;
};

void apply_overrides(RunConfig& cfg, const Overrides& ov);

}  // namespace mfdbsde::app
