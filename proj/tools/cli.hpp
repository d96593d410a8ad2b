#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace contmatch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// Everything needed to reproduce a run. Serialized into every output
// (threads excluded: it never changes results).
struct RunConfig {
  std::string command;
  std::string family;
  std::optional<double> sigma;
  std::vector<double> range;
  std::vector<double> omega_range;
  std::optional<int> k;
  std::string tabulated;
  std::vector<double> grid;  // t0, t1, N
  std::string signal;
  std::optional<std::size_t> m;
  std::vector<std::size_t> m_list;
  std::uint64_t seed = 1;
  std::size_t trials = 1;
  std::vector<std::size_t> lattice;
  int refine = 2;
  std::vector<double> epsilon_list;
  std::size_t pairs = 200;
  std::optional<double> max_separation;
  std::string out;
  std::string format = "csv";
  int threads = 0;
};

nlohmann::json to_json(const RunConfig& c);

// Parses argv-style arguments (without the program name). Throws
// PreconditionError on invalid input.
RunConfig parse_args(const std::vector<std::string>& args);

// Runs one command, writing to --out or to `out`. Returns the exit code;
// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace contmatch::cli
