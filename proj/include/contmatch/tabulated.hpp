#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "contmatch/families.hpp"

namespace contmatch {

// On-disk tabulated family:
//   {name, param_dim, ambient_dim, subspace_dim, complex, theta_grid, bases}
// Each entry of `bases` is one N x K matrix flattened column-major. Complex
// files store interleaved (re, im) pairs, so each entry has 2 N K numbers.
struct TabulatedFile {
  std::string name;
  std::size_t param_dim = 1;
  std::size_t ambient_dim = 0;
  std::size_t subspace_dim = 1;
  bool complex = false;
  std::vector<Param> theta_grid;
  std::vector<std::vector<double>> bases;
};

nlohmann::json to_json(const TabulatedFile& file);
TabulatedFile parse_tabulated_file(const nlohmann::json& doc);

// Discrete family: one orthonormalized basis per grid point. Complex inputs
// go through real_embedding first, so N and K double.
struct TabulatedFamily {
  std::string name;
  bool complex_origin = false;
  std::vector<Param> theta_grid;
  std::vector<OrthoBasis> bases;

  SubspaceFamily family() const;
};

// Throws FormatError on malformed input, inconsistent dimensions or a
// rank-deficient basis.
TabulatedFamily build_tabulated(const TabulatedFile& file);
TabulatedFamily load_tabulated(const std::filesystem::path& path);

}  // namespace contmatch
