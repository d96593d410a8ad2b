#include "contmatch/tabulated.hpp"

#include <fstream>

#include <fmt/core.h>

#include "contmatch/errors.hpp"

namespace contmatch {

nlohmann::json to_json(const TabulatedFile& file) {
  nlohmann::json doc;
  doc["name"] = file.name;
  doc["param_dim"] = file.param_dim;
  doc["ambient_dim"] = file.ambient_dim;
  doc["subspace_dim"] = file.subspace_dim;
  doc["complex"] = file.complex;
  doc["theta_grid"] = file.theta_grid;
  doc["bases"] = file.bases;
  return doc;
}

TabulatedFile parse_tabulated_file(const nlohmann::json& doc) {
  TabulatedFile file;
  try {
    if (!doc.is_object()) throw FormatError("tabulated family: top level must be an object");
    file.name = doc.value("name", std::string{"tabulated"});
    file.param_dim = doc.at("param_dim").get<std::size_t>();
    file.ambient_dim = doc.at("ambient_dim").get<std::size_t>();
    file.subspace_dim = doc.at("subspace_dim").get<std::size_t>();
    file.complex = doc.at("complex").get<bool>();
    file.theta_grid = doc.at("theta_grid").get<std::vector<Param>>();
    file.bases = doc.at("bases").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(fmt::format("tabulated family: {}", e.what()));
  }
  return file;
}

TabulatedFamily build_tabulated(const TabulatedFile& file) {
  const std::size_t n = file.ambient_dim;
  const std::size_t k = file.subspace_dim;
  if (file.param_dim == 0 || n == 0 || k == 0) {
    throw FormatError("tabulated family: dimensions must be positive");
  }
  if (k > n) throw FormatError("tabulated family: subspace_dim exceeds ambient_dim");
  if (file.theta_grid.empty()) throw FormatError("tabulated family: empty theta_grid");
  if (file.theta_grid.size() != file.bases.size()) {
    throw FormatError(fmt::format("tabulated family: {} grid points but {} bases",
                                  file.theta_grid.size(), file.bases.size()));
  }
  const std::size_t per_basis = (file.complex ? 2 : 1) * n * k;

  TabulatedFamily out;
  out.name = file.name;
  out.complex_origin = file.complex;
  out.theta_grid = file.theta_grid;
  out.bases.reserve(file.bases.size());
  for (std::size_t i = 0; i < file.bases.size(); ++i) {
    if (file.theta_grid[i].size() != file.param_dim) {
      throw FormatError(fmt::format("tabulated family: grid point {} has dimension {}, expected {}",
                                    i, file.theta_grid[i].size(), file.param_dim));
    }
    const auto& flat = file.bases[i];
    if (flat.size() != per_basis) {
      throw FormatError(fmt::format("tabulated family: basis {} has {} numbers, expected {}", i,
                                    flat.size(), per_basis));
    }
    const auto rows = static_cast<Eigen::Index>(n);
    const auto cols = static_cast<Eigen::Index>(k);
    Matrix real;
    if (file.complex) {
      ComplexMatrix g(rows, cols);
      for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
          const auto at = 2 * static_cast<std::size_t>(c * rows + r);
          g(r, c) = {flat[at], flat[at + 1]};
        }
      }
      real = real_embedding(g);
    } else {
      real = Eigen::Map<const Matrix>(flat.data(), rows, cols);
    }
    try {
      out.bases.push_back(orthonormalize(real, file.theta_grid[i]));
    } catch (const PreconditionError& e) {
      throw FormatError(fmt::format("tabulated family: basis {}: {}", i, e.what()));
    } catch (const RankDeficientError& e) {
      throw FormatError(fmt::format("tabulated family: basis {}: {}", i, e.what()));
    }
  }
  return out;
}

TabulatedFamily load_tabulated(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(fmt::format("tabulated family: cannot open '{}'", path.string()));
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(fmt::format("tabulated family: '{}': {}", path.string(), e.what()));
  }
  return build_tabulated(parse_tabulated_file(doc));
}

SubspaceFamily TabulatedFamily::family() const {
  FamilyParams params;
  params.kind = FamilyKind::tabulated;
  params.name = name;
  params.complex_origin = complex_origin;
  return SubspaceFamily(std::move(params), theta_grid, bases);
}

}  // namespace contmatch
