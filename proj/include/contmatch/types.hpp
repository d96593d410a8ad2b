#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace contmatch {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A point in parameter space (length D).
using Param = std::vector<double>;

// Axis-aligned compact parameter set.
struct ParamBox {
  std::vector<double> lower;
  std::vector<double> upper;

  ParamBox() = default;
  ParamBox(std::vector<double> lo, std::vector<double> hi);

  std::size_t dim() const { return lower.size(); }
  bool contains(const Param& theta, double slack = 1e-12) const;
  Param center() const;
  Param clamp(Param theta) const;
};

// Lexicographic order on parameter vectors; used for deterministic tie-breaks.
bool lex_less(const Param& a, const Param& b);

}  // namespace contmatch
