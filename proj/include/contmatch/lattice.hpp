#pragma once

#include <cstddef>
#include <vector>

#include "contmatch/types.hpp"

namespace contmatch {

// Finite set of parameter points. Regular lattices span a box with
// shape[d] points per dimension (endpoints included), stored row-major with
// dimension 0 slowest, which is also lexicographic order. Explicit
// lattices hold an arbitrary point list (shape empty).
class Lattice {
 public:
  static Lattice regular(const ParamBox& box, std::vector<std::size_t> shape);
  static Lattice from_points(std::vector<Param> points);

  bool is_regular() const { return !shape_.empty(); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  const ParamBox& box() const { return box_; }
  const std::vector<Param>& points() const { return points_; }
  const Param& operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return points_.empty() ? 0 : points_.front().size(); }

  // Spacing along dimension d of a regular lattice (0 when shape[d] == 1).
  double step(std::size_t d) const;
  std::vector<std::size_t> multi_index(std::size_t flat) const;

 private:
  std::vector<std::size_t> shape_;
  ParamBox box_;
  std::vector<Param> points_;
};

// Index of the smallest value; ties go to the lexicographically smallest
// point. Independent of evaluation order.
std::size_t lattice_argmin(const Lattice& lattice, const std::vector<double>& values);

}  // namespace contmatch
