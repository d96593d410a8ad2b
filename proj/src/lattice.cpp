#include "contmatch/lattice.hpp"

#include <fmt/core.h>

#include "contmatch/errors.hpp"

namespace contmatch {

Lattice Lattice::regular(const ParamBox& box, std::vector<std::size_t> shape) {
  if (shape.size() != box.dim()) {
    throw PreconditionError(fmt::format("lattice: {} counts for a {}-dimensional box",
                                        shape.size(), box.dim()));
  }
  std::size_t total = 1;
  for (std::size_t n : shape) {
    if (n == 0) throw PreconditionError("lattice: every dimension needs at least one point");
    total *= n;
  }
  Lattice out;
  out.shape_ = std::move(shape);
  out.box_ = box;
  out.points_.reserve(total);
  const std::size_t d = box.dim();
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Param p(d);
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t n = out.shape_[j];
      if (n == 1) {
        p[j] = box.lower[j];
      } else if (idx[j] + 1 == n) {
        p[j] = box.upper[j];
      } else {
        p[j] = box.lower[j] + static_cast<double>(idx[j]) * (box.upper[j] - box.lower[j]) /
                                  static_cast<double>(n - 1);
      }
    }
    out.points_.push_back(std::move(p));
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < out.shape_[j]) break;
      idx[j] = 0;
    }
  }
  return out;
}

Lattice Lattice::from_points(std::vector<Param> points) {
  if (points.empty()) throw PreconditionError("lattice: empty point list");
  const std::size_t d = points.front().size();
  for (const Param& p : points) {
    if (p.size() != d) throw PreconditionError("lattice: ragged point list");
  }
  Lattice out;
  out.points_ = std::move(points);
  return out;
}

double Lattice::step(std::size_t d) const {
  if (!is_regular()) throw PreconditionError("lattice: step() needs a regular lattice");
  if (shape_.at(d) < 2) return 0.0;
  return (box_.upper[d] - box_.lower[d]) / static_cast<double>(shape_[d] - 1);
}

std::vector<std::size_t> Lattice::multi_index(std::size_t flat) const {
  if (!is_regular()) throw PreconditionError("lattice: multi_index() needs a regular lattice");
  std::vector<std::size_t> idx(shape_.size());
  for (std::size_t j = shape_.size(); j-- > 0;) {
    idx[j] = flat % shape_[j];
    flat /= shape_[j];
  }
  return idx;
}

std::size_t lattice_argmin(const Lattice& lattice, const std::vector<double>& values) {
  if (values.size() != lattice.size() || values.empty()) {
    throw PreconditionError("lattice_argmin: value count does not match the lattice");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best] ||
        (values[i] == values[best] && lex_less(lattice[i], lattice[best]))) {
      best = i;
    }
  }
  return best;
}

}  // namespace contmatch
