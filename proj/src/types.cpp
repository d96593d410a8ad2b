#include "contmatch/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "contmatch/errors.hpp"

namespace contmatch {

ParamBox::ParamBox(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.empty() || lower.size() != upper.size()) {
    throw PreconditionError("parameter box: lower and upper must be non-empty and equal length");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(lower[i] < upper[i])) {
      throw PreconditionError("parameter box: need finite lower < upper in dimension " +
                              std::to_string(i));
    }
  }
}

bool ParamBox::contains(const Param& theta, double slack) const {
  if (theta.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    const double pad = slack * std::max(1.0, upper[i] - lower[i]);
    if (theta[i] < lower[i] - pad || theta[i] > upper[i] + pad) return false;
  }
  return true;
}

Param ParamBox::center() const {
  Param c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = 0.5 * (lower[i] + upper[i]);
  return c;
}

Param ParamBox::clamp(Param theta) const {
  for (std::size_t i = 0; i < dim() && i < theta.size(); ++i) {
    theta[i] = std::clamp(theta[i], lower[i], upper[i]);
  }
  return theta;
}

bool lex_less(const Param& a, const Param& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace contmatch
