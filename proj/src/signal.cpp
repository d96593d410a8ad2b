#include "contmatch/signal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <unsupported/Eigen/FFT>

#include "contmatch/errors.hpp"

namespace contmatch {

SampleGrid::SampleGrid(double t_start_, double spacing_, std::size_t count_)
    : t_start(t_start_), spacing(spacing_), count(count_) {
  if (!std::isfinite(t_start) || !std::isfinite(spacing) || !(spacing > 0.0)) {
    throw PreconditionError("sample grid: spacing must be finite and positive");
  }
  if (count < 2) throw PreconditionError("sample grid: need at least 2 samples");
  if (!std::isfinite(t_end())) throw PreconditionError("sample grid: end time is not finite");
}

SampleGrid SampleGrid::over(double t0, double t1, std::size_t count) {
  if (!(t1 > t0)) throw PreconditionError("sample grid: need t1 > t0");
  if (count < 2) throw PreconditionError("sample grid: need at least 2 samples");
  return SampleGrid(t0, (t1 - t0) / static_cast<double>(count), count);
}

SampledSignal::SampledSignal(SampleGrid grid, Vector values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != grid_.count) {
    throw PreconditionError(fmt::format("sampled signal: {} values for a grid of {} samples",
                                        values_.size(), grid_.count));
  }
  if (!values_.allFinite()) throw PreconditionError("sampled signal: non-finite sample");
}

SampledSignal SampledSignal::scaled(double factor) const {
  return SampledSignal(grid_, values_ * factor);
}

Vector SampledSignal::l2_scaled() const { return values_ * std::sqrt(grid_.spacing); }

Waveform::Waveform(Fn value, double support_lo, double support_hi, Fn primitive)
    : value_(std::move(value)),
      support_lo_(support_lo),
      support_hi_(support_hi),
      primitive_(std::move(primitive)) {
  if (!value_) throw PreconditionError("waveform: empty value function");
  if (!(support_lo_ < support_hi_)) throw PreconditionError("waveform: empty support");
}

bool Waveform::compact() const { return std::isfinite(support_lo_) && std::isfinite(support_hi_); }

double Waveform::sample_at(double t, double width) const {
  if (primitive_) return (primitive_(t + 0.5 * width) - primitive_(t - 0.5 * width)) / width;
  if (t < support_lo_ || t > support_hi_) return 0.0;
  return value_(t);
}

namespace {

// Index range [first, last) of samples whose cells can touch the shifted
// support; the whole grid when the support is unbounded.
std::pair<long long, long long> touched_range(const Waveform& w, const SampleGrid& grid,
                                              double shift) {
  const auto n = static_cast<long long>(grid.count);
  if (!w.compact()) return {0, n};
  const double lo = (w.support_lo() + shift - grid.t_start) / grid.spacing;
  const double hi = (w.support_hi() + shift - grid.t_start) / grid.spacing;
  const auto first = static_cast<long long>(std::floor(lo)) - 1;
  const auto last = static_cast<long long>(std::ceil(hi)) + 2;
  return {first, last};
}

double sample_energy(const Waveform& w, const SampleGrid& grid, double shift, long long first,
                     long long last) {
  double e = 0.0;
  for (long long n = first; n < last; ++n) {
    const double t = grid.t_start + static_cast<double>(n) * grid.spacing;
    const double v = w.sample_at(t - shift, grid.spacing);
    e += v * v;
  }
  return e;
}

}  // namespace

SampledSignal sample(const Waveform& w, const SampleGrid& grid, double shift) {
  Vector values = Vector::Zero(static_cast<Eigen::Index>(grid.count));
  auto [first, last] = touched_range(w, grid, shift);
  first = std::max(first, 0LL);
  last = std::min(last, static_cast<long long>(grid.count));
  for (long long n = first; n < last; ++n) {
    values[n] = w.sample_at(grid.time(static_cast<std::size_t>(n)) - shift, grid.spacing);
  }
  return SampledSignal(grid, std::move(values));
}

double captured_energy_fraction(const Waveform& w, const SampleGrid& grid, double shift) {
  const auto n = static_cast<long long>(grid.count);
  long long first = -n;
  long long last = 2 * n;
  if (w.compact()) {
    const auto range = touched_range(w, grid, shift);
    first = std::min(range.first, 0LL);
    last = std::max(range.second, n);
  }
  const double total = sample_energy(w, grid, shift, first, last);
  if (total <= 0.0) return 1.0;
  const double inside = sample_energy(w, grid, shift, 0, n);
  return inside / total;
}

void require_on_grid(const Waveform& w, const SampleGrid& grid, double shift,
                     std::string_view what) {
  const double captured = captured_energy_fraction(w, grid, shift);
  if (1.0 - captured > kLeakageFraction) {
    throw LeakageError(fmt::format(
        "{}: shift {} leaves {:.3g}% of the energy outside the grid [{}, {})", what, shift,
        100.0 * (1.0 - captured), grid.t_start, grid.t_end()));
  }
}

double edge_energy_fraction(const SampledSignal& s) {
  const Vector& v = s.values();
  const double total = v.squaredNorm();
  if (total == 0.0) return 0.0;
  const auto n = v.size();
  const Eigen::Index edge = std::max<Eigen::Index>(1, n / 100);
  const double edges = v.head(edge).squaredNorm() + v.tail(edge).squaredNorm();
  return edges / total;
}

double energy(const Vector& v) { return v.squaredNorm(); }
double energy(const SampledSignal& s) { return energy(s.values()); }

double sobolev_norm(const SampledSignal& s) {
  const double edge = edge_energy_fraction(s);
  if (edge > kLeakageFraction) {
    throw LeakageError(fmt::format(
        "sobolev_norm: {:.3g}% of the energy sits at the window edges", 100.0 * edge));
  }
  const auto n = static_cast<std::size_t>(s.size());
  const double d = s.grid().spacing;
  std::vector<double> in(s.values().data(), s.values().data() + n);
  std::vector<std::complex<double>> out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);

  const double dxi = 2.0 * std::numbers::pi / (static_cast<double>(n) * d);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double f = (2 * k <= n) ? static_cast<double>(k)
                                  : static_cast<double>(k) - static_cast<double>(n);
    const double xi = f * dxi;
    const double vhat_sq = std::norm(out[k]) * d * d;
    acc += xi * xi * vhat_sq;
  }
  return std::sqrt(acc * dxi / (2.0 * std::numbers::pi));
}

double total_variation(const SampledSignal& s) {
  const Vector& v = s.values();
  double tv = 0.0;
  for (Eigen::Index i = 0; i + 1 < v.size(); ++i) tv += std::abs(v[i + 1] - v[i]);
  return tv;
}

SampledSignal shift(const SampledSignal& s, double theta) {
  if (!std::isfinite(theta)) throw PreconditionError("shift: non-finite shift");
  if (theta == 0.0) return s;
  const std::size_t n = s.size();
  const std::size_t padded = 2 * n;
  const double d = s.grid().spacing;
  const double total = s.values().squaredNorm();
  if (std::abs(theta) >= static_cast<double>(n) * d) {
    if (total > 0.0) throw LeakageError("shift: displacement exceeds the window length");
    return s;
  }

  std::vector<double> in(padded, 0.0);
  std::copy(s.values().data(), s.values().data() + n, in.begin());
  std::vector<std::complex<double>> spec;
  Eigen::FFT<double> fft;
  fft.fwd(spec, in);

  const double dxi = 2.0 * std::numbers::pi / (static_cast<double>(padded) * d);
  for (std::size_t k = 0; k < padded; ++k) {
    if (2 * k == padded) {
      // Nyquist bin must stay real.
      spec[k] *= std::cos(static_cast<double>(k) * dxi * theta);
      continue;
    }
    const double f = (2 * k < padded) ? static_cast<double>(k)
                                      : static_cast<double>(k) - static_cast<double>(padded);
    spec[k] *= std::polar(1.0, -f * dxi * theta);
  }
  std::vector<double> back;
  fft.inv(back, spec);

  Vector out(static_cast<Eigen::Index>(n));
  double outside = 0.0;
  for (std::size_t i = 0; i < padded; ++i) {
    if (i < n) {
      out[static_cast<Eigen::Index>(i)] = back[i];
    } else {
      outside += back[i] * back[i];
    }
  }
  if (total > 0.0 && outside / total > kLeakageFraction) {
    throw LeakageError(fmt::format("shift: {:.3g}% of the energy leaves the window",
                                   100.0 * outside / total));
  }
  return SampledSignal(s.grid(), std::move(out));
}

}  // namespace contmatch
