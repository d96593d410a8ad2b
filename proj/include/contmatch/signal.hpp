#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string_view>

#include "contmatch/types.hpp"

namespace contmatch {

// Fraction of signal energy allowed to fall outside (or at the edge of) the
// observation window before an operation refuses to continue.
inline constexpr double kLeakageFraction = 0.01;

// Uniform time grid t_n = t_start + n * spacing, n = 0 .. count-1.
struct SampleGrid {
  double t_start = 0.0;
  double spacing = 1.0;
  std::size_t count = 2;

  SampleGrid() = default;
  SampleGrid(double t_start, double spacing, std::size_t count);

  // count samples on [t0, t1) so that t1 = t0 + count * spacing.
  static SampleGrid over(double t0, double t1, std::size_t count);

  double time(std::size_t n) const { return t_start + static_cast<double>(n) * spacing; }
  double t_end() const { return time(count); }

  friend bool operator==(const SampleGrid&, const SampleGrid&) = default;
};

class SampledSignal {
 public:
  SampledSignal(SampleGrid grid, Vector values);

  const SampleGrid& grid() const { return grid_; }
  const Vector& values() const { return values_; }
  std::size_t size() const { return grid_.count; }

  SampledSignal scaled(double factor) const;

  // values * sqrt(spacing): Euclidean norms of this vector approximate
  // L2(R) norms of the underlying continuous-time signal.
  Vector l2_scaled() const;

 private:
  SampleGrid grid_;
  Vector values_;
};

// Continuous-time signal v(t), optionally with compact support and an
// antiderivative. When the antiderivative is present, sampling takes cell
// averages over [t_n - d/2, t_n + d/2] (projection onto piecewise-constant
// cells) instead of point values; discontinuous pulses need this so that
// their sampled shifts vary continuously with the shift.
class Waveform {
 public:
  using Fn = std::function<double(double)>;

  explicit Waveform(Fn value,
                    double support_lo = -std::numeric_limits<double>::infinity(),
                    double support_hi = std::numeric_limits<double>::infinity(),
                    Fn primitive = {});

  double operator()(double t) const { return value_(t); }
  double support_lo() const { return support_lo_; }
  double support_hi() const { return support_hi_; }
  bool compact() const;
  bool cell_averaged() const { return static_cast<bool>(primitive_); }

  // Sample value assigned to a cell of the given width centred at t.
  double sample_at(double t, double width) const;

 private:
  Fn value_;
  double support_lo_;
  double support_hi_;
  Fn primitive_;
};

// Samples of v(t - shift) on the grid (analytic re-evaluation).
SampledSignal sample(const Waveform& w, const SampleGrid& grid, double shift = 0.0);

// Share of the energy of v(t - shift) that lands on the grid, measured
// against the same sampling extended well beyond both grid ends.
double captured_energy_fraction(const Waveform& w, const SampleGrid& grid, double shift);

// Throws LeakageError when more than kLeakageFraction of the energy of
// v(t - shift) falls outside the grid.
void require_on_grid(const Waveform& w, const SampleGrid& grid, double shift,
                     std::string_view what);

// Share of the energy sitting in the outermost 1% of samples at each end.
double edge_energy_fraction(const SampledSignal& s);

// Sum of squared samples (plain Euclidean convention).
double energy(const SampledSignal& s);
double energy(const Vector& v);

// (1/2pi * integral xi^2 |v^(xi)|^2 dxi)^(1/2), approximated with a
// spacing-weighted DFT. Rejects signals that are not settled at the window
// edges (edge_energy_fraction > kLeakageFraction).
double sobolev_norm(const SampledSignal& s);

// Sum of absolute first differences.
double total_variation(const SampledSignal& s);

// Band-limited (zero-padded Fourier) interpolation of s(t - theta) for
// tabulated signals. Analytic signals should be re-sampled with sample()
// instead. Throws LeakageError when the shift moves more than
// kLeakageFraction of the energy outside the grid.
SampledSignal shift(const SampledSignal& s, double theta);

}  // namespace contmatch
