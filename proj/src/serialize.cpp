#include "contmatch/serialize.hpp"

#include <sstream>

#include <fmt/core.h>

#include "contmatch/errors.hpp"

namespace contmatch {

using nlohmann::json;

namespace {

json optional_seed(const std::optional<std::uint64_t>& seed) {
  return seed ? json(*seed) : json(nullptr);
}

std::string theta_header(std::size_t dims) {
  std::string h;
  for (std::size_t d = 0; d < dims; ++d) h += fmt::format("theta{},", d + 1);
  return h;
}

}  // namespace

std::string csv_number(double x) { return fmt::format("{:.9g}", x); }

std::string to_string(ObjectiveKind kind) {
  return kind == ObjectiveKind::direct ? "direct" : "compressed";
}

std::string signal_csv(const SampledSignal& s) {
  std::string out = "t,value\n";
  for (std::size_t n = 0; n < s.size(); ++n) {
    out += csv_number(s.grid().time(n)) + "," + csv_number(s.values()(n)) + "\n";
  }
  return out;
}

json signal_json(const SampledSignal& s) {
  return {{"t_start", s.grid().t_start},
          {"spacing", s.grid().spacing},
          {"count", s.grid().count},
          {"values", std::vector<double>(s.values().begin(), s.values().end())}};
}

SampledSignal signal_from_json(const json& doc) {
  try {
    const auto values = doc.at("values").get<std::vector<double>>();
    const SampleGrid grid(doc.at("t_start").get<double>(), doc.at("spacing").get<double>(),
                          doc.at("count").get<std::size_t>());
    if (values.size() != grid.count) {
      throw FormatError(fmt::format("signal json: {} values for count {}", values.size(), grid.count));
    }
    return SampledSignal(grid, Eigen::Map<const Vector>(values.data(), values.size()));
  } catch (const json::exception& e) {
    throw FormatError(fmt::format("signal json: {}", e.what()));
  }
}

SampledSignal read_signal_csv(std::istream& in) {
  std::vector<double> t, v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b)) {
      throw FormatError(fmt::format("signal csv: malformed row '{}'", line));
    }
    try {
      std::size_t used_a = 0, used_b = 0;
      const double ta = std::stod(a, &used_a);
      const double vb = std::stod(b, &used_b);
      t.push_back(ta);
      v.push_back(vb);
    } catch (const std::exception&) {
      if (t.empty()) continue;  // header
      throw FormatError(fmt::format("signal csv: malformed row '{}'", line));
    }
  }
  if (t.size() < 2) throw FormatError("signal csv: need at least two samples");
  const double spacing = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  if (!(spacing > 0.0)) throw FormatError("signal csv: time stamps must increase");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs(t[i] - t.front() - spacing * static_cast<double>(i)) > 1e-6 * spacing) {
      throw FormatError("signal csv: time stamps are not uniformly spaced");
    }
  }
  return SampledSignal(SampleGrid(t.front(), spacing, t.size()),
                       Eigen::Map<const Vector>(v.data(), v.size()));
}

std::string surface_csv(const EnergySurface& s) {
  std::string out = theta_header(s.lattice.dim()) + "objective\n";
  for (std::size_t i = 0; i < s.lattice.size(); ++i) {
    for (double x : s.lattice[i]) out += csv_number(x) + ",";
    out += csv_number(s.values[i]) + "\n";
  }
  return out;
}

json surface_json(const EnergySurface& s) {
  json j = {{"kind", to_string(s.kind)},
            {"lattice", describe(s.lattice)},
            {"argmin", s.argmin},
            {"argmin_theta", s.lattice.size() ? s.lattice[s.argmin] : Param{}},
            {"theta", s.lattice.points()},
            {"objective", s.values}};
  if (s.lattice.is_regular()) j["shape"] = s.lattice.shape();
  return j;
}

json match_json(const MatchResult& r) {
  json j = {{"kind", to_string(r.kind)},
            {"theta_star", r.theta_star},
            {"objective", r.objective},
            {"relative_error_sq", r.relative_error_sq},
            {"input_norm", r.input_norm},
            {"lattice_index", r.lattice_index},
            {"lattice_theta", r.lattice_theta},
            {"round_objectives", r.round_objectives}};
  return j;
}

std::string regularity_csv(const RegularityReport& r) {
  std::string out = "epsilon,count\n";
  for (std::size_t i = 0; i < r.epsilons.size(); ++i) {
    out += csv_number(r.epsilons[i]) + "," + std::to_string(r.counts[i]) + "\n";
  }
  return out;
}

json regularity_json(const RegularityReport& r) {
  return {{"epsilons", r.epsilons},
          {"counts", r.counts},
          {"fitted_N0", r.fitted_n0},
          {"fitted_alpha", r.fitted_alpha},
          {"delta", r.delta}};
}

json analytic_json(const AnalyticRegularity& a) {
  json j = {{"N0", a.n0},
            {"alpha", a.alpha},
            {"delta", a.delta},
            {"scale_term", a.scale_term},
            {"additive", a.additive}};
  j["printed_additive"] = a.printed_additive ? json(*a.printed_additive) : json(nullptr);
  if (!a.note.empty()) j["note"] = a.note;
  return j;
}

json holder_json(const HolderFit& f) {
  return {{"dimension", f.dimension},
          {"beta", f.beta},
          {"rho", f.rho},
          {"pairs", f.pairs},
          {"min_slack", f.min_slack},
          {"median_tightness", f.median_tightness}};
}

json condition_json(const ConditionEstimate& e, bool with_values) {
  json j = {{"sup_value", e.sup_value},
            {"argmax_theta", e.argmax_theta},
            {"argmax_index", e.argmax_index},
            {"lattice", e.lattice},
            {"seed", optional_seed(e.seed)}};
  if (with_values) j["values"] = e.values;
  return j;
}

json gap_report_json(const GapBoundReport& r) {
  return {{"seed", optional_seed(r.seed)},
          {"delta1", r.delta1},
          {"delta2", r.delta2},
          {"bound", r.bound ? json(*r.bound) : json(nullptr)},
          {"measured_sup", r.measured_sup},
          {"sup_theta", r.sup_theta},
          {"vacuous", r.vacuous},
          {"holds", r.holds}};
}

json scaling_row_json(const ScalingRow& r) {
  json trials = json::array();
  for (const auto& o : r.outcomes) {
    trials.push_back({{"seed", o.seed},
                      {"gap", o.gap},
                      {"sup_gap", o.sup_gap},
                      {"compressed_index", o.compressed_index}});
  }
  return {{"M", r.m},
          {"trials", r.trials},
          {"median_gap", r.median_gap},
          {"median_sup_gap", r.median_sup_gap},
          {"q10", r.q10},
          {"q90", r.q90},
          {"direct_index", r.direct_index},
          {"direct_theta", r.direct_theta},
          {"outcomes", trials}};
}

json family_params_json(const FamilyParams& p) {
  return {{"kind", std::string(to_string(p.kind))},
          {"sigma", p.sigma},
          {"shift_range", p.shift_range},
          {"omega_range", p.omega_range},
          {"subspace_dim", p.subspace_dim},
          {"name", p.name},
          {"complex_origin", p.complex_origin}};
}

}  // namespace contmatch
