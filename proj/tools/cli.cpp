#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "contmatch/errors.hpp"
#include "contmatch/families.hpp"
#include "contmatch/geometry.hpp"
#include "contmatch/matching.hpp"
#include "contmatch/parallel.hpp"
#include "contmatch/serialize.hpp"
#include "contmatch/sketch.hpp"
#include "contmatch/tabulated.hpp"
#include "contmatch/verify.hpp"

namespace contmatch::cli {

using nlohmann::json;

namespace {

struct HelpRequested {
  std::string text;
};

const std::vector<std::string> kCommands = {"surface", "match",   "cover", "holder",
                                            "verify",  "scaling", "embed"};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& s, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw PreconditionError(fmt::format("{}: '{}' is not a number", flag, s));
  }
}

std::size_t parse_count(const std::string& s, const std::string& flag) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size() || v < 0) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw PreconditionError(fmt::format("{}: '{}' is not a non-negative integer", flag, s));
  }
}

std::vector<double> parse_reals(const std::string& s, const std::string& flag, std::size_t expect = 0) {
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(parse_double(p, flag));
  if (expect && out.size() != expect) {
    throw PreconditionError(fmt::format("{}: expected {} comma-separated values", flag, expect));
  }
  return out;
}

std::vector<std::size_t> parse_counts(const std::string& s, const std::string& flag, char sep) {
  std::vector<std::size_t> out;
  for (const auto& p : split(s, sep)) out.push_back(parse_count(p, flag));
  if (out.empty()) throw PreconditionError(fmt::format("{}: empty list", flag));
  return out;
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag, const std::string& family) {
  if (!v) throw PreconditionError(fmt::format("missing {} (required by family '{}')", flag, family));
  return *v;
}

void need_range(const std::vector<double>& v, const char* flag, const std::string& family) {
  if (v.empty()) throw PreconditionError(fmt::format("missing {} (required by family '{}')", flag, family));
}

// Padding around the shift range so every member fits on the default grid.
double grid_margin(FamilyKind kind, double sigma) {
  switch (kind) {
    case FamilyKind::gaussian_pulse:
    case FamilyKind::gabor:
      return 10.0 * sigma;
    case FamilyKind::square_pulse:
      return sigma;
    case FamilyKind::lot:
      return 2.0 * sigma;
    default:
      return 0.0;
  }
}

SubspaceFamily build_family(const RunConfig& c) {
  if (c.family.empty()) throw PreconditionError("missing --family");
  const FamilyKind kind = parse_family_kind(c.family);
  if (kind == FamilyKind::tabulated) {
    if (c.tabulated.empty()) throw PreconditionError("missing --tabulated (required by family 'tabulated')");
    return load_tabulated(c.tabulated).family();
  }
  const double sigma = need(c.sigma, "--sigma", c.family);
  need_range(c.range, "--range", c.family);
  if (kind == FamilyKind::gabor) need_range(c.omega_range, "--omega-range", c.family);
  if (kind == FamilyKind::lot) need(c.k, "--k", c.family);

  SampleGrid grid;
  if (!c.grid.empty()) {
    if (c.grid[2] < 2 || c.grid[2] != std::floor(c.grid[2])) {
      throw PreconditionError("--grid: sample count must be an integer >= 2");
    }
    grid = SampleGrid::over(c.grid[0], c.grid[1], static_cast<std::size_t>(c.grid[2]));
  } else {
    const double pad = grid_margin(kind, sigma);
    grid = SampleGrid::over(c.range[0] - pad, c.range[1] + pad, 2048);
  }
  switch (kind) {
    case FamilyKind::gaussian_pulse:
      return gaussian_pulse_family(sigma, c.range[0], c.range[1], grid);
    case FamilyKind::square_pulse:
      return square_pulse_family(sigma, c.range[0], c.range[1], grid);
    case FamilyKind::gabor:
      return gabor_family(sigma, c.range[0], c.range[1], c.omega_range[0], c.omega_range[1], grid);
    case FamilyKind::lot:
      return lot_family(sigma, *c.k, c.range[0], c.range[1], grid);
    default:
      throw PreconditionError("unsupported family");
  }
}

Vector member_signal(const SubspaceFamily& f, const Param& theta) {
  return f.basis(theta).matrix().rowwise().sum();
}

Vector build_signal(const RunConfig& c, const SubspaceFamily& f) {
  std::string spec = c.signal;
  if (spec.empty()) {
    spec = f.params().kind == FamilyKind::gabor ? "raised-cosine" : "member";
  }
  Vector h;
  if (spec == "member") {
    h = member_signal(f, f.discrete() ? f.points()[f.points().size() / 2] : f.domain().center());
  } else if (spec == "raised-cosine") {
    if (f.discrete()) throw PreconditionError("--signal raised-cosine needs a sampled family");
    h = sample(atoms::raised_cosine(5.0 / 128.0, 5.0, std::numbers::pi / 3.0), f.ambient_grid()).values();
  } else if (spec.rfind("atom:", 0) == 0) {
    const Param theta = parse_reals(spec.substr(5), "--signal atom", f.param_dim());
    if (!f.discrete() && !f.domain().contains(theta)) {
      throw PreconditionError("--signal atom: parameter outside the family domain");
    }
    h = member_signal(f, theta);
  } else if (spec.rfind("csv:", 0) == 0 || spec.rfind("json:", 0) == 0) {
    const bool is_csv = spec[0] == 'c';
    const std::string path = spec.substr(is_csv ? 4 : 5);
    std::ifstream in(path);
    if (!in) throw PreconditionError(fmt::format("--signal: cannot open '{}'", path));
    std::optional<SampledSignal> s;
    if (is_csv) {
      s = read_signal_csv(in);
    } else {
      json doc;
      try {
        in >> doc;
      } catch (const json::exception& e) {
        throw FormatError(fmt::format("--signal: {}", e.what()));
      }
      s = signal_from_json(doc);
    }
    h = s->values();
  } else {
    throw PreconditionError(fmt::format("--signal: unknown signal '{}'", spec));
  }
  if (h.size() != f.ambient_dim()) {
    throw PreconditionError(fmt::format("signal has {} samples, family ambient dimension is {}",
                                        h.size(), f.ambient_dim()));
  }
  if (!(h.norm() > 0.0)) throw PreconditionError("signal is identically zero");
  return h / h.norm();
}

Lattice build_lattice(const RunConfig& c, const SubspaceFamily& f, std::size_t fallback) {
  if (f.discrete()) return Lattice::from_points(f.points());
  std::vector<std::size_t> shape = c.lattice;
  if (shape.empty()) shape.assign(f.param_dim(), fallback);
  if (shape.size() != f.param_dim()) {
    throw PreconditionError(fmt::format("--lattice: {} sizes for a {}-parameter family", shape.size(),
                                        f.param_dim()));
  }
  for (std::size_t n : shape) {
    if (n < 1) throw PreconditionError("--lattice: sizes must be >= 1");
  }
  return Lattice::regular(f.domain(), shape);
}

std::size_t need_m(const RunConfig& c, const SubspaceFamily& f) {
  if (!c.m) throw PreconditionError(fmt::format("missing --m (required by command '{}')", c.command));
  if (*c.m < static_cast<std::size_t>(f.subspace_dim())) {
    throw PreconditionError(
        fmt::format("--m {} is below the subspace dimension K = {}", *c.m, f.subspace_dim()));
  }
  return *c.m;
}

json family_json(const SubspaceFamily& f) {
  json j = family_params_json(f.params());
  j["param_dim"] = f.param_dim();
  j["ambient_dim"] = f.ambient_dim();
  j["domain"] = {{"lower", f.domain().lower}, {"upper", f.domain().upper}};
  if (!f.discrete()) {
    const auto& g = f.ambient_grid();
    j["grid"] = {{"t_start", g.t_start}, {"spacing", g.spacing}, {"count", g.count}};
  }
  return j;
}

// Output under construction: JSON result plus the CSV table and comments.
struct Output {
  json result = json::object();
  std::vector<std::string> notes;
  std::string table;
};

std::string optional_csv(const std::optional<double>& v) { return v ? csv_number(*v) : ""; }

void cmd_surface(const RunConfig& c, Output& o) {
  const SubspaceFamily f = build_family(c);
  const Vector h = build_signal(c, f);
  const Lattice lattice = build_lattice(c, f, 128);
  const EnergySurface direct = direct_surface(f, h, lattice);
  std::optional<EnergySurface> comp;
  if (c.m) {
    const GaussianSketch phi(need_m(c, f), static_cast<std::size_t>(f.ambient_dim()), c.seed);
    comp = compressed_surface(f, phi, apply(phi, h), lattice);
  }
  o.result["family"] = family_json(f);
  o.result["direct"] = surface_json(direct);
  o.notes.push_back(fmt::format("lattice: {}", describe(lattice)));
  o.notes.push_back(fmt::format("direct argmin: index {}", direct.argmin));
  std::string header;
  for (std::size_t d = 0; d < lattice.dim(); ++d) header += fmt::format("theta{},", d + 1);
  header += "direct";
  if (comp) {
    o.result["compressed"] = surface_json(*comp);
    o.result["compressed"]["seed"] = c.seed;
    o.notes.push_back(fmt::format("compressed argmin: index {}", comp->argmin));
    header += ",compressed";
  }
  o.table = header + "\n";
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    for (double x : lattice[i]) o.table += csv_number(x) + ",";
    o.table += csv_number(direct.values[i]);
    if (comp) o.table += "," + csv_number(comp->values[i]);
    o.table += "\n";
  }
}

void cmd_match(const RunConfig& c, Output& o) {
  const SubspaceFamily f = build_family(c);
  const Vector h = build_signal(c, f);
  SearchPlan plan = SearchPlan::uniform(f.param_dim(), 128, c.refine);
  if (!c.lattice.empty()) plan.grid_resolution = c.lattice;
  std::vector<MatchResult> results{match_direct(f, h, plan)};
  if (c.m) {
    const GaussianSketch phi(need_m(c, f), static_cast<std::size_t>(f.ambient_dim()), c.seed);
    results.push_back(match_compressed(f, phi, apply(phi, h), plan));
  }
  o.result["family"] = family_json(f);
  o.result["plan"] = {{"grid_resolution", plan.grid_resolution},
                      {"refinement_rounds", plan.refinement_rounds},
                      {"shrink_factor", plan.shrink_factor}};
  o.notes.push_back(fmt::format("base lattice: {}", describe(search_lattice(f, plan))));
  std::string header = "kind,";
  for (std::size_t d = 0; d < f.param_dim(); ++d) header += fmt::format("theta{},", d + 1);
  o.table = header + "objective,relative_error_sq,lattice_index\n";
  for (const auto& r : results) {
    o.result[to_string(r.kind)] = match_json(r);
    o.table += to_string(r.kind) + ",";
    for (double x : r.theta_star) o.table += csv_number(x) + ",";
    o.table += fmt::format("{},{},{}\n", csv_number(r.objective), csv_number(r.relative_error_sq),
                           r.lattice_index);
  }
  if (c.m) o.result["compressed"]["seed"] = c.seed;
}

void cmd_cover(const RunConfig& c, Output& o) {
  const SubspaceFamily f = build_family(c);
  const Lattice probe = build_lattice(c, f, f.param_dim() == 1 ? 512 : 128);
  std::vector<double> eps = c.epsilon_list;
  if (eps.empty()) eps = {0.5, 0.25, 0.125};
  const CoverTrace trace = greedy_cover(f, probe, eps);
  std::vector<std::size_t> counts;
  for (double e : eps) counts.push_back(trace.count_for(e));

  std::optional<AnalyticRegularity> analytic;
  if (!f.discrete()) analytic = analytic_regularity(f.params());
  o.result["family"] = family_json(f);
  o.result["probe_lattice"] = describe(probe);
  o.result["max_adjacent_distance"] = trace.max_adjacent_distance;
  o.result["centers"] = trace.centers;
  if (eps.size() >= 3) {
    const RegularityReport report = make_regularity_report(eps, counts);
    o.result["regularity"] = regularity_json(report);
    o.notes.push_back(fmt::format("fitted N0 {} alpha {} delta {}", csv_number(report.fitted_n0),
                                  csv_number(report.fitted_alpha), csv_number(report.delta)));
  } else {
    o.result["regularity"] = {{"epsilons", eps}, {"counts", counts}};
  }
  if (analytic) {
    o.result["analytic"] = analytic_json(*analytic);
    o.notes.push_back(fmt::format("analytic N0 {} alpha {} delta {}", csv_number(analytic->n0),
                                  csv_number(analytic->alpha), csv_number(analytic->delta)));
    if (!analytic->note.empty()) o.notes.push_back("note: " + analytic->note);
  }
  o.table = "epsilon,count,analytic_bound\n";
  json rows = json::array();
  for (std::size_t i = 0; i < eps.size(); ++i) {
    std::optional<double> bound;
    if (analytic) bound = analytic->bound(eps[i]);
    o.table += fmt::format("{},{},{}\n", csv_number(eps[i]), counts[i], optional_csv(bound));
    rows.push_back({{"epsilon", eps[i]},
                    {"count", counts[i]},
                    {"analytic_bound", bound ? json(*bound) : json(nullptr)}});
  }
  o.result["rows"] = rows;
}

void cmd_holder(const RunConfig& c, Output& o) {
  const SubspaceFamily f = build_family(c);
  double sep = 0.0;
  if (c.max_separation) {
    sep = *c.max_separation;
  } else {
    sep = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < f.param_dim(); ++d) {
      sep = std::min(sep, 0.01 * (f.domain().upper[d] - f.domain().lower[d]));
    }
  }
  const auto fits = holder_fit(f, c.pairs, sep, c.seed);
  o.result["family"] = family_json(f);
  o.result["max_separation"] = sep;
  o.result["fits"] = json::array();
  o.table = "dimension,beta,rho,pairs,min_slack,median_tightness\n";
  for (const auto& fit : fits) {
    o.result["fits"].push_back(holder_json(fit));
    o.table += fmt::format("{},{},{},{},{},{}\n", fit.dimension + 1, csv_number(fit.beta),
                           csv_number(fit.rho), fit.pairs, csv_number(fit.min_slack),
                           csv_number(fit.median_tightness));
  }
}

std::vector<GaussianSketch> trial_sketches(const RunConfig& c, const SubspaceFamily& f, std::size_t m) {
  if (c.trials < 1) throw PreconditionError("--trials must be >= 1");
  std::vector<GaussianSketch> out;
  for (std::size_t t = 0; t < c.trials; ++t) {
    out.emplace_back(m, static_cast<std::size_t>(f.ambient_dim()), trial_seed(c.seed, m, t));
  }
  return out;
}

void cmd_verify(const RunConfig& c, Output& o) {
  const SubspaceFamily f = build_family(c);
  const std::size_t m = need_m(c, f);
  const Vector h = build_signal(c, f);
  const Lattice lattice = build_lattice(c, f, 64);
  const auto reports = verify_gap_bounds(f, trial_sketches(c, f, m), h, lattice);
  o.result["family"] = family_json(f);
  o.result["lattice"] = describe(lattice);
  o.result["M"] = m;
  o.result["rows"] = json::array();
  o.table = "seed,delta1,delta2,bound,measured_sup,holds,vacuous\n";
  for (const auto& r : reports) {
    o.result["rows"].push_back(gap_report_json(r));
    o.table += fmt::format("{},{},{},{},{},{},{}\n", *r.seed, csv_number(r.delta1),
                           csv_number(r.delta2), optional_csv(r.bound), csv_number(r.measured_sup),
                           r.holds ? "true" : "false", r.vacuous ? "true" : "false");
  }
}

void cmd_scaling(const RunConfig& c, Output& o) {
  const SubspaceFamily f = build_family(c);
  if (c.m_list.empty()) throw PreconditionError("missing --m-list (required by command 'scaling')");
  if (c.trials < 1) throw PreconditionError("--trials must be >= 1");
  const Vector h = build_signal(c, f);
  const Lattice lattice = build_lattice(c, f, 64);
  const auto rows = scaling_experiment(f, h, c.m_list, c.trials, c.seed, lattice);
  o.result["family"] = family_json(f);
  o.result["lattice"] = describe(lattice);
  o.result["rows"] = json::array();
  std::vector<double> ms, med;
  o.table = "M,trials,median_gap,median_sup_gap,q10,q90,seeds\n";
  for (const auto& r : rows) {
    o.result["rows"].push_back(scaling_row_json(r));
    std::string seeds;
    for (const auto& t : r.outcomes) seeds += (seeds.empty() ? "" : ";") + std::to_string(t.seed);
    o.table += fmt::format("{},{},{},{},{},{},{}\n", r.m, r.trials, csv_number(r.median_gap),
                           csv_number(r.median_sup_gap), csv_number(r.q10), csv_number(r.q90),
                           seeds);
    ms.push_back(static_cast<double>(r.m));
    med.push_back(r.median_sup_gap);
  }
  const bool spread = std::adjacent_find(ms.begin(), ms.end(), std::not_equal_to<>()) != ms.end();
  if (spread && std::all_of(med.begin(), med.end(), [](double v) { return v > 0.0; })) {
    const double slope = loglog_slope(ms, med);
    o.result["loglog_slope"] = slope;
    o.notes.push_back(fmt::format("log-log slope of median sup-gap vs M: {}", csv_number(slope)));
  }
}

void cmd_embed(const RunConfig& c, Output& o) {
  const SubspaceFamily f = build_family(c);
  const std::size_t m = need_m(c, f);
  const Lattice lattice = build_lattice(c, f, 64);
  o.result["family"] = family_json(f);
  o.result["lattice"] = describe(lattice);
  o.result["M"] = m;
  o.result["rows"] = json::array();
  o.table = "seed,pairwise,single_vector,delta1\n";
  for (const auto& phi : trial_sketches(c, f, m)) {
    const std::uint64_t s = *phi.seed();
    const double pair = pairwise_embedding(f, phi, c.pairs, s);
    const double single = single_vector_embedding(f, phi, lattice, 4, s);
    const double d1 = estimate_c1(f, phi, lattice).sup_value;
    o.result["rows"].push_back({{"seed", s}, {"pairwise", pair}, {"single_vector", single}, {"delta1", d1}});
    o.table += fmt::format("{},{},{},{}\n", s, csv_number(pair), csv_number(single), csv_number(d1));
  }
}

std::string render(const RunConfig& c, const Output& o) {
  const std::string version = CONTMATCH_VERSION;
  if (c.format == "json") {
    json doc = {{"tool", "contmatch"}, {"version", version}, {"config", to_json(c)}};
    doc["result"] = o.result;
    if (!o.notes.empty()) doc["notes"] = o.notes;
    return doc.dump(2) + "\n";
  }
  std::string text = fmt::format("# contmatch {}\n# config {}\n", version, to_json(c).dump());
  for (const auto& n : o.notes) text += "# " + n + "\n";
  return text + o.table;
}

int threads_from_env() {
  if (const char* env = std::getenv("CONTMATCH_THREADS")) {
    try {
      return std::max(0, std::stoi(env));
    } catch (const std::exception&) {
      throw PreconditionError(fmt::format("CONTMATCH_THREADS: '{}' is not an integer", env));
    }
  }
  return 0;
}

}  // namespace

json to_json(const RunConfig& c) {
  auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  return {{"command", c.command},
          {"family", c.family},
          {"sigma", opt(c.sigma)},
          {"range", c.range},
          {"omega_range", c.omega_range},
          {"k", opt(c.k)},
          {"tabulated", c.tabulated},
          {"grid", c.grid},
          {"signal", c.signal},
          {"m", opt(c.m)},
          {"m_list", c.m_list},
          {"seed", c.seed},
          {"trials", c.trials},
          {"lattice", c.lattice},
          {"refine", c.refine},
          {"epsilon_list", c.epsilon_list},
          {"pairs", c.pairs},
          {"max_separation", opt(c.max_separation)},
          {"out", c.out},
          {"format", c.format}};
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"contmatch: compressed subspace matching experiments"};
  std::string range, omega, grid, lattice, eps, m_list;
  std::optional<double> sigma, max_sep;
  std::optional<int> k;
  std::optional<std::size_t> m;
  app.add_option("command", c.command, "surface|match|cover|holder|verify|scaling|embed")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("--family", c.family, "gaussian|square|gabor|lot|tabulated");
  app.add_option("--sigma", sigma, "pulse width");
  app.add_option("--range", range, "shift range lo,hi");
  app.add_option("--omega-range", omega, "gabor frequency range lo,hi (rad/s)");
  app.add_option("--k", k, "LOT subspace dimension");
  app.add_option("--tabulated", c.tabulated, "tabulated family JSON file");
  app.add_option("--grid", grid, "sample grid t0,t1,N");
  app.add_option("--signal", c.signal, "member | raised-cosine | atom:theta | csv:path | json:path");
  app.add_option("--m", m, "sketch rows");
  app.add_option("--m-list", m_list, "sketch rows for scaling, comma separated");
  app.add_option("--seed", c.seed, "base seed");
  app.add_option("--trials", c.trials, "independent sketches");
  app.add_option("--lattice", lattice, "lattice shape, e.g. 64x64");
  app.add_option("--refine", c.refine, "refinement rounds for match");
  app.add_option("--epsilon-list", eps, "cover resolutions, comma separated");
  app.add_option("--pairs", c.pairs, "sampled pairs for holder/embed");
  app.add_option("--max-separation", max_sep, "largest parameter separation for holder");
  app.add_option("--out", c.out, "output file (default standard output)");
  app.add_option("--format", c.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", c.threads, "worker thread cap");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  }

  c.sigma = sigma;
  c.k = k;
  c.m = m;
  c.max_separation = max_sep;
  if (!range.empty()) c.range = parse_reals(range, "--range", 2);
  if (!omega.empty()) c.omega_range = parse_reals(omega, "--omega-range", 2);
  if (!grid.empty()) c.grid = parse_reals(grid, "--grid", 3);
  if (!lattice.empty()) c.lattice = parse_counts(lattice, "--lattice", 'x');
  if (!eps.empty()) c.epsilon_list = parse_reals(eps, "--epsilon-list");
  if (!m_list.empty()) c.m_list = parse_counts(m_list, "--m-list", ',');
  return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig c = parse_args(args);
    set_thread_limit(c.threads > 0 ? c.threads : threads_from_env());
    Output o;
    if (c.command == "surface") cmd_surface(c, o);
    else if (c.command == "match") cmd_match(c, o);
    else if (c.command == "cover") cmd_cover(c, o);
    else if (c.command == "holder") cmd_holder(c, o);
    else if (c.command == "verify") cmd_verify(c, o);
    else if (c.command == "scaling") cmd_scaling(c, o);
    else cmd_embed(c, o);
    const std::string text = render(c, o);
    if (c.out.empty()) {
      out << text;
    } else {
      std::ofstream file(c.out, std::ios::binary);
      if (!file) throw PreconditionError(fmt::format("cannot open --out '{}'", c.out));
      file << text;
    }
    return kExitOk;
  } catch (const HelpRequested& h) {
    out << h.text;
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "contmatch: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PreconditionError& e) {
    err << "contmatch: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "contmatch: numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "contmatch: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace contmatch::cli
