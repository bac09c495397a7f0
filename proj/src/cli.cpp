#include "qwsearch/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwsearch/critical_analysis.hpp"
#include "qwsearch/errors.hpp"
#include "qwsearch/evolution.hpp"
#include "qwsearch/io.hpp"
#include "qwsearch/lattice_constants.hpp"
#include "qwsearch/secular.hpp"

#ifndef QWSEARCH_VERSION
#define QWSEARCH_VERSION "dev"
#endif

namespace qwsearch {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::int64_t parse_count(std::string_view text, std::size_t offset, std::size_t& pos) {
  const std::size_t start = pos;
  std::int64_t value = 0;
  bool overflow = false;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    if (value > (std::numeric_limits<std::int64_t>::max() - 9) / 10) overflow = true;
    if (!overflow) value = value * 10 + (text[pos] - '0');
    ++pos;
  }
  if (pos == start) {
    throw SyntaxError(pos < text.size() ? "expected a digit" : "expected a number",
                      offset + pos);
  }
  if (overflow) throw RangeError("number too large in graph spec");
  return value;
}

int narrow(std::int64_t v, const char* what) {
  if (v > std::numeric_limits<int>::max()) throw RangeError(std::string(what) + " too large");
  return static_cast<int>(v);
}

struct Writer {
  fs::path dir;
  std::string format;
  std::vector<std::string> artifacts;

  void text(const std::string& name, const std::string& content) {
    io::write_atomic(dir / name, content);
    artifacts.push_back(name);
  }
  void table(const std::string& stem, const io::Table& t) {
    if (format == "json") {
      text(stem + ".json", io::to_json(t));
    } else {
      text(stem + ".csv", io::to_csv(t));
    }
  }
};

std::string plot_mode(const RunConfig& cfg) {
  if (cfg.plot) return *cfg.plot;
  return cfg.command == "figures" ? "gnuplot" : "none";
}

GraphFamily require_graph(const RunConfig& cfg) {
  if (!cfg.graph) throw ConfigError(cfg.command + " needs --graph");
  return parse_graph_spec(*cfg.graph);
}

std::vector<int> default_sides(int dim) {
  switch (dim) {
    case 2: return {16, 32, 64};
    case 3: return {6, 8, 10, 12};
    case 4: return {6, 8, 10};
    case 5: return {4, 6, 8};
    default: return {4, 6};
  }
}

std::string json_text(const ordered_json& j) { return j.dump(2) + "\n"; }

// ---- plotting, always from CSV files already on disk ----

std::string axis_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string gnuplot_script(const fs::path& csv, const std::string& title,
                           const std::string& xcol, const std::vector<std::string>& ycols,
                           std::optional<std::pair<double, double>> yrange) {
  const io::CsvData data = io::read_csv(csv);
  auto index = [&](const std::string& name) {
    for (std::size_t i = 0; i < data.columns.size(); ++i) {
      if (data.columns[i] == name) return i + 1;
    }
    throw ComputationError("plot: column " + name + " missing from " + csv.string());
  };
  std::ostringstream s;
  s << "set datafile separator ','\n";
  s << "set terminal pngcairo size 800,500\n";
  s << "set output '" << csv.stem().string() << ".png'\n";
  s << "set title '" << title << "'\n";
  s << "set xlabel '" << xcol << "'\n";
  if (yrange) s << "set yrange [" << yrange->first << ":" << yrange->second << "]\n";
  s << "plot ";
  for (std::size_t i = 0; i < ycols.size(); ++i) {
    if (i) s << ", \\\n     ";
    s << "'" << csv.filename().string() << "' skip 1 using " << index(xcol) << ":"
      << index(ycols[i]) << " with lines title '" << ycols[i] << "'";
  }
  s << "\n";
  return s.str();
}

std::string svg_plot(const fs::path& csv, const std::string& title, const std::string& xcol,
                     const std::vector<std::string>& ycols,
                     std::optional<std::pair<double, double>> yrange) {
  const io::CsvData data = io::read_csv(csv);
  const std::vector<double> xs = data.numeric_column(xcol);
  std::vector<std::vector<double>> ys;
  for (const auto& c : ycols) ys.push_back(data.numeric_column(c));

  double x0 = *std::min_element(xs.begin(), xs.end());
  double x1 = *std::max_element(xs.begin(), xs.end());
  double y0 = std::numeric_limits<double>::infinity();
  double y1 = -y0;
  if (yrange) {
    y0 = yrange->first;
    y1 = yrange->second;
  } else {
    for (const auto& col : ys) {
      for (double y : col) {
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;

  constexpr double kW = 800, kH = 500, kL = 90, kR = 160, kT = 40, kB = 50;
  auto px = [&](double x) { return kL + (x - x0) / (x1 - x0) * (kW - kL - kR); };
  auto py = [&](double y) { return kH - kB - (y - y0) / (y1 - y0) * (kH - kT - kB); };
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\">" << title << "</text>\n";
  s << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR
    << "\" height=\"" << kH - kT - kB << "\" fill=\"none\" stroke=\"black\"/>\n";
  s << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 12
    << "\" text-anchor=\"middle\">" << xcol << "</text>\n";
  s << "<text x=\"" << kL << "\" y=\"" << kH - kB + 16 << "\">" << axis_label(x0)
    << "</text>\n";
  s << "<text x=\"" << kW - kR << "\" y=\"" << kH - kB + 16 << "\" text-anchor=\"end\">"
    << axis_label(x1) << "</text>\n";
  s << "<text x=\"" << kL - 4 << "\" y=\"" << kH - kB << "\" text-anchor=\"end\">"
    << axis_label(y0) << "</text>\n";
  s << "<text x=\"" << kL - 4 << "\" y=\"" << kT + 10 << "\" text-anchor=\"end\">"
    << axis_label(y1) << "</text>\n";
  char buf[64];
  for (std::size_t k = 0; k < ys.size(); ++k) {
    const char* color = kColors[k % 5];
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        s << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"" << points
          << "\"/>\n";
      }
      points.clear();
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double y = ys[k][i];
      if (!std::isfinite(y) || y < y0 || y > y1) {
        flush();
        continue;
      }
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(xs[i]), py(y));
      points += buf;
    }
    flush();
    s << "<text x=\"" << kW - kR + 10 << "\" y=\"" << kT + 16 + 18 * k << "\" fill=\"" << color
      << "\">" << ycols[k] << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void emit_plot(Writer& w, const std::string& mode, const std::string& csv_name,
               const std::string& title, const std::string& xcol,
               const std::vector<std::string>& ycols,
               std::optional<std::pair<double, double>> yrange = std::nullopt) {
  if (mode == "none") return;
  if (w.format != "csv") throw ConfigError("plots are rendered from CSV; use --format csv");
  const fs::path csv = w.dir / csv_name;
  const std::string stem = fs::path(csv_name).stem().string();
  if (mode == "gnuplot") {
    w.text(stem + ".gp", gnuplot_script(csv, title, xcol, ycols, yrange));
  } else {
    w.text(stem + ".svg", svg_plot(csv, title, xcol, ycols, yrange));
  }
}

const std::vector<std::string> kScanPlotColumns = {"gap", "overlap_s_psi0", "overlap_s_psi1",
                                                   "overlap_w_psi0", "overlap_w_psi1"};

// ---- commands ----

void cmd_constants(RunConfig&, Writer& w) {
  w.table("constants", io::constant_table_rows(constant_table()));
}

void cmd_spectrum(RunConfig& cfg, Writer& w) {
  const GraphFamily g = require_graph(cfg);
  const LevelSpectrum ls = level_spectrum(g);
  if (!cfg.gamma) cfg.gamma = find_critical_gamma(ls);
  w.table("spectrum", io::spectrum_table(solve_spectrum(ls, *cfg.gamma)));
}

void cmd_scan(RunConfig& cfg, Writer& w) {
  const GraphFamily g = require_graph(cfg);
  if (!cfg.gamma_lo || !cfg.gamma_hi) {
    const double c = critical_window_center(level_spectrum(g));
    if (!cfg.gamma_lo) cfg.gamma_lo = 0.2 * c;
    if (!cfg.gamma_hi) cfg.gamma_hi = 2.0 * c;
  }
  w.table("scan", io::scan_table(scan_gamma(g, *cfg.gamma_lo, *cfg.gamma_hi, cfg.points)));
  emit_plot(w, plot_mode(cfg), "scan.csv", g.spec(), "gamma", kScanPlotColumns);
}

void cmd_evolve(RunConfig& cfg, Writer& w) {
  const GraphFamily g = require_graph(cfg);
  const LevelSpectrum ls = level_spectrum(g);
  if (!cfg.gamma) cfg.gamma = find_critical_gamma(ls);
  const SecularSpectrum spec = solve_spectrum(ls, *cfg.gamma);
  EvolutionTrace tr;
  if (cfg.time) {
    if (!(*cfg.time >= 0.0)) throw RangeError("--time must be non-negative");
    const auto a = amplitude(spec, *cfg.time);
    tr = EvolutionTrace{spec.gamma, {*cfg.time}, {a}, {std::norm(a)}};
  } else {
    if (!cfg.t_max) cfg.t_max = default_time_window(g.num_vertices());
    tr = trace(spec, *cfg.t_max, cfg.points);
  }
  w.table("evolve", io::trace_table(tr));
  const OptimalTime opt = find_optimal_time(spec, cfg.t_max ? *cfg.t_max
                                                            : default_time_window(g.num_vertices()));
  io::Table best{{"gamma", "t_star", "p_star"}, {}};
  best.add_row({spec.gamma, opt.t_star, opt.p_star});
  w.table("evolve_optimum", best);
  if (!cfg.time) emit_plot(w, plot_mode(cfg), "evolve.csv", g.spec(), "t", {"probability"});
}

void cmd_critical(RunConfig& cfg, Writer& w) {
  if (!cfg.graph) {
    if (!cfg.dim) throw ConfigError("critical needs --graph or --dim");
    if (cfg.sides.empty()) cfg.sides = default_sides(*cfg.dim);
    w.table("predictions", io::prediction_table(critical_predictions(*cfg.dim, cfg.sides)));
    return;
  }
  const GraphFamily g = parse_graph_spec(*cfg.graph);
  const LevelSpectrum ls = level_spectrum(g);
  const double gc = find_critical_gamma(ls);
  const GroundAndGap gg = ground_and_gap(ls, gc);
  io::Table summary{{"graph", "num_vertices", "gamma_c", "gamma_asymptotic", "window_center",
                     "margin", "ground", "first_excited", "gap"},
                    {}};
  summary.add_row({g.spec(), g.num_vertices(), gc, asymptotic_critical_gamma(g),
                   critical_window_center(ls), critical_margin(gc, g.num_vertices()), gg.ground,
                   gg.first_excited, gg.gap});
  w.table("critical", summary);

  std::vector<double> couplings;
  if (cfg.gamma) {
    couplings = {*cfg.gamma};
  } else {
    couplings = {0.5 * gc, 2.0 * gc};
  }
  std::vector<BoundReport> reports;
  for (double gamma : couplings) {
    BoundReport a = verify_transition_bounds(g, gamma);
    const BoundReport b = verify_failure_bounds(g, gamma);
    a.checks.insert(a.checks.end(), b.checks.begin(), b.checks.end());
    reports.push_back(std::move(a));
  }
  if (w.format == "json") {
    w.text("bounds.json", io::bound_reports_json(reports));
  } else {
    w.table("bounds", io::bound_table(reports));
  }
}

void cmd_scaling(RunConfig& cfg, Writer& w) {
  if (!cfg.dim) throw ConfigError("scaling needs --dim");
  const int d = *cfg.dim;
  if (cfg.sides.empty()) cfg.sides = default_sides(d);
  std::vector<ScalingRecord> records;
  if (d == 2 || d == 3) {
    const SubcriticalReport rep = subcritical_scaling(d, cfg.sides);
    records = rep.records;
    w.table("ceilings", io::ceiling_table(rep.ceilings));
  } else {
    for (int side : cfg.sides) records.push_back(measure_scaling_point(GraphFamily::lattice(d, side)));
  }
  w.table("scaling", io::scaling_table(records));
  if (records.size() >= 2) {
    std::vector<double> ns, ts;
    for (const auto& r : records) {
      ns.push_back(static_cast<double>(r.num_vertices));
      ts.push_back(r.t_star);
    }
    io::Table fit{{"dim", "t_star_exponent"}, {}};
    fit.add_row({std::int64_t{d}, fit_exponent(ns, ts)});
    w.table("scaling_fit", fit);
  }
}

bool cmd_validate(RunConfig& cfg, Writer& w) {
  std::vector<GraphFamily> families;
  if (cfg.graph) {
    families.push_back(parse_graph_spec(*cfg.graph));
  } else {
    families = default_validation_families();
  }
  constexpr int kDraws = 20;
  constexpr double kTolerance = 1e-8;
  io::Table t{{"graph", "draw", "gamma", "t", "amplitude_delta", "energy_delta",
               "w_weight_delta", "s_weight_delta", "relevant_roots", "oracle_relevant",
               "status"},
              {}};
  bool all_pass = true;
  for (const auto& g : families) {
    if (g.num_vertices() > cfg.oracle_cap) {
      if (cfg.graph) {
        throw OracleCapError(g.spec() + " exceeds --oracle-cap " +
                             std::to_string(cfg.oracle_cap));
      }
      t.add_row({g.spec(), std::int64_t{-1}, {}, {}, {}, {}, {}, {}, {}, {},
                 std::string("skipped_oracle_cap")});
      continue;
    }
    const auto draws = oracle_draws(g, cfg.seed, kDraws);
    for (std::size_t i = 0; i < draws.size(); ++i) {
      const OracleComparison c = compare_with_oracle(g, draws[i].gamma, draws[i].t, cfg.oracle_cap);
      const bool pass = c.max_delta() < kTolerance;
      all_pass = all_pass && pass;
      t.add_row({c.graph, static_cast<std::int64_t>(i), c.gamma, c.t, c.amplitude_delta,
                 c.energy_delta, c.w_weight_delta, c.s_weight_delta, c.relevant_roots,
                 c.oracle_relevant, std::string(pass ? "pass" : "fail")});
    }
  }
  w.table("validate", t);
  return all_pass;
}

std::string figure_stem(const GraphFamily& g) {
  std::string s = g.spec();
  std::replace(s.begin(), s.end(), ':', '_');
  return s;
}

void cmd_figures(RunConfig& cfg, Writer& w) {
  const std::string mode = plot_mode(cfg);
  cfg.plot = mode;
  const std::vector<GraphFamily> scans = {
      GraphFamily::complete(1024), GraphFamily::hypercube(10), GraphFamily::lattice(5, 4),
      GraphFamily::lattice(4, 6),  GraphFamily::lattice(3, 10), GraphFamily::lattice(2, 32)};
  const std::string ext = w.format == "json" ? ".json" : ".csv";
  for (const auto& g : scans) {
    const double c = critical_window_center(level_spectrum(g));
    const std::string stem = "scan_" + figure_stem(g);
    w.table(stem, io::scan_table(scan_gamma(g, 0.2 * c, 2.0 * c, cfg.points)));
    emit_plot(w, mode, stem + ext, g.spec(), "gamma", kScanPlotColumns);
  }

  const GraphFamily g4 = GraphFamily::lattice(2, 4);
  const LevelSpectrum ls = level_spectrum(g4);
  constexpr double kGamma = 1.0;
  io::Table poles{{"energy", "multiplicity"}, {}};
  for (const auto& lv : ls.levels()) poles.add_row({kGamma * lv.energy, lv.multiplicity});
  const double e_lo = -2.0;
  const double e_hi = kGamma * ls.levels().back().energy + 2.0;
  constexpr int kSamples = 2400;
  io::Table samples{{"energy", "secular"}, {}};
  for (int i = 0; i < kSamples; ++i) {
    // Midpoints of a uniform grid never land on an integer pole.
    const double e = e_lo + (e_hi - e_lo) * (i + 0.5) / kSamples;
    samples.add_row({e, secular_value(ls, kGamma, e)});
  }
  w.table("secular_lattice_2_4", samples);
  w.table("secular_poles_lattice_2_4", poles);
  w.table("secular_roots_lattice_2_4", io::spectrum_table(solve_spectrum(ls, kGamma)));
  emit_plot(w, mode, "secular_lattice_2_4" + ext, "F(E), lattice:2:4, gamma = 1", "energy",
            {"secular"}, std::pair<double, double>{-3.0, 3.0});
}

void write_error(std::ostream& err, const char* kind, const std::string& message, int code,
                 std::optional<std::size_t> position = std::nullopt) {
  ordered_json j = {{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code}};
  if (position) j["error"]["position"] = *position;
  err << j.dump() << "\n";
}

}  // namespace

GraphFamily parse_graph_spec(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw SyntaxError("expected '<family>:<size>'", text.size());
  }
  const std::string_view name = text.substr(0, colon);
  std::size_t pos = colon + 1;
  const std::int64_t first = parse_count(text, 0, pos);
  std::optional<std::int64_t> second;
  if (name == "lattice") {
    if (pos >= text.size() || text[pos] != ':') {
      throw SyntaxError("lattice needs '<d>:<L>'", pos);
    }
    ++pos;
    second = parse_count(text, 0, pos);
  } else if (name != "complete" && name != "hypercube") {
    throw SyntaxError("unknown graph family '" + std::string(name) + "'", 0);
  }
  if (pos != text.size()) throw SyntaxError("unexpected trailing characters", pos);

  if (name == "complete") return GraphFamily::complete(first);
  if (name == "hypercube") return GraphFamily::hypercube(narrow(first, "hypercube dimension"));
  return GraphFamily::lattice(narrow(first, "lattice dimension"), narrow(*second, "lattice side"));
}

fs::path default_output_dir() {
  if (const char* env = std::getenv("QWSEARCH_OUTPUT_DIR"); env && *env) return env;
  return "qwsearch-output";
}

std::string manifest_json(const RunConfig& c, const std::vector<std::string>& artifacts) {
  auto opt = [](const auto& v) -> ordered_json {
    if (v) return *v;
    return nullptr;
  };
  ordered_json j;
  j["artifact"] = "qwsearch";
  j["version"] = QWSEARCH_VERSION;
  j["config"] = {{"command", c.command},
                 {"graph", opt(c.graph)},
                 {"gamma", opt(c.gamma)},
                 {"gamma_lo", opt(c.gamma_lo)},
                 {"gamma_hi", opt(c.gamma_hi)},
                 {"time", opt(c.time)},
                 {"t_max", opt(c.t_max)},
                 {"points", c.points},
                 {"format", c.format},
                 {"plot", opt(c.plot)},
                 {"seed", c.seed},
                 {"oracle_cap", c.oracle_cap},
                 {"dim", opt(c.dim)},
                 {"sides", c.sides}};
  j["artifacts"] = artifacts;
  return json_text(j);
}

double OracleComparison::max_delta() const {
  if (relevant_roots != oracle_relevant) return std::numeric_limits<double>::infinity();
  return std::max({amplitude_delta, energy_delta, w_weight_delta, s_weight_delta});
}

OracleComparison compare_with_oracle(const GraphFamily& g, double gamma, double t,
                                     std::int64_t cap) {
  const LevelSpectrum ls = level_spectrum(g);
  const SecularSpectrum spec = solve_spectrum(ls, gamma);
  const DenseOracle oracle(g, gamma, 0, cap);

  const double scale = 1.0 + gamma * ls.levels().back().energy;
  std::vector<DenseOracle::Group> relevant;
  for (const auto& grp : oracle.grouped(1e-9 * scale)) {
    if (grp.w_weight > 1e-12) relevant.push_back(grp);
  }
  OracleComparison c{g.spec(), gamma, t, 0.0, 0.0, 0.0, 0.0,
                     static_cast<std::int64_t>(spec.roots.size()),
                     static_cast<std::int64_t>(relevant.size())};
  c.amplitude_delta = std::abs(amplitude(spec, t) - oracle.amplitude(t));
  if (relevant.size() == spec.roots.size()) {
    for (std::size_t a = 0; a < relevant.size(); ++a) {
      const SecularRoot& r = spec.roots[a];
      c.energy_delta = std::max(c.energy_delta, std::abs(r.energy - relevant[a].energy));
      c.w_weight_delta = std::max(c.w_weight_delta, std::abs(r.w_overlap_sq - relevant[a].w_weight));
      c.s_weight_delta = std::max(c.s_weight_delta, std::abs(r.s_overlap_sq - relevant[a].s_weight));
    }
  }
  return c;
}

std::vector<OracleDraw> oracle_draws(const GraphFamily& g, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  // Built from raw 64-bit output so the stream is identical on every platform.
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const double c = critical_window_center(level_spectrum(g));
  const double t_max = default_time_window(g.num_vertices());
  std::vector<OracleDraw> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double u = uniform();
    const double v = uniform();
    out.push_back({c * std::pow(4.0, 2.0 * u - 1.0), t_max * v});
  }
  return out;
}

std::vector<GraphFamily> default_validation_families() {
  return {GraphFamily::complete(256),  GraphFamily::hypercube(8),  GraphFamily::lattice(2, 16),
          GraphFamily::lattice(3, 8),  GraphFamily::lattice(4, 6), GraphFamily::lattice(5, 4)};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunConfig cfg = config;
  try {
    if (std::find(std::begin(kCommands), std::end(kCommands), cfg.command) == std::end(kCommands)) {
      throw ConfigError("unknown command '" + cfg.command + "'");
    }
    if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("--format must be csv or json");
    if (cfg.plot && *cfg.plot != "none" && *cfg.plot != "gnuplot" && *cfg.plot != "svg") {
      throw ConfigError("--plot must be none, gnuplot or svg");
    }
    if (cfg.points < 2) throw RangeError("--points must be at least 2");
    if (cfg.oracle_cap < 1) throw RangeError("--oracle-cap must be positive");

    Writer w{cfg.output.empty() ? default_output_dir() : cfg.output, cfg.format, {}};
    bool ok = true;
    if (cfg.command == "constants") cmd_constants(cfg, w);
    else if (cfg.command == "spectrum") cmd_spectrum(cfg, w);
    else if (cfg.command == "scan") cmd_scan(cfg, w);
    else if (cfg.command == "evolve") cmd_evolve(cfg, w);
    else if (cfg.command == "critical") cmd_critical(cfg, w);
    else if (cfg.command == "scaling") cmd_scaling(cfg, w);
    else if (cfg.command == "validate") ok = cmd_validate(cfg, w);
    else cmd_figures(cfg, w);

    const std::vector<std::string> produced = w.artifacts;
    w.text(cfg.command + ".manifest.json", manifest_json(cfg, produced));
    for (const auto& a : w.artifacts) out << (w.dir / a).string() << "\n";
    if (!ok) {
      write_error(err, "validation_failed", "secular and dense results differ beyond 1e-8", 3);
      return 3;
    }
    return 0;
  } catch (const SyntaxError& e) {
    write_error(err, e.kind(), e.what(), 2, e.position());
    return 2;
  } catch (const ConfigError& e) {
    write_error(err, e.kind(), e.what(), 2);
    return 2;
  } catch (const Error& e) {
    write_error(err, e.kind(), e.what(), 3);
    return 3;
  } catch (const std::exception& e) {
    write_error(err, "internal", e.what(), 3);
    return 3;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral simulator for continuous-time quantum-walk search", "qwsearch"};
  app.set_version_flag("--version", QWSEARCH_VERSION);
  RunConfig cfg;
  std::string output;
  app.add_option("command", cfg.command, "constants|spectrum|scan|evolve|critical|scaling|validate|figures")
      ->required();
  app.add_option("--graph", cfg.graph, "complete:N | hypercube:n | lattice:d:L");
  app.add_option("--gamma", cfg.gamma, "hopping rate");
  app.add_option("--gamma-lo", cfg.gamma_lo, "scan lower end");
  app.add_option("--gamma-hi", cfg.gamma_hi, "scan upper end");
  app.add_option("--time", cfg.time, "single evaluation time");
  app.add_option("--t-max", cfg.t_max, "end of the time grid");
  app.add_option("--points", cfg.points, "grid points")->capture_default_str();
  app.add_option("--output", output, "output directory (default $QWSEARCH_OUTPUT_DIR)");
  app.add_option("--format", cfg.format, "csv|json")->capture_default_str();
  app.add_option("--plot", cfg.plot, "none|gnuplot|svg");
  app.add_option("--seed", cfg.seed, "seed for validation draws")->capture_default_str();
  app.add_option("--oracle-cap", cfg.oracle_cap, "largest N for the dense oracle")
      ->capture_default_str();
  app.add_option("--dim", cfg.dim, "lattice dimension for critical/scaling");
  app.add_option("--sides", cfg.sides, "lattice sides for critical/scaling");
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    write_error(err, "config", e.what(), 2);
    return 2;
  }
  cfg.output = output;
  return run(cfg, out, err);
}

}  // namespace qwsearch
