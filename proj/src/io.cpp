#include "qwsearch/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qwsearch::io {

namespace {

using nlohmann::ordered_json;

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double x) const { return format_double(x); }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

ordered_json cell_json(const Cell& c) {
  struct Visitor {
    ordered_json operator()(std::monostate) const { return nullptr; }
    ordered_json operator()(double x) const {
      if (!std::isfinite(x)) return format_double(x);
      return x;
    }
    ordered_json operator()(std::int64_t x) const { return x; }
    ordered_json operator()(const std::string& s) const { return s; }
    ordered_json operator()(bool b) const { return b; }
  };
  return std::visit(Visitor{}, c);
}

Cell opt(const std::optional<std::int64_t>& v) {
  return v ? Cell{*v} : Cell{};
}
Cell opt(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }
Cell i64(std::int64_t v) { return Cell{v}; }

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("row has " + std::to_string(row.size()) +
                                " cells, table has " + std::to_string(columns.size()) +
                                " columns");
  }
  rows.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("no column " + name);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(t.columns[i]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cell_text(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& t) {
  ordered_json arr = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

CsvData parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
      continue;
    }
    any = true;
    if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      fields.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(fields));
      fields.clear();
      any = false;
    } else if (ch != '\r') {
      field += ch;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quote in CSV");
  if (any) {
    fields.push_back(std::move(field));
    records.push_back(std::move(fields));
  }
  if (records.empty()) throw std::runtime_error("CSV has no header");
  CsvData data;
  data.columns = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != data.columns.size()) {
      throw std::runtime_error("CSV row " + std::to_string(r) + " has the wrong width");
    }
    data.rows.push_back(std::move(records[r]));
  }
  return data;
}

std::vector<double> CsvData::numeric_column(const std::string& name) const {
  std::size_t idx = columns.size();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) idx = i;
  }
  if (idx == columns.size()) throw std::out_of_range("no column " + name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(std::strtod(row[idx].c_str(), nullptr));
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CsvData read_csv(const std::filesystem::path& path) { return parse_csv(read_file(path)); }

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

const std::vector<std::string> kScanColumns = {
    "gamma",          "ground",         "first_excited",  "gap",
    "overlap_s_psi0", "overlap_s_psi1", "overlap_w_psi0", "overlap_w_psi1"};
const std::vector<std::string> kScalingColumns = {
    "num_vertices", "gamma_used", "gap", "t_star", "p_star", "runtime_metric"};
const std::vector<std::string> kSpectrumColumns = {
    "index", "energy", "fprime", "w_overlap_sq", "s_overlap_sq"};
const std::vector<std::string> kTraceColumns = {"t", "amplitude_re", "amplitude_im",
                                                "probability"};
const std::vector<std::string> kConstantColumns = {
    "kind", "j", "d", "num_vertices", "a", "value", "error_estimate", "method", "truncation"};
const std::vector<std::string> kPredictionColumns = {
    "side", "num_vertices", "gamma",
    "ground_predicted", "ground",
    "first_excited_predicted", "first_excited",
    "gap_predicted", "gap",
    "fprime_predicted", "fprime_ground", "fprime_first",
    "p_max_predicted", "p_star",
    "t_predicted", "t_star"};
const std::vector<std::string> kCeilingColumns = {
    "num_vertices", "rescaled_offset", "x0", "x0_at_zero", "max_amplitude",
    "amplitude_ceiling", "ceiling_pass", "runtime_floor", "runtime_floor_pass",
    "runtime_asymptotic", "runtime_slack", "runtime_asymptotic_pass"};
const std::vector<std::string> kBoundColumns = {
    "graph", "gamma", "gamma_c", "above_critical", "bound_id", "lhs", "rhs", "slack", "pass"};

Table scan_table(const std::vector<ScanRecord>& records) {
  Table t{kScanColumns, {}};
  for (const auto& r : records) {
    t.add_row({r.gamma, r.ground, r.first_excited, r.gap, r.overlap_s_psi0, r.overlap_s_psi1,
               r.overlap_w_psi0, r.overlap_w_psi1});
  }
  return t;
}

Table scaling_table(const std::vector<ScalingRecord>& records) {
  Table t{kScalingColumns, {}};
  for (const auto& r : records) {
    t.add_row({i64(r.num_vertices), r.gamma_used, r.gap, r.t_star, r.p_star, r.runtime_metric});
  }
  return t;
}

Table spectrum_table(const SecularSpectrum& spec) {
  Table t{kSpectrumColumns, {}};
  for (std::size_t i = 0; i < spec.roots.size(); ++i) {
    const auto& r = spec.roots[i];
    t.add_row({i64(static_cast<std::int64_t>(i)), r.energy, r.fprime, r.w_overlap_sq,
               r.s_overlap_sq});
  }
  return t;
}

Table trace_table(const EvolutionTrace& tr) {
  Table t{kTraceColumns, {}};
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    t.add_row({tr.times[i], tr.amplitudes[i].real(), tr.amplitudes[i].imag(),
               tr.probabilities[i]});
  }
  return t;
}

Table constant_table_rows(const std::vector<ConstantEntry>& entries) {
  Table t{kConstantColumns, {}};
  for (const auto& e : entries) {
    t.add_row({e.kind, i64(e.j), i64(e.d), opt(e.num_vertices), opt(e.a), e.value, e.error,
               e.method, e.truncation});
  }
  return t;
}

Table prediction_table(const std::vector<CriticalPrediction>& rows) {
  Table t{kPredictionColumns, {}};
  for (const auto& r : rows) {
    t.add_row({i64(r.side), i64(r.num_vertices), r.gamma, r.ground_predicted, r.ground,
               r.first_excited_predicted, r.first_excited, r.gap_predicted, r.gap,
               r.fprime_predicted, r.fprime_ground, r.fprime_first, r.p_max_predicted,
               r.p_star, r.t_predicted, r.t_star});
  }
  return t;
}

Table ceiling_table(const std::vector<CeilingCheck>& rows) {
  Table t{kCeilingColumns, {}};
  for (const auto& c : rows) {
    t.add_row({i64(c.num_vertices), c.rescaled_offset, c.x0, c.x0_at_zero, c.max_amplitude,
               c.amplitude_ceiling, c.ceiling_pass, c.runtime_floor, c.runtime_floor_pass,
               c.runtime_asymptotic, c.runtime_slack, c.runtime_asymptotic_pass});
  }
  return t;
}

Table bound_table(const std::vector<BoundReport>& reports) {
  Table t{kBoundColumns, {}};
  for (const auto& rep : reports) {
    for (const auto& c : rep.checks) {
      t.add_row({rep.graph, rep.gamma, rep.gamma_c, rep.above_critical, c.bound_id, c.lhs,
                 c.rhs, c.slack, c.pass});
    }
  }
  return t;
}

std::string bound_reports_json(const std::vector<BoundReport>& reports) {
  ordered_json arr = ordered_json::array();
  for (const auto& rep : reports) {
    ordered_json checks = ordered_json::array();
    for (const auto& c : rep.checks) {
      checks.push_back({{"bound_id", c.bound_id},
                        {"lhs", cell_json(c.lhs)},
                        {"rhs", cell_json(c.rhs)},
                        {"slack", cell_json(c.slack)},
                        {"pass", c.pass}});
    }
    arr.push_back({{"graph", rep.graph},
                   {"gamma", cell_json(rep.gamma)},
                   {"gamma_c", cell_json(rep.gamma_c)},
                   {"gamma_asymptotic", cell_json(rep.gamma_asymptotic)},
                   {"above_critical", rep.above_critical},
                   {"checks", std::move(checks)}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace qwsearch::io
