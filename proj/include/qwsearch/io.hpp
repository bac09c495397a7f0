#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "qwsearch/critical_analysis.hpp"
#include "qwsearch/evolution.hpp"
#include "qwsearch/lattice_constants.hpp"
#include "qwsearch/secular.hpp"

namespace qwsearch::io {

// Empty cells are written as nothing in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);  // throws std::invalid_argument on width mismatch
  std::size_t column_index(const std::string& name) const;
};

// Doubles use %.17g, which round-trips exactly.
std::string format_double(double x);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);  // array of row objects

// Every cell comes back as its CSV text.
struct CsvData {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::vector<double> numeric_column(const std::string& name) const;
};
CsvData parse_csv(const std::string& text);
CsvData read_csv(const std::filesystem::path& path);

// Writes to "<path>.tmp" and renames over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// Column sets. Tests pin these; change them only deliberately.
extern const std::vector<std::string> kScanColumns;
extern const std::vector<std::string> kScalingColumns;
extern const std::vector<std::string> kSpectrumColumns;
extern const std::vector<std::string> kTraceColumns;
extern const std::vector<std::string> kConstantColumns;
extern const std::vector<std::string> kPredictionColumns;
extern const std::vector<std::string> kCeilingColumns;
extern const std::vector<std::string> kBoundColumns;

Table scan_table(const std::vector<ScanRecord>& records);
Table scaling_table(const std::vector<ScalingRecord>& records);
Table spectrum_table(const SecularSpectrum& spec);
Table trace_table(const EvolutionTrace& tr);
Table constant_table_rows(const std::vector<ConstantEntry>& entries);
Table prediction_table(const std::vector<CriticalPrediction>& rows);
Table ceiling_table(const std::vector<CeilingCheck>& rows);
Table bound_table(const std::vector<BoundReport>& reports);

// {"graph", "gamma", ..., "checks": [{bound_id, lhs, rhs, slack, pass}]}
std::string bound_reports_json(const std::vector<BoundReport>& reports);

}  // namespace qwsearch::io
