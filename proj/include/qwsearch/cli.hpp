#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwsearch/dense_oracle.hpp"
#include "qwsearch/graph_spectra.hpp"

namespace qwsearch {

inline constexpr const char* kCommands[] = {"constants", "spectrum", "scan",    "evolve",
                                            "critical",  "scaling",  "validate", "figures"};

struct RunConfig {
  std::string command;
  std::optional<std::string> graph;
  std::optional<double> gamma;
  std::optional<double> gamma_lo;
  std::optional<double> gamma_hi;
  std::optional<double> time;
  std::optional<double> t_max;
  int points = 201;
  std::filesystem::path output;  // directory; empty means default_output_dir()
  std::string format = "csv";    // csv | json
  std::optional<std::string> plot;  // none | gnuplot | svg; figures defaults to gnuplot
  std::uint64_t seed = 1;
  std::int64_t oracle_cap = kDefaultOracleCap;
  std::optional<int> dim;
  std::vector<int> sides;
};

// complete:<N> | hypercube:<n> | lattice:<d>:<L>. Throws SyntaxError carrying
// the offending character position, or RangeError for invalid sizes.
GraphFamily parse_graph_spec(std::string_view text);

// $QWSEARCH_OUTPUT_DIR if set, else "qwsearch-output".
std::filesystem::path default_output_dir();

// Resolved configuration plus artifact version, as written beside outputs.
std::string manifest_json(const RunConfig& config,
                          const std::vector<std::string>& artifacts);

// Secular solve against the dense oracle at one (gamma, t).
struct OracleComparison {
  std::string graph;
  double gamma;
  double t;
  double amplitude_delta;
  double energy_delta;
  double w_weight_delta;
  double s_weight_delta;
  std::int64_t relevant_roots;
  std::int64_t oracle_relevant;

  double max_delta() const;
};

OracleComparison compare_with_oracle(const GraphFamily& g, double gamma, double t,
                                     std::int64_t cap = kDefaultOracleCap);

struct OracleDraw {
  double gamma;
  double t;
};

// Log-uniform gamma on [c/4, 4c] around the window centre and uniform t on
// [0, 4 sqrt(N)], from mt19937_64 seeded with `seed`.
std::vector<OracleDraw> oracle_draws(const GraphFamily& g, std::uint64_t seed, int count);

std::vector<GraphFamily> default_validation_families();

// Executes one command. Artifact paths go to `out`; on failure the error
// JSON goes to `err`. Returns 0, 2 (config error) or 3 (computation error).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and calls run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwsearch
