#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aa/baselines.hpp"
#include "aa/fixed_point.hpp"
#include "aa/nare.hpp"

namespace aa::bench {

/// Either Anderson acceleration with a depth or one of the baselines.
struct Method {
  bool anderson = true;
  std::size_t depth = 1;
  BaselineKind baseline = BaselineKind::FP;

  static Method aa(std::size_t depth) { return {true, depth, BaselineKind::FP}; }
  static Method base(BaselineKind kind) { return {false, 0, kind}; }

  /// "AA(3)", "FP", ...
  std::string name() const;
  friend bool operator==(const Method&, const Method&) = default;
};

/// Accepts "AA:3", "AA(3)", "FP", "MFP", "NBJ", "NBGS".
std::optional<Method> parse_method(std::string_view text);

enum class OutputFormat { Csv, Markdown, Json };
std::optional<OutputFormat> parse_format(std::string_view text);

struct ExperimentSpec {
  std::vector<Method> methods;
  std::vector<std::pair<double, double>> params;  // (a, c)
  std::vector<std::size_t> sizes;
  std::size_t repeats = 10;
  std::size_t max_iter = 1000000;
  OutputFormat output = OutputFormat::Csv;
  std::optional<std::string> history_dump;  // directory for per-cell k,res_inf,fnorm2,eta files
  bool include_long = false;                // run baselines on the near-singular rows too
  std::size_t workers = 1;

  /// Throws InvalidArgument / InvalidSize / ParamOutOfRange on a bad spec.
  void validate() const;
};

/// The default grid: AA(1), AA(3), AA(5), AA(8), FP, MFP, NBJ, NBGS over the
/// seven (a, c) rows of the reference tables at the given sizes.
ExperimentSpec default_spec(std::vector<std::size_t> sizes = {1024});

/// The seven (a, c) rows used by the reference tables.
std::vector<std::pair<double, double>> table_params();

/// Baseline cells whose (a, c) is within 1e-7 of the singular point (0, 1) take
/// hundreds of thousands of O(n^2) sweeps; they only run with include_long.
bool is_long_cell(const Method& method, double a, double c);

/// Parses a JSON object with keys methods, params, sizes, repeats, max_iter,
/// output, history_dump, long, workers. Missing keys keep their defaults.
ExperimentSpec spec_from_json(const std::string& text);

struct ResultRow {
  std::string method;
  double a = 0.0;
  double c = 0.0;
  std::size_t n = 0;
  std::size_t it = 0;
  double cpu_mean = 0.0;  // seconds, machine dependent
  double res_final = 0.0;
  std::string status;
  bool converged = false;
};

/// One solve of `method` on `prob` from x0 = 0 with the RES stopping rule.
SolveReport run_cell(const nare::Problem& prob, const Method& method, std::size_t max_iter,
                     bool record_history);

/// Runs every (size, params, method) cell in that nesting order. Each cell is
/// run `repeats` times; the first run is a warm-up excluded from the timing
/// mean when repeats > 1. Failures are reported in the row's status.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

/// CSV columns: method,a,c,n,it,cpu_mean_s,res_final,status. Markdown groups
/// rows by n, then by (a, c), with IT/CPU/RES lines per group. JSON is an
/// array of row objects.
std::string emit_table(const std::vector<ResultRow>& rows, OutputFormat format);

/// CSV "k,res_inf,fnorm2,eta", one line per recorded iteration. Throws
/// IoError on failure or InvalidArgument when the report has no records.
void dump_history(const SolveReport& report, const std::string& path);
void dump_history(const SolveReport& report, std::ostream& os);

/// File name used for per-cell history dumps.
std::string history_file_name(const Method& method, double a, double c, std::size_t n);

}  // namespace aa::bench
