#pragma once

#include <iosfwd>
#include <string>

#include "aa/nare.hpp"

namespace aa::nare {

struct ProblemSpec {
  double a = 0.0;
  double c = 0.0;
  std::size_t n = 0;
};

/// {"a": ..., "c": ..., "n": ...}
std::string to_json(const ProblemSpec& spec);
ProblemSpec spec_from_json(const std::string& text);
ProblemSpec spec_of(const Problem& prob);

/// Row-major CSV with header "i,j,value" and 0-based indices; values are
/// written with 17 significant digits so they round-trip.
void write_solution_csv(std::ostream& os, const Matrix& X);
void write_solution_csv(const std::string& path, const Matrix& X);

}  // namespace aa::nare
