#include "aa/nare_io.hpp"

#include <fstream>
#include <ostream>

#include <json.hpp>

#include "aa/errors.hpp"

namespace aa::nare {

std::string to_json(const ProblemSpec& spec) {
  nlohmann::json j{{"a", spec.a}, {"c", spec.c}, {"n", spec.n}};
  return j.dump();
}

ProblemSpec spec_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    return ProblemSpec{j.at("a").get<double>(), j.at("c").get<double>(), j.at("n").get<std::size_t>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("problem spec: ") + e.what());
  }
}

ProblemSpec spec_of(const Problem& prob) { return {prob.a(), prob.c(), prob.n()}; }

void write_solution_csv(std::ostream& os, const Matrix& X) {
  os << "i,j,value\n";
  char buf[64];
  for (std::size_t i = 0; i < X.rows(); ++i) {
    for (std::size_t j = 0; j < X.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", X(i, j));
      os << i << ',' << j << ',' << buf << '\n';
    }
  }
}

void write_solution_csv(const std::string& path, const Matrix& X) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  write_solution_csv(out, X);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace aa::nare
