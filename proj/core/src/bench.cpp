#include "aa/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "aa/errors.hpp"
#include "aa/solver.hpp"
#include "aa/stopping.hpp"

namespace aa::bench {

std::string Method::name() const {
  if (anderson) return "AA(" + std::to_string(depth) + ")";
  return std::string(to_string(baseline));
}

std::optional<Method> parse_method(std::string_view text) {
  if (auto kind = parse_baseline(text)) return Method::base(*kind);
  std::string_view digits;
  if (text.starts_with("AA:")) {
    digits = text.substr(3);
  } else if (text.starts_with("AA(") && text.ends_with(")")) {
    digits = text.substr(3, text.size() - 4);
  } else {
    return std::nullopt;
  }
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    return std::nullopt;
  const auto depth = std::stoul(std::string(digits));
  if (depth == 0) return std::nullopt;
  return Method::aa(depth);
}

std::optional<OutputFormat> parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "markdown" || text == "md") return OutputFormat::Markdown;
  if (text == "json") return OutputFormat::Json;
  return std::nullopt;
}

void ExperimentSpec::validate() const {
  if (methods.empty()) throw Error(ErrorCode::InvalidArgument, "no methods");
  if (params.empty()) throw Error(ErrorCode::InvalidArgument, "no (a, c) pairs");
  if (sizes.empty()) throw Error(ErrorCode::InvalidArgument, "no sizes");
  if (repeats == 0) throw Error(ErrorCode::InvalidArgument, "repeats must be positive");
  if (max_iter == 0) throw Error(ErrorCode::InvalidArgument, "max_iter must be positive");
  if (workers == 0) throw Error(ErrorCode::InvalidArgument, "workers must be positive");
  for (auto n : sizes)
    if (n == 0 || n % 4 != 0)
      throw Error(ErrorCode::InvalidSize, "size " + std::to_string(n) + " is not a positive multiple of 4");
  for (auto [a, c] : params)
    if (!(a >= 0.0 && a < 1.0 && c > 0.0 && c <= 1.0))
      throw Error(ErrorCode::ParamOutOfRange, "(a, c) out of range");
}

std::vector<std::pair<double, double>> table_params() {
  return {{0.9, 0.1},          {0.1, 0.9},          {1e-2, 1.0 - 1e-2}, {1e-4, 1.0 - 1e-4},
          {1e-6, 1.0 - 1e-6}, {1e-8, 1.0 - 1e-8}, {1e-9, 1.0 - 1e-9}};
}

ExperimentSpec default_spec(std::vector<std::size_t> sizes) {
  ExperimentSpec spec;
  spec.methods = {Method::aa(1),
                  Method::aa(3),
                  Method::aa(5),
                  Method::aa(8),
                  Method::base(BaselineKind::FP),
                  Method::base(BaselineKind::MFP),
                  Method::base(BaselineKind::NBJ),
                  Method::base(BaselineKind::NBGS)};
  spec.params = table_params();
  spec.sizes = std::move(sizes);
  return spec;
}

bool is_long_cell(const Method& method, double a, double c) {
  return !method.anderson && a + (1.0 - c) < 1e-7;
}

ExperimentSpec spec_from_json(const std::string& text) {
  ExperimentSpec spec = default_spec();
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.contains("methods")) {
      spec.methods.clear();
      for (const auto& m : j.at("methods")) {
        auto parsed = parse_method(m.get<std::string>());
        if (!parsed) throw Error(ErrorCode::InvalidArgument, "unknown method " + m.get<std::string>());
        spec.methods.push_back(*parsed);
      }
    }
    if (j.contains("params")) {
      spec.params.clear();
      for (const auto& p : j.at("params")) {
        if (p.is_array())
          spec.params.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        else
          spec.params.emplace_back(p.at("a").get<double>(), p.at("c").get<double>());
      }
    }
    if (j.contains("sizes")) spec.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    if (j.contains("repeats")) spec.repeats = j.at("repeats").get<std::size_t>();
    if (j.contains("max_iter")) spec.max_iter = j.at("max_iter").get<std::size_t>();
    if (j.contains("output")) {
      auto fmt = parse_format(j.at("output").get<std::string>());
      if (!fmt) throw Error(ErrorCode::InvalidArgument, "unknown output format");
      spec.output = *fmt;
    }
    if (j.contains("history_dump") && !j.at("history_dump").is_null())
      spec.history_dump = j.at("history_dump").get<std::string>();
    if (j.contains("long")) spec.include_long = j.at("long").get<bool>();
    if (j.contains("workers")) spec.workers = j.at("workers").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("experiment spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

SolveReport run_cell(const nare::Problem& prob, const Method& method, std::size_t max_iter,
                     bool record_history) {
  const auto stop = res_rule(prob.n());
  if (method.anderson) {
    const Vector x0(prob.dim(), 0.0);
    return aa_solve(prob.map(), x0, AaConfig{method.depth, max_iter, record_history}, stop);
  }
  return baseline_solve(prob, method.baseline, stop, BaselineConfig{max_iter, record_history});
}

namespace {

struct Cell {
  Method method;
  double a;
  double c;
  std::size_t n;
};

ResultRow run_one(const Cell& cell, const nare::Problem& prob, const ExperimentSpec& spec) {
  ResultRow row{cell.method.name(), cell.a, cell.c, cell.n, 0, 0.0, 0.0, "", false};
  const bool dump = spec.history_dump.has_value();
  try {
    double timed = 0.0;
    std::size_t timed_runs = 0;
    for (std::size_t r = 0; r < spec.repeats; ++r) {
      const SolveReport rep = run_cell(prob, cell.method, spec.max_iter, dump && r == 0);
      if (r == 0) {
        row.it = rep.iterations;
        row.res_final = rep.final_res;
        row.converged = rep.converged;
        row.status = std::string(to_string(rep.status));
        if (dump) {
          std::filesystem::create_directories(*spec.history_dump);
          const auto path = std::filesystem::path(*spec.history_dump) /
                            history_file_name(cell.method, cell.a, cell.c, cell.n);
          dump_history(rep, path.string());
        }
      } else if (rep.iterations != row.it) {
        row.status = "nondeterministic";
        row.converged = false;
      }
      if (spec.repeats == 1 || r > 0) {
        timed += rep.wall_time;
        ++timed_runs;
      }
    }
    row.cpu_mean = timed / static_cast<double>(timed_runs);
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
    row.converged = false;
  }
  return row;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<Cell> cells;
  for (auto n : spec.sizes)
    for (auto [a, c] : spec.params)
      for (const auto& m : spec.methods)
        if (spec.include_long || !is_long_cell(m, a, c)) cells.push_back({m, a, c, n});

  // Problems are immutable and shared read-only between workers.
  std::map<std::tuple<double, double, std::size_t>, std::unique_ptr<nare::Problem>> problems;
  for (const auto& cell : cells) {
    auto key = std::make_tuple(cell.a, cell.c, cell.n);
    if (!problems.count(key)) problems.emplace(key, std::make_unique<nare::Problem>(cell.a, cell.c, cell.n));
  }

  std::vector<ResultRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const auto& cell = cells[i];
      rows[i] = run_one(cell, *problems.at(std::make_tuple(cell.a, cell.c, cell.n)), spec);
    }
  };
  const std::size_t nthreads = std::min(spec.workers, std::max<std::size_t>(cells.size(), 1));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string param_label(double a, double c) {
  return "(" + fmt("%.10g", a) + "," + fmt("%.10g", c) + ")";
}

std::string emit_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << "method,a,c,n,it,cpu_mean_s,res_final,status\n";
  for (const auto& r : rows) {
    os << r.method << ',' << fmt("%.10g", r.a) << ',' << fmt("%.10g", r.c) << ',' << r.n << ',' << r.it << ','
       << fmt("%.4f", r.cpu_mean) << ',' << fmt("%.4e", r.res_final) << ',' << r.status << '\n';
  }
  return os.str();
}

std::string emit_markdown(const std::vector<ResultRow>& rows) {
  std::vector<std::string> methods;
  std::vector<std::size_t> sizes;
  for (const auto& r : rows) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
    if (std::find(sizes.begin(), sizes.end(), r.n) == sizes.end()) sizes.push_back(r.n);
  }

  std::ostringstream os;
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    const std::size_t n = sizes[s];
    if (s > 0) os << '\n';
    os << "### n = " << n << "\n\n| (a,c) | Item |";
    for (const auto& m : methods) os << ' ' << m << " |";
    os << "\n|---|---|";
    for (std::size_t i = 0; i < methods.size(); ++i) os << "---|";
    os << '\n';

    std::vector<std::pair<double, double>> groups;
    for (const auto& r : rows)
      if (r.n == n && std::find(groups.begin(), groups.end(), std::make_pair(r.a, r.c)) == groups.end())
        groups.emplace_back(r.a, r.c);

    for (auto [a, c] : groups) {
      auto find = [&](const std::string& m) -> const ResultRow* {
        for (const auto& r : rows)
          if (r.n == n && r.a == a && r.c == c && r.method == m) return &r;
        return nullptr;
      };
      const char* items[] = {"IT", "CPU", "RES"};
      for (int item = 0; item < 3; ++item) {
        os << "| " << (item == 0 ? param_label(a, c) : std::string()) << " | " << items[item] << " |";
        for (const auto& m : methods) {
          const ResultRow* r = find(m);
          std::string cell = "-";
          if (r) {
            if (item == 0) cell = std::to_string(r->it) + (r->converged ? "" : "*");
            if (item == 1) cell = fmt("%.4f", r->cpu_mean);
            if (item == 2) cell = fmt("%.4e", r->res_final);
          }
          os << ' ' << cell << " |";
        }
        os << '\n';
      }
    }
  }
  return os.str();
}

std::string emit_json(const std::vector<ResultRow>& rows) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"method", r.method},
                   {"a", r.a},
                   {"c", r.c},
                   {"n", r.n},
                   {"it", r.it},
                   {"cpu_mean_s", r.cpu_mean},
                   {"res_final", r.res_final},
                   {"status", r.status}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace

std::string emit_table(const std::vector<ResultRow>& rows, OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: return emit_csv(rows);
    case OutputFormat::Markdown: return emit_markdown(rows);
    case OutputFormat::Json: return emit_json(rows);
  }
  return {};
}

void dump_history(const SolveReport& report, std::ostream& os) {
  if (report.records.empty() && report.iterations > 0)
    throw Error(ErrorCode::InvalidArgument, "report carries no iteration records");
  os << "k,res_inf,fnorm2,eta\n";
  char buf[128];
  for (const auto& r : report.records) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", r.k, r.res_inf, r.fnorm2, r.eta);
    os << buf;
  }
}

void dump_history(const SolveReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  dump_history(report, out);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

std::string history_file_name(const Method& method, double a, double c, std::size_t n) {
  std::string m = method.anderson ? "AA" + std::to_string(method.depth) : method.name();
  return m + "_a" + fmt("%.10g", a) + "_c" + fmt("%.10g", c) + "_n" + std::to_string(n) + ".csv";
}

}  // namespace aa::bench
