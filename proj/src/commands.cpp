#include "respond/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "respond/csv.hpp"
#include "respond/error.hpp"

namespace respond::cli {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double period(const VibronicModel& model, int lambda) {
  return 2.0 * std::numbers::pi / model.state(lambda).frequencies.mean();
}

int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw Error(ErrorCode::SchemaError, "invalid " + what + " '" + text + "'");
  return value;
}

}  // namespace

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::SchemaError:
    case ErrorCode::InvalidModel:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::DimensionMismatch:
      return kUsage;
    case ErrorCode::UnsupportedSides:
      return kUnsupportedSides;
    default:
      return kNumerical;
  }
}

std::vector<double> time_axis(double max, int n, bool periodic) {
  if (n < 1) throw Error(ErrorCode::SchemaError, "a time axis needs at least one point");
  std::vector<double> t(static_cast<std::size_t>(n));
  const int divisions = periodic ? n : n - 1;
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = divisions > 0 ? max * i / divisions : 0.0;
  return t;
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw Error(ErrorCode::SchemaError, "grid must look like 200x200, got '" + text + "'");
  const int n1 = parse_int(text.substr(0, x), "grid size");
  const int n3 = parse_int(text.substr(x + 1), "grid size");
  if (n1 < 1 || n3 < 1) throw Error(ErrorCode::SchemaError, "grid sizes must be positive");
  return {n1, n3};
}

std::vector<int> parse_pathway(const std::string& text) {
  std::vector<int> lambdas;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const int lambda = parse_int(item, "electronic state");
    if (lambda < 0) throw Error(ErrorCode::SchemaError, "electronic states are non-negative, got " + item);
    lambdas.push_back(lambda);
  }
  if (lambdas.empty() || text.back() == ',') throw Error(ErrorCode::SchemaError, "malformed pathway '" + text + "'");
  return lambdas;
}

void run_linear(const VibronicModel& model, const LinearRequest& request, std::ostream& out) {
  if (request.steps < 1) throw Error(ErrorCode::SchemaError, "steps must be positive");
  const PathwaySpec pathway{{request.state}, {}, false, "linear"};
  GridOptions options;
  options.electronic = request.total;
  options.diagnostics = true;
  options.threads = request.threads;
  const ResponseGrid grid =
      scan_grid(model, pathway, {{0, time_axis(request.tmax, request.steps, false)}}, {0.0}, options);

  std::vector<std::string> header{"t", "Re_R", "Im_R", "abs_R"};
  for (int j = 1; j <= model.modes(); ++j) {
    for (const char* name : {"Re_alpha_", "Im_alpha_", "Re_z_", "Im_z_"}) header.push_back(name + std::to_string(j));
  }
  CsvWriter csv(out, header);
  std::vector<double> row;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex r = grid.values[i];
    const PointDiagnostics& d = grid.diagnostics[i];
    row = {grid.axes[0].values[i], r.real(), r.imag(), std::abs(r)};
    for (Eigen::Index j = 0; j < model.modes(); ++j) {
      row.insert(row.end(), {d.amplitudes(j).real(), d.amplitudes(j).imag(), d.squeeze(j, j).real(),
                             d.squeeze(j, j).imag()});
    }
    csv.row(row);
  }
}

void run_third(const VibronicModel& model, const ThirdRequest& request, std::ostream& out) {
  if (request.lambdas.size() != 3) throw Error(ErrorCode::SchemaError, "third-order pathways need three states");
  for (int lambda : request.lambdas) model.check_index(lambda);
  const double t1max = request.t1max > 0.0 ? request.t1max : period(model, request.lambdas[0]);
  const double t3max = request.t3max > 0.0 ? request.t3max : period(model, request.lambdas[2]);
  const PathwaySpec pathway{request.lambdas, request.sides, request.raw_times, "third"};
  GridOptions options;
  options.electronic = request.total;
  options.diagnostics = true;
  options.threads = request.threads;
  const ResponseGrid grid = scan_grid(model, pathway,
                                      {{0, time_axis(t1max, request.n1, request.periodic)},
                                       {2, time_axis(t3max, request.n3, request.periodic)}},
                                      {0.0, request.t2, 0.0}, options);

  CsvWriter csv(out, {"t1", "t3", "Re_R", "Im_R", "abs_R", "abs_A_sq"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::vector<double> t = grid.times_at(i);
    const Complex r = grid.values[i];
    const double row[] = {t[0], t[2], r.real(), r.imag(), std::abs(r), grid.diagnostics[i].amplitude_norm_sq};
    csv.row(row);
  }
}

OracleCheckReport run_oracle_check(const VibronicModel& model, const OracleCheckRequest& request) {
  if (request.trials < 0) throw Error(ErrorCode::SchemaError, "trials must be non-negative");
  if (model.modes() > 2) throw Error(ErrorCode::DimensionLimit, "the oracle supports at most two modes");
  const oracle::FockConfig defaults =
      model.modes() == 1 ? oracle::FockConfig{30, 1.0, 120} : oracle::FockConfig{24, 1.0, 24};
  oracle::FockConfig fock = request.fock;
  if (fock.n_max == 0) fock.n_max = std::min(defaults.n_max, fock.max_n_max > 0 ? fock.max_n_max : defaults.n_max);
  if (fock.max_n_max == 0) fock.max_n_max = std::max(defaults.max_n_max, fock.n_max);
  if (fock.tol == 0.0) fock.tol = request.tol;
  fock.validate();
  oracle::Oracle reference(model, fock);

  std::mt19937_64 rng(request.seed);
  const int excited = model.electronic_states() - 1;
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  OracleCheckReport report;
  double worst = -1.0;
  for (int trial = 0; trial < request.trials; ++trial) {
    const int lambda = excited > 0 ? 1 + static_cast<int>(uniform01(rng) * excited) : 0;
    const bool third = uniform01(rng) < 0.5;
    const std::vector<int> lambdas = third ? std::vector<int>{lambda, 0, lambda} : std::vector<int>{lambda};
    const double tmax = 2.0 * period(model, lambda);
    std::vector<double> times;
    for (std::size_t k = 0; k < lambdas.size(); ++k) times.push_back(tmax * uniform01(rng));

    const Complex method = vibrational_response(model, PathwaySpec{lambdas, {}, false, ""}, times);
    nlohmann::ordered_json entry{{"trial", trial}, {"lambdas", lambdas}, {"times", times},
                                 {"method", {method.real(), method.imag()}}};
    double diff = 0.0;
    try {
      const oracle::OracleValue o = reference.response(lambdas, times);
      diff = std::abs(method - o.value);
      entry["oracle"] = {o.value.real(), o.value.imag()};
      entry["n_max"] = o.n_max;
      entry["converged"] = true;
      entry["abs_diff"] = diff;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoConvergence) throw;
      // Doubling stops at the cap; compare against the capped value.
      const int cap = reference.config().max_n_max;
      const Complex capped = reference.engine(cap).response(lambdas, times);
      diff = std::abs(method - capped);
      entry["oracle"] = {capped.real(), capped.imag()};
      entry["n_max"] = cap;
      entry["converged"] = false;
      entry["abs_diff"] = diff;
    }
    if (!(diff <= request.tol)) report.pass = false;
    if (diff > worst) {
      worst = diff;
      report.worst = entry.dump();
    }
    report.max_abs_diff = std::max(report.max_abs_diff, diff);
    results.push_back(std::move(entry));
  }

  nlohmann::ordered_json doc{{"trials", request.trials},
                             {"seed", request.seed},
                             {"tol", request.tol},
                             {"n_max", fock.n_max},
                             {"max_n_max", fock.max_n_max},
                             {"oracle_tol", fock.tol}};
  doc["max_abs_diff"] = report.max_abs_diff;
  doc["pass"] = report.pass;
  doc["results"] = std::move(results);
  report.json = doc.dump(2) + "\n";
  return report;
}

}  // namespace respond::cli
