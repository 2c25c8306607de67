// spintomo command-line front end. Links only the C API.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spintomo/spintomo.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  ApiError(st_status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
  st_status status;
};

void check(st_status s) {
  if (s != ST_OK) throw ApiError(s, std::string(st_status_name(s)) + ": " + st_last_error());
}

int exit_code_for(st_status s) {
  switch (s) {
    case ST_ERR_ILL_POSED:
    case ST_ERR_INVARIANT:
    case ST_ERR_INTERNAL: return kExitNumerical;
    default: return kExitUsage;
  }
}

struct StateDeleter {
  void operator()(st_state* s) const { st_state_free(s); }
};
struct TomogramDeleter {
  void operator()(st_tomogram* t) const { st_tomogram_free(t); }
};
struct ShotsDeleter {
  void operator()(st_shots* s) const { st_shots_free(s); }
};
using StatePtr = std::unique_ptr<st_state, StateDeleter>;
using TomogramPtr = std::unique_ptr<st_tomogram, TomogramDeleter>;
using ShotsPtr = std::unique_ptr<st_shots, ShotsDeleter>;

std::string take_string(char* s) {
  std::string out(s);
  st_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad number '" + s + "' in " + what);
  }
}

// Options shared by every subcommand.
struct RunConfig {
  std::string command;
  std::string state;
  std::vector<std::string> dirs;
  std::size_t grid = 0;
  std::size_t random = 0;
  std::uint64_t seed = 0;
  std::string format;  // empty: the command's default
  std::string output;
  bool half_labels = false;
  std::string ineq;
  int d = 2;
  double tol = 1e-4;
  std::uint32_t restarts = 0;
  std::uint32_t max_iter = 0;
  double search_tol = 0.0;
  double phi_min = -1.0;
  double phi_max = 1.0;
  double phi_step = 0.05;
  std::uint64_t shots = 10000;
  std::string input;
  int dim = 0;

  Json echo() const {
    Json j{{"command", command}, {"seed", seed}, {"format", format}};
    if (!state.empty()) j["state"] = state;
    if (!dirs.empty()) j["dirs"] = dirs;
    if (grid) j["grid"] = grid;
    if (random) j["random"] = random;
    if (!ineq.empty()) j["ineq"] = ineq;
    if (command == "sweep" || command == "threshold") j["d"] = d;
    if (command == "threshold") j["tol"] = tol;
    if (command == "sweep") {
      j["phi_min"] = phi_min;
      j["phi_max"] = phi_max;
      j["phi_step"] = phi_step;
    }
    if (command == "sweep" || command == "threshold" || command == "optimize") {
      const st_search_config c = search_config();
      j["search"] = {{"restarts", c.restarts}, {"max_iterations", c.max_iterations}, {"tolerance", c.tolerance},
                     {"seed", c.seed}};
    }
    if (command == "sample") j["shots"] = shots;
    if (!input.empty()) j["input"] = input;
    if (dim) j["dim"] = dim;
    if (half_labels) j["half_labels"] = true;
    return j;
  }

  st_search_config search_config() const {
    st_search_config c;
    st_search_config_default(&c);
    if (restarts) c.restarts = restarts;
    if (max_iter) c.max_iterations = max_iter;
    if (search_tol > 0.0) c.tolerance = search_tol;
    c.seed = seed;
    return c;
  }
};

StatePtr load_state(const std::string& spec) {
  if (spec.empty()) throw UsageError("a state is required (--state werner:D:PHI | basis:DIM:INDEX | FILE.json)");
  st_state* raw = nullptr;
  const auto parts = split(spec, ':');
  if (parts.size() == 3 && parts[0] == "werner") {
    check(st_state_werner(static_cast<int>(parse_number(parts[1], "--state")), parse_number(parts[2], "--state"),
                          &raw));
  } else if (parts.size() == 3 && parts[0] == "basis") {
    check(st_state_basis(static_cast<int>(parse_number(parts[1], "--state")),
                         static_cast<int>(parse_number(parts[2], "--state")), &raw));
  } else if (std::filesystem::exists(spec)) {
    check(st_state_from_json(read_file(spec).c_str(), &raw));
  } else {
    throw UsageError("unrecognized state spec '" + spec + "'");
  }
  return StatePtr(raw);
}

struct Layout {
  std::size_t parties;
  std::size_t local;
};

Layout layout_of(const st_state* s) {
  std::size_t dim = 0;
  check(st_state_dim(s, &dim));
  for (std::size_t local : {2u, 3u}) {
    std::size_t p = 0;
    std::size_t n = 1;
    while (n < dim) {
      n *= local;
      ++p;
    }
    if (n == dim) return {p, local};
  }
  throw UsageError("state dimension " + std::to_string(dim) + " is not a power of 2 or 3");
}

// Tokens are x, y, z or numbers taken in (theta, phi) pairs.
std::vector<double> parse_direction_list(const std::string& text) {
  std::vector<double> angles;
  std::optional<double> pending;
  for (const std::string& raw : split(text, ',')) {
    std::string tok;
    for (char c : raw)
      if (!std::isspace(static_cast<unsigned char>(c))) tok += c;
    if (tok == "x" || tok == "y" || tok == "z") {
      if (pending) throw UsageError("direction '" + text + "': theta without phi before '" + tok + "'");
      const double half_pi = std::acos(0.0);
      if (tok == "x") angles.insert(angles.end(), {half_pi, 0.0});
      if (tok == "y") angles.insert(angles.end(), {half_pi, half_pi});
      if (tok == "z") angles.insert(angles.end(), {0.0, 0.0});
    } else if (pending) {
      angles.insert(angles.end(), {*pending, parse_number(tok, "--dirs")});
      pending.reset();
    } else {
      pending = parse_number(tok, "--dirs");
    }
  }
  if (pending) throw UsageError("direction '" + text + "': theta without phi");
  return angles;
}

// Direction settings (parties directions each, flattened angle pairs).
std::vector<std::vector<double>> direction_settings(const RunConfig& cfg, std::size_t parties, bool required) {
  const int given = (!cfg.dirs.empty()) + (cfg.grid > 0) + (cfg.random > 0);
  if (given > 1) throw UsageError("use only one of --dirs, --grid, --random");
  std::vector<std::vector<double>> out;
  if (!cfg.dirs.empty()) {
    for (const std::string& d : cfg.dirs) {
      auto angles = parse_direction_list(d);
      if (angles.size() != 2 * parties) {
        throw UsageError("--dirs '" + d + "' gives " + std::to_string(angles.size() / 2) + " directions, state has " +
                         std::to_string(parties) + " parties");
      }
      out.push_back(std::move(angles));
    }
  } else if (cfg.grid > 0) {
    std::vector<double> pts(2 * cfg.grid);
    check(st_fibonacci_directions(cfg.grid, pts.data()));
    std::vector<std::size_t> idx(parties, 0);
    while (true) {
      std::vector<double> s;
      for (std::size_t p : idx) s.insert(s.end(), {pts[2 * p], pts[2 * p + 1]});
      out.push_back(std::move(s));
      std::size_t k = parties;
      while (k > 0 && ++idx[k - 1] == cfg.grid) idx[--k] = 0;
      if (k == 0) break;
    }
  } else if (cfg.random > 0) {
    std::vector<double> pts(2 * cfg.random * parties);
    check(st_random_directions(cfg.random * parties, cfg.seed, pts.data()));
    for (std::size_t i = 0; i < cfg.random; ++i)
      out.emplace_back(pts.begin() + static_cast<std::ptrdiff_t>(2 * parties * i),
                       pts.begin() + static_cast<std::ptrdiff_t>(2 * parties * (i + 1)));
  } else if (required) {
    throw UsageError("directions are required (--dirs, --grid or --random)");
  }
  return out;
}

st_inequality parse_ineq(const std::string& name) {
  if (name.empty()) throw UsageError("--ineq is required (wigner, chsh, uffink)");
  st_inequality k;
  if (st_parse_inequality(name.c_str(), &k) != ST_OK) throw UsageError("unknown inequality '" + name + "'");
  return k;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json report_json(const st_report& r) {
  char* s = nullptr;
  check(st_report_to_json(&r, &s));
  return Json::parse(take_string(s));
}

std::string report_csv_header(const st_report& r) {
  std::string h = "kind,phi,lhs,bound,margin,violated";
  for (std::size_t i = 1; i <= r.n_directions; ++i) h += ",theta" + std::to_string(i) + ",phi" + std::to_string(i);
  return h;
}

std::string report_csv_row(const st_report& r, std::optional<double> phi) {
  static const char* kNames[] = {"wigner", "chsh", "uffink"};
  std::string row = std::string(kNames[r.kind]) + "," + (phi ? num(*phi) : "") + "," + num(r.lhs) + "," +
                    num(r.bound) + "," + num(r.margin) + "," + (r.violated ? "true" : "false");
  for (std::size_t i = 0; i < 2 * r.n_directions; ++i) row += "," + num(r.angles[i]);
  return row;
}

class Output {
 public:
  explicit Output(const RunConfig& cfg) : cfg_(cfg) {}

  void csv(const std::string& body) { write("# config: " + cfg_.echo().dump() + "\n" + body); }

  void json(Json j) {
    Json out{{"config", cfg_.echo()}};
    for (auto& [k, v] : j.items()) out[k] = v;
    write(out.dump(2) + "\n");
  }

  void text(const std::string& body) { write(body); }

 private:
  void write(const std::string& s) {
    if (cfg_.output.empty() || cfg_.output == "-") {
      std::cout << s;
      std::cout.flush();
      return;
    }
    std::filesystem::path p(cfg_.output);
    if (p.is_relative()) {
      if (const char* dir = std::getenv("SPINTOMO_OUTPUT_DIR"); dir != nullptr && *dir != '\0') p = dir / p;
    }
    std::ofstream f(p, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + p.string() + "'");
    f << s;
    if (!f) throw UsageError("write to '" + p.string() + "' failed");
  }

  const RunConfig& cfg_;
};

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (cfg.format == a) return;
  throw UsageError("format '" + cfg.format + "' not supported by " + cfg.command);
}

int cmd_tomogram(const RunConfig& cfg) {
  require_format(cfg, {"csv", "json"});
  const StatePtr state = load_state(cfg.state);
  const Layout layout = layout_of(state.get());
  st_tomogram* raw = nullptr;
  check(st_tomogram_new(&raw));
  const TomogramPtr tomo(raw);
  for (const auto& s : direction_settings(cfg, layout.parties, true))
    check(st_tomogram_append(tomo.get(), state.get(), s.data(), layout.parties));
  char* text = nullptr;
  Output out(cfg);
  if (cfg.format == "csv") {
    check(st_tomogram_serialize(tomo.get(), ST_FORMAT_CSV, cfg.half_labels, &text));
    out.csv(take_string(text));
  } else {
    check(st_tomogram_serialize(tomo.get(), ST_FORMAT_JSON, cfg.half_labels, &text));
    out.json(Json::parse(take_string(text)));
  }
  return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg) {
  require_format(cfg, {"csv", "json"});
  const st_inequality kind = parse_ineq(cfg.ineq);
  const StatePtr state = load_state(cfg.state);
  std::vector<st_report> reports;
  for (const auto& d : cfg.dirs) {
    const auto angles = parse_direction_list(d);
    st_report r;
    check(st_evaluate(state.get(), kind, angles.data(), angles.size() / 2, &r));
    reports.push_back(r);
  }
  if (reports.empty()) throw UsageError("--dirs is required for evaluate");
  Output out(cfg);
  if (cfg.format == "csv") {
    std::string body = report_csv_header(reports.front()) + "\n";
    for (const auto& r : reports) body += report_csv_row(r, std::nullopt) + "\n";
    out.csv(body);
  } else {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    out.json({{"reports", arr}});
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
  require_format(cfg, {"csv", "json"});
  const st_inequality kind = parse_ineq(cfg.ineq);
  if (!(cfg.phi_step > 0.0) || cfg.phi_min > cfg.phi_max) throw UsageError("need --phi-step > 0 and --phi-min <= --phi-max");
  const st_search_config sc = cfg.search_config();
  const auto steps = static_cast<std::size_t>(std::floor((cfg.phi_max - cfg.phi_min) / cfg.phi_step + 1e-9));
  std::string body;
  Json rows = Json::array();
  for (std::size_t i = 0; i <= steps; ++i) {
    const double phi = std::min(cfg.phi_max, cfg.phi_min + static_cast<double>(i) * cfg.phi_step);
    st_state* raw = nullptr;
    check(st_state_werner(cfg.d, phi, &raw));
    const StatePtr state(raw);
    st_search_result res;
    check(st_maximize(state.get(), kind, &sc, &res));
    if (i == 0) body = report_csv_header(res.best) + "\n";
    body += report_csv_row(res.best, phi) + "\n";
    rows.push_back({{"phi", phi}, {"max_margin", res.best_margin}, {"report", report_json(res.best)}});
  }
  Output out(cfg);
  if (cfg.format == "csv")
    out.csv(body);
  else
    out.json({{"rows", rows}});
  return kExitOk;
}

int cmd_threshold(const RunConfig& cfg) {
  require_format(cfg, {"text", "csv", "json"});
  const st_inequality kind = parse_ineq(cfg.ineq);
  if (!(cfg.tol > 0.0)) throw UsageError("--tol must be positive");
  const st_search_config sc = cfg.search_config();
  // Bisect two digits past the requested accuracy so the printed value
  // is correctly rounded.
  st_threshold_result r;
  check(st_threshold(cfg.d, kind, &sc, cfg.tol * 1e-2, &r));
  Output out(cfg);
  if (cfg.format == "text") {
    if (!r.found) {
      out.text("no threshold on [-1, 1]\n");
    } else {
      const int digits = std::max(1, static_cast<int>(std::ceil(-std::log10(cfg.tol))));
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.*f\n", digits, r.phi);
      out.text(buf);
    }
  } else if (cfg.format == "csv") {
    out.csv("kind,d,found,phi,monotone\n" + cfg.ineq + "," + std::to_string(cfg.d) + "," +
            (r.found ? "true" : "false") + "," + (r.found ? num(r.phi) : "") + "," + (r.monotone ? "true" : "false") +
            "\n");
  } else {
    out.json({{"found", r.found != 0},
              {"phi", r.found ? Json(r.phi) : Json(nullptr)},
              {"monotone", r.monotone != 0}});
  }
  return kExitOk;
}

int cmd_optimize(const RunConfig& cfg) {
  require_format(cfg, {"csv", "json"});
  const st_inequality kind = parse_ineq(cfg.ineq);
  const StatePtr state = load_state(cfg.state);
  const st_search_config sc = cfg.search_config();
  st_search_result res;
  check(st_maximize(state.get(), kind, &sc, &res));
  Output out(cfg);
  if (cfg.format == "csv") {
    out.csv(report_csv_header(res.best) + "\n" + report_csv_row(res.best, std::nullopt) + "\n");
  } else {
    char* s = nullptr;
    check(st_search_result_to_json(&res, &s));
    out.json({{"result", Json::parse(take_string(s))}});
  }
  return kExitOk;
}

int cmd_sample(const RunConfig& cfg) {
  require_format(cfg, {"csv", "json"});
  const StatePtr state = load_state(cfg.state);
  const Layout layout = layout_of(state.get());
  st_shots* raw = nullptr;
  check(st_shots_new(&raw));
  const ShotsPtr shots(raw);
  const auto settings = direction_settings(cfg, layout.parties, true);
  for (std::size_t i = 0; i < settings.size(); ++i) {
    // Same per-setting seed rule as the library's multi-setting estimators.
    const std::uint64_t seed = cfg.seed ^ (static_cast<std::uint64_t>(i) * 0x9E3779B97F4A7C15ULL);
    check(st_sample(shots.get(), state.get(), settings[i].data(), layout.parties, cfg.shots, seed));
  }
  char* text = nullptr;
  Output out(cfg);
  if (cfg.format == "csv") {
    check(st_shots_serialize(shots.get(), ST_FORMAT_CSV, &text));
    out.csv(take_string(text));
  } else {
    check(st_shots_serialize(shots.get(), ST_FORMAT_JSON, &text));
    out.json(Json::parse(take_string(text)));
  }
  return kExitOk;
}

int cmd_reconstruct(const RunConfig& cfg) {
  require_format(cfg, {"json"});
  StatePtr reference;
  TomogramPtr tomo;
  std::size_t dim = 0;
  if (!cfg.input.empty()) {
    const std::string text = read_file(cfg.input);
    const bool is_json = cfg.input.ends_with(".json") || text.find_first_not_of(" \t\r\n") == text.find('{');
    st_tomogram* raw = nullptr;
    check(st_tomogram_parse(text.c_str(), is_json ? ST_FORMAT_JSON : ST_FORMAT_CSV, &raw));
    tomo.reset(raw);
    if (!cfg.state.empty()) reference = load_state(cfg.state);
    if (cfg.dim > 0) {
      dim = static_cast<std::size_t>(cfg.dim);
    } else if (reference) {
      check(st_state_dim(reference.get(), &dim));
    } else {
      throw UsageError("--dim is required when reconstructing from --input without --state");
    }
  } else {
    reference = load_state(cfg.state);
    check(st_state_dim(reference.get(), &dim));
    st_tomogram* raw = nullptr;
    check(st_tomogram_new(&raw));
    tomo.reset(raw);
    check(st_tomogram_append_default_grid(tomo.get(), reference.get()));
  }
  st_state* raw = nullptr;
  int projected = 0;
  double residual = 0.0;
  check(st_reconstruct(tomo.get(), dim, &raw, &projected, &residual));
  const StatePtr rec(raw);
  char* s = nullptr;
  check(st_state_to_json(rec.get(), &s));
  std::size_t tables = 0;
  check(st_tomogram_count(tomo.get(), &tables));
  Json j{{"state", Json::parse(take_string(s))},
         {"projected", projected != 0},
         {"residual", residual},
         {"tomograms", tables}};
  if (reference) {
    double err = 0.0;
    check(st_state_frobenius_distance(rec.get(), reference.get(), &err));
    j["frobenius_error"] = err;
  }
  Output(cfg).json(j);
  return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "Seed for random directions, searches and sampling");
  sub->add_option("-o,--output", cfg.output, "Output file (relative paths resolve under $SPINTOMO_OUTPUT_DIR)");
}

void add_state(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--state", cfg.state, "werner:D:PHI, basis:DIM:INDEX or a density-matrix JSON file");
}

void add_dirs(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--dirs", cfg.dirs, "One setting: comma list of x, y, z or theta,phi pairs (repeatable)");
  sub->add_option("--grid", cfg.grid, "N Fibonacci-sphere directions per party, all combinations");
  sub->add_option("--random", cfg.random, "N seeded random settings");
}

void add_search(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--ineq", cfg.ineq, "wigner, chsh or uffink")->required();
  sub->add_option("--restarts", cfg.restarts, "Search restarts (default 32)");
  sub->add_option("--max-iter", cfg.max_iter, "Nelder-Mead iterations per restart (default 4000)");
  sub->add_option("--search-tol", cfg.search_tol, "Simplex diameter tolerance (default 1e-10)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tomographic spin states and Bell-type inequalities"};
  app.set_version_flag("--version", std::string(st_version()));
  app.require_subcommand(1);
  RunConfig cfg;

  auto* tomogram = app.add_subcommand("tomogram", "Tomogram table of a state");
  add_state(tomogram, cfg);
  add_dirs(tomogram, cfg);
  add_common(tomogram, cfg);
  tomogram->add_option("--format", cfg.format, "csv or json");
  tomogram->add_flag("--half-labels", cfg.half_labels, "Print qubit outcomes as +-0.5");

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate an inequality at given directions");
  add_state(evaluate, cfg);
  evaluate->add_option("--ineq", cfg.ineq, "wigner, chsh or uffink")->required();
  evaluate->add_option("--dirs", cfg.dirs, "Direction tuple for the inequality (repeatable)");
  add_common(evaluate, cfg);
  evaluate->add_option("--format", cfg.format, "csv or json");

  auto* sweep = app.add_subcommand("sweep", "Maximized margin over a grid of Werner parameters");
  add_search(sweep, cfg);
  sweep->add_option("--d", cfg.d, "Local dimension of the Werner state (2 or 3)");
  sweep->add_option("--phi-min", cfg.phi_min, "Lower end of the phi grid (default -1)");
  sweep->add_option("--phi-max", cfg.phi_max, "Upper end of the phi grid (default 1)");
  sweep->add_option("--phi-step", cfg.phi_step, "Grid spacing (default 0.05)");
  add_common(sweep, cfg);
  sweep->add_option("--format", cfg.format, "csv or json");

  auto* threshold = app.add_subcommand("threshold", "Werner parameter where violation starts");
  add_search(threshold, cfg);
  threshold->add_option("--d", cfg.d, "Local dimension of the Werner state (2 or 3)");
  threshold->add_option("--tol", cfg.tol, "Bisection tolerance in phi");
  add_common(threshold, cfg);
  threshold->add_option("--format", cfg.format, "text, csv or json");

  auto* optimize = app.add_subcommand("optimize", "Maximize an inequality margin over directions");
  add_state(optimize, cfg);
  add_search(optimize, cfg);
  add_common(optimize, cfg);
  optimize->add_option("--format", cfg.format, "json or csv");

  auto* sample = app.add_subcommand("sample", "Simulated measurement counts");
  add_state(sample, cfg);
  add_dirs(sample, cfg);
  sample->add_option("--shots", cfg.shots, "Shots per setting");
  add_common(sample, cfg);
  sample->add_option("--format", cfg.format, "csv or json");

  auto* reconstruct = app.add_subcommand("reconstruct", "Least-squares state reconstruction");
  add_state(reconstruct, cfg);
  reconstruct->add_option("--input", cfg.input, "Tomogram file (csv or json); default: exact tomograms of --state");
  reconstruct->add_option("--dim", cfg.dim, "Hilbert-space dimension of the reconstructed state");
  add_common(reconstruct, cfg);
  reconstruct->add_option("--format", cfg.format, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.format.empty()) {
      cfg.format = cfg.command == "threshold" ? "text"
                   : (cfg.command == "optimize" || cfg.command == "reconstruct") ? "json"
                                                                                    : "csv";
    }
    if (cfg.command == "tomogram") return cmd_tomogram(cfg);
    if (cfg.command == "evaluate") return cmd_evaluate(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg);
    if (cfg.command == "threshold") return cmd_threshold(cfg);
    if (cfg.command == "optimize") return cmd_optimize(cfg);
    if (cfg.command == "sample") return cmd_sample(cfg);
    if (cfg.command == "reconstruct") return cmd_reconstruct(cfg);
  } catch (const UsageError& e) {
    std::cerr << "spintomo: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ApiError& e) {
    std::cerr << "spintomo: " << e.what() << "\n";
    return exit_code_for(e.status);
  } catch (const std::exception& e) {
    std::cerr << "spintomo: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
