#include "spintomo/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "spintomo/errors.hpp"

namespace spintomo {
namespace {

std::string label_text(Spin spin, int m, LabelStyle style) {
  if (spin == Spin::half && style == LabelStyle::half_integer) return m > 0 ? "0.5" : "-0.5";
  return std::to_string(m);
}

Json label_json(Spin spin, int m, LabelStyle style) {
  if (spin == Spin::half && style == LabelStyle::half_integer) return 0.5 * m;
  return m;
}

int parse_label(double v, Spin spin) {
  if (spin == Spin::half && std::abs(std::abs(v) - 0.5) < 1e-12) return v > 0 ? 1 : -1;
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-12) throw ParseError("outcome label " + format_double(v) + " is not a projection");
  return static_cast<int>(r);
}

double parse_double(std::string_view s) {
  // std::from_chars for double is incomplete on older toolchains; strtod
  // with a bounded copy is exact for %.17g output.
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) throw ParseError("invalid number '" + tmp + "'");
  return v;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Json directions_json(const std::vector<Direction>& dirs) {
  Json arr = Json::array();
  for (const Direction& d : dirs) arr.push_back(to_json(d));
  return arr;
}

std::vector<Direction> directions_from_json(const Json& arr) {
  std::vector<Direction> dirs;
  for (const Json& d : arr) dirs.push_back(direction_from_json(d));
  return dirs;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

template <typename F>
auto wrap_parse(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const DensityMatrix& rho) {
  Json entries = Json::array();
  for (const Complex& z : rho.matrix().entries()) entries.push_back({z.real(), z.imag()});
  return {{"dim", rho.dim()}, {"entries", entries}};
}

DensityMatrix density_matrix_from_json(const Json& j) {
  return wrap_parse([&] {
    const std::size_t dim = j.at("dim").get<std::size_t>();
    const Json& e = j.at("entries");
    if (!e.is_array() || e.size() != dim * dim) throw ParseError("density matrix needs dim*dim entries");
    std::vector<Complex> entries;
    entries.reserve(e.size());
    for (const Json& z : e) {
      if (!z.is_array() || z.size() != 2) throw ParseError("entries must be [re, im] pairs");
      entries.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
    return DensityMatrix(ComplexMatrix(dim, dim, std::move(entries)));
  });
}

Json to_json(const Direction& d) { return {{"theta", d.theta()}, {"phi", d.phi()}}; }

Direction direction_from_json(const Json& j) {
  return wrap_parse([&] { return Direction(j.at("theta").get<double>(), j.at("phi").get<double>()); });
}

Json to_json(const Tomogram& t, LabelStyle style) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    Json outcome = Json::array();
    for (int m : t.labels_at(i)) outcome.push_back(label_json(t.spin(), m, style));
    entries.push_back({{"outcome", outcome}, {"probability", t.probabilities()[i]}});
  }
  return {{"parties", t.parties()},
          {"outcomes_per_party", t.outcomes_per_party()},
          {"directions", directions_json(t.directions())},
          {"entries", entries}};
}

Tomogram tomogram_from_json(const Json& j) {
  return wrap_parse([&] {
    const std::size_t parties = j.at("parties").get<std::size_t>();
    const Spin spin = spin_for_dimension(j.at("outcomes_per_party").get<std::size_t>());
    auto dirs = directions_from_json(j.at("directions"));
    if (dirs.size() != parties) throw ParseError("direction count does not match parties");
    std::vector<double> probs(ipow(spin_dimension(spin), parties), 0.0);
    std::vector<bool> seen(probs.size(), false);
    for (const Json& e : j.at("entries")) {
      std::vector<int> labels;
      for (const Json& m : e.at("outcome")) labels.push_back(parse_label(m.get<double>(), spin));
      if (labels.size() != parties) throw ParseError("outcome tuple length does not match parties");
      const std::size_t idx = outcome_index(spin, labels);
      if (seen[idx]) throw ParseError("duplicate outcome in tomogram");
      seen[idx] = true;
      probs[idx] = e.at("probability").get<double>();
    }
    return Tomogram(spin, std::move(dirs), std::move(probs));
  });
}

std::string tomogram_csv_header(std::size_t parties) {
  std::string h;
  for (std::size_t p = 1; p <= parties; ++p) h += "theta" + std::to_string(p) + ",phi" + std::to_string(p) + ",";
  for (std::size_t p = 1; p <= parties; ++p) h += "m" + std::to_string(p) + ",";
  return h + "probability";
}

std::string tomograms_to_csv(std::span<const Tomogram> tomograms, LabelStyle style) {
  if (tomograms.empty()) throw ShapeError("no tomograms to write");
  const std::size_t parties = tomograms.front().parties();
  std::string out = tomogram_csv_header(parties) + "\n";
  for (const Tomogram& t : tomograms) {
    if (t.parties() != parties) throw ShapeError("tomograms in one CSV must share a party count");
    std::string prefix;
    for (const Direction& d : t.directions()) prefix += format_double(d.theta()) + "," + format_double(d.phi()) + ",";
    for (std::size_t i = 0; i < t.size(); ++i) {
      out += prefix;
      for (int m : t.labels_at(i)) out += label_text(t.spin(), m, style) + ",";
      out += format_double(t.probabilities()[i]) + "\n";
    }
  }
  return out;
}

std::vector<Tomogram> tomograms_from_csv(std::string_view csv) {
  std::vector<std::vector<std::string_view>> rows;
  std::size_t parties = 0;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t end = csv.find('\n', pos);
    if (end == std::string_view::npos) end = csv.size();
    std::string_view line = csv.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_commas(line);
    if (!have_header) {
      if (fields.size() < 4 || (fields.size() - 1) % 3 != 0 || fields.back() != "probability") {
        throw ParseError("unexpected tomogram CSV header");
      }
      parties = (fields.size() - 1) / 3;
      if (std::string(line) != tomogram_csv_header(parties)) throw ParseError("unexpected tomogram CSV header");
      have_header = true;
      continue;
    }
    if (fields.size() != 3 * parties + 1) throw ParseError("tomogram CSV row has wrong field count");
    rows.push_back(std::move(fields));
  }
  if (!have_header) throw ParseError("tomogram CSV has no header");

  std::vector<Tomogram> out;
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i + 1;
    auto same_group = [&](std::size_t r) {
      for (std::size_t k = 0; k < 2 * parties; ++k)
        if (rows[r][k] != rows[i][k]) return false;
      return true;
    };
    while (j < rows.size() && same_group(j)) ++j;
    const std::size_t count = j - i;
    Spin spin;
    if (count == ipow(2, parties)) {
      spin = Spin::half;
    } else if (count == ipow(3, parties)) {
      spin = Spin::one;
    } else {
      throw ParseError("tomogram CSV group of " + std::to_string(count) + " rows matches no layout");
    }
    std::vector<Direction> dirs;
    for (std::size_t p = 0; p < parties; ++p)
      dirs.emplace_back(parse_double(rows[i][2 * p]), parse_double(rows[i][2 * p + 1]));
    std::vector<double> probs(count, 0.0);
    std::vector<bool> seen(count, false);
    for (std::size_t r = i; r < j; ++r) {
      std::vector<int> labels;
      for (std::size_t p = 0; p < parties; ++p) labels.push_back(parse_label(parse_double(rows[r][2 * parties + p]), spin));
      const std::size_t idx = outcome_index(spin, labels);
      if (seen[idx]) throw ParseError("duplicate outcome row in tomogram CSV");
      seen[idx] = true;
      probs[idx] = parse_double(rows[r][3 * parties]);
    }
    out.emplace_back(spin, std::move(dirs), std::move(probs));
    i = j;
  }
  return out;
}

Json to_json(const InequalityReport& r) {
  return {{"kind", std::string(to_string(r.kind))},
          {"directions", directions_json(r.directions)},
          {"lhs", r.lhs},
          {"bound", r.bound},
          {"margin", r.margin},
          {"violated", r.violated}};
}

InequalityReport report_from_json(const Json& j) {
  return wrap_parse([&] {
    const auto kind = parse_inequality_kind(j.at("kind").get<std::string>());
    if (!kind) throw ParseError("unknown inequality kind");
    InequalityReport r{*kind, directions_from_json(j.at("directions")), j.at("lhs").get<double>(),
                       j.at("bound").get<double>(), j.at("margin").get<double>(), j.at("violated").get<bool>()};
    return r;
  });
}

std::string report_csv_header(InequalityKind kind) {
  std::string h = "kind,phi,lhs,bound,margin,violated";
  for (std::size_t i = 1; i <= direction_count(kind); ++i)
    h += ",theta" + std::to_string(i) + ",phi" + std::to_string(i);
  return h;
}

std::string report_csv_row(const InequalityReport& r, std::optional<double> werner_phi) {
  std::string row = std::string(to_string(r.kind)) + "," + (werner_phi ? format_double(*werner_phi) : "") + "," +
                    format_double(r.lhs) + "," + format_double(r.bound) + "," + format_double(r.margin) + "," +
                    (r.violated ? "1" : "0");
  for (const Direction& d : r.directions) row += "," + format_double(d.theta()) + "," + format_double(d.phi());
  return row;
}

Json to_json(const SearchResult& r) {
  return {{"best_report", to_json(r.best_report)},
          {"best_margin", r.best_margin},
          {"evaluations", r.evaluations},
          {"converged", r.converged}};
}

SearchResult search_result_from_json(const Json& j) {
  return wrap_parse([&] {
    SearchResult r;
    r.best_report = report_from_json(j.at("best_report"));
    r.best_margin = j.at("best_margin").get<double>();
    r.evaluations = j.at("evaluations").get<std::size_t>();
    r.converged = j.at("converged").get<bool>();
    return r;
  });
}

Json to_json(const SearchConfig& c) {
  return {{"restarts", c.restarts}, {"max_iterations", c.max_iterations}, {"tolerance", c.tolerance}, {"seed", c.seed}};
}

Json to_json(const ShotRecord& r) {
  Json counts = Json::array();
  for (std::size_t i = 0; i < r.counts.size(); ++i) {
    counts.push_back({{"outcome", outcome_tuple(r.spin, r.directions.size(), i)}, {"count", r.counts[i]}});
  }
  return {{"seed", r.seed},
          {"shots", r.shots},
          {"outcomes_per_party", spin_dimension(r.spin)},
          {"directions", directions_json(r.directions)},
          {"counts", counts}};
}

ShotRecord shot_record_from_json(const Json& j) {
  return wrap_parse([&] {
    ShotRecord r;
    r.spin = spin_for_dimension(j.at("outcomes_per_party").get<std::size_t>());
    r.directions = directions_from_json(j.at("directions"));
    r.shots = j.at("shots").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    const std::size_t n = ipow(spin_dimension(r.spin), r.directions.size());
    r.counts.assign(n, 0);
    for (const Json& c : j.at("counts")) {
      std::vector<int> labels = c.at("outcome").get<std::vector<int>>();
      if (labels.size() != r.directions.size()) throw ParseError("outcome tuple length does not match parties");
      r.counts[outcome_index(r.spin, labels)] = c.at("count").get<std::uint64_t>();
    }
    std::uint64_t total = 0;
    for (auto c : r.counts) total += c;
    if (total != r.shots) throw ParseError("shot counts do not sum to shots");
    return r;
  });
}

std::string shot_records_to_csv(std::span<const ShotRecord> records) {
  if (records.empty()) throw ShapeError("no shot records to write");
  const std::size_t parties = records.front().directions.size();
  std::string header = tomogram_csv_header(parties);
  header.replace(header.rfind("probability"), std::string("probability").size(), "count");
  std::string out = header + "\n";
  for (const ShotRecord& r : records) {
    std::string prefix;
    for (const Direction& d : r.directions) prefix += format_double(d.theta()) + "," + format_double(d.phi()) + ",";
    for (std::size_t i = 0; i < r.counts.size(); ++i) {
      out += prefix;
      for (int m : outcome_tuple(r.spin, parties, i)) out += std::to_string(m) + ",";
      out += std::to_string(r.counts[i]) + "\n";
    }
  }
  return out;
}

Json to_json(const Estimate& e) { return {{"value", e.value}, {"std_error", e.std_error}, {"shots", e.shots}}; }

}  // namespace spintomo
