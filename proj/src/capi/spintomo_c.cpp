#include "spintomo/spintomo.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "spintomo/errors.hpp"
#include "spintomo/inequalities.hpp"
#include "spintomo/provider.hpp"
#include "spintomo/sampling.hpp"
#include "spintomo/search.hpp"
#include "spintomo/serialize.hpp"
#include "spintomo/states.hpp"
#include "spintomo/tomography.hpp"

struct st_state {
  spintomo::DensityMatrix rho;
};

struct st_tomogram {
  std::vector<spintomo::Tomogram> tables;
};

struct st_shots {
  std::vector<spintomo::ShotRecord> records;
};

namespace {

thread_local std::string g_last_error;

st_status fail(st_status code, std::string msg) {
  g_last_error = std::move(msg);
  return code;
}

struct InvalidArgument {
  std::string msg;
};

template <typename F>
st_status guarded(F&& f) {
  try {
    f();
    return ST_OK;
  } catch (const InvalidArgument& e) {
    return fail(ST_ERR_INVALID_ARGUMENT, e.msg);
  } catch (const spintomo::ShapeError& e) {
    return fail(ST_ERR_SHAPE, e.what());
  } catch (const spintomo::DomainError& e) {
    return fail(ST_ERR_DOMAIN, e.what());
  } catch (const spintomo::IllPosedError& e) {
    return fail(ST_ERR_ILL_POSED, e.what());
  } catch (const spintomo::InvariantError& e) {
    return fail(ST_ERR_INVARIANT, e.what());
  } catch (const spintomo::MissingDataError& e) {
    return fail(ST_ERR_MISSING_DATA, e.what());
  } catch (const spintomo::ParseError& e) {
    return fail(ST_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ST_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ST_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ST_ERR_INTERNAL, "unknown error");
  }
}

template <typename T>
T& require(T* p, const char* name) {
  if (p == nullptr) throw InvalidArgument{std::string(name) + " is null"};
  return *p;
}

const char* require_str(const char* s, const char* name) {
  if (s == nullptr) throw InvalidArgument{std::string(name) + " is null"};
  return s;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<spintomo::Direction> read_directions(const double* angles, std::size_t n) {
  if (n > 0 && angles == nullptr) throw InvalidArgument{"angles is null"};
  std::vector<spintomo::Direction> dirs;
  dirs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) dirs.emplace_back(angles[2 * i], angles[2 * i + 1]);
  return dirs;
}

spintomo::InequalityKind to_kind(st_inequality k) {
  switch (k) {
    case ST_WIGNER: return spintomo::InequalityKind::wigner;
    case ST_CHSH: return spintomo::InequalityKind::chsh;
    case ST_UFFINK: return spintomo::InequalityKind::uffink;
  }
  throw InvalidArgument{"unknown inequality kind " + std::to_string(static_cast<int>(k))};
}

st_inequality from_kind(spintomo::InequalityKind k) {
  switch (k) {
    case spintomo::InequalityKind::wigner: return ST_WIGNER;
    case spintomo::InequalityKind::chsh: return ST_CHSH;
    case spintomo::InequalityKind::uffink: return ST_UFFINK;
  }
  return ST_WIGNER;
}

spintomo::SearchConfig to_config(const st_search_config* cfg) {
  spintomo::SearchConfig c;
  if (cfg != nullptr) {
    c.restarts = cfg->restarts;
    c.max_iterations = cfg->max_iterations;
    c.tolerance = cfg->tolerance;
    c.seed = cfg->seed;
  }
  return c;
}

void fill_report(const spintomo::InequalityReport& r, st_report* out) {
  *out = st_report{};
  out->kind = from_kind(r.kind);
  out->lhs = r.lhs;
  out->bound = r.bound;
  out->margin = r.margin;
  out->violated = r.violated ? 1 : 0;
  out->n_directions = r.directions.size();
  for (std::size_t i = 0; i < r.directions.size() && i < 4; ++i) {
    out->angles[2 * i] = r.directions[i].theta();
    out->angles[2 * i + 1] = r.directions[i].phi();
  }
}

spintomo::InequalityReport read_report(const st_report& r) {
  if (r.n_directions > 4) throw InvalidArgument{"report holds at most four directions"};
  spintomo::InequalityReport out{to_kind(r.kind), read_directions(r.angles, r.n_directions), r.lhs, r.bound,
                                 r.margin, r.violated != 0};
  return out;
}

}  // namespace

extern "C" {

const char* st_version(void) { return "1.0.0"; }

const char* st_last_error(void) { return g_last_error.c_str(); }

const char* st_status_name(st_status status) {
  switch (status) {
    case ST_OK: return "ok";
    case ST_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ST_ERR_SHAPE: return "shape error";
    case ST_ERR_DOMAIN: return "domain error";
    case ST_ERR_ILL_POSED: return "ill-posed";
    case ST_ERR_INVARIANT: return "invariant violation";
    case ST_ERR_MISSING_DATA: return "missing data";
    case ST_ERR_PARSE: return "parse error";
    case ST_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void st_string_free(char* s) { delete[] s; }

st_status st_parse_inequality(const char* name, st_inequality* out) {
  return guarded([&] {
    const auto kind = spintomo::parse_inequality_kind(require_str(name, "name"));
    if (!kind) throw InvalidArgument{std::string("unknown inequality '") + name + "'"};
    require(out, "out") = from_kind(*kind);
  });
}

st_status st_state_werner(int d, double phi, st_state** out) {
  return guarded([&] {
    require(out, "out");
    if (d < 0) throw spintomo::DomainError("negative dimension");
    *out = new st_state{spintomo::werner(static_cast<std::size_t>(d), phi)};
  });
}

st_status st_state_basis(int dim, int index, st_state** out) {
  return guarded([&] {
    require(out, "out");
    if (dim < 2 || index < 0) throw spintomo::DomainError("basis projector needs dim >= 2 and index >= 0");
    *out = new st_state{spintomo::basis_projector(static_cast<std::size_t>(dim), static_cast<std::size_t>(index))};
  });
}

st_status st_state_from_json(const char* json, st_state** out) {
  return guarded([&] {
    require(out, "out");
    spintomo::Json j;
    try {
      j = spintomo::Json::parse(require_str(json, "json"));
    } catch (const spintomo::Json::exception& e) {
      throw spintomo::ParseError(e.what());
    }
    *out = new st_state{spintomo::density_matrix_from_json(j)};
  });
}

st_status st_state_to_json(const st_state* state, char** out) {
  return guarded([&] { require(out, "out") = dup_string(spintomo::to_json(require(state, "state").rho).dump()); });
}

st_status st_state_dim(const st_state* state, size_t* out) {
  return guarded([&] { require(out, "out") = require(state, "state").rho.dim(); });
}

st_status st_state_frobenius_distance(const st_state* a, const st_state* b, double* out) {
  return guarded([&] {
    require(out, "out") = spintomo::frobenius_distance(require(a, "a").rho, require(b, "b").rho);
  });
}

void st_state_free(st_state* state) { delete state; }

st_status st_fibonacci_directions(size_t n, double* angles_out) {
  return guarded([&] {
    if (n > 0) require(angles_out, "angles_out");
    const auto dirs = spintomo::fibonacci_directions(n);
    for (std::size_t i = 0; i < n; ++i) {
      angles_out[2 * i] = dirs[i].theta();
      angles_out[2 * i + 1] = dirs[i].phi();
    }
  });
}

st_status st_random_directions(size_t n, uint64_t seed, double* angles_out) {
  return guarded([&] {
    if (n > 0) require(angles_out, "angles_out");
    const auto dirs = spintomo::random_directions(n, seed);
    for (std::size_t i = 0; i < n; ++i) {
      angles_out[2 * i] = dirs[i].theta();
      angles_out[2 * i + 1] = dirs[i].phi();
    }
  });
}

st_status st_tomogram_new(st_tomogram** out) {
  return guarded([&] { require(out, "out") = new st_tomogram{}; });
}

st_status st_tomogram_append(st_tomogram* t, const st_state* state, const double* angles, size_t n_dirs) {
  return guarded([&] {
    auto& tomo = require(t, "tomogram");
    const auto dirs = read_directions(angles, n_dirs);
    auto table = spintomo::tomogram_multi(require(state, "state").rho, dirs);
    if (!tomo.tables.empty() && tomo.tables.front().parties() != table.parties()) {
      throw spintomo::ShapeError("tomogram list mixes party counts");
    }
    tomo.tables.push_back(std::move(table));
  });
}

st_status st_tomogram_append_default_grid(st_tomogram* t, const st_state* state) {
  return guarded([&] {
    auto& tomo = require(t, "tomogram");
    for (auto& table : spintomo::default_reconstruction_tomograms(require(state, "state").rho))
      tomo.tables.push_back(std::move(table));
  });
}

st_status st_tomogram_count(const st_tomogram* t, size_t* out) {
  return guarded([&] { require(out, "out") = require(t, "tomogram").tables.size(); });
}

st_status st_tomogram_entries(const st_tomogram* t, size_t table, size_t* out) {
  return guarded([&] {
    const auto& tomo = require(t, "tomogram");
    if (table >= tomo.tables.size()) throw InvalidArgument{"table index out of range"};
    require(out, "out") = tomo.tables[table].size();
  });
}

st_status st_tomogram_probability(const st_tomogram* t, size_t table, const int* labels, size_t n_labels,
                                  double* out) {
  return guarded([&] {
    const auto& tomo = require(t, "tomogram");
    if (table >= tomo.tables.size()) throw InvalidArgument{"table index out of range"};
    if (n_labels > 0) require(labels, "labels");
    require(out, "out") = tomo.tables[table].probability(std::span<const int>(labels, n_labels));
  });
}

st_status st_tomogram_serialize(const st_tomogram* t, st_format format, int half_labels, char** out) {
  return guarded([&] {
    const auto& tomo = require(t, "tomogram");
    require(out, "out");
    const auto style = half_labels ? spintomo::LabelStyle::half_integer : spintomo::LabelStyle::integer;
    if (format == ST_FORMAT_CSV) {
      *out = dup_string(spintomo::tomograms_to_csv(tomo.tables, style));
    } else if (format == ST_FORMAT_JSON) {
      spintomo::Json arr = spintomo::Json::array();
      for (const auto& table : tomo.tables) arr.push_back(spintomo::to_json(table, style));
      *out = dup_string(spintomo::Json{{"tomograms", arr}}.dump(2));
    } else {
      throw InvalidArgument{"unknown format"};
    }
  });
}

st_status st_tomogram_parse(const char* text, st_format format, st_tomogram** out) {
  return guarded([&] {
    require(out, "out");
    const char* src = require_str(text, "text");
    auto tomo = std::make_unique<st_tomogram>();
    if (format == ST_FORMAT_CSV) {
      tomo->tables = spintomo::tomograms_from_csv(src);
    } else if (format == ST_FORMAT_JSON) {
      spintomo::Json j;
      try {
        j = spintomo::Json::parse(src);
      } catch (const spintomo::Json::exception& e) {
        throw spintomo::ParseError(e.what());
      }
      const spintomo::Json& list = j.is_object() && j.contains("tomograms") ? j.at("tomograms") : j;
      if (!list.is_array()) throw spintomo::ParseError("expected a list of tomograms");
      for (const auto& item : list) tomo->tables.push_back(spintomo::tomogram_from_json(item));
    } else {
      throw InvalidArgument{"unknown format"};
    }
    *out = tomo.release();
  });
}

void st_tomogram_free(st_tomogram* t) { delete t; }

st_status st_reconstruct(const st_tomogram* t, size_t dim, st_state** out, int* projected, double* residual) {
  return guarded([&] {
    require(out, "out");
    auto rec = spintomo::reconstruct(require(t, "tomogram").tables, dim);
    if (projected != nullptr) *projected = rec.projected ? 1 : 0;
    if (residual != nullptr) *residual = rec.residual;
    *out = new st_state{std::move(rec.state)};
  });
}

st_status st_evaluate(const st_state* state, st_inequality kind, const double* angles, size_t n_dirs,
                      st_report* out) {
  return guarded([&] {
    require(out, "out");
    const spintomo::DensityMatrixProvider provider(require(state, "state").rho);
    fill_report(spintomo::evaluate(provider, to_kind(kind), read_directions(angles, n_dirs)), out);
  });
}

st_status st_report_to_json(const st_report* report, char** out) {
  return guarded([&] {
    require(out, "out") = dup_string(spintomo::to_json(read_report(require(report, "report"))).dump(2));
  });
}

void st_search_config_default(st_search_config* cfg) {
  if (cfg == nullptr) return;
  const spintomo::SearchConfig c;
  cfg->restarts = static_cast<uint32_t>(c.restarts);
  cfg->max_iterations = static_cast<uint32_t>(c.max_iterations);
  cfg->tolerance = c.tolerance;
  cfg->seed = c.seed;
}

st_status st_maximize(const st_state* state, st_inequality kind, const st_search_config* cfg,
                      st_search_result* out) {
  return guarded([&] {
    require(out, "out");
    const spintomo::DensityMatrixProvider provider(require(state, "state").rho);
    const auto res = spintomo::maximize_margin(provider, to_kind(kind), to_config(cfg));
    *out = st_search_result{};
    fill_report(res.best_report, &out->best);
    out->best_margin = res.best_margin;
    out->evaluations = res.evaluations;
    out->converged = res.converged ? 1 : 0;
  });
}

st_status st_search_result_to_json(const st_search_result* result, char** out) {
  return guarded([&] {
    const auto& r = require(result, "result");
    spintomo::SearchResult res;
    res.best_report = read_report(r.best);
    res.best_margin = r.best_margin;
    res.evaluations = r.evaluations;
    res.converged = r.converged != 0;
    require(out, "out") = dup_string(spintomo::to_json(res).dump(2));
  });
}

st_status st_threshold(int d, st_inequality kind, const st_search_config* cfg, double bisect_tol,
                       st_threshold_result* out) {
  return guarded([&] {
    require(out, "out");
    if (d < 0) throw spintomo::DomainError("negative dimension");
    const auto res = spintomo::threshold_phi(static_cast<std::size_t>(d), to_kind(kind), to_config(cfg), bisect_tol);
    out->found = res.phi.has_value() ? 1 : 0;
    out->phi = res.phi.value_or(0.0);
    out->monotone = res.monotone ? 1 : 0;
  });
}

st_status st_shots_new(st_shots** out) {
  return guarded([&] { require(out, "out") = new st_shots{}; });
}

st_status st_sample(st_shots* shots, const st_state* state, const double* angles, size_t n_dirs, uint64_t n_shots,
                    uint64_t seed) {
  return guarded([&] {
    auto& s = require(shots, "shots");
    auto rec = spintomo::sample(require(state, "state").rho, read_directions(angles, n_dirs), n_shots, seed);
    if (!s.records.empty() && s.records.front().directions.size() != rec.directions.size()) {
      throw spintomo::ShapeError("shot list mixes party counts");
    }
    s.records.push_back(std::move(rec));
  });
}

st_status st_shots_count(const st_shots* shots, size_t* out) {
  return guarded([&] { require(out, "out") = require(shots, "shots").records.size(); });
}

st_status st_shots_serialize(const st_shots* shots, st_format format, char** out) {
  return guarded([&] {
    const auto& s = require(shots, "shots");
    require(out, "out");
    if (format == ST_FORMAT_CSV) {
      *out = dup_string(spintomo::shot_records_to_csv(s.records));
    } else if (format == ST_FORMAT_JSON) {
      spintomo::Json arr = spintomo::Json::array();
      for (const auto& r : s.records) arr.push_back(spintomo::to_json(r));
      *out = dup_string(spintomo::Json{{"records", arr}}.dump(2));
    } else {
      throw InvalidArgument{"unknown format"};
    }
  });
}

void st_shots_free(st_shots* shots) { delete shots; }

st_status st_estimate_chsh(const st_state* state, const double* quad_angles, uint64_t shots_per_setting,
                           uint64_t seed, st_estimate* out) {
  return guarded([&] {
    require(out, "out");
    const auto quad = read_directions(&require(quad_angles, "quad_angles"), 4);
    const auto est = spintomo::estimate_chsh(require(state, "state").rho, quad, shots_per_setting, seed);
    *out = st_estimate{est.value, est.std_error, est.shots};
  });
}

}  // extern "C"
