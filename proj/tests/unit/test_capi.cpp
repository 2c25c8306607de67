#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "spintomo/spintomo.h"

namespace {

struct State {
  st_state* p = nullptr;
  ~State() { st_state_free(p); }
};

struct Tomo {
  st_tomogram* p = nullptr;
  ~Tomo() { st_tomogram_free(p); }
};

std::string take(char* s) {
  std::string out(s);
  st_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, VersionAndNames) {
  EXPECT_STRNE(st_version(), "");
  EXPECT_STREQ(st_status_name(ST_OK), "ok");
  st_inequality k;
  EXPECT_EQ(st_parse_inequality("uffink", &k), ST_OK);
  EXPECT_EQ(k, ST_UFFINK);
  EXPECT_EQ(st_parse_inequality("bell", &k), ST_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(st_last_error()).find("bell"), std::string::npos);
}

TEST(CApi, ErrorCodes) {
  State s;
  EXPECT_EQ(st_state_werner(2, 2.0, &s.p), ST_ERR_DOMAIN);
  EXPECT_EQ(s.p, nullptr);
  EXPECT_EQ(st_state_werner(2, 0.0, nullptr), ST_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(st_state_from_json("{not json", &s.p), ST_ERR_PARSE);
  size_t dim = 0;
  EXPECT_EQ(st_state_dim(nullptr, &dim), ST_ERR_INVALID_ARGUMENT);
}

TEST(CApi, StateJsonRoundTrip) {
  State a, b;
  ASSERT_EQ(st_state_werner(3, -0.4, &a.p), ST_OK);
  char* text = nullptr;
  ASSERT_EQ(st_state_to_json(a.p, &text), ST_OK);
  const std::string json = take(text);
  ASSERT_EQ(st_state_from_json(json.c_str(), &b.p), ST_OK);
  double dist = 1.0;
  ASSERT_EQ(st_state_frobenius_distance(a.p, b.p, &dist), ST_OK);
  EXPECT_EQ(dist, 0.0);
  size_t dim = 0;
  ASSERT_EQ(st_state_dim(b.p, &dim), ST_OK);
  EXPECT_EQ(dim, 9u);
}

TEST(CApi, TomogramAndProbability) {
  State s;
  ASSERT_EQ(st_state_werner(2, -1.0, &s.p), ST_OK);
  Tomo t;
  ASSERT_EQ(st_tomogram_new(&t.p), ST_OK);
  const double zz[] = {0, 0, 0, 0};
  ASSERT_EQ(st_tomogram_append(t.p, s.p, zz, 2), ST_OK);
  EXPECT_EQ(st_tomogram_append(t.p, s.p, zz, 1), ST_ERR_SHAPE);
  size_t n = 0;
  ASSERT_EQ(st_tomogram_count(t.p, &n), ST_OK);
  EXPECT_EQ(n, 1u);
  const int up_up[] = {1, 1}, up_down[] = {1, -1};
  double p = -1;
  ASSERT_EQ(st_tomogram_probability(t.p, 0, up_up, 2, &p), ST_OK);
  EXPECT_NEAR(p, 0.0, 1e-15);
  ASSERT_EQ(st_tomogram_probability(t.p, 0, up_down, 2, &p), ST_OK);
  EXPECT_NEAR(p, 0.5, 1e-15);
  EXPECT_EQ(st_tomogram_probability(t.p, 3, up_down, 2, &p), ST_ERR_INVALID_ARGUMENT);
}

TEST(CApi, TomogramSerializeParse) {
  State s;
  ASSERT_EQ(st_state_werner(2, 0.3, &s.p), ST_OK);
  Tomo t;
  ASSERT_EQ(st_tomogram_new(&t.p), ST_OK);
  ASSERT_EQ(st_tomogram_append_default_grid(t.p, s.p), ST_OK);
  for (st_format f : {ST_FORMAT_CSV, ST_FORMAT_JSON}) {
    char* text = nullptr;
    ASSERT_EQ(st_tomogram_serialize(t.p, f, 0, &text), ST_OK);
    const std::string body = take(text);
    Tomo back;
    ASSERT_EQ(st_tomogram_parse(body.c_str(), f, &back.p), ST_OK) << st_last_error();
    size_t n = 0;
    ASSERT_EQ(st_tomogram_count(back.p, &n), ST_OK);
    EXPECT_EQ(n, 9u);
    State rec;
    int projected = 1;
    double residual = -1;
    ASSERT_EQ(st_reconstruct(back.p, 4, &rec.p, &projected, &residual), ST_OK);
    double err = 1;
    ASSERT_EQ(st_state_frobenius_distance(rec.p, s.p, &err), ST_OK);
    EXPECT_LT(err, 1e-12);
    EXPECT_EQ(projected, 0);
  }
  Tomo bad;
  EXPECT_EQ(st_tomogram_parse("theta1,phi1,m1,probability\n0,0,1,0.7\n0,0,-1,0.7\n", ST_FORMAT_CSV, &bad.p),
            ST_ERR_INVARIANT);
}

TEST(CApi, ReconstructIllPosed) {
  State s;
  ASSERT_EQ(st_state_basis(2, 0, &s.p), ST_OK);
  Tomo t;
  ASSERT_EQ(st_tomogram_new(&t.p), ST_OK);
  const double z[] = {0, 0};
  ASSERT_EQ(st_tomogram_append(t.p, s.p, z, 1), ST_OK);
  State rec;
  EXPECT_EQ(st_reconstruct(t.p, 2, &rec.p, nullptr, nullptr), ST_ERR_ILL_POSED);
  EXPECT_EQ(rec.p, nullptr);
}

TEST(CApi, EvaluateAndReportJson) {
  State s;
  ASSERT_EQ(st_state_werner(2, -1.0, &s.p), ST_OK);
  const double pi = std::acos(-1.0);
  const double dirs[] = {pi / 2, 0, pi / 2, pi / 3, pi / 2, 2 * pi / 3};
  st_report r;
  ASSERT_EQ(st_evaluate(s.p, ST_WIGNER, dirs, 3, &r), ST_OK);
  EXPECT_NEAR(r.lhs, -0.125, 1e-14);
  EXPECT_EQ(r.violated, 1);
  EXPECT_EQ(r.n_directions, 3u);
  char* text = nullptr;
  ASSERT_EQ(st_report_to_json(&r, &text), ST_OK);
  EXPECT_NE(take(text).find("\"wigner\""), std::string::npos);
  EXPECT_EQ(st_evaluate(s.p, ST_CHSH, dirs, 3, &r), ST_ERR_SHAPE);
  EXPECT_EQ(st_evaluate(s.p, static_cast<st_inequality>(9), dirs, 3, &r), ST_ERR_INVALID_ARGUMENT);
}

TEST(CApi, MaximizeAndThreshold) {
  State s;
  ASSERT_EQ(st_state_werner(2, -1.0, &s.p), ST_OK);
  st_search_config cfg;
  st_search_config_default(&cfg);
  EXPECT_EQ(cfg.restarts, 32u);
  cfg.restarts = 8;
  cfg.seed = 7;
  st_search_result res;
  ASSERT_EQ(st_maximize(s.p, ST_CHSH, &cfg, &res), ST_OK);
  EXPECT_NEAR(res.best.lhs, 2 * std::sqrt(2.0) - 2, 1e-6);
  char* text = nullptr;
  ASSERT_EQ(st_search_result_to_json(&res, &text), ST_OK);
  EXPECT_NE(take(text).find("best_report"), std::string::npos);

  st_threshold_result th;
  ASSERT_EQ(st_threshold(2, ST_WIGNER, &cfg, 1e-4, &th), ST_OK);
  EXPECT_EQ(th.found, 1);
  EXPECT_NEAR(th.phi, -0.5, 1e-4);
  EXPECT_EQ(st_threshold(3, ST_CHSH, &cfg, 1e-4, &th), ST_ERR_DOMAIN);
}

TEST(CApi, SamplingAndEstimate) {
  State s;
  ASSERT_EQ(st_state_werner(2, -1.0, &s.p), ST_OK);
  st_shots* shots = nullptr;
  ASSERT_EQ(st_shots_new(&shots), ST_OK);
  const double zx[] = {0, 0, std::acos(0.0), 0};
  ASSERT_EQ(st_sample(shots, s.p, zx, 2, 1000, 5), ST_OK);
  size_t n = 0;
  ASSERT_EQ(st_shots_count(shots, &n), ST_OK);
  EXPECT_EQ(n, 1u);
  char* text = nullptr;
  ASSERT_EQ(st_shots_serialize(shots, ST_FORMAT_JSON, &text), ST_OK);
  EXPECT_NE(take(text).find("\"seed\": 5"), std::string::npos);
  st_shots_free(shots);

  const double pi = std::acos(-1.0);
  const double quad[] = {pi / 4, pi, 0, 0, 3 * pi / 4, pi, pi / 2, 0};
  st_estimate e;
  ASSERT_EQ(st_estimate_chsh(s.p, quad, 1000000, 1, &e), ST_OK);
  EXPECT_LT(std::abs(e.value - (2 * std::sqrt(2.0) - 2)), 4 * e.std_error);
  EXPECT_EQ(st_estimate_chsh(s.p, quad, 10, 1, &e), ST_ERR_DOMAIN);
}

TEST(CApi, Directions) {
  std::vector<double> a(10), b(10);
  ASSERT_EQ(st_fibonacci_directions(5, a.data()), ST_OK);
  ASSERT_EQ(st_random_directions(5, 1, b.data()), ST_OK);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_GE(a[2 * i], 0.0);
    EXPECT_LE(b[2 * i], std::acos(-1.0));
  }
  EXPECT_EQ(st_fibonacci_directions(5, nullptr), ST_ERR_INVALID_ARGUMENT);
}
