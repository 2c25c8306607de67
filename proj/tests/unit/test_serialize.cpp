#include <gtest/gtest.h>

#include <numbers>

#include "spintomo/errors.hpp"
#include "spintomo/rng.hpp"
#include "spintomo/serialize.hpp"

using namespace spintomo;

namespace {

std::vector<Tomogram> sample_tomograms(std::size_t dim, std::uint64_t seed) {
  CounterRng rng(seed);
  return default_reconstruction_tomograms(ginibre_state(dim, rng));
}

void expect_same(const Tomogram& a, const Tomogram& b) {
  ASSERT_EQ(a.parties(), b.parties());
  ASSERT_EQ(a.spin(), b.spin());
  for (std::size_t p = 0; p < a.parties(); ++p) {
    EXPECT_EQ(a.directions()[p].theta(), b.directions()[p].theta());
    EXPECT_EQ(a.directions()[p].phi(), b.directions()[p].phi());
  }
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.probabilities()[i], b.probabilities()[i]);
}

}  // namespace

TEST(Serialize, FormatDouble) {
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
  EXPECT_EQ(std::stod(format_double(std::numbers::pi)), std::numbers::pi);
  EXPECT_EQ(format_double(0.0), "0");
}

TEST(Serialize, DensityMatrixRoundTrip) {
  CounterRng rng(1);
  const DensityMatrix rho = ginibre_state(9, rng);
  const Json j = to_json(rho);
  EXPECT_EQ(j.at("dim"), 9);
  const DensityMatrix back = density_matrix_from_json(Json::parse(j.dump()));
  EXPECT_EQ(max_abs_diff(rho.matrix(), back.matrix()), 0.0);
}

TEST(Serialize, DensityMatrixErrors) {
  EXPECT_THROW(density_matrix_from_json(Json::parse(R"({"dim": 2, "entries": [[1, 0]]})")), ParseError);
  EXPECT_THROW(density_matrix_from_json(Json::parse(R"({"entries": []})")), ParseError);
  // Valid shape, not a state.
  EXPECT_THROW(density_matrix_from_json(Json::parse(R"({"dim": 2, "entries": [[2,0],[0,0],[0,0],[0,0]]})")),
               DomainError);
}

TEST(Serialize, TomogramJsonRoundTrip) {
  for (std::size_t dim : {2u, 4u, 9u}) {
    for (const Tomogram& t : sample_tomograms(dim, dim)) {
      expect_same(t, tomogram_from_json(Json::parse(to_json(t).dump())));
      expect_same(t, tomogram_from_json(Json::parse(to_json(t, LabelStyle::half_integer).dump())));
    }
  }
}

TEST(Serialize, TomogramCsvRoundTrip) {
  for (std::size_t dim : {2u, 3u, 4u, 9u}) {
    const auto ts = sample_tomograms(dim, 10 + dim);
    for (LabelStyle style : {LabelStyle::integer, LabelStyle::half_integer}) {
      const auto back = tomograms_from_csv(tomograms_to_csv(ts, style));
      ASSERT_EQ(back.size(), ts.size());
      for (std::size_t i = 0; i < ts.size(); ++i) expect_same(ts[i], back[i]);
    }
  }
}

TEST(Serialize, TomogramCsvLayout) {
  const Direction d[] = {Direction::z_axis(), Direction::x_axis()};
  const Tomogram t = tomogram_multi(werner(2, -1.0), d);
  const std::string csv = tomograms_to_csv(std::span<const Tomogram>(&t, 1), LabelStyle::half_integer);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "theta1,phi1,theta2,phi2,m1,m2,probability");
  EXPECT_EQ(tomogram_csv_header(1), "theta1,phi1,m1,probability");
  EXPECT_NE(csv.find(",0.5,-0.5,"), std::string::npos);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(Serialize, TomogramCsvErrors) {
  EXPECT_THROW(tomograms_from_csv("theta1,phi1,m1,probability\n0,0,1\n"), ParseError);
  EXPECT_THROW(tomograms_from_csv("theta1,phi1,m1,probability\n0,0,1,abc\n0,0,-1,0\n"), ParseError);
  EXPECT_THROW(tomograms_from_csv("theta1,phi1,m1,probability\n0,0,1,0.5\n0,0,1,0.5\n"), ParseError);
  EXPECT_TRUE(tomograms_from_csv("# only a comment\ntheta1,phi1,m1,probability\n").empty());
}

TEST(Serialize, ReportRoundTrip) {
  InequalityReport r{InequalityKind::chsh,
                     {Direction(0.1, 0.2), Direction(0.3, 0.4), Direction(0.5, 0.6), Direction(0.7, 0.8)},
                     0.1 + 0.2,
                     0.0,
                     0.1 + 0.2,
                     true};
  const InequalityReport back = report_from_json(Json::parse(to_json(r).dump()));
  EXPECT_EQ(back.kind, r.kind);
  EXPECT_EQ(back.lhs, r.lhs);
  EXPECT_EQ(back.directions[3].phi(), r.directions[3].phi());
  EXPECT_EQ(report_csv_header(InequalityKind::wigner), "kind,phi,lhs,bound,margin,violated,theta1,phi1,theta2,phi2,theta3,phi3");
  const std::string row = report_csv_row(r, -0.25);
  EXPECT_EQ(row.substr(0, 10), "chsh,-0.25");
}

TEST(Serialize, SearchResultRoundTrip) {
  SearchResult s;
  s.best_report = {InequalityKind::wigner, {Direction(1, 2), Direction(2, 3), Direction(0.5, 0.25)}, -0.125, 0, 0.125, true};
  s.best_margin = 0.125;
  s.evaluations = 12345;
  s.converged = true;
  const std::string text = to_json(s).dump();
  EXPECT_EQ(to_json(search_result_from_json(Json::parse(text))).dump(), text);
}

TEST(Serialize, ShotRecordRoundTrip) {
  const Direction d[] = {Direction(0.2, 0.1), Direction(1.9, 5.0)};
  const ShotRecord r = sample(werner(3, 0.2), d, 5000, 77);
  const ShotRecord back = shot_record_from_json(Json::parse(to_json(r).dump()));
  EXPECT_EQ(back.counts, r.counts);
  EXPECT_EQ(back.seed, 77u);
  EXPECT_EQ(back.directions[1].phi(), r.directions[1].phi());
  const std::string csv = shot_records_to_csv(std::span<const ShotRecord>(&r, 1));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "theta1,phi1,theta2,phi2,m1,m2,count");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
}

TEST(Serialize, EstimateJson) {
  const Json j = to_json(Estimate{0.8, 0.001, 100});
  EXPECT_EQ(j.at("shots"), 100);
  EXPECT_EQ(j.at("value").get<double>(), 0.8);
}
