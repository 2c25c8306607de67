#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "spintomo/inequalities.hpp"
#include "spintomo/sampling.hpp"
#include "spintomo/search.hpp"
#include "spintomo/states.hpp"
#include "spintomo/tomography.hpp"

namespace spintomo {

using Json = nlohmann::json;

// %.17g: enough digits for an exact double round trip.
std::string format_double(double v);

// How qubit labels are printed: integers (+1/-1) or spin projections (0.5/-0.5).
enum class LabelStyle { integer, half_integer };

// {"dim": d, "entries": [[re, im], ...]} in row-major order.
Json to_json(const DensityMatrix& rho);
DensityMatrix density_matrix_from_json(const Json& j);

Json to_json(const Direction& d);
Direction direction_from_json(const Json& j);

Json to_json(const Tomogram& t, LabelStyle style = LabelStyle::integer);
Tomogram tomogram_from_json(const Json& j);

// Columns theta1,phi1,...,thetaN,phiN,m1,...,mN,probability; one row per
// outcome tuple, tomograms concatenated. All tomograms must share a layout.
std::string tomograms_to_csv(std::span<const Tomogram> tomograms, LabelStyle style = LabelStyle::integer);
std::string tomogram_csv_header(std::size_t parties);
// Lines starting with '#' are ignored. Consecutive rows with equal angles
// form one tomogram.
std::vector<Tomogram> tomograms_from_csv(std::string_view csv);

Json to_json(const InequalityReport& r);
InequalityReport report_from_json(const Json& j);

// kind,phi,lhs,bound,margin,violated,theta1,phi1,... (phi column holds the
// Werner parameter when known, else empty).
std::string report_csv_header(InequalityKind kind);
std::string report_csv_row(const InequalityReport& r, std::optional<double> werner_phi = std::nullopt);

Json to_json(const SearchResult& r);
SearchResult search_result_from_json(const Json& j);

Json to_json(const SearchConfig& c);

Json to_json(const ShotRecord& r);
ShotRecord shot_record_from_json(const Json& j);
// theta1,phi1,...,m1,...,count
std::string shot_records_to_csv(std::span<const ShotRecord> records);

Json to_json(const Estimate& e);

}  // namespace spintomo
