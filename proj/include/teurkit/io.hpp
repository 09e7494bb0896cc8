#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "teurkit/ellipse.hpp"
#include "teurkit/gaussian.hpp"
#include "teurkit/tradeoff.hpp"

namespace teurkit {

using Json = nlohmann::ordered_json;

// Full-precision decimal rendering (round-trips through strtod).
std::string format_double(double v);

Json to_json(const Mat2& m);
Mat2 mat2_from_json(const nlohmann::json& j);

Json to_json(const GaussianScheme& s);
GaussianScheme scheme_from_json(const nlohmann::json& j);

Json to_json(const TradeoffReport& rep);

Json to_json(const EstimateSummary& s);

Json to_json(const EllipseMetrics& m);

// What `simulate` writes and `teur-check` reads back.
struct SimulationResult {
  GaussianScheme scheme;
  std::uint64_t seed = 0;
  EstimateSummary summary;
  std::optional<double> teur_lhs;  // absent when the sample covariance is degenerate
};
Json to_json(const SimulationResult& r);
SimulationResult simulation_from_json(const nlohmann::json& j);

inline const char* sweep_csv_header() { return "r,phi,r_anc,phi_anc,n,E11,E12,E22,teur_lhs,area"; }

}  // namespace teurkit
