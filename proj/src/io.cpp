#include "teurkit/io.hpp"

#include <cstdio>

namespace teurkit {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const Mat2& m) {
  return Json::array({Json::array({m(0, 0), m(0, 1)}), Json::array({m(1, 0), m(1, 1)})});
}

Mat2 mat2_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
      !j[1].is_array() || j[1].size() != 2)
    throw Error("expected a 2x2 matrix as [[a,b],[c,d]]");
  Mat2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      if (!j[r][c].is_number()) throw Error("matrix entries must be numbers");
      m(r, c) = j[r][c].get<double>();
    }
  return m;
}

Json to_json(const GaussianScheme& s) {
  Json j;
  j["r"] = s.r;
  j["phi"] = s.phi;
  j["alpha"] = Json::array({s.alpha.real(), s.alpha.imag()});
  j["r_anc"] = s.r_anc;
  j["phi_anc"] = s.phi_anc;
  j["n"] = s.n;
  return j;
}

GaussianScheme scheme_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("scheme must be a JSON object");
  GaussianScheme s;
  s.r = j.value("r", 0.0);
  s.phi = j.value("phi", 0.0);
  s.r_anc = j.value("r_anc", 0.0);
  s.phi_anc = j.value("phi_anc", 0.0);
  s.n = j.value("n", s.n);
  if (j.contains("alpha")) {
    const auto& a = j.at("alpha");
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
      throw Error("scheme alpha must be [re, im]");
    s.alpha = Complex(a[0].get<double>(), a[1].get<double>());
  }
  return s;
}

Json to_json(const TradeoffReport& rep) {
  Json j;
  j["teur_lhs"] = rep.teur_lhs;
  j["teur_satisfied"] = rep.teur_satisfied;
  j["irtr_lhs"] = rep.irtr_lhs;
  j["irtr_rhs"] = rep.irtr_rhs;
  j["gamma"] = rep.gamma;
  j["regret"] = Json::array({rep.regret(0), rep.regret(1)});
  j["c"] = rep.c;
  j["G"] = to_json(rep.G);
  Json chain = Json::array();
  for (const ChainLink& link : rep.chain) {
    Json l;
    l["name"] = link.name;
    l["lhs"] = link.lhs;
    l["rhs"] = link.rhs;
    l["satisfied"] = link.satisfied;
    chain.push_back(std::move(l));
  }
  j["chain"] = std::move(chain);
  return j;
}

Json to_json(const EstimateSummary& s) {
  Json j;
  j["mean"] = Json::array({s.mean(0), s.mean(1)});
  j["sample_cov"] = to_json(s.sample_cov);
  j["n_trials"] = s.n_trials;
  return j;
}

Json to_json(const EllipseMetrics& m) {
  Json j;
  j["intercepts"] = Json::array({m.intercepts(0), m.intercepts(1)});
  j["maxima"] = Json::array({m.maxima(0), m.maxima(1)});
  j["semi_axes"] = Json::array({m.semi_axes(0), m.semi_axes(1)});
  j["tilt"] = m.tilt;
  return j;
}

Json to_json(const SimulationResult& r) {
  Json j;
  j["scheme"] = to_json(r.scheme);
  j["seed"] = r.seed;
  j["mean"] = Json::array({r.summary.mean(0), r.summary.mean(1)});
  j["sample_cov"] = to_json(r.summary.sample_cov);
  j["n_trials"] = r.summary.n_trials;
  if (r.teur_lhs)
    j["teur_lhs"] = *r.teur_lhs;
  else
    j["teur_lhs"] = nullptr;
  return j;
}

SimulationResult simulation_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("scheme") || !j.contains("sample_cov"))
    throw Error("simulation record needs 'scheme' and 'sample_cov'");
  SimulationResult r;
  r.scheme = scheme_from_json(j.at("scheme"));
  r.seed = j.value("seed", std::uint64_t{0});
  r.summary.sample_cov = mat2_from_json(j.at("sample_cov"));
  r.summary.n_trials = j.value("n_trials", 0L);
  if (j.contains("mean")) {
    const auto& m = j.at("mean");
    if (!m.is_array() || m.size() != 2) throw Error("simulation mean must be [m1, m2]");
    r.summary.mean = Vec2(m[0].get<double>(), m[1].get<double>());
  }
  if (j.contains("teur_lhs") && j.at("teur_lhs").is_number())
    r.teur_lhs = j.at("teur_lhs").get<double>();
  return r;
}

}  // namespace teurkit
