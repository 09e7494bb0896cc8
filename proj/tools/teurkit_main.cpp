// teurkit: analyze | teur-check | sweep | simulate | ellipse.
// Reports go to --output (stdout when omitted). Exit codes: 0 success or
// tradeoff satisfied, 1 tradeoff violated, 2 config error, 3 numerical error.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "teurkit/ellipse.hpp"
#include "teurkit/errors.hpp"
#include "teurkit/fisher.hpp"
#include "teurkit/gaussian.hpp"
#include "teurkit/io.hpp"
#include "teurkit/model.hpp"
#include "teurkit/tradeoff.hpp"

namespace {

using teurkit::CMat;
using teurkit::Json;
using teurkit::Mat2;
using teurkit::RVec;
using teurkit::Vec2;

// maps to exit code 2
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_double(const std::string& text, const char* what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (text.empty() || pos != text.size())
    throw ConfigError(std::string(what) + ": cannot parse '" + text + "' as a number");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string::size_type from = 0;
  for (auto at = text.find(sep); at != std::string::npos; at = text.find(sep, from)) {
    out.push_back(text.substr(from, at - from));
    from = at + 1;
  }
  out.push_back(text.substr(from));
  return out;
}

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
}

teurkit::GaussianScheme scheme_from_config(const Json& cfg) {
  teurkit::GaussianScheme s;
  if (cfg.contains("scheme")) s = teurkit::scheme_from_json(cfg.at("scheme"));
  if (cfg.contains("r")) s.r = cfg.at("r").get<double>();
  if (cfg.contains("phi")) s.phi = cfg.at("phi").get<double>();
  if (cfg.contains("r_anc")) s.r_anc = cfg.at("r_anc").get<double>();
  if (cfg.contains("phi_anc")) s.phi_anc = cfg.at("phi_anc").get<double>();
  if (cfg.contains("n")) s.n = cfg.at("n").get<long>();
  if (cfg.contains("alpha")) {
    const auto& a = cfg.at("alpha");
    if (!a.is_array() || a.size() != 2)
      throw ConfigError("alpha must be [re, im]");
    s.alpha = teurkit::Complex(a.at(0).get<double>(), a.at(1).get<double>());
  }
  if (s.n < 1) throw ConfigError("n must be >= 1");
  return s;
}

std::uint64_t seed_from_config(const Json& cfg) {
  if (cfg.contains("seed")) return cfg.at("seed").get<std::uint64_t>();
  if (const char* env = std::getenv("TEURKIT_SEED")) {
    const std::string text(env);
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (text.empty() || end != text.c_str() + text.size())
      throw ConfigError("TEURKIT_SEED: cannot parse '" + text + "' as an integer");
    return v;
  }
  return 12345;
}

std::string format_from_config(const Json& cfg, const char* cmd, const char* fallback) {
  const std::string f = cfg.contains("format") ? cfg.at("format").get<std::string>() : fallback;
  if (f != "json" && f != "csv") throw ConfigError(std::string(cmd) + ": unknown format '" + f + "'");
  return f;
}

void write_output(const Json& cfg, const std::string& text) {
  if (cfg.contains("output")) {
    const std::string path = cfg.at("output").get<std::string>();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw ConfigError("failed writing output file '" + path + "'");
  } else {
    std::cout << text;
  }
}

RVec theta_from_config(const Json& cfg, int n_params) {
  RVec theta = RVec::Zero(n_params);
  if (!cfg.contains("theta")) return theta;
  const auto& t = cfg.at("theta");
  std::vector<double> vals;
  if (t.is_string()) {
    for (const auto& tok : split(t.get<std::string>(), ',')) vals.push_back(parse_double(tok, "theta"));
  } else if (t.is_array()) {
    for (const auto& x : t) vals.push_back(x.get<double>());
  } else {
    throw ConfigError("theta must be an array or a \"t1,t2\" string");
  }
  if (static_cast<int>(vals.size()) != n_params)
    throw ConfigError("theta has " + std::to_string(vals.size()) + " entries; the model takes " +
                      std::to_string(n_params));
  for (int i = 0; i < n_params; ++i) theta(i) = vals[i];
  return theta;
}

teurkit::Complex centry_from_json(const nlohmann::json& v) {
  if (v.is_array()) {
    if (v.size() != 2) throw ConfigError("complex matrix entries are numbers or [re, im]");
    return {v.at(0).get<double>(), v.at(1).get<double>()};
  }
  return {v.get<double>(), 0.0};
}

CMat cmat_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j.at(0).is_array() || j.at(0).empty())
    throw ConfigError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  CMat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j.at(r);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ConfigError("matrix rows must all have the same length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = centry_from_json(row.at(c));
  }
  return m;
}

// ---- commands ----

int run_analyze(const Json& cfg) {
  if (format_from_config(cfg, "analyze", "json") != "json")
    throw ConfigError("analyze writes json");
  if (!cfg.contains("model")) throw ConfigError("analyze: --model is required");
  const std::string name = cfg.at("model").get<std::string>();
  Json params = cfg.contains("params") ? cfg.at("params") : Json::object();
  for (const char* key : {"r", "phi", "n_max", "leakage_tol"})
    if (!params.contains(key) && cfg.contains(key)) params[key] = cfg.at(key);
  const teurkit::BuiltModel built = teurkit::make_model(name, params);

  const RVec theta = theta_from_config(cfg, built.density.n_params());
  const CMat rho = built.density.rho(theta);
  const teurkit::SldSet slds = teurkit::sld_set(built.density, theta);
  const Mat2 f = teurkit::qfim(rho, slds);

  Json out;
  out["qfim"] = teurkit::to_json(f);
  if (built.pure) {
    const teurkit::Qgt g = teurkit::qgt(*built.pure, theta);
    Json jg;
    jg["re"] = teurkit::to_json(g.re);
    jg["q"] = g.q;
    out["qgt"] = std::move(jg);
  }
  out["gamma"] = teurkit::incompat_gamma(rho, slds, f);
  if (cfg.contains("povm")) {
    teurkit::FinitePOVM povm;
    for (const auto& el : cfg.at("povm")) povm.elements.push_back(cmat_from_json(el));
    out["cfim"] = teurkit::to_json(Mat2(teurkit::cfim(built.density, povm, theta)));
  }
  write_output(cfg, out.dump(2) + "\n");
  return 0;
}

int run_teur_check(const Json& cfg) {
  if (format_from_config(cfg, "teur-check", "json") != "json")
    throw ConfigError("teur-check writes json");
  const teurkit::GaussianScheme s = scheme_from_config(cfg);
  Mat2 e;
  if (cfg.contains("E"))
    e = teurkit::mat2_from_json(cfg.at("E"));
  else if (cfg.contains("sample_cov"))
    e = teurkit::mat2_from_json(cfg.at("sample_cov"));
  else
    e = teurkit::joint_cov(s);
  const Mat2 fq = teurkit::qfim_displacement(s.r, s.phi);
  const double gamma = cfg.value("gamma", 1.0);
  const teurkit::TradeoffReport rep = teurkit::tradeoff_report(e, teurkit::inverse2(e), fq, gamma);
  write_output(cfg, teurkit::to_json(rep).dump(2) + "\n");
  return rep.teur_satisfied ? 0 : 1;
}

struct GridAxis {
  std::string param;
  std::vector<double> values;
};

GridAxis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos)
    throw ConfigError("grid: expected param=start:stop:count, got '" + text + "'");
  GridAxis axis;
  axis.param = text.substr(0, eq);
  if (axis.param != "r" && axis.param != "phi" && axis.param != "r_anc" &&
      axis.param != "phi_anc" && axis.param != "n")
    throw ConfigError("grid: unknown parameter '" + axis.param + "'");
  const auto parts = split(text.substr(eq + 1), ':');
  if (parts.size() != 3)
    throw ConfigError("grid: expected param=start:stop:count, got '" + text + "'");
  const double start = parse_double(parts[0], "grid start");
  const double stop = parse_double(parts[1], "grid stop");
  const double count_raw = parse_double(parts[2], "grid count");
  const long count = std::lround(count_raw);
  if (count < 1 || static_cast<double>(count) != count_raw)
    throw ConfigError("grid: count must be a positive integer in '" + text + "'");
  for (long i = 0; i < count; ++i)
    axis.values.push_back(count == 1 ? start
                                     : start + (stop - start) * static_cast<double>(i) /
                                                   static_cast<double>(count - 1));
  return axis;
}

void set_scheme_param(teurkit::GaussianScheme& s, const std::string& param, double v) {
  if (param == "r")
    s.r = v;
  else if (param == "phi")
    s.phi = v;
  else if (param == "r_anc")
    s.r_anc = v;
  else if (param == "phi_anc")
    s.phi_anc = v;
  else
    s.n = std::lround(v);
}

int run_sweep(const Json& cfg) {
  if (format_from_config(cfg, "sweep", "csv") != "csv") throw ConfigError("sweep writes csv");
  if (!cfg.contains("grid")) throw ConfigError("sweep: at least one --grid axis is required");
  std::vector<GridAxis> axes;
  const auto& g = cfg.at("grid");
  if (g.is_string()) {
    axes.push_back(parse_axis(g.get<std::string>()));
  } else if (g.is_array()) {
    for (const auto& a : g) axes.push_back(parse_axis(a.get<std::string>()));
  } else {
    throw ConfigError("grid must be a string or an array of strings");
  }
  if (axes.empty()) throw ConfigError("sweep: empty grid");

  const teurkit::GaussianScheme base = scheme_from_config(cfg);
  const double gamma = cfg.value("gamma", 1.0);
  std::string out = std::string(teurkit::sweep_csv_header()) + "\n";
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    teurkit::GaussianScheme s = base;
    for (std::size_t k = 0; k < axes.size(); ++k)
      set_scheme_param(s, axes[k].param, axes[k].values[idx[k]]);
    const Mat2 e = teurkit::joint_cov(s);
    const Mat2 fq = teurkit::qfim_displacement(s.r, s.phi);
    const double lhs = teurkit::teur_lhs(e, fq, gamma);
    const double area = std::sqrt(std::max(0.0, e.determinant()));
    out += teurkit::format_double(s.r) + "," + teurkit::format_double(s.phi) + "," +
           teurkit::format_double(s.r_anc) + "," + teurkit::format_double(s.phi_anc) + "," +
           std::to_string(s.n) + "," + teurkit::format_double(e(0, 0)) + "," +
           teurkit::format_double(e(0, 1)) + "," + teurkit::format_double(e(1, 1)) + "," +
           teurkit::format_double(lhs) + "," + teurkit::format_double(area) + "\n";
    // odometer, last axis fastest: rows come out row-major over the grid
    std::size_t k = axes.size();
    while (k > 0) {
      if (++idx[k - 1] < axes[k - 1].values.size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  write_output(cfg, out);
  return 0;
}

int run_simulate(const Json& cfg) {
  const std::string fmt = format_from_config(cfg, "simulate", "json");
  if (!cfg.contains("trials")) throw ConfigError("simulate: --trials is required");
  const long trials = cfg.at("trials").get<long>();
  if (trials < 1) throw ConfigError("simulate: trials must be >= 1");
  const teurkit::GaussianScheme s = scheme_from_config(cfg);
  const std::uint64_t seed = seed_from_config(cfg);

  const std::vector<Vec2> estimates = teurkit::simulate_trials(s, trials, seed);

  if (fmt == "csv") {
    std::string out = "trial,theta1_hat,theta2_hat\n";
    for (std::size_t t = 0; t < estimates.size(); ++t)
      out += std::to_string(t) + "," + teurkit::format_double(estimates[t](0)) + "," +
             teurkit::format_double(estimates[t](1)) + "\n";
    write_output(cfg, out);
    return 0;
  }

  teurkit::SimulationResult result;
  result.scheme = s;
  result.seed = seed;
  result.summary = teurkit::summarize(estimates, s.n);
  if (trials > 1) {
    try {
      result.teur_lhs = teurkit::teur_lhs(result.summary.sample_cov,
                                          teurkit::qfim_displacement(s.r, s.phi),
                                          cfg.value("gamma", 1.0));
    } catch (const teurkit::Error&) {
      // sample covariance degenerate or below the quantum floor: report null
      result.teur_lhs.reset();
    }
  }
  write_output(cfg, teurkit::to_json(result).dump(2) + "\n");
  return 0;
}

int run_ellipse(const Json& cfg) {
  if (format_from_config(cfg, "ellipse", "csv") != "csv") throw ConfigError("ellipse writes csv");
  const double kappa = cfg.value("kappa", 1.0);
  const int points = cfg.value("points", 256);
  if (points < 2) throw ConfigError("ellipse: points must be >= 2");

  const bool scheme_given = cfg.contains("scheme") || cfg.contains("r") || cfg.contains("phi");
  const bool anc_given = cfg.contains("scheme") || cfg.contains("r_anc") || cfg.contains("phi_anc");
  const bool cov_given = cfg.contains("E") || cfg.contains("sample_cov");
  if (!scheme_given && !cov_given)
    throw ConfigError("ellipse: give a scheme (--r/--phi) or a covariance (E)");

  const teurkit::GaussianScheme s = scheme_from_config(cfg);
  const Vec2 center(s.alpha.real(), s.alpha.imag());

  std::vector<std::pair<std::string, teurkit::Ellipse>> sources;
  if (scheme_given)
    sources.emplace_back("quantum_limit",
                         teurkit::quantum_limited_ellipse(
                             teurkit::qfim_displacement(s.r, s.phi), center, kappa));
  if (cfg.contains("E"))
    sources.emplace_back("error",
                         teurkit::error_ellipse(teurkit::mat2_from_json(cfg.at("E")), center, kappa));
  else if (cfg.contains("sample_cov"))
    sources.emplace_back("error", teurkit::error_ellipse(
                                      teurkit::mat2_from_json(cfg.at("sample_cov")), center, kappa));
  else if (anc_given)
    sources.emplace_back("error", teurkit::error_ellipse(teurkit::joint_cov(s), center, kappa));

  std::string out = "ellipse_id,x,y\n";
  for (const auto& [id, e] : sources) {
    const Eigen::MatrixX2d pts = teurkit::polyline(e, points);
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
      out += id + "," + teurkit::format_double(pts(i, 0)) + "," +
             teurkit::format_double(pts(i, 1)) + "\n";
  }
  write_output(cfg, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"squeezed-probe displacement estimation: tradeoff reports, sweeps, simulation"};
  app.require_subcommand(1);

  std::string config_path, model, theta, output, format;
  double r = 0.0, phi = 0.0, r_anc = 0.0, phi_anc = 0.0, kappa = 1.0;
  long n = 0, trials = 0;
  std::uint64_t seed = 0;
  int points = 256;
  std::vector<std::string> grid;

  auto* o_config = app.add_option("--config", config_path, "JSON config file; flags override it");
  auto* o_model = app.add_option("--model", model, "built-in model name");
  auto* o_theta = app.add_option("--theta", theta, "parameter point, e.g. \"1.57,0\"");
  auto* o_r = app.add_option("--r", r, "probe squeezing amplitude");
  auto* o_phi = app.add_option("--phi", phi, "probe squeezing phase");
  auto* o_r_anc = app.add_option("--r-anc", r_anc, "ancilla squeezing amplitude");
  auto* o_phi_anc = app.add_option("--phi-anc", phi_anc, "ancilla squeezing phase");
  auto* o_n = app.add_option("--n", n, "samples per experiment");
  auto* o_trials = app.add_option("--trials", trials, "number of simulated experiments");
  auto* o_seed = app.add_option("--seed", seed, "RNG seed (env TEURKIT_SEED is the fallback)");
  auto* o_grid = app.add_option("--grid", grid, "sweep axis param=start:stop:count (repeatable)");
  auto* o_kappa = app.add_option("--kappa", kappa, "ellipse scale factor");
  auto* o_points = app.add_option("--points", points, "polyline points per ellipse");
  auto* o_output = app.add_option("--output", output, "output path (stdout when omitted)");
  auto* o_format = app.add_option("--format", format, "json or csv");

  app.add_subcommand("analyze", "QFIM / QGT / incompatibility report for a model")->fallthrough();
  app.add_subcommand("teur-check", "evaluate the error tradeoff for a covariance")->fallthrough();
  app.add_subcommand("sweep", "CSV sweep of the joint covariance over scheme grids")->fallthrough();
  app.add_subcommand("simulate", "Monte Carlo sample-mean estimation")->fallthrough();
  app.add_subcommand("ellipse", "boundary polylines for quantum-limit / error ellipses")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Json cfg = Json::object();
    if (o_config->count()) cfg = load_config(config_path);
    if (o_model->count()) cfg["model"] = model;
    if (o_theta->count()) cfg["theta"] = theta;
    if (o_r->count()) cfg["r"] = r;
    if (o_phi->count()) cfg["phi"] = phi;
    if (o_r_anc->count()) cfg["r_anc"] = r_anc;
    if (o_phi_anc->count()) cfg["phi_anc"] = phi_anc;
    if (o_n->count()) cfg["n"] = n;
    if (o_trials->count()) cfg["trials"] = trials;
    if (o_seed->count()) cfg["seed"] = seed;
    if (o_grid->count()) cfg["grid"] = grid;
    if (o_kappa->count()) cfg["kappa"] = kappa;
    if (o_points->count()) cfg["points"] = points;
    if (o_output->count()) cfg["output"] = output;
    if (o_format->count()) cfg["format"] = format;

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "analyze") return run_analyze(cfg);
    if (cmd == "teur-check") return run_teur_check(cfg);
    if (cmd == "sweep") return run_sweep(cfg);
    if (cmd == "simulate") return run_simulate(cfg);
    return run_ellipse(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const teurkit::UnknownModel& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const teurkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
