#include "flaglyap/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "flaglyap/errors.hpp"
#include "flaglyap/liealg.hpp"
#include "flaglyap/matkit.hpp"

namespace flaglyap {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError("config " + path + ": " + what);
}

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail(path, "missing required field '" + key + "'");
  return j.at(key);
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::uint64_t as_u64(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    fail(path, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::vector<int> as_int_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], path + "/" + std::to_string(i)));
  return out;
}

Vector as_vector(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = as_double(j[i], path + "/" + std::to_string(i));
  return v;
}

Matrix as_matrix(const json& j, int d, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) fail(path, "expected " + std::to_string(d) + " rows");
  Matrix m(d, d);
  for (int r = 0; r < d; ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != d) fail(rp, "expected " + std::to_string(d) + " entries");
    for (int c = 0; c < d; ++c) m(r, c) = as_double(j[r][c], rp + "/" + std::to_string(c));
  }
  return m;
}

std::vector<Matrix> as_matrix_table(const json& j, int n, int d, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) fail(path, "expected one matrix per base point (" + std::to_string(n) + ")");
  std::vector<Matrix> out;
  for (int x = 0; x < n; ++x) out.push_back(as_matrix(j[x], d, path + "/" + std::to_string(x)));
  return out;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

json to_json(const CartanVector& h) {
  json a = json::array();
  for (int i = 0; i < h.dim(); ++i) a.push_back(h[i]);
  return a;
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const ThetaSet& t) { return t.indices(); }

ExperimentConfig parse_config(const json& j, const ConfigOverrides& overrides) {
  if (!j.is_object()) fail("/", "top level must be an object");
  const int schema = as_int(require(j, "schema", "/"), "/schema");
  if (schema != kConfigSchema) fail("/schema", "unsupported schema version " + std::to_string(schema));

  ExperimentConfig cfg;
  json resolved = {{"schema", kConfigSchema}};
  const std::uint64_t master_seed = overrides.seed.value_or(j.value("seed", std::uint64_t{1}));
  resolved["seed"] = master_seed;

  // ambient
  const json& amb = require(j, "ambient", "/");
  if (amb.contains("symplectic_n")) {
    cfg.symplectic_n = as_int(amb["symplectic_n"], "/ambient/symplectic_n");
    if (cfg.symplectic_n < 1 || 2 * cfg.symplectic_n > kMaxDim) fail("/ambient/symplectic_n", "out of range");
    cfg.dim = 2 * cfg.symplectic_n;
  } else {
    cfg.dim = as_int(require(amb, "d", "/ambient"), "/ambient/d");
    if (cfg.dim < kMinDim || cfg.dim > kMaxDim) fail("/ambient/d", "dimension must lie in [2, 12]");
  }
  resolved["ambient"] = cfg.symplectic_n > 0 ? json{{"symplectic_n", cfg.symplectic_n}} : json{{"d", cfg.dim}};
  const int d = cfg.dim;

  // base
  const json& bj = require(j, "base", "/");
  const int n = as_int(require(bj, "size", "/base"), "/base/size");
  if (n < 1) fail("/base/size", "must be positive");
  std::vector<std::vector<int>> cycles;
  const json& cj = require(bj, "cycles", "/base");
  if (!cj.is_array()) fail("/base/cycles", "expected an array of cycles");
  for (std::size_t c = 0; c < cj.size(); ++c) cycles.push_back(as_int_list(cj[c], "/base/cycles/" + std::to_string(c)));
  std::vector<double> nu;
  if (bj.contains("weights")) {
    const Vector w = as_vector(bj["weights"], "/base/weights");
    nu.assign(w.data(), w.data() + w.size());
  }
  BaseSystem base;
  try {
    base = BaseSystem::from_cycles(n, cycles, nu);
  } catch (const Error& e) {
    fail("/base", e.what());
  }
  resolved["base"] = {{"size", n}, {"cycles", cycles}, {"weights", base.measure()}};

  // generators
  const json& gj = require(j, "generators", "/");
  std::vector<Matrix> gens;
  json gen_resolved;
  if (gj.contains("sampler")) {
    const json& sj = gj["sampler"];
    const std::string fam = require(sj, "family", "/generators/sampler").get<std::string>();
    Family family;
    try {
      family = family_from_string(fam);
    } catch (const Error& e) {
      fail("/generators/sampler/family", e.what());
    }
    try {
      switch (family) {
        case Family::ConePositive: cfg.semigroup = SemigroupSpec::cone_positive(d); break;
        case Family::TotallyPositive: cfg.semigroup = SemigroupSpec::totally_positive(d); break;
        case Family::MinorPositive:
          cfg.semigroup = SemigroupSpec::minor_positive(d, as_int_list(require(sj, "k", "/generators/sampler"), "/generators/sampler/k"));
          break;
        case Family::SymplecticQ:
          if (cfg.symplectic_n == 0) fail("/generators/sampler/family", "symplectic_q needs ambient.symplectic_n");
          cfg.semigroup = SemigroupSpec::symplectic_q(cfg.symplectic_n);
          break;
      }
    } catch (const Error& e) {
      fail("/generators/sampler", e.what());
    }
    if (cfg.symplectic_n > 0 && family != Family::SymplecticQ) {
      fail("/generators/sampler/family", "symplectic ambient requires the symplectic_q family");
    }
    const std::uint64_t seed = overrides.seed ? mix(master_seed, 1)
                                              : (sj.contains("seed") ? as_u64(sj["seed"], "/generators/sampler/seed") : mix(master_seed, 1));
    gens = sample_cocycle(*cfg.semigroup, base, seed).generators();
    gen_resolved = {{"sampler", {{"family", fam}, {"seed", seed}}}};
    if (family == Family::MinorPositive) gen_resolved["sampler"]["k"] = cfg.semigroup->k_set();
  } else if (gj.contains("explicit")) {
    gens = as_matrix_table(gj["explicit"], n, d, "/generators/explicit");
    gen_resolved = {{"explicit", true}};
  } else if (gj.contains("constant")) {
    gens.assign(n, as_matrix(gj["constant"], d, "/generators/constant"));
    gen_resolved = {{"constant", true}};
  } else {
    fail("/generators", "expected one of 'sampler', 'explicit', 'constant'");
  }
  for (int x = 0; x < n; ++x) {
    if (!is_group_element(gens[x])) fail("/generators/" + std::to_string(x), "generator does not have unit determinant");
  }
  if (cfg.symplectic_n > 0) {
    const Matrix jf = symplectic_form(cfg.symplectic_n);
    for (int x = 0; x < n; ++x) {
      if ((gens[x].transpose() * jf * gens[x] - jf).cwiseAbs().maxCoeff() > default_tolerances().symplectic) {
        fail("/generators/" + std::to_string(x), "generator is not symplectic");
      }
    }
  }
  cfg.cocycle = Cocycle(base, gens);
  json matrices = json::array();
  for (const auto& g : gens) matrices.push_back(to_json(g));
  gen_resolved["matrices"] = matrices;
  resolved["generators"] = gen_resolved;

  // weights
  if (j.contains("weights")) {
    const json& wj = j["weights"];
    if (!wj.is_array() || wj.empty()) fail("/weights", "expected a non-empty array of coefficient lists");
    for (std::size_t i = 0; i < wj.size(); ++i) {
      const std::string p = "/weights/" + std::to_string(i);
      const Vector m = as_vector(wj[i], p);
      if (m.size() != d - 1) fail(p, "expected " + std::to_string(d - 1) + " fundamental-weight coefficients");
      cfg.weights.push_back(WeightVector::from_fundamental(m));
    }
  } else {
    const ThetaSet outside = cfg.semigroup ? predicted_theta(*cfg.semigroup) : ThetaSet::empty(d);
    cfg.weights = weights_outside(outside);
  }
  json wres = json::array();
  for (const auto& w : cfg.weights) {
    const Vector m = w.fundamental_coordinates();
    wres.push_back(std::vector<double>(m.data(), m.data() + m.size()));
  }
  resolved["weights"] = wres;

  // gauge
  json gauge_resolved;
  const json gauge_j = j.value("gauge", json{{"random", json::object()}});
  if (gauge_j.contains("explicit")) {
    auto table = as_matrix_table(gauge_j["explicit"], n, d, "/gauge/explicit");
    try {
      cfg.gauge = cfg.symplectic_n > 0 ? GaugeDirection::symplectic(std::move(table)) : GaugeDirection(std::move(table));
    } catch (const Error& e) {
      fail("/gauge/explicit", e.what());
    }
    gauge_resolved = {{"explicit", true}};
  } else if (gauge_j.contains("zero")) {
    cfg.gauge = GaugeDirection::zero(n, d);
    gauge_resolved = {{"zero", true}};
  } else if (gauge_j.contains("random")) {
    const json& rj = gauge_j["random"];
    const std::uint64_t seed = overrides.seed ? mix(master_seed, 2)
                                              : (rj.contains("seed") ? as_u64(rj["seed"], "/gauge/random/seed") : mix(master_seed, 2));
    const double scale = rj.contains("scale") ? as_double(rj["scale"], "/gauge/random/scale") : 1.0;
    Rng rng(seed);
    cfg.gauge = cfg.symplectic_n > 0 ? random_symplectic_gauge(n, cfg.symplectic_n, rng, scale) : random_gauge(n, d, rng, scale);
    gauge_resolved = {{"random", {{"seed", seed}, {"scale", scale}}}};
  } else {
    fail("/gauge", "expected one of 'explicit', 'random', 'zero'");
  }
  json gauge_tables = json::array();
  for (const auto& y : cfg.gauge.table()) gauge_tables.push_back(to_json(y));
  gauge_resolved["matrices"] = gauge_tables;
  resolved["gauge"] = gauge_resolved;

  // solver
  const json sj = j.value("solver", json::object());
  if (sj.contains("tol")) cfg.section.tol = as_double(sj["tol"], "/solver/tol");
  if (overrides.tol) cfg.section.tol = *overrides.tol;
  if (!(cfg.section.tol > 0.0)) fail("/solver/tol", "must be positive");
  if (sj.contains("max_iter")) cfg.section.max_iter = as_int(sj["max_iter"], "/solver/max_iter");
  if (sj.contains("restarts")) cfg.section.restarts = as_int(sj["restarts"], "/solver/restarts");
  cfg.section.seed = overrides.seed ? mix(master_seed, 3)
                                    : (sj.contains("seed") ? as_u64(sj["seed"], "/solver/seed") : mix(master_seed, 3));
  if (sj.contains("theta_eps")) cfg.theta_eps = as_double(sj["theta_eps"], "/solver/theta_eps");
  if (sj.contains("section_theta")) {
    try {
      cfg.section_theta = ThetaSet(d, as_int_list(sj["section_theta"], "/solver/section_theta"));
    } catch (const Error& e) {
      fail("/solver/section_theta", e.what());
    }
  }
  resolved["solver"] = {{"tol", cfg.section.tol},
                        {"max_iter", cfg.section.max_iter},
                        {"restarts", cfg.section.restarts},
                        {"seed", cfg.section.seed},
                        {"theta_eps", cfg.theta_eps}};
  if (cfg.section_theta) resolved["solver"]["section_theta"] = cfg.section_theta->indices();

  // derivative
  const json dj = j.value("derivative", json::object());
  if (dj.contains("steps")) {
    const Vector steps = as_vector(dj["steps"], "/derivative/steps");
    cfg.fd_steps.assign(steps.data(), steps.data() + steps.size());
    if (cfg.fd_steps.empty()) fail("/derivative/steps", "must not be empty");
    for (double h : cfg.fd_steps)
      if (!(h > 0.0)) fail("/derivative/steps", "steps must be positive");
  }
  double t_min = -0.5, t_max = 0.5;
  int count = 21;
  if (dj.contains("scan")) {
    const json& sc = dj["scan"];
    if (sc.contains("t_min")) t_min = as_double(sc["t_min"], "/derivative/scan/t_min");
    if (sc.contains("t_max")) t_max = as_double(sc["t_max"], "/derivative/scan/t_max");
    if (sc.contains("count")) count = as_int(sc["count"], "/derivative/scan/count");
  }
  if (count < 1 || !(t_max >= t_min)) fail("/derivative/scan", "need count >= 1 and t_max >= t_min");
  for (int k = 0; k < count; ++k) {
    cfg.scan_grid.push_back(count == 1 ? t_min : t_min + (t_max - t_min) * k / (count - 1));
  }
  resolved["derivative"] = {{"steps", cfg.fd_steps}, {"scan", {{"t_min", t_min}, {"t_max", t_max}, {"count", count}}}};

  // spectrum
  const json spj = j.value("spectrum", json::object());
  if (spj.contains("finite_n")) cfg.finite_horizon = as_int(spj["finite_n"], "/spectrum/finite_n");
  if (cfg.finite_horizon < 0) fail("/spectrum/finite_n", "must be non-negative");
  resolved["spectrum"] = {{"finite_n", cfg.finite_horizon}};

  // semigroup checks
  const json gcj = j.value("semigroup", json::object());
  if (gcj.contains("directions")) cfg.gap_check.directions = as_int(gcj["directions"], "/semigroup/directions");
  cfg.gap_check.seed = overrides.seed ? mix(master_seed, 4)
                                      : (gcj.contains("seed") ? as_u64(gcj["seed"], "/semigroup/seed") : mix(master_seed, 4));
  resolved["semigroup"] = {{"directions", cfg.gap_check.directions}, {"seed", cfg.gap_check.seed}};

  // output
  const json oj = j.value("output", json::object());
  if (oj.contains("dir")) {
    if (!oj["dir"].is_string()) fail("/output/dir", "expected a string");
    cfg.out_dir = oj["dir"].get<std::string>();
  }
  if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;
  resolved["output"] = {{"dir", cfg.out_dir.string()}};

  cfg.resolved = std::move(resolved);
  return cfg;
}

VerifyConfig parse_verify_config(const json& j, const ConfigOverrides& overrides) {
  if (!j.is_object()) fail("/", "top level must be an object");
  const int schema = as_int(require(j, "schema", "/"), "/schema");
  if (schema != kConfigSchema) fail("/schema", "unsupported schema version " + std::to_string(schema));
  VerifyConfig cfg;
  const json vj = j.value("verify", json::object());
  if (vj.contains("thresholds")) {
    if (!vj["thresholds"].is_object()) fail("/verify/thresholds", "expected an object");
    for (const auto& [key, val] : vj["thresholds"].items()) {
      cfg.thresholds[key] = as_double(val, "/verify/thresholds/" + key);
    }
  }
  if (vj.contains("only")) {
    if (!vj["only"].is_array()) fail("/verify/only", "expected an array of criterion ids");
    for (const auto& id : vj["only"]) {
      if (!id.is_string()) fail("/verify/only", "expected an array of criterion ids");
      cfg.only.push_back(id.get<std::string>());
    }
  }
  if (overrides.seed) {
    cfg.seed = *overrides.seed;
  } else if (vj.contains("seed")) {
    cfg.seed = as_u64(vj["seed"], "/verify/seed");
  }
  const json oj = j.value("output", json::object());
  if (oj.contains("dir")) {
    if (!oj["dir"].is_string()) fail("/output/dir", "expected a string");
    cfg.out_dir = oj["dir"].get<std::string>();
  }
  if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;
  cfg.resolved = {{"schema", kConfigSchema},
                  {"verify", {{"thresholds", cfg.thresholds}, {"only", cfg.only}, {"seed", cfg.seed}}},
                  {"output", {{"dir", cfg.out_dir.string()}}}};
  return cfg;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ValidationError(path.string() + ":" + std::to_string(line) + ": JSON syntax error: " + e.what());
  }
}

ExperimentConfig load_config_file(const std::filesystem::path& path, const ConfigOverrides& overrides) {
  const json j = read_json_file(path);
  try {
    return parse_config(j, overrides);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

json to_json(const SpectrumReport& r, const BaseSystem& base) {
  json pts = json::array();
  for (std::size_t x = 0; x < r.per_point.size(); ++x) {
    json gaps = json::array();
    for (int i = 1; i < r.per_point[x].dim(); ++i) gaps.push_back(simple_root_value(i, r.per_point[x]));
    pts.push_back({{"x", x}, {"nu", base.nu(static_cast<int>(x))}, {"h_plus", to_json(r.per_point[x])}, {"gaps", gaps}});
  }
  return {{"method", to_string(r.method)},
          {"horizon", r.horizon},
          {"points", pts},
          {"mean", to_json(r.mean)},
          {"mean_gaps", r.gaps},
          {"theta_eps", r.theta_eps},
          {"estimated_theta", to_json(r.theta)},
          {"closed_gaps", to_json(r.theta)}};
}

json to_json(const GapReport& r) {
  json diff = json::array();
  for (const auto& d : r.differentiability) {
    diff.push_back({{"weight", d.weight_index},
                    {"direction", d.direction},
                    {"analytic", d.analytic},
                    {"finite_difference", d.finite_difference},
                    {"residual", d.residual},
                    {"oblique", d.oblique},
                    {"oblique_residual", d.oblique_residual},
                    {"passed", d.passed}});
  }
  return {{"predicted_theta", to_json(r.predicted)},
          {"estimated_theta", to_json(r.estimated)},
          {"containment", r.containment},
          {"roots", r.roots},
          {"per_point_gaps", r.gaps},
          {"min_gap", r.min_gap},
          {"min_point", r.min_point},
          {"min_root", r.min_root},
          {"gaps_positive", r.gaps_positive},
          {"pairing_error", r.pairing_error},
          {"min_two_chi_n", r.min_two_chi_n},
          {"symplectic_ok", r.symplectic_ok},
          {"differentiability", diff},
          {"differentiable", r.differentiable},
          {"passed", r.passed}};
}

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string spectrum_csv(const SpectrumReport& r, const BaseSystem& base) {
  std::ostringstream os;
  const int d = r.mean.dim();
  os << "x,nu";
  for (int i = 1; i <= d; ++i) os << ",h" << i;
  for (int i = 1; i < d; ++i) os << ",gap" << i;
  os << "\r\n";
  for (std::size_t x = 0; x < r.per_point.size(); ++x) {
    const auto& h = r.per_point[x];
    os << x << ',' << fmt(base.nu(static_cast<int>(x)));
    for (int i = 0; i < d; ++i) os << ',' << fmt(h[i]);
    for (int i = 1; i < d; ++i) os << ',' << fmt(simple_root_value(i, h));
    os << "\r\n";
  }
  return os.str();
}

std::string scan_csv(const std::vector<std::vector<ScanRow>>& scans) {
  std::ostringstream os;
  std::size_t gaps = 0;
  for (const auto& s : scans)
    if (!s.empty()) gaps = s.front().gaps.size();
  os << "omega,t,value";
  for (std::size_t i = 1; i <= gaps; ++i) os << ",gap" << i;
  os << "\r\n";
  for (std::size_t w = 0; w < scans.size(); ++w) {
    for (const auto& row : scans[w]) {
      os << w << ',' << fmt(row.t) << ',' << fmt(row.value);
      for (double g : row.gaps) os << ',' << fmt(g);
      os << "\r\n";
    }
  }
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace flaglyap
