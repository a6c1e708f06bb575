#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "flaglyap/errors.hpp"
#include "flaglyap/experiment.hpp"
#include "flaglyap/flagdyn.hpp"
#include "flaglyap/gaugediff.hpp"
#include "flaglyap/liealg.hpp"
#include "flaglyap/semigrp.hpp"
#include "flaglyap/spectra.hpp"
#include "flaglyap/verify.hpp"

using namespace flaglyap;
using nlohmann::json;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kNoConvergence = 3,
  kInadmissible = 4,
  kPredictionViolated = 5,
  kNumerical = 6,
};

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> tol;

  ConfigOverrides overrides() const { return {seed, tol, out}; }
};

json weight_json(const WeightVector& w) {
  const Vector m = w.fundamental_coordinates();
  return std::vector<double>(m.data(), m.data() + m.size());
}

int cmd_spectrum(const Flags& f) {
  const ExperimentConfig cfg = load_config_file(f.config, f.overrides());
  const auto& c = cfg.cocycle;
  const SpectrumReport exact = spectrum_report(c, SpectrumMethod::ExactPeriodic, 0, cfg.theta_eps);
  json out = {{"command", "spectrum"}, {"config", cfg.resolved}, {"exact", to_json(exact, c.base())}};
  write_text(cfg.out_dir / "spectrum.csv", spectrum_csv(exact, c.base()));
  if (cfg.finite_horizon > 0) {
    const SpectrumReport fin = spectrum_report(c, SpectrumMethod::FiniteN, cfg.finite_horizon, cfg.theta_eps);
    out["finite_n"] = to_json(fin, c.base());
    write_text(cfg.out_dir / "spectrum_finite.csv", spectrum_csv(fin, c.base()));
  }
  write_json(cfg.out_dir / "spectrum.json", out);
  std::printf("mean spectrum:");
  for (int i = 0; i < exact.mean.dim(); ++i) std::printf(" %.10g", exact.mean[i]);
  std::printf("\nestimated flag type: %s\n", exact.theta.to_string().c_str());
  return kOk;
}

json section_json(const Section& s) {
  json frames = json::array();
  for (const auto& fl : s.flags) frames.push_back(to_json(fl.frame));
  return {{"theta", to_json(s.theta)},
          {"frames", frames},
          {"residual", s.residual},
          {"sweeps", s.residual_history.size()},
          {"restarts", s.restarts},
          {"fitted_contraction", fitted_contraction(s.residual_history)},
          {"residual_history", s.residual_history}};
}

int cmd_section(const Flags& f) {
  const ExperimentConfig cfg = load_config_file(f.config, f.overrides());
  const auto& c = cfg.cocycle;
  const ThetaSet theta = cfg.section_theta ? *cfg.section_theta : flag_type_estimate(c, cfg.theta_eps);
  json out = {{"command", "section"}, {"config", cfg.resolved}, {"theta", to_json(theta)}};
  try {
    const Section att = attractor_section(c, theta, cfg.section);
    const Section rep = repeller_section(c, theta, cfg.section);
    const auto trans = transversality_check(att, rep);
    bool all = true;
    for (bool t : trans) all = all && t;
    out["status"] = "converged";
    out["attractor"] = section_json(att);
    out["repeller"] = section_json(rep);
    out["invariance_residual"] = invariance_residual(c, att);
    out["transversal"] = trans;
    out["all_transversal"] = all;
    write_json(cfg.out_dir / "section.json", out);
    std::printf("flag type %s: residual %.3g after %zu sweeps, transversal at every point: %s\n",
                theta.to_string().c_str(), att.residual, att.residual_history.size(), all ? "yes" : "no");
  } catch (const NoConvergence& e) {
    out["status"] = "no-convergence";
    out["max_iter"] = e.max_iter();
    out["last_residual"] = e.last_residual();
    out["residual_history"] = e.history();
    write_json(cfg.out_dir / "section.json", out);
    throw;
  }
  return kOk;
}

int cmd_derivative(const Flags& f) {
  const ExperimentConfig cfg = load_config_file(f.config, f.overrides());
  const auto& c = cfg.cocycle;
  const ThetaSet estimate = flag_type_estimate(c, cfg.theta_eps);
  DifferentialOptions opts;
  opts.section = cfg.section;
  opts.theta_eps = cfg.theta_eps;

  json rows = json::array();
  std::vector<std::vector<ScanRow>> scans;
  for (std::size_t w = 0; w < cfg.weights.size(); ++w) {
    const WeightVector& omega = cfg.weights[w];
    require_admissible(omega, estimate);
    const double analytic = analytic_differential(c, omega, cfg.gauge, opts);
    json fds = json::array();
    double residual = 0.0;
    for (std::size_t k = 0; k < cfg.fd_steps.size(); ++k) {
      const FiniteDifference fd = finite_difference(c, omega, cfg.gauge, cfg.fd_steps[k]);
      const double r = std::abs(analytic - fd.slope) / (1.0 + std::abs(analytic));
      if (k == 0) residual = r;
      fds.push_back({{"h", cfg.fd_steps[k]},
                     {"central_h", fd.central_h},
                     {"central_h2", fd.central_h2},
                     {"central_h4", fd.central_h4},
                     {"richardson", fd.slope},
                     {"order_estimate", fd.order_estimate},
                     {"residual", r}});
    }
    rows.push_back({{"omega", weight_json(omega)},
                    {"analytic", analytic},
                    {"finite_difference", fds},
                    {"agreement_residual", residual}});
    scans.push_back(smoothness_scan(c, omega, cfg.gauge, cfg.scan_grid));
    std::printf("omega %zu: analytic %.12g, residual %.3g\n", w, analytic, residual);
  }
  json out = {{"command", "derivative"},
              {"config", cfg.resolved},
              {"estimated_theta", to_json(estimate)},
              {"weights", rows}};
  write_json(cfg.out_dir / "derivative.json", out);
  write_text(cfg.out_dir / "scan.csv", scan_csv(scans));
  return kOk;
}

int cmd_semigroup(const Flags& f) {
  const ExperimentConfig cfg = load_config_file(f.config, f.overrides());
  if (!cfg.semigroup) throw ValidationError("config /generators: the semigroup command needs a sampler");
  const GapReport r = gap_prediction_report(cfg.cocycle, *cfg.semigroup, cfg.gap_check);
  json out = {{"command", "semigroup"},
              {"config", cfg.resolved},
              {"family", to_string(cfg.semigroup->family())},
              {"report", to_json(r)}};
  write_json(cfg.out_dir / "semigroup.json", out);
  std::printf("predicted %s, estimated %s, min gap %.6g, %s\n", r.predicted.to_string().c_str(),
              r.estimated.to_string().c_str(), r.min_gap, r.passed ? "all predictions hold" : "PREDICTION VIOLATED");
  if (!r.passed) {
    throw PredictionViolated("semigroup prediction failed at point " + std::to_string(r.min_point) + ", root " +
                                 std::to_string(r.min_root),
                             r.min_point, r.min_root);
  }
  return kOk;
}

int cmd_verify(const Flags& f) {
  const json j = f.config.empty() ? json{{"schema", kConfigSchema}} : read_json_file(f.config);
  VerifyConfig cfg;
  try {
    cfg = parse_verify_config(j, f.overrides());
  } catch (const ValidationError& e) {
    throw ValidationError((f.config.empty() ? std::string() : f.config + ": ") + e.what());
  }
  VerifyOptions opts;
  opts.seed = cfg.seed;
  opts.thresholds = cfg.thresholds;
  opts.only = cfg.only;
  opts.progress = [](const CriterionResult& r) { std::printf("%s\n", format_line(r).c_str()); std::fflush(stdout); };
  const auto results = run_acceptance(opts);
  json out = to_json(results);
  out["command"] = "verify";
  out["config"] = cfg.resolved;
  write_json(cfg.out_dir / "verify.json", out);
  for (const auto& r : results)
    if (!r.passed) return kPredictionViolated;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flag-bundle Lyapunov spectra of locally constant cocycles"};
  app.require_subcommand(1);
  Flags flags;
  std::uint64_t seed = 0;
  std::string out;
  double tol = 0.0;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", flags.config, "experiment configuration (JSON)");
    if (config_required) opt->required();
    sub->add_option("--seed", seed, "master seed; re-derives every seed in the config");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--tol", tol, "section solver tolerance")->check(CLI::PositiveNumber);
  };
  auto* spectrum = app.add_subcommand("spectrum", "polar exponents, mean spectrum, flag type");
  auto* section = app.add_subcommand("section", "attractor/repeller sections and transversality");
  auto* derivative = app.add_subcommand("derivative", "analytic vs finite-difference differential");
  auto* semigroup = app.add_subcommand("semigroup", "semigroup gap predictions");
  auto* verify = app.add_subcommand("verify", "run the property suite C1..C10");
  for (auto* s : {spectrum, section, derivative, semigroup}) add_common(s, true);
  add_common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  for (auto* s : {spectrum, section, derivative, semigroup, verify}) {
    if (s->count("--seed")) flags.seed = seed;
    if (s->count("--out")) flags.out = out;
    if (s->count("--tol")) flags.tol = tol;
  }

  try {
    if (*spectrum) return cmd_spectrum(flags);
    if (*section) return cmd_section(flags);
    if (*derivative) return cmd_derivative(flags);
    if (*semigroup) return cmd_semigroup(flags);
    if (*verify) return cmd_verify(flags);
  } catch (const NoConvergence& e) {
    std::fprintf(stderr, "error: %s\nresidual history (last 10):", e.what());
    const auto& h = e.history();
    for (std::size_t k = h.size() > 10 ? h.size() - 10 : 0; k < h.size(); ++k) std::fprintf(stderr, " %.3g", h[k]);
    std::fprintf(stderr, "\n");
    return kNoConvergence;
  } catch (const WeightNotAdmissible& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInadmissible;
  } catch (const PredictionViolated& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kPredictionViolated;
  } catch (const SingularInput& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kNumerical;
  } catch (const DecompositionFailure& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kNumerical;
  } catch (const DegenerateSpectrum& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kNumerical;
  } catch (const SamplerExhausted& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kNumerical;
  } catch (const Error& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return kValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  }
  return kUsage;
}
