#include "flaglyap/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "flaglyap/errors.hpp"
#include "flaglyap/flagdyn.hpp"
#include "flaglyap/gaugediff.hpp"
#include "flaglyap/liealg.hpp"
#include "flaglyap/matkit.hpp"
#include "flaglyap/random.hpp"
#include "flaglyap/semigrp.hpp"
#include "flaglyap/spectra.hpp"

namespace flaglyap {

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  const char* id;
  const char* title;
  double threshold;
  double budget_seconds;  // <= 0: no runtime requirement
  // Returns the worst observed error; may append to detail.
  std::function<double(std::uint64_t seed, std::string& detail)> run;
};

double rel_err(const Matrix& a, const Matrix& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

std::vector<SemigroupSpec> families() {
  return {SemigroupSpec::cone_positive(3), SemigroupSpec::totally_positive(3), SemigroupSpec::minor_positive(4, {1, 3}),
          SemigroupSpec::symplectic_q(2)};
}

Cocycle semigroup_cocycle(const SemigroupSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  const BaseSystem base = random_base(6, 3, rng);
  return sample_cocycle(spec, base, seed ^ 0xabcdefULL);
}

double c1(std::uint64_t seed, std::string& detail) {
  Rng rng(seed);
  double worst = 0.0;
  int count = 0;
  for (int d = 2; d <= 6; ++d) {
    for (int k = 0; k < 1000; ++k) {
      const Matrix g = random_sl(d, rng);
      const auto f = iwasawa(g);
      const Matrix a = f.a.values().array().exp().matrix().asDiagonal();
      worst = std::max(worst, rel_err(f.k * a * f.n, g));
      const auto p = polar_chamber(g);
      const Matrix h = p.h_plus.values().array().exp().matrix().asDiagonal();
      worst = std::max(worst, rel_err(p.k1 * h * p.k2, g));
      ++count;
    }
  }
  detail = std::to_string(count) + " matrices, d = 2..6";
  return worst;
}

double c2(std::uint64_t seed, std::string& detail) {
  Rng rng(seed);
  double worst = 0.0;
  std::uniform_int_distribution<int> len(0, 10);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 5;
    const BaseSystem base = random_base(8, 5, rng);
    std::vector<Matrix> gens;
    for (int x = 0; x < base.size(); ++x) gens.push_back(random_sl(d, rng));
    const Cocycle c(base, gens);
    const int n = len(rng), m = len(rng);
    const int x = static_cast<int>(rng() % static_cast<std::uint64_t>(base.size()));
    const int xm = base.iterate(x, m);
    worst = std::max(worst, rel_err(cocycle_step(c, n, xm) * cocycle_step(c, m, x), cocycle_step(c, n + m, x)));

    const FlagPoint xi(ThetaSet::empty(d), random_special_orthogonal(d, rng));
    const CartanVector whole = cocycle_a(c, n + m, x, xi);
    const CartanVector split = cocycle_a(c, n, xm, transport(c, m, x, xi)) + cocycle_a(c, m, x, xi);
    worst = std::max(worst, (whole - split).values().cwiseAbs().maxCoeff() / std::max(1.0, whole.values().norm()));
  }
  detail = "50 cocycles, flow and additive identities";
  return worst;
}

double c3(std::uint64_t seed, std::string& detail) {
  double worst = 0.0;
  const auto fams = families();
  for (int k = 0; k < 20; ++k) {
    const SemigroupSpec& spec = fams[k % fams.size()];
    const Cocycle c = semigroup_cocycle(spec, seed + 1000 * k);
    const ThetaSet theta = predicted_theta(spec);
    for (const auto& omega : weights_outside(theta)) {
      const double a = spectrum_functional(c, omega);
      const double b = spectrum_via_section(c, omega, theta);
      worst = std::max(worst, std::abs(a - b));
    }
  }
  detail = "20 semigroup cocycles, weights outside the predicted type";
  return worst;
}

double c4(std::uint64_t seed, std::string& detail) {
  Rng rng(seed);
  double worst = 0.0;
  std::uniform_int_distribution<int> horizon(1, 12);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 5;
    const BaseSystem base = random_base(5, 3, rng);
    std::vector<Matrix> gens;
    for (int x = 0; x < base.size(); ++x) gens.push_back(random_sl(d, rng));
    const Cocycle c(base, gens);
    std::vector<int> idx;
    for (int i = 1; i < d; ++i)
      if (rng() % 2) idx.push_back(i);
    if (static_cast<int>(idx.size()) == d - 1) idx.pop_back();
    const ThetaSet theta(d, idx);
    Vector coords = Vector::Zero(d - 1);
    for (int i : theta.complement()) coords[i - 1] = std::normal_distribution<double>()(rng);
    const WeightVector omega = WeightVector::from_fundamental(coords);
    const Matrix k0 = random_special_orthogonal(d, rng);
    const int n = horizon(rng);
    const int x = static_cast<int>(rng() % static_cast<std::uint64_t>(base.size()));
    const double ref = cocycle_omega(c, omega, n, x, FlagPoint(theta, k0));
    for (int lift = 0; lift < 20; ++lift) {
      const FlagPoint xi(theta, k0 * random_stabilizer(theta, rng));
      worst = std::max(worst, std::abs(cocycle_omega(c, omega, n, x, xi) - ref) / std::max(1.0, std::abs(ref)));
    }
  }
  detail = "10 cocycles x 20 fiber lifts";
  return worst;
}

double c5(std::uint64_t seed, std::string& detail) {
  double worst = 0.0;
  int checks = 0;
  for (int d = 2; d <= 3; ++d) {
    for (int k = 0; k < 5; ++k) {
      const Cocycle c = semigroup_cocycle(SemigroupSpec::totally_positive(d), seed + 77 * k + d);
      for (const auto& cyc : cycle_decomposition(c.base())) {
        const WeylCheck w = weyl_relation_check(c, cyc.points.front(), 40, 1e-6, seed + k);
        worst = std::max(worst, w.max_error);
        ++checks;
      }
    }
  }
  detail = std::to_string(checks) + " period maps, totally positive d = 2, 3";
  return worst;
}

double c6(std::uint64_t seed, std::string& detail) {
  double worst = 0.0, worst_oblique = 0.0;
  int evaluations = 0;
  const auto fams = families();
  for (std::size_t f = 0; f < fams.size(); ++f) {
    const auto& spec = fams[f];
    for (int k = 0; k < 5; ++k) {
      const std::uint64_t s = seed + 100 * f + k;
      const Cocycle c = semigroup_cocycle(spec, s);
      Rng rng(s + 7);
      std::vector<GaugeDirection> dirs;
      for (int j = 0; j < 10; ++j) dirs.push_back(sample_gauge(spec, c.base().size(), rng));
      for (int i : predicted_theta(spec).complement()) {
        const WeightVector omega = fundamental_weight(i, c.dim());
        const Section sec = attractor_section(c, section_type_for(omega));
        const Section rep = repeller_section(c, section_type_for(omega));
        for (const auto& y : dirs) {
          const double a = analytic_differential_on_section(c, omega, y, sec);
          const double b = oblique_differential_on_sections(c, omega, y, sec, rep);
          const double fd = finite_difference(c, omega, y, 1e-4).slope;
          worst = std::max(worst, std::abs(a - fd) / (1.0 + std::abs(a)));
          worst_oblique = std::max(worst_oblique, std::abs(b - fd) / (1.0 + std::abs(b)));
          ++evaluations;
        }
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "; oblique formula worst residual %.3g", worst_oblique);
  detail = std::to_string(evaluations) + " (cocycle, direction, weight) triples over 4 families" + buf;
  return worst;
}

double c7(std::uint64_t seed, std::string& detail) {
  double worst = 0.0;
  const SemigroupSpec spec = SemigroupSpec::cone_positive(3);
  for (int k = 0; k < 10; ++k) {
    const Cocycle c = semigroup_cocycle(spec, seed + 31 * k);
    Rng rng(seed + k);
    const GaugeDirection y = random_gauge(c.base().size(), c.dim(), rng);
    const double a = analytic_differential(c, fundamental_weight(1, c.dim()), y);
    const double r = ruelle_differential(c, y);
    worst = std::max(worst, std::abs(a - r));
  }
  detail = "10 cone-positive cocycles";
  return worst;
}

double c8(std::uint64_t seed, std::string& detail) {
  // Measured: number of failed reports. Gap margins go to detail.
  int failures = 0;
  std::ostringstream os;
  const std::vector<SemigroupSpec> specs{SemigroupSpec::cone_positive(3), SemigroupSpec::cone_positive(4),
                                         SemigroupSpec::totally_positive(3), SemigroupSpec::totally_positive(5),
                                         SemigroupSpec::minor_positive(4, {1, 3}), SemigroupSpec::minor_positive(5, {2}),
                                         SemigroupSpec::symplectic_q(1), SemigroupSpec::symplectic_q(2)};
  GapCheckOptions opts;
  opts.directions = 0;
  for (std::size_t f = 0; f < specs.size(); ++f) {
    double min_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 5; ++k) {
      const Cocycle c = semigroup_cocycle(specs[f], seed + 13 * f + 1009 * k);
      const GapReport r = gap_prediction_report(c, specs[f], opts);
      if (!(r.containment && r.gaps_positive && r.symplectic_ok)) ++failures;
      min_gap = std::min(min_gap, r.min_gap);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%s(d=%d) min gap %.3g", f ? "; " : "", to_string(specs[f].family()).c_str(),
                  specs[f].dim(), min_gap);
    os << buf;
  }
  detail = os.str();
  return failures;
}

double c9(std::uint64_t seed, std::string& detail) {
  // Measured: worst invariance residual; structural failures push it to +inf.
  double worst = 0.0;
  int bad = 0;
  for (const auto& spec : families()) {
    for (int k = 0; k < 3; ++k) {
      const Cocycle c = semigroup_cocycle(spec, seed + 57 * k + spec.dim());
      const ThetaSet theta = predicted_theta(spec);
      const Section att = attractor_section(c, theta);
      const Section rep = repeller_section(c, theta);
      worst = std::max({worst, invariance_residual(c, att), att.residual, rep.residual});
      const double r = fitted_contraction(att.residual_history);
      if (att.residual_history.size() > 2 && !(r < 1.0)) ++bad;
      for (bool t : transversality_check(att, rep))
        if (!t) ++bad;
    }
  }
  BaseSystem one = BaseSystem::uniform({0});
  const double angle = std::numbers::sqrt2;
  Matrix rot(2, 2);
  rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  bool raised = false;
  try {
    attractor_section(Cocycle::constant(one, rot), ThetaSet::empty(2));
  } catch (const NoConvergence&) {
    raised = true;
  }
  if (!raised) ++bad;
  detail = std::to_string(bad) + " structural failures (contraction, transversality, rotation)";
  return bad ? std::numeric_limits<double>::infinity() : worst;
}

double c10(std::uint64_t seed, std::string& detail) {
  double lin = 0.0, stab = 0.0;
  const auto fams = families();
  for (int k = 0; k < 8; ++k) {
    const auto& spec = fams[k % fams.size()];
    const Cocycle c = semigroup_cocycle(spec, seed + 211 * k);
    Rng rng(seed + k);
    const int n = c.base().size();
    const GaugeDirection y1 = sample_gauge(spec, n, rng);
    const GaugeDirection y2 = sample_gauge(spec, n, rng);
    std::normal_distribution<double> normal;
    const double a = normal(rng), b = normal(rng);
    for (int i : predicted_theta(spec).complement()) {
      const WeightVector omega = fundamental_weight(i, c.dim());
      const double d1 = analytic_differential(c, omega, y1);
      const double d2 = analytic_differential(c, omega, y2);
      const double d12 = analytic_differential(c, omega, y1.combine(a, y2, b));
      lin = std::max(lin, std::abs(d12 - (a * d1 + b * d2)));

      Section s = attractor_section(c, section_type_for(omega));
      const double ref = analytic_differential_on_section(c, omega, y1, s);
      for (auto& f : s.flags) f = FlagPoint(f.theta, f.frame * random_stabilizer(f.theta, rng));
      stab = std::max(stab, std::abs(analytic_differential_on_section(c, omega, y1, s) - ref));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "linearity %.3g, stabilizer change %.3g (bound 1e-9)", lin, stab);
  detail = buf;
  return stab > 1e-9 ? std::numeric_limits<double>::infinity() : lin;
}

std::vector<Criterion> criteria() {
  return {
      {"C1", "decomposition suite", 1e-10, 5.0, c1},
      {"C2", "cocycle algebra", 1e-9, 0.0, c2},
      {"C3", "oracle equivalence", 1e-8, 0.0, c3},
      {"C4", "fiber constancy", 1e-10, 0.0, c4},
      {"C5", "Weyl relation", 1e-6, 0.0, c5},
      {"C6", "differentiability of the spectrum", 1e-5, 60.0, c6},
      {"C7", "Ruelle consistency", 1e-10, 0.0, c7},
      {"C8", "gap predictions", 0.0, 0.0, c8},
      {"C9", "section solver", 1e-10, 0.0, c9},
      {"C10", "differential linearity and representative independence", 1e-10, 0.0, c10},
  };
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

std::vector<std::string> criterion_ids() {
  std::vector<std::string> out;
  for (const auto& c : criteria()) out.emplace_back(c.id);
  return out;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts) {
  std::vector<CriterionResult> results;
  for (const auto& c : criteria()) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), c.id) == opts.only.end()) continue;
    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    r.threshold = c.threshold;
    if (auto it = opts.thresholds.find(c.id); it != opts.thresholds.end()) r.threshold = it->second;
    const auto start = Clock::now();
    try {
      r.measured = c.run(opts.seed, r.detail);
      r.passed = r.measured <= r.threshold;
    } catch (const std::exception& e) {
      r.measured = std::numeric_limits<double>::quiet_NaN();
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.budget_seconds > 0.0 && r.seconds >= c.budget_seconds) {
      r.passed = false;
      r.detail += (r.detail.empty() ? "" : "; ") + std::string("runtime budget ") + fmt(c.budget_seconds) +
                  " s exceeded";
    }
    if (opts.progress) opts.progress(r);
    results.push_back(std::move(r));
  }
  return results;
}

nlohmann::json to_json(const std::vector<CriterionResult>& results) {
  nlohmann::json list = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    nlohmann::json measured = std::isnan(r.measured) ? nlohmann::json(nullptr)
                              : std::isinf(r.measured) ? nlohmann::json("inf")
                                                       : nlohmann::json(r.measured);
    list.push_back({{"id", r.id},
                    {"title", r.title},
                    {"passed", r.passed},
                    {"measured", measured},
                    {"threshold", r.threshold},
                    {"detail", r.detail}});
  }
  return {{"passed", all}, {"criteria", list}};
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS " : "FAIL ") << r.id << ' ' << r.title << ": measured=" << fmt(r.measured)
     << " threshold=" << fmt(r.threshold) << " (" << fmt(r.seconds) << " s)";
  if (!r.detail.empty()) os << " [" << r.detail << ']';
  return os.str();
}

}  // namespace flaglyap
