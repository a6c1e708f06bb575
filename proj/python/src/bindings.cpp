#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flaglyap/errors.hpp"
#include "flaglyap/experiment.hpp"
#include "flaglyap/flagdyn.hpp"
#include "flaglyap/gaugediff.hpp"
#include "flaglyap/liealg.hpp"
#include "flaglyap/matkit.hpp"
#include "flaglyap/random.hpp"
#include "flaglyap/semigrp.hpp"
#include "flaglyap/spectra.hpp"
#include "flaglyap/verify.hpp"

namespace py = pybind11;
using namespace flaglyap;

namespace {

// Weights cross the boundary as fundamental-weight coordinates, flag types as index lists.
WeightVector weight(const Vector& fundamental) { return WeightVector::from_fundamental(fundamental); }

ThetaSet theta(int dim, const std::vector<int>& idx) { return ThetaSet(dim, idx); }

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

SemigroupSpec spec_from(const std::string& family, int d, const std::vector<int>& k) {
  switch (family_from_string(family)) {
    case Family::ConePositive: return SemigroupSpec::cone_positive(d);
    case Family::TotallyPositive: return SemigroupSpec::totally_positive(d);
    case Family::MinorPositive: return SemigroupSpec::minor_positive(d, k);
    case Family::SymplecticQ: return SemigroupSpec::symplectic_q(d / 2);
  }
  throw ValidationError("unknown family " + family);
}

SectionOptions section_options(double tol, int max_iter, std::uint64_t seed) {
  SectionOptions o;
  o.tol = tol;
  o.max_iter = max_iter;
  o.seed = seed;
  return o;
}

py::dict section_dict(const Section& s) {
  py::dict d;
  std::vector<Matrix> frames;
  for (const auto& f : s.flags) frames.push_back(f.frame);
  d["theta"] = s.theta.indices();
  d["frames"] = frames;
  d["residual"] = s.residual;
  d["residual_history"] = s.residual_history;
  d["restarts"] = s.restarts;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Flag-bundle Lyapunov spectra of locally constant SL(d) cocycles";

  // Translators run newest first, so the base class is registered first.
  auto base_error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base_error.ptr());
  py::register_exception<NoConvergence>(m, "NoConvergence", base_error.ptr());
  py::register_exception<WeightNotAdmissible>(m, "WeightNotAdmissible", base_error.ptr());
  py::register_exception<PredictionViolated>(m, "PredictionViolated", base_error.ptr());

  py::class_<BaseSystem>(m, "BaseSystem")
      .def(py::init<std::vector<int>, std::vector<double>>(), py::arg("tau"), py::arg("nu"))
      .def(py::init([](std::vector<int> tau) { return BaseSystem::uniform(std::move(tau)); }), py::arg("tau"))
      .def_static("from_cycles", &BaseSystem::from_cycles, py::arg("n"), py::arg("cycles"),
                  py::arg("nu") = std::vector<double>{})
      .def_static("random", [](int n, int max_cycle, std::uint64_t seed) {
        Rng rng(seed);
        return random_base(n, max_cycle, rng);
      }, py::arg("n"), py::arg("max_cycle"), py::arg("seed"))
      .def_property_readonly("size", &BaseSystem::size)
      .def_property_readonly("permutation", &BaseSystem::permutation)
      .def_property_readonly("measure", &BaseSystem::measure)
      .def("period", &BaseSystem::period);

  py::class_<Cocycle>(m, "Cocycle")
      .def(py::init([](BaseSystem base, std::vector<Matrix> gens) { return Cocycle(std::move(base), std::move(gens)); }),
           py::arg("base"), py::arg("generators"))
      .def_static("constant", &Cocycle::constant, py::arg("base"), py::arg("g"))
      .def_static("sample", [](const std::string& family, int d, const BaseSystem& base, std::uint64_t seed,
                               const std::vector<int>& k) { return sample_cocycle(spec_from(family, d, k), base, seed); },
                  py::arg("family"), py::arg("d"), py::arg("base"), py::arg("seed"), py::arg("k") = std::vector<int>{})
      .def_property_readonly("dim", &Cocycle::dim)
      .def_property_readonly("base", &Cocycle::base)
      .def_property_readonly("generators", &Cocycle::generators)
      .def("step", [](const Cocycle& c, int n, int x) { return cocycle_step(c, n, x); }, py::arg("n"), py::arg("x"));

  m.def("iwasawa", [](const Matrix& g) {
    const auto f = iwasawa(g);
    return py::make_tuple(f.k, Vector(f.a.values().array().exp().matrix()), f.n);
  }, py::arg("g"), "g = k a n; returns (k, diagonal of a, n).");
  m.def("polar", [](const Matrix& g) {
    const auto f = polar_chamber(g);
    return py::make_tuple(f.k1, f.h_plus.values(), f.k2);
  }, py::arg("g"), "g = k1 exp(diag(h)) k2 with h non-increasing.");

  m.def("polar_exponent", [](const Cocycle& c, int x, int n) {
    return (n > 0 ? polar_exponent_finite(c, x, n) : polar_exponent_exact(c, x)).values();
  }, py::arg("c"), py::arg("x"), py::arg("n") = 0, "Exact periodic limit when n == 0.");
  m.def("mean_spectrum", [](const Cocycle& c) { return mean_spectrum(c).values(); });
  m.def("flag_type", [](const Cocycle& c, double eps) { return flag_type_estimate(c, eps).indices(); },
        py::arg("c"), py::arg("eps") = 0.0);
  m.def("spectrum_functional", [](const Cocycle& c, const Vector& w) { return spectrum_functional(c, weight(w)); },
        py::arg("c"), py::arg("omega"));

  m.def("attractor_section", [](const Cocycle& c, const std::vector<int>& t, double tol, int max_iter, std::uint64_t seed) {
    return section_dict(attractor_section(c, theta(c.dim(), t), section_options(tol, max_iter, seed)));
  }, py::arg("c"), py::arg("theta"), py::arg("tol") = 1e-10, py::arg("max_iter") = 0, py::arg("seed") = 0x5eed);
  m.def("repeller_section", [](const Cocycle& c, const std::vector<int>& t, double tol, int max_iter, std::uint64_t seed) {
    return section_dict(repeller_section(c, theta(c.dim(), t), section_options(tol, max_iter, seed)));
  }, py::arg("c"), py::arg("theta"), py::arg("tol") = 1e-10, py::arg("max_iter") = 0, py::arg("seed") = 0x5eed);

  m.def("analytic_differential", [](const Cocycle& c, const Vector& w, const std::vector<Matrix>& y) {
    return analytic_differential(c, weight(w), GaugeDirection(y));
  }, py::arg("c"), py::arg("omega"), py::arg("y"));
  m.def("oblique_differential", [](const Cocycle& c, const Vector& w, const std::vector<Matrix>& y) {
    return oblique_differential(c, weight(w), GaugeDirection(y));
  }, py::arg("c"), py::arg("omega"), py::arg("y"));
  m.def("finite_difference", [](const Cocycle& c, const Vector& w, const std::vector<Matrix>& y, double h) {
    return finite_difference(c, weight(w), GaugeDirection(y), h).slope;
  }, py::arg("c"), py::arg("omega"), py::arg("y"), py::arg("h") = 1e-4);
  m.def("perturbed_spectrum", [](const Cocycle& c, const Vector& w, const std::vector<Matrix>& y, double t) {
    return perturbed_spectrum(c, weight(w), GaugeDirection(y), t);
  }, py::arg("c"), py::arg("omega"), py::arg("y"), py::arg("t"));

  m.def("predicted_theta", [](const std::string& family, int d, const std::vector<int>& k) {
    return predicted_theta(spec_from(family, d, k)).indices();
  }, py::arg("family"), py::arg("d"), py::arg("k") = std::vector<int>{});
  m.def("gap_report", [](const Cocycle& c, const std::string& family, const std::vector<int>& k) {
    return to_python(to_json(gap_prediction_report(c, spec_from(family, c.dim(), k))));
  }, py::arg("c"), py::arg("family"), py::arg("k") = std::vector<int>{});

  m.def("spectrum_report_from_config", [](const std::string& path) {
    const ExperimentConfig cfg = load_config_file(path);
    return to_python(to_json(spectrum_report(cfg.cocycle), cfg.cocycle.base()));
  }, py::arg("path"));

  m.def("verify", [](std::uint64_t seed, const std::vector<std::string>& only) {
    VerifyOptions o;
    o.seed = seed;
    o.only = only;
    return to_python(to_json(run_acceptance(o)));
  }, py::arg("seed") = VerifyOptions{}.seed, py::arg("only") = std::vector<std::string>{});
}
