#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smallpoints/bounds.hpp"
#include "smallpoints/harness.hpp"
#include "smallpoints/torus.hpp"

namespace py = pybind11;
using namespace smallpoints;

namespace {

// Accepts int, str ("p/q") or fractions.Fraction.
BigRational to_q(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>()); }

WeierstrassModel to_model(const std::vector<py::object>& a) {
  if (a.size() != 5) throw InvalidArgument("expected five a-invariants");
  return {to_q(a[0]), to_q(a[1]), to_q(a[2]), to_q(a[3]), to_q(a[4])};
}

CurvePoint to_point(const py::tuple& p) { return CurvePoint(to_q(p[0]), to_q(p[1])); }

py::dict analyze(const std::vector<py::object>& a) {
  const GlobalReductionData g = global_data(to_model(a));
  py::dict d;
  d["minimal"] = g.minimal.model.to_string();
  d["discriminant"] = to_string(g.minimal.discriminant);
  d["conductor"] = to_string(g.conductor());
  d["sigma"] = g.sigma;
  py::list primes;
  for (const auto& l : g.local) {
    py::dict p;
    p["p"] = py::int_(py::str(to_string(l.p)));
    p["delta"] = l.delta;
    p["eta"] = l.eta;
    p["m"] = l.m;
    p["c"] = l.c;
    p["kodaira"] = l.kodaira.name();
    p["reduction"] = to_string(l.reduction);
    primes.append(p);
  }
  d["primes"] = primes;
  return d;
}

py::dict torsion(const std::vector<py::object>& a) {
  const TorsionSubgroup t = torsion_subgroup(to_model(a));
  py::dict d;
  d["order"] = t.order;
  d["structure"] = t.structure;
  py::list pts;
  for (const auto& P : t.points) pts.append(P.to_string());
  d["points"] = pts;
  return d;
}

py::tuple verify(const std::string& text, std::uint64_t seed, int parallelism, const std::string& checks) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.parallelism = parallelism;
  cfg.checks = parse_check_list(checks);
  const SuiteResult r = run_suite(parse_curve_text(text), cfg);
  return py::make_tuple(emit_report(r, cfg), r.passed, r.failed, r.skipped);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Small points on elliptic curves over Q";
  py::register_exception<Error>(m, "SmallpointsError", PyExc_ValueError);

  m.def("analyze", &analyze, py::arg("a_invariants"));
  m.def("torsion", &torsion, py::arg("a_invariants"));
  m.def(
      "canonical_height",
      [](const std::vector<py::object>& a, const py::tuple& P) { return canonical_height(to_model(a), to_point(P)); },
      py::arg("a_invariants"), py::arg("point"));
  m.def(
      "torsion_bound", [](int d, double s) { return torsion_bound({d, s, 0.0}); }, py::arg("d"), py::arg("sigma"));
  m.def(
      "lang_constant", [](int d, double s) { return lang_constant({d, s, 0.0}); }, py::arg("d"), py::arg("sigma"));
  m.def(
      "small_height_threshold", [](int d, double s, double x) { return small_height_threshold({d, s, x}); },
      py::arg("d"), py::arg("sigma"), py::arg("log_norm_delta"));
  m.def(
      "tlem_bound", [](double A, double B) { return tlem_bound(A, B); }, py::arg("A"), py::arg("B"));
  m.def("tlem_brute", &tlem_brute, py::arg("A"), py::arg("B"), py::arg("scan_limit") = 10000);
  m.def(
      "torus_neron", [](double t1, double t2, std::complex<double> tau) { return torus_neron({t1, t2, tau}); },
      py::arg("t1"), py::arg("t2"), py::arg("tau"));
  m.def(
      "j_tau", [](std::complex<double> tau) { return j_tau(tau); }, py::arg("tau"));
  m.def("verify", &verify, py::arg("text"), py::arg("seed") = 0, py::arg("parallelism") = 1,
        py::arg("checks") = "");
}
