#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hotelbell/hotelbell.hpp"

namespace py = pybind11;
using namespace hotelbell;

namespace {

PyObject* error_type = nullptr;

std::vector<Interval> to_intervals(const std::vector<std::pair<double, double>>& spans) {
  std::vector<Interval> out;
  out.reserve(spans.size());
  for (const auto& [lo, hi] : spans) out.push_back({lo, hi});
  return out;
}

std::vector<std::pair<double, double>> to_pairs(const DomainSet& d) {
  std::vector<std::pair<double, double>> out;
  for (const Interval& i : d.intervals()) out.emplace_back(i.lo, i.hi);
  return out;
}

CombineOp combine_op(const std::string& op) {
  if (op == "+" || op == "sum") return CombineOp::Sum;
  if (op == "-" || op == "difference") return CombineOp::Difference;
  if (op == "*" || op == "product") return CombineOp::Product;
  throw Error(ErrorKind::InputOutOfRange, "unknown combine op '" + op + "'");
}

std::array<double, 4> as_array(const std::vector<double>& v, const char* what) {
  if (v.size() != 4) throw Error(ErrorKind::ArityMismatch, std::string(what) + " needs 4 values");
  return {v[0], v[1], v[2], v[3]};
}

py::dict report_dict(const ExperimentReport& r) {
  py::list pairs;
  for (std::size_t k = 0; k < 4; ++k) {
    const PairEstimate& p = r.pairs[k];
    py::dict d;
    d["pair"] = pair_label(k);
    d["correlator"] = p.correlator;
    d["correlator_se"] = p.correlator_se;
    d["mean_a"] = p.mean_a;
    d["mean_a_se"] = p.mean_a_se;
    d["mean_b"] = p.mean_b;
    d["mean_b_se"] = p.mean_b_se;
    pairs.append(d);
  }
  py::dict out;
  out["pairs"] = pairs;
  out["S"] = r.s;
  out["S_se"] = r.s_se;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Partial random variables on disjoint domains and the CHSH family built from them.";

  error_type = PyErr_NewException("hotelbell._core.Error", PyExc_RuntimeError, nullptr);
  m.attr("Error") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
        exc.attr("position") = pe->position();
        exc.attr("expected") = pe->expected();
        exc.attr("found") = pe->found();
      }
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::class_<DomainSet>(m, "DomainSet")
      .def(py::init([](const std::vector<std::pair<double, double>>& spans) {
             return DomainSet(to_intervals(spans));
           }),
           py::arg("intervals") = std::vector<std::pair<double, double>>{})
      .def_property_readonly("intervals", &to_pairs)
      .def("contains", &DomainSet::contains)
      .def("measure", &DomainSet::measure)
      .def("empty", &DomainSet::empty)
      .def("filled", &DomainSet::filled)
      .def("translated", &DomainSet::translated)
      .def("__and__", [](const DomainSet& a, const DomainSet& b) { return intersect(a, b); })
      .def("__eq__", [](const DomainSet& a, const DomainSet& b) { return a == b; })
      .def("__str__", [](const DomainSet& d) { return to_string(d); })
      .def("__repr__", [](const DomainSet& d) { return "DomainSet(" + to_string(d) + ")"; });

  py::class_<PartialRV>(m, "PartialRV")
      .def_property_readonly("axis", &PartialRV::axis)
      .def_property_readonly("domain", &PartialRV::domain)
      .def_property_readonly("pieces",
                             [](const PartialRV& f) {
                               std::vector<std::tuple<double, double, double>> out;
                               for (const Piece& p : f.pieces()) {
                                 out.emplace_back(p.interval.lo, p.interval.hi, p.value);
                               }
                               return out;
                             })
      .def("__call__", &PartialRV::eval)
      .def("find", &PartialRV::find)
      .def("is_breakpoint", &PartialRV::is_breakpoint)
      .def("__add__", [](const PartialRV& f, const PartialRV& g) { return combine(f, g, CombineOp::Sum); })
      .def("__sub__",
           [](const PartialRV& f, const PartialRV& g) { return combine(f, g, CombineOp::Difference); })
      .def("__mul__", [](const PartialRV& f, const PartialRV& g) { return combine(f, g, CombineOp::Product); })
      .def("__neg__", &negate)
      .def("__eq__", [](const PartialRV& f, const PartialRV& g) { return f == g; });

  m.def(
      "make_step",
      [](const std::vector<double>& boundaries, const std::vector<double>& values, std::string axis) {
        return make_step(boundaries, values, std::move(axis));
      },
      py::arg("boundaries"), py::arg("values"), py::arg("axis") = "x");
  m.def(
      "combine",
      [](const PartialRV& f, const PartialRV& g, const std::string& op) {
        return combine(f, g, combine_op(op));
      },
      py::arg("f"), py::arg("g"), py::arg("op"));
  m.def("shift", &shift, py::arg("f"), py::arg("offset"));
  m.def("make_observable", &make_observable, py::arg("alpha"), py::arg("axis") = "x");
  m.def("log_curve", &log_curve, py::arg("alpha"), py::arg("x"));
  m.def("thresholds", &thresholds, py::arg("alpha"));

  py::class_<GridDensity>(m, "GridDensity")
      .def(py::init([](std::pair<double, double> x_rect, std::pair<double, double> y_rect,
                       std::size_t nx, std::size_t ny, std::vector<double> weights) {
             return GridDensity({x_rect.first, x_rect.second}, {y_rect.first, y_rect.second}, nx,
                                ny, std::move(weights));
           }),
           py::arg("x_rect"), py::arg("y_rect"), py::arg("nx"), py::arg("ny"), py::arg("weights"))
      .def_property_readonly("nx", &GridDensity::nx)
      .def_property_readonly("ny", &GridDensity::ny)
      .def_property_readonly("x_rect",
                             [](const GridDensity& r) { return std::pair{r.x_rect().lo, r.x_rect().hi}; })
      .def_property_readonly("y_rect",
                             [](const GridDensity& r) { return std::pair{r.y_rect().lo, r.y_rect().hi}; })
      .def_property_readonly("values", &GridDensity::values)
      .def("value", &GridDensity::value)
      .def("cell_mass", &GridDensity::cell_mass)
      .def("total_mass", &GridDensity::total_mass)
      .def("to_json", [](const GridDensity& r) { return density_to_json(r).dump(); })
      .def_static("from_json",
                  [](const std::string& text) { return density_from_json(nlohmann::json::parse(text)); })
      .def("__eq__", [](const GridDensity& a, const GridDensity& b) { return a == b; });

  m.def(
      "uniform_density",
      [](std::pair<double, double> x_rect, std::pair<double, double> y_rect) {
        return uniform_density({x_rect.first, x_rect.second}, {y_rect.first, y_rect.second});
      },
      py::arg("x_rect"), py::arg("y_rect"));
  m.def("expectation", &expectation, py::arg("f"), py::arg("g"), py::arg("rho"));
  m.def("marginal_means", &marginal_means, py::arg("f"), py::arg("g"), py::arg("rho"));

  py::class_<ChshFamily>(m, "ChshFamily")
      .def(py::init<GridDensity, GridDensity, GridDensity, GridDensity>(), py::arg("rho00"),
           py::arg("rho10"), py::arg("rho01"), py::arg("rho11"))
      .def("density", &ChshFamily::density)
      .def("to_json", [](const ChshFamily& f) { return family_to_json(f).dump(2); })
      .def_static("from_json",
                  [](const std::string& text) { return family_from_json(nlohmann::json::parse(text)); });

  m.def("alice_observable", &alice_observable, py::arg("alpha"));
  m.def("bob_observable", &bob_observable, py::arg("beta"));
  m.def(
      "chsh_value", [](const std::vector<double>& e) { return chsh_value(as_array(e, "chsh_value")); },
      py::arg("correlators"));
  m.def("family_expectations", &family_expectations, py::arg("family"));
  m.def("family_marginals", &family_marginals, py::arg("family"));
  m.def("saturating_family", &saturating_family);
  m.def(
      "optimize_family",
      [](const std::vector<double>& targets, std::size_t nx, std::size_t ny, double tolerance,
         std::size_t max_iterations) {
        const OptimizeResult r = optimize_family(as_array(targets, "targets"), nx, ny,
                                                 {tolerance, max_iterations});
        return py::make_tuple(r.family, r.achieved, r.iterations);
      },
      py::arg("targets"), py::arg("nx") = 4, py::arg("ny") = 4, py::arg("tolerance") = 1e-9,
      py::arg("max_iterations") = 10000);
  m.def("classical_bound_check", &classical_bound_check, py::arg("a0"), py::arg("a1"),
        py::arg("b0"), py::arg("b1"), py::arg("rho"));
  m.def(
      "run_classical_suite",
      [](std::size_t instances, std::size_t points, std::uint64_t seed) {
        const ClassicalSuiteResult r = run_classical_suite(instances, points, seed);
        py::dict d;
        d["instances"] = r.instances;
        d["violations"] = r.violations;
        d["max_abs_s"] = r.max_abs_s;
        d["points"] = r.points;
        d["pointwise_violations"] = r.pointwise_violations;
        d["max_abs_pointwise"] = r.max_abs_pointwise;
        return d;
      },
      py::arg("instances"), py::arg("points") = 100000, py::arg("seed") = 1);

  m.def(
      "run_experiment",
      [](const ChshFamily& family, std::uint64_t n_trials, std::uint64_t seed, unsigned workers,
         const std::vector<double>& probabilities, bool log) {
        ExperimentConfig config{.family = family, .n_trials = n_trials,
                                .setting_probabilities = as_array(probabilities, "probabilities"),
                                .master_seed = seed, .n_workers = workers};
        std::ostringstream events;
        if (log) config.event_log = &events;
        ExperimentSummary s;
        {
          py::gil_scoped_release release;
          s = run_experiment(config);
        }
        py::dict out = report_dict(estimate(s));
        py::list counts;
        for (const PairCounts& p : s.pairs) {
          py::dict d;
          d["trials"] = p.trials;
          d["sum_ab"] = p.sum_ab;
          d["sum_a"] = p.sum_a;
          d["sum_b"] = p.sum_b;
          counts.append(d);
        }
        out["counts"] = counts;
        out["n_trials"] = s.n_trials;
        if (log) out["events"] = events.str();
        return out;
      },
      py::arg("family"), py::arg("n_trials"), py::arg("seed") = 0, py::arg("workers") = 1,
      py::arg("probabilities") = std::vector<double>{0.25, 0.25, 0.25, 0.25},
      py::arg("log") = false);
  m.def("alice_outcome", &alice_outcome, py::arg("alpha"), py::arg("x"));
  m.def("bob_outcome", &bob_outcome, py::arg("beta"), py::arg("y"));

  m.def("format_expr", [](const std::string& text) { return to_string(*parse(text)); },
        py::arg("text"));
  m.def(
      "analyze",
      [](const std::string& text) {
        const DomainReport r = analyze(parse(text));
        py::dict out;
        out["exists"] = r.verdict == Verdict::Exists;
        py::dict axes;
        for (const auto& [axis, domain] : r.axes) axes[py::str(axis)] = domain;
        out["axes"] = axes;
        py::list origins;
        for (const EmptyOrigin& o : r.origins) {
          py::dict d;
          d["text"] = o.text;
          d["depth"] = o.depth;
          origins.append(d);
        }
        out["origins"] = origins;
        out["culprit"] = r.culprit() ? py::object(py::str(r.culprit()->text)) : py::object(py::none());
        out["report"] = format_report(r);
        return out;
      },
      py::arg("text"));

  m.def("write_figures", [](const std::string& dir) { write_figures(dir); }, py::arg("dir"));
}
