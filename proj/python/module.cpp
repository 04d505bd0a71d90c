#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "torscalc/script.hpp"
#include "torscalc/verify.hpp"

namespace py = pybind11;

namespace {

// The C++ side hands out shared_ptr<const BundlePair>; wrap it in a small
// value type so pybind11 can hold it without const holders.
struct PyBundle {
  torscalc::BundleRef ref;
};

PyBundle wrap(torscalc::BundleRef ref) { return {std::move(ref)}; }

std::vector<torscalc::MorseHandle> to_handles(
    const std::vector<std::tuple<int, torscalc::VirtualBundle, torscalc::VirtualBundle>>& raw) {
  std::vector<torscalc::MorseHandle> handles;
  for (const auto& [index, negative, positive] : raw) {
    handles.push_back({index, negative, positive});
  }
  return handles;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact calculator for higher torsion invariants of smooth bundles";

  using torscalc::BundlePair;
  using torscalc::FiberStats;
  using torscalc::GradedClass;
  using torscalc::Scalar;
  using torscalc::TorsionTheory;
  using torscalc::VirtualBundle;

  py::class_<Scalar>(m, "Scalar")
      .def(py::init<>())
      .def(py::init<long long>())
      .def(py::init([](const std::string& text) { return Scalar::parse(text); }))
      .def_static("zeta", &Scalar::zeta, py::arg("argument"))
      .def("is_zero", &Scalar::is_zero)
      .def("is_rational", &Scalar::is_rational)
      .def("div_exact", &Scalar::div_exact)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__str__", &Scalar::str)
      .def("__repr__", [](const Scalar& s) { return "Scalar(\"" + s.str() + "\")"; });
  py::implicitly_convertible<py::str, Scalar>();
  py::implicitly_convertible<py::int_, Scalar>();

  py::class_<VirtualBundle>(m, "VirtualBundle")
      .def(py::init<>())
      .def("complement", &VirtualBundle::complement, py::arg("total_rank"))
      .def("real_rank", &VirtualBundle::real_rank)
      .def("trivial_rank", &VirtualBundle::trivial_rank)
      .def("is_zero", &VirtualBundle::is_zero)
      .def(py::self + py::self)
      .def(py::self == py::self)
      .def("__str__", &VirtualBundle::str)
      .def("__repr__", [](const VirtualBundle& b) { return b.str(); });

  m.def("line", &VirtualBundle::line, py::arg("root"));
  m.def("trivial_bundle", &VirtualBundle::trivial, py::arg("rank"));

  py::class_<GradedClass>(m, "GradedClass")
      .def(py::init<int>(), py::arg("degree") = 0)
      .def("degree", &GradedClass::degree)
      .def("is_zero", &GradedClass::is_zero)
      .def("scaled", &GradedClass::scaled)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__str__", &GradedClass::str)
      .def("__repr__", [](const GradedClass& c) { return c.str(); });

  m.def("ch4k", &torscalc::ch4k, py::arg("bundle"), py::arg("k"));

  py::class_<FiberStats>(m, "FiberStats")
      .def_readonly("dim", &FiberStats::dim)
      .def_readonly("chi", &FiberStats::chi)
      .def_readonly("chi0", &FiberStats::chi0)
      .def_readonly("chi1", &FiberStats::chi1)
      .def_readonly("corner", &FiberStats::corner)
      .def("chi_rel", &FiberStats::chi_rel)
      .def("chi_boundary", &FiberStats::chi_boundary);

  py::class_<PyBundle>(m, "BundlePair")
      .def("stats", [](const PyBundle& e) { return e.ref->stats(); })
      .def("__eq__", [](const PyBundle& a, const PyBundle& b) { return *a.ref == *b.ref; })
      .def("__str__", [](const PyBundle& e) { return torscalc::dsl_expr(*e.ref); })
      .def("__repr__", [](const PyBundle& e) { return torscalc::dsl_expr(*e.ref); });

  m.def("trivial_pair",
        [](int dim, int chi, int chi0, int chi1, int corner) {
          return wrap(BundlePair::make_trivial({dim, chi, chi0, chi1, corner}));
        },
        py::arg("dim"), py::arg("chi"), py::arg("chi0") = 0, py::arg("chi1") = 0,
        py::arg("corner") = 0);
  m.def("sphere",
        [](const VirtualBundle& xi, int n) { return wrap(BundlePair::make_sphere(xi, n)); },
        py::arg("xi"), py::arg("n"));
  m.def("disk", [](const VirtualBundle& xi) { return wrap(BundlePair::make_disk(xi)); },
        py::arg("xi"));
  m.def("reldisk", [](const VirtualBundle& xi) { return wrap(BundlePair::make_rel_disk(xi)); },
        py::arg("xi"));
  m.def("double", [](const PyBundle& e) { return wrap(BundlePair::make_double(e.ref)); });
  m.def("dv", [](const PyBundle& e) { return wrap(BundlePair::make_vertical_boundary(e.ref)); });
  m.def("union", [](const PyBundle& a, const PyBundle& b) {
    return wrap(BundlePair::make_union_vertical(a.ref, b.ref));
  });
  m.def("glue", [](const PyBundle& a, const PyBundle& b) {
    return wrap(BundlePair::make_union_handle(a.ref, b.ref));
  });
  m.def("prod", [](const PyBundle& a, const PyBundle& b) {
    return wrap(BundlePair::make_fiber_product(a.ref, b.ref));
  });
  m.def("morse",
        [](const PyBundle& base,
           const std::vector<std::tuple<int, VirtualBundle, VirtualBundle>>& handles) {
          return wrap(BundlePair::make_morse(base.ref, to_handles(handles)));
        },
        py::arg("base"), py::arg("handles"));
  m.def("hatcher",
        [](const VirtualBundle& xi, int n, int total) {
          return wrap(BundlePair::make_hatcher(xi, n, total));
        },
        py::arg("xi"), py::arg("n"), py::arg("total"));

  m.def("validate", [](const PyBundle& e) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& d : torscalc::validate(*e.ref)) out.emplace_back(d.path, d.message);
    return out;
  });
  m.def("chi", [](const PyBundle& e) { return e.ref->stats().chi_rel(); });
  m.def("certified_closed", [](const PyBundle& e) { return torscalc::certified_closed(*e.ref); });

  py::class_<TorsionTheory>(m, "TorsionTheory")
      .def_readonly("k", &TorsionTheory::k)
      .def_readonly("s1", &TorsionTheory::s1)
      .def_readonly("s2", &TorsionTheory::s2)
      .def(py::self == py::self)
      .def("__repr__", [](const TorsionTheory& t) { return torscalc::theory_dsl(t); });

  m.def("fr", &torscalc::fr_theory, py::arg("k"));
  m.def("mmm", &torscalc::mmm_theory, py::arg("k"));
  m.def("custom", &torscalc::custom_theory, py::arg("k"), py::arg("s1"), py::arg("s2"));
  m.def("even_part", &torscalc::even_part);
  m.def("odd_part", &torscalc::odd_part);

  m.def("tau",
        [](const TorsionTheory& t, const PyBundle& e) { return torscalc::tau(t, *e.ref); });
  m.def("tau_even", [](const TorsionTheory& t, const PyBundle& e) {
    return torscalc::tau_even(t, *e.ref);
  });
  m.def("tau_odd", [](const TorsionTheory& t, const PyBundle& e) {
    return torscalc::tau_odd(t, *e.ref);
  });
  m.def("tdelta", [](const TorsionTheory& t, const PyBundle& e) {
    return torscalc::difference_torsion(t, *e.ref);
  });
  m.def("decompose", [](const TorsionTheory& t) {
    auto d = torscalc::decompose(t);
    return py::make_tuple(d.a, d.b);
  });
  m.def("m2k", [](const PyBundle& e, int k) { return torscalc::m2k_direct(*e.ref, k); },
        py::arg("e"), py::arg("k"));
  m.def("transfer", [](const PyBundle& e, const GradedClass& y) {
    return torscalc::transfer_pullback(*e.ref, y);
  });
  m.def("vertical_tangent",
        [](const PyBundle& e) { return torscalc::vertical_tangent(*e.ref); });

  m.def("run", [](const std::string& text) { return torscalc::run_text(text); },
        py::arg("script"), "Execute a script and return its output");
  m.def("reprint", [](const std::string& text) {
    return torscalc::print_script(torscalc::parse_script(text));
  });

  m.def("verify",
        [](std::uint64_t seed, int depth, int samples, int k, int theories) {
          torscalc::SuiteOptions options;
          options.seed = seed;
          options.depth = depth;
          options.samples = samples;
          options.k = k;
          options.custom_theories = theories;
          py::list out;
          for (const auto& report : torscalc::run_suite(options)) {
            py::dict record;
            record["name"] = report.name;
            record["identity"] = report.identity;
            record["samples"] = report.samples;
            record["status"] = report.passed ? "pass" : "fail";
            if (!report.passed) {
              record["counterexample"] = report.counterexample;
              record["lhs"] = report.lhs;
              record["rhs"] = report.rhs;
            }
            out.append(std::move(record));
          }
          return out;
        },
        py::arg("seed") = 1, py::arg("depth") = 3, py::arg("samples") = 50, py::arg("k") = 1,
        py::arg("theories") = 10);

  py::register_exception<torscalc::MalformedExpression>(m, "MalformedExpression");
  py::register_exception<torscalc::UnsupportedNode>(m, "UnsupportedNode");
  py::register_exception<torscalc::NotDecomposable>(m, "NotDecomposable");
  py::register_exception<torscalc::ScalarError>(m, "ScalarError");
}
