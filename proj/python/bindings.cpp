#include <algorithm>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "plsphere/complex.hpp"
#include "plsphere/error.hpp"
#include "plsphere/flips.hpp"
#include "plsphere/generators.hpp"
#include "plsphere/hasse.hpp"
#include "plsphere/homology.hpp"
#include "plsphere/io.hpp"
#include "plsphere/morse.hpp"
#include "plsphere/pi1.hpp"
#include "plsphere/recognizer.hpp"

namespace py = pybind11;
using namespace plsphere;

namespace {

py::object to_py(const Integer& x) { return py::module_::import("builtins").attr("int")(x.str()); }

std::vector<Vertex> face_list(const Face& f) { return {f.begin(), f.end()}; }

Coefficients coefficients(const std::string& s) {
  if (s == "Z") return Coefficients::integers();
  if (s == "Q") return Coefficients::rationals();
  if (s.rfind("GF", 0) == 0 && s.size() > 2) return Coefficients::prime_field(std::stoul(s.substr(2)));
  throw Error(ErrorKind::InvalidSpec, "coefficients must be Z, Q or GFp");
}

py::dict homology_dict(const HomologyGroups& h) {
  py::list betti, torsion;
  for (const auto& g : h.groups) {
    betti.append(g.betti);
    py::list t;
    for (const auto& x : g.torsion) t.append(to_py(x));
    torsion.append(t);
  }
  py::dict d;
  d["coefficients"] = h.coefficients.to_string();
  d["reduced"] = h.reduced;
  d["betti"] = betti;
  d["torsion"] = torsion;
  d["text"] = h.to_text();
  return d;
}

py::dict morse_dict(const MorseResult& r) {
  py::dict d;
  d["vector"] = r.vector.c;
  d["seed"] = r.seed;
  d["strategy"] = std::string(to_string(r.strategy));
  d["spherical"] = is_spherical(r.vector);
  d["collapsible"] = is_collapsible_witness(r.vector);
  return d;
}

}  // namespace

PYBIND11_MODULE(_plsphere, m) {
  m.doc() = "PL sphere recognition: discrete Morse, homology, fundamental group, bistellar flips";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<SimplicialComplex>(m, "SimplicialComplex")
      .def(py::init([](const std::vector<std::vector<Vertex>>& facets) {
             return SimplicialComplex::from_facets(facets);
           }),
           py::arg("facets"))
      .def_static("from_spec", [](const std::string& s) { return from_spec(s); })
      .def_static("read", &io::read_facet_file, py::arg("path"))
      .def_static("parse", [](const std::string& text) { return io::parse_facets(text); })
      .def("write", [](const SimplicialComplex& k, const std::string& path) { io::write_facet_file(path, k); })
      .def("to_text", [](const SimplicialComplex& k) { return io::facets_to_text(k); })
      .def_property_readonly("facets", &SimplicialComplex::facet_lists)
      .def_property_readonly("vertices", &SimplicialComplex::vertices)
      .def_property_readonly("dim", &SimplicialComplex::dim)
      .def_property_readonly("n_vertices", &SimplicialComplex::n_vertices)
      .def_property_readonly("n_facets", &SimplicialComplex::n_facets)
      .def("f_vector", [](const SimplicialComplex& k) { return f_vector(k).f; })
      .def("euler_characteristic", [](const SimplicialComplex& k) { return euler_characteristic(k); })
      .def("is_pure", [](const SimplicialComplex& k) { return is_pure(k); })
      .def("is_closed_pseudomanifold", [](const SimplicialComplex& k) { return is_closed_pseudomanifold(k).ok; })
      .def("is_connected", [](const SimplicialComplex& k) { return is_connected(k); })
      .def("link",
           [](const SimplicialComplex& k, std::vector<Vertex> f) {
             std::sort(f.begin(), f.end());
             return link(k, Face::from_sorted(f));
           },
           py::arg("face"))
      .def("barycentric_subdivision", [](const SimplicialComplex& k) { return barycentric_subdivision(k); })
      .def("__eq__", [](const SimplicialComplex& a, const SimplicialComplex& b) { return a == b; })
      .def("__repr__", [](const SimplicialComplex& k) {
        return "SimplicialComplex(dim=" + std::to_string(k.dim()) + ", f=" + f_vector(k).to_string() + ")";
      });

  m.def("simplex", &simplex, py::arg("d"));
  m.def("boundary_of_simplex", &boundary_of_simplex, py::arg("n"));
  m.def("suspension", &suspension, py::arg("k"));
  m.def("rp2_6", &rp2_6);
  m.def("saw_blade", &saw_blade, py::arg("k"));
  m.def("perturbed_sphere", &perturbed_sphere, py::arg("d"), py::arg("add_vertices"), py::arg("one_moves"),
        py::arg("mixed_rounds"), py::arg("seed"));

  m.def(
      "homology",
      [](const SimplicialComplex& k, const std::string& coeffs, bool reduced) {
        return homology_dict(homology(k, coefficients(coeffs), reduced));
      },
      py::arg("k"), py::arg("coefficients") = "Z", py::arg("reduced") = false);

  m.def(
      "smith_normal_form",
      [](const std::vector<std::vector<long long>>& rows) {
        py::list out;
        for (const auto& x : smith_normal_form(SparseIntMatrix::from_dense(rows)).divisors) out.append(to_py(x));
        return out;
      },
      py::arg("matrix"), "Nonzero elementary divisors of an integer matrix given as a list of rows.");

  m.def(
      "random_discrete_morse",
      [](const SimplicialComplex& k, const std::string& strategy, std::uint64_t seed) {
        MorseResult r;
        {
          py::gil_scoped_release release;
          r = random_discrete_morse(k, parse_strategy(strategy), seed);
        }
        return morse_dict(r);
      },
      py::arg("k"), py::arg("strategy") = "random-random", py::arg("seed") = 0);

  m.def(
      "morse_spectrum",
      [](const SimplicialComplex& k, std::uint64_t rounds, const std::string& strategy, std::uint64_t seed,
         unsigned threads) {
        Spectrum s;
        {
          py::gil_scoped_release release;
          s = morse_spectrum(k, parse_strategy(strategy), rounds, seed, threads);
        }
        py::list entries;
        for (const auto& e : s.entries) entries.append(py::make_tuple(py::tuple(py::cast(e.vector.c)), e.count));
        return entries;
      },
      py::arg("k"), py::arg("rounds"), py::arg("strategy") = "random-random", py::arg("seed") = 0,
      py::arg("threads") = 1, "List of (vector, count) pairs, most frequent first.");

  m.def(
      "pi1",
      [](const SimplicialComplex& k, std::uint64_t seed, std::uint64_t budget) {
        const GroupPresentation p = pi1_presentation(k, seed);
        const TrivialityVerdict v = triviality_verdict(p, budget);
        py::dict d;
        d["generators"] = p.generators;
        d["relators"] = p.relators.size();
        d["verdict"] = std::string(to_string(v.kind));
        d["witness"] = v.witness ? py::object(py::str(v.witness->to_string())) : py::object(py::none());
        d["simplified"] = v.simplification.presentation.to_text();
        return d;
      },
      py::arg("k"), py::arg("seed") = 0, py::arg("budget") = kDefaultTietzeBudget);

  m.def(
      "simplify_presentation",
      [](const std::string& text, std::uint64_t budget) {
        const TrivialityVerdict v = triviality_verdict(GroupPresentation::parse(text), budget);
        py::dict d;
        d["verdict"] = std::string(to_string(v.kind));
        d["witness"] = v.witness ? py::object(py::str(v.witness->to_string())) : py::object(py::none());
        d["presentation"] = v.simplification.presentation.to_text();
        d["operations"] = v.simplification.operations;
        d["budget_exhausted"] = v.simplification.budget_exhausted;
        return d;
      },
      py::arg("presentation"), py::arg("budget") = kDefaultTietzeBudget);

  m.def(
      "bistellar_simplify",
      [](const SimplicialComplex& k, std::uint64_t seed, std::uint64_t rounds) {
        FlipResult r;
        {
          py::gil_scoped_release release;
          r = bistellar_simplify(k, seed, rounds);
        }
        py::dict d;
        d["complex"] = r.complex;
        d["reached_simplex_boundary"] = r.reached_simplex_boundary;
        d["rounds"] = r.rounds;
        d["moves"] = r.moves;
        d["initial_f"] = r.initial_f.f;
        d["best_f"] = r.best_f.f;
        d["trajectory"] = r.trajectory_tsv();
        return d;
      },
      py::arg("k"), py::arg("seed") = 0, py::arg("rounds") = 100000);

  m.def(
      "recognize",
      [](const SimplicialComplex& k, std::uint64_t seed, std::uint64_t morse_rounds, std::uint64_t flip_rounds,
         const std::string& links, unsigned threads) {
        RecognitionConfig cfg;
        cfg.seed = seed;
        cfg.morse_rounds = morse_rounds;
        cfg.flip_rounds = flip_rounds;
        cfg.link_check_mode = parse_link_check_mode(links);
        cfg.threads = threads;
        Verdict v;
        {
          py::gil_scoped_release release;
          v = recognize_sphere(k, cfg);
        }
        py::dict d;
        d["answer"] = std::string(to_string(v.answer));
        d["certificate"] = std::string(to_string(v.certificate.kind));
        d["detail"] = v.certificate.detail;
        d["face"] = v.certificate.face ? py::object(py::cast(face_list(*v.certificate.face))) : py::object(py::none());
        d["log"] = v.log;
        return d;
      },
      py::arg("k"), py::arg("seed") = 0, py::arg("morse_rounds") = 100, py::arg("flip_rounds") = 1'000'000,
      py::arg("links") = "full", py::arg("threads") = 1);

  m.def(
      "is_combinatorial_manifold",
      [](const SimplicialComplex& k, unsigned threads) {
        RecognitionConfig cfg;
        cfg.threads = threads;
        ManifoldReport r;
        {
          py::gil_scoped_release release;
          r = is_combinatorial_manifold(k, cfg);
        }
        py::dict d;
        d["answer"] = std::string(to_string(r.summary));
        d["faces_checked"] = r.faces.size();
        if (r.failure && r.failure->certificate.face) {
          d["face"] = face_list(*r.failure->certificate.face);
          if (r.failure->certificate.link) d["link"] = *r.failure->certificate.link;
        }
        return d;
      },
      py::arg("k"), py::arg("threads") = 1);
}
