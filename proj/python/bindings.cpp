#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diskpack/bounds.hpp"
#include "diskpack/checker.hpp"
#include "diskpack/constructions.hpp"
#include "diskpack/disk_union.hpp"
#include "diskpack/engine.hpp"
#include "diskpack/io.hpp"
#include "diskpack/periodic.hpp"
#include "diskpack/svg.hpp"

namespace py = pybind11;
using namespace diskpack;

namespace {

Point to_point(const py::handle& h) {
    auto seq = h.cast<std::vector<double>>();
    if (seq.size() != 2) throw py::value_error("expected a pair (x, y)");
    return {seq[0], seq[1]};
}

std::vector<Point> to_points(const py::iterable& it) {
    std::vector<Point> out;
    for (const auto& h : it) out.push_back(to_point(h));
    return out;
}

py::tuple from_point(Point p) { return py::make_tuple(p.x, p.y); }

py::list from_points(const std::vector<Point>& pts) {
    py::list out;
    for (const Point& p : pts) out.append(from_point(p));
    return out;
}

PeriodicArrangement make_arrangement(const std::vector<std::vector<double>>& basis, const py::iterable& motif,
                                     double radius) {
    std::vector<std::vector<double>> coords;
    for (const auto& h : motif) coords.push_back(h.cast<std::vector<double>>());
    return PeriodicArrangement::from_coordinates(Lattice(basis), std::move(coords), radius);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Periodic disk packings and coverings of the plane";
    m.attr("__version__") = kToolVersion;
    m.attr("DEFAULT_TOLERANCE") = kDefaultTolerance;

    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

    // ---- geometry ----
    m.def("shortest_vector", [](const std::vector<std::vector<double>>& basis) { return shortest_vector(Lattice(basis)); });
    m.def("lattice_reduce", [](const std::vector<std::vector<double>>& basis) { return lattice_reduce(Lattice(basis)).rows(); });
    m.def("periodic_delta", [](const std::vector<std::vector<double>>& basis, const py::handle& u, const py::handle& v) {
        return periodic_delta(Lattice(basis), to_point(u), to_point(v));
    });
    m.def("smallest_enclosing_circle", [](const py::iterable& pts) {
        const Disk d = smallest_enclosing_circle(to_points(pts));
        return py::make_tuple(from_point(d.center), d.radius);
    });

    // ---- disk unions ----
    py::class_<AreaBracket>(m, "AreaBracket")
        .def_readonly("lower", &AreaBracket::lower)
        .def_readonly("upper", &AreaBracket::upper)
        .def_readonly("resolution", &AreaBracket::resolution)
        .def_readonly("conclusive", &AreaBracket::conclusive)
        .def_property_readonly("method", [](const AreaBracket& b) { return to_string(b.method); })
        .def_property_readonly("mid", &AreaBracket::mid)
        .def("__repr__", [](const AreaBracket& b) {
            return "AreaBracket(" + std::to_string(b.lower) + ", " + std::to_string(b.upper) + ", " + to_string(b.method) + ")";
        });

    m.def("union_area", [](const py::iterable& centers, double r) { return union_area_exact(to_points(centers), r); },
          py::arg("centers"), py::arg("radius") = 1.0);
    m.def("dilated_union_area", [](const py::iterable& centers, double t) { return dilated_union_area(Cluster(to_points(centers)), t); });
    m.def("erosion_contains", [](const py::iterable& centers, const py::handle& p) {
        return erosion_contains(Cluster(to_points(centers)), to_point(p));
    });
    m.def("erosion_area",
          [](const py::iterable& centers, double h, double rel_width, double min_step) {
              return erosion_area(Cluster(to_points(centers)), h, {rel_width, min_step, kDefaultTolerance});
          },
          py::arg("centers"), py::arg("h") = 0.05, py::arg("rel_width") = 1e-3, py::arg("min_step") = 1e-4);

    // ---- arrangements ----
    py::class_<PeriodicArrangement>(m, "Arrangement")
        .def(py::init(&make_arrangement), py::arg("basis"), py::arg("motif"), py::arg("radius"))
        .def_property_readonly("dim", &PeriodicArrangement::dim)
        .def_property_readonly("basis", [](const PeriodicArrangement& a) { return a.lattice().rows(); })
        .def_property_readonly("motif", &PeriodicArrangement::motif_coordinates)
        .def_property_readonly("radius", &PeriodicArrangement::radius)
        .def("__len__", &PeriodicArrangement::size)
        .def("to_json", [](const PeriodicArrangement& a) { return serialize(to_json(a)); })
        .def_static("from_json", [](const std::string& s) { return arrangement_from_json(parse_json_text(s)); })
        .def("scaled", &PeriodicArrangement::scaled)
        .def("with_radius", &PeriodicArrangement::with_radius)
        .def("transformed", [](const PeriodicArrangement& a, double angle, const py::handle& shift) {
            return a.transformed({angle, to_point(shift)});
        });

    m.def("density", &density);
    m.def("is_packing", [](const PeriodicArrangement& a, double tol) { return is_packing(a, tol).certified; },
          py::arg("arrangement"), py::arg("tol") = kDefaultTolerance);
    m.def("covering_check",
          [](const PeriodicArrangement& a, double target, double tol) {
              const CoverVerdict v = covering_check(a, target, 0.0, tol);
              py::dict d;
              d["status"] = to_string(v.status);
              d["margin"] = v.margin;
              d["resolution"] = v.resolution;
              d["witness"] = v.witness ? py::object(from_point(*v.witness)) : py::object(py::none());
              return d;
          },
          py::arg("arrangement"), py::arg("target"), py::arg("tol") = kDefaultTolerance);
    m.def("deepest_hole", [](const PeriodicArrangement& a, double accuracy) {
        const HoleBracket h = deepest_hole_bracket(a, accuracy);
        return py::make_tuple(h.lower, h.upper);
    }, py::arg("arrangement"), py::arg("accuracy") = 1e-3);
    m.def("relative_density", [](const PeriodicArrangement& a, const py::handle& c, double radius) {
        return relative_density(a, Disk{to_point(c), radius});
    });

    // ---- constructions ----
    m.def("hex_packing", &hex_packing);
    m.def("hex_covering", &hex_covering, py::arg("inflation") = 0.0);
    m.def("sect5_covering", &sect5_covering, py::arg("d"), py::arg("a"));
    m.def("split_packing_centers", [](double slide, double xmin, double xmax, double ymin, double ymax) {
        return from_points(split_packing(slide).centers_in_window({xmin, xmax, ymin, ymax}));
    });
    m.def("cluster", [](const std::string& kind, double scale) { return from_points(make_cluster(parse_cluster_kind(kind), scale).centers); },
          py::arg("kind"), py::arg("scale") = 2.0);

    // ---- checker ----
    m.def("check",
          [](const PeriodicArrangement& a, const std::string& mode, int n, double grid, std::uint64_t seed) {
              CheckConfig cfg;
              cfg.n = n;
              cfg.placement_grid = grid;
              cfg.seed = seed;
              if (mode != "saturation" && mode != "reduction") throw py::value_error("mode must be saturation or reduction");
              const Verdict v = mode == "saturation" ? check_saturation(a, cfg) : check_reduction(a, cfg);
              py::dict d;
              d["status"] = to_string(v.status);
              d["resolution"] = v.resolution;
              if (v.witness) {
                  d["verified"] = verify_witness(a, *v.witness,
                                                 mode == "saturation" ? WitnessMode::saturation : WitnessMode::reduction);
                  d["added"] = from_points(v.witness->added);
                  d["removed"] = v.witness->removed.size();
                  d["margin"] = v.witness->margin;
              }
              return d;
          },
          py::arg("arrangement"), py::arg("mode") = "saturation", py::arg("n") = 1, py::arg("grid") = 0.02,
          py::arg("seed") = 0);

    // ---- bounds ----
    m.def("cluster_bound", [](const std::string& kind, std::optional<double> scale) {
        const ClusterKind k = parse_cluster_kind(kind);
        const BoundReport r = is_packing_kind(k) ? cluster_packing_bound(k) : cluster_covering_bound(k, scale);
        py::dict d;
        d["n"] = r.n;
        d["side"] = to_string(r.side);
        d["bound"] = r.bound;
        d["area"] = r.domain_area;
        d["paper_value"] = r.paper_value;
        d["scale"] = r.scale;
        d["note"] = r.note;
        return d;
    }, py::arg("kind"), py::arg("scale") = py::none());
    m.def("asymptotic_saturation_bound", &asymptotic_saturation_bound, py::arg("delta"), py::arg("body_volume"),
          py::arg("d"), py::arg("n"));
    m.def("known_constants", [] {
        py::dict d;
        for (const NamedConstant& c : known_constants()) d[py::str(c.name)] = py::make_tuple(c.expression, c.value, c.conjectural);
        return d;
    });

    // ---- engine ----
    m.def("greedy_saturate", [](const std::vector<std::vector<double>>& basis, double radius, std::uint64_t seed) {
        return greedy_saturate(Lattice(basis), radius, seed);
    }, py::arg("basis"), py::arg("radius") = 1.0, py::arg("seed") = 0);
    m.def("optimize",
          [](const PeriodicArrangement& a, const std::string& objective, int iterations, int constraint_n, std::uint64_t seed) {
              SearchConfig cfg;
              cfg.iterations = iterations;
              cfg.constraint_n = constraint_n;
              cfg.seed = seed;
              OptimizeResult r = optimize(a, parse_objective(objective), cfg);
              return py::make_tuple(r.best, r.audit.size(), to_string(r.final_verdict.status));
          },
          py::arg("arrangement"), py::arg("objective") = "min-density-packing", py::arg("iterations") = 100,
          py::arg("constraint_n") = 1, py::arg("seed") = 0);

    m.def("render_svg", [](const PeriodicArrangement& a, double xmin, double xmax, double ymin, double ymax) {
        return render_svg(a, {xmin, xmax, ymin, ymax});
    });
}
