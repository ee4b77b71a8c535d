#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "rbfqmc/studies.hpp"

namespace py = pybind11;
using namespace rbfqmc;

namespace {

Vec3 to_vec(const std::vector<double>& p) {
    if (p.size() < 2 || p.size() > 3)
        throw std::invalid_argument("point must have 2 or 3 coordinates");
    return {p[0], p[1], p.size() == 3 ? p[2] : 0.0};
}

std::vector<double> from_vec(const Vec3& p, int dim) {
    return dim == 3 ? std::vector<double>{p.x, p.y, p.z} : std::vector<double>{p.x, p.y};
}

NodeSet nodeset_from_points(const std::vector<std::vector<double>>& points) {
    NodeSet nodes;
    if (points.empty()) throw std::invalid_argument("empty point list");
    nodes.dim = static_cast<int>(points.front().size());
    for (const auto& p : points) {
        nodes.points.push_back(to_vec(p));
        nodes.labels.push_back(NodeLabel::Interior);
        nodes.normals.push_back({});
    }
    return nodes;
}

py::dict nodeset_to_dict(const NodeSet& nodes) {
    py::list points;
    py::list labels;
    py::list normals;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        points.append(from_vec(nodes.points[i], nodes.dim));
        const bool interior = nodes.labels[i] == NodeLabel::Interior;
        labels.append(std::string(interior ? "I" : "B"));
        normals.append(interior ? py::object(py::none())
                                : py::object(py::cast(from_vec(nodes.normals[i], nodes.dim))));
    }
    py::dict d;
    d["points"] = points;
    d["labels"] = labels;
    d["normals"] = normals;
    d["strategy"] = strategy_name(nodes.strategy);
    d["seed"] = nodes.seed;
    d["dim"] = nodes.dim;
    return d;
}

ScalarField field_from_callable(const py::function& f) {
    return [f](const Vec3& p) { return f(p.x, p.y, p.z).cast<double>(); };
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Meshless laboratory: RBF interpolation, DRM/QMC particular solutions, "
              "MFS Poisson solves and node-placement studies.";

    py::register_exception<numerical_error>(m, "NumericalError", PyExc_ArithmeticError);

    m.def(
        "nodes",
        [](const std::string& domain, const std::string& strategy, std::size_t m, long seed,
           std::size_t boundary) {
            const Domain d = Domain::parse(domain);
            NodeSet nodes = generate_nodes(d, parse_strategy(strategy), m, seed);
            if (boundary > 0) nodes = merge(nodes, sample_boundary(d, boundary));
            return nodeset_to_dict(nodes);
        },
        py::arg("domain"), py::arg("strategy"), py::arg("m"), py::arg("seed") = 0,
        py::arg("boundary") = 0,
        "Generate a node set; boundary > 0 appends that many boundary points.");

    m.def(
        "sample_boundary",
        [](const std::string& domain, std::size_t count) {
            return nodeset_to_dict(sample_boundary(Domain::parse(domain), count));
        },
        py::arg("domain"), py::arg("count"));

    m.def(
        "sigma",
        [](const std::string& domain, const std::vector<std::vector<double>>& points) {
            const SigmaProfile profile =
                sigma_statistic(nodeset_from_points(points), Domain::parse(domain));
            py::dict d;
            d["values"] = profile.values;
            d["mean"] = profile.mean;
            d["spread"] = profile.spread;
            return d;
        },
        py::arg("domain"), py::arg("points"),
        "sigma(x_i) = (V/M) sum_k ||x_i - x_k|| with mean and spread.");

    m.def(
        "phi",
        [](const std::string& kernel, double r, int dim) {
            return eval_phi(KernelSpec::parse(kernel, dim), r);
        },
        py::arg("kernel"), py::arg("r"), py::arg("dim") = 2);
    m.def(
        "psi",
        [](const std::string& kernel, double r, int dim) {
            return eval_psi(KernelSpec::parse(kernel, dim), r);
        },
        py::arg("kernel"), py::arg("r"), py::arg("dim") = 2);
    m.def("fundamental_solution", &fundamental_solution, py::arg("dim"), py::arg("r"));
    m.def("gs_rbf_phi", &gs_rbf_phi, py::arg("m"), py::arg("dim"), py::arg("r"),
          py::arg("f_at_source"), py::arg("include_f") = true);
    m.def(
        "timespace_radius",
        [](const std::vector<double>& x, double t, const std::vector<double>& xj, double tj,
           double c) { return timespace_radius(to_vec(x), t, to_vec(xj), tj, c); },
        py::arg("x"), py::arg("t"), py::arg("x_j"), py::arg("t_j"), py::arg("c"));

    py::class_<InterpolationModel>(m, "Interpolant")
        .def_property_readonly("alpha",
                               [](const InterpolationModel& model) {
                                   return std::vector<double>(
                                       model.alpha.data(), model.alpha.data() + model.alpha.size());
                               })
        .def_readonly("condition_estimate", &InterpolationModel::condition_estimate)
        .def_readonly("residual_at_nodes", &InterpolationModel::residual_at_nodes)
        .def_readonly("condition_warning", &InterpolationModel::condition_warning)
        .def("__call__", [](const InterpolationModel& model, double x, double y, double z) {
            return evaluate_interpolant(model, {x, y, z});
        }, py::arg("x"), py::arg("y"), py::arg("z") = 0.0);

    m.def(
        "fit_interpolant",
        [](const std::vector<std::vector<double>>& points, const std::vector<double>& values,
           const std::string& kernel, double ridge) {
            const NodeSet nodes = nodeset_from_points(points);
            return fit(nodes, values, KernelSpec::parse(kernel, nodes.dim), ridge);
        },
        py::arg("points"), py::arg("values"), py::arg("kernel") = "tps", py::arg("ridge") = 0.0);

    m.def(
        "qmc_particular",
        [](const std::string& problem, std::size_t m, const std::vector<double>& x, long seed) {
            const ProblemEntry& entry = lookup(problem);
            const Domain domain = entry.domain();
            const NodeSet nodes = generate_halton(domain, m, seed);
            std::size_t skipped = 0;
            const double value = qmc_particular(entry.f, domain, nodes, to_vec(x), &skipped);
            return py::make_tuple(value, skipped);
        },
        py::arg("problem"), py::arg("m"), py::arg("x"), py::arg("seed") = 0,
        "Newton-potential QMC sum (V/M) sum u* f over a Halton node set; returns "
        "(value, skipped_nodes).");

    m.def(
        "newton_potential",
        [](const std::string& problem, const std::vector<double>& x) {
            const ProblemEntry& entry = lookup(problem);
            return newton_potential_reference(problem, entry.domain(), to_vec(x));
        },
        py::arg("problem"), py::arg("x"));

    m.def(
        "integrate_qmc",
        [](const py::function& w, const std::string& domain, std::size_t m, long seed) {
            return integrate_qmc(field_from_callable(w), Domain::parse(domain), m, seed);
        },
        py::arg("w"), py::arg("domain"), py::arg("m"), py::arg("seed") = 0,
        "(V/m) sum w(x_k) over Halton nodes; w is called as w(x, y, z).");

    py::class_<PoissonSolution>(m, "PoissonSolution")
        .def("__call__", [](const PoissonSolution& s, double x, double y,
                            double z) { return s.u({x, y, z}); },
             py::arg("x"), py::arg("y"), py::arg("z") = 0.0)
        .def("particular", [](const PoissonSolution& s, double x, double y, double z) {
            return s.particular({x, y, z});
        }, py::arg("x"), py::arg("y"), py::arg("z") = 0.0)
        .def("harmonic", [](const PoissonSolution& s, double x, double y, double z) {
            return s.mfs.evaluate({x, y, z});
        }, py::arg("x"), py::arg("y"), py::arg("z") = 0.0)
        .def_property_readonly("mfs_residual", [](const PoissonSolution& s) {
            return s.mfs.collocation_residual;
        });

    m.def(
        "solve",
        [](const std::string& problem, const std::string& method, const std::string& kernel,
           std::size_t m, std::size_t boundary, long seed, double offset_factor,
           std::size_t n_sources) {
            const ProblemEntry& entry = lookup(problem);
            const Domain domain = entry.domain();
            const std::size_t l = boundary > 0 ? boundary : matching_boundary_count(domain, m);
            const NodeSet nodes =
                merge(generate_halton(domain, m, seed), sample_boundary(domain, l));
            MfsConfig config;
            config.offset_factor = offset_factor;
            config.n_sources = n_sources;
            return solve_poisson(entry.f, entry.bc, domain,
                                 method == "qmc" ? ParticularMethod::Qmc : ParticularMethod::Drm,
                                 KernelSpec::parse(kernel, domain.dim), nodes, config,
                                 entry.point_sources);
        },
        py::arg("problem"), py::arg("method") = "drm", py::arg("kernel") = "tps",
        py::arg("m") = 300, py::arg("boundary") = 0, py::arg("seed") = 0,
        py::arg("offset_factor") = 2.0, py::arg("n_sources") = 0);

    m.def(
        "convergence",
        [](const std::string& method, const std::string& problem, const std::string& kernel,
           const std::string& strategy, const std::vector<std::size_t>& m_list,
           const std::vector<long>& seeds) {
            ConvergenceConfig config;
            config.method = parse_study_method(method);
            config.problem = problem;
            config.kernel = KernelSpec::parse(kernel, lookup(problem).domain().dim);
            config.strategy = parse_strategy(strategy);
            config.m_list = m_list;
            config.seeds = seeds;
            py::list out;
            for (const StudyRecord& r : run_convergence(config)) {
                py::dict d;
                d["method"] = study_method_name(r.method);
                d["kernel"] = r.kernel;
                d["strategy"] = strategy_name(r.strategy);
                d["d"] = r.d;
                d["M"] = r.M;
                d["seed"] = r.seed;
                d["error_rms"] = r.error_rms;
                d["error_max"] = r.error_max;
                d["sigma_spread"] = r.sigma_spread;
                d["runtime_ms"] = r.runtime_ms;
                out.append(d);
            }
            return out;
        },
        py::arg("method"), py::arg("problem"), py::arg("kernel") = "tps",
        py::arg("strategy") = "halton", py::arg("m_list") = std::vector<std::size_t>{64, 256,
                                                                                     1024, 4096},
        py::arg("seeds") = std::vector<long>{0});

    m.def(
        "fit_error_exponent",
        [](const std::vector<std::size_t>& ms, const std::vector<double>& errors, int d) {
            if (ms.size() != errors.size())
                throw std::invalid_argument("ms and errors must have the same length");
            std::vector<StudyRecord> records;
            for (std::size_t i = 0; i < ms.size(); ++i) {
                StudyRecord r;
                r.d = d;
                r.M = ms[i];
                r.error_rms = errors[i];
                records.push_back(r);
            }
            const ExponentFit fit = fit_error_exponent(records, d);
            py::dict out;
            out["eta"] = fit.eta;
            out["log_exponent"] = fit.log_exponent;
            out["r_squared"] = fit.r_squared;
            out["M_min"] = fit.M_min;
            out["M_max"] = fit.M_max;
            return out;
        },
        py::arg("ms"), py::arg("errors"), py::arg("d") = 2,
        "Regress log(err) - (d-1) log log M against -log M; eta is the slope.");

    m.def("curse_reference", &curse_reference, py::arg("kappa"), py::arg("d"), py::arg("M"));

    m.def("list_problems", []() {
        py::list out;
        for (const ProblemEntry& e : all_problems()) out.append(py::make_tuple(e.name, e.description));
        return out;
    });
}
