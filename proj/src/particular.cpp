#include "rbfqmc/particular.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "rbfqmc/homogeneous.hpp"
#include "rbfqmc/numerics.hpp"
#include "rbfqmc/registry.hpp"

namespace rbfqmc {

namespace {

double exclusion_radius(const Domain& domain) { return 1e-6 * domain.diameter(); }

}  // namespace

ParticularSolution drm_particular(std::span<const double> f_at_nodes, const KernelSpec& kernel,
                                  const NodeSet& nodes) {
    auto model = std::make_shared<InterpolationModel>(fit(nodes, f_at_nodes, kernel));
    if (!has_psi(kernel)) detail::throw_unsupported_pair(kernel);
    ParticularSolution up;
    up.method = ParticularMethod::Drm;
    up.model = model;
    up.evaluator = [model](const Vec3& x) {
        double value = 0.0;
        for (std::size_t k = 0; k < model->nodes.size(); ++k)
            value += model->alpha(static_cast<Eigen::Index>(k)) *
                     eval_psi(model->kernel, distance(x, model->nodes.points[k]));
        return value;
    };
    return up;
}

double qmc_particular(const ScalarField& f, const Domain& domain, const NodeSet& nodes,
                      const Vec3& x, std::size_t* skipped) {
    const double eps = exclusion_radius(domain);
    const double scale = domain.measure / static_cast<double>(nodes.size());
    double sum = 0.0;
    std::size_t dropped = 0;
    for (const Vec3& node : nodes.points) {
        const double r = distance(x, node);
        if (r <= eps) {
            ++dropped;
            continue;
        }
        sum += fundamental_solution(domain.dim, r) * f(node);
    }
    if (skipped) *skipped = dropped;
    return scale * sum;
}

ParticularSolution qmc_particular_solution(ScalarField f, const Domain& domain, NodeSet nodes) {
    auto shared_nodes = std::make_shared<NodeSet>(std::move(nodes));
    ParticularSolution up;
    up.method = ParticularMethod::Qmc;
    up.nodes = shared_nodes;
    up.volume = domain.measure;
    // lap(Newton potential) = -f under -lap(u*) = delta, so the particular
    // solution is the negated QMC sum.
    up.evaluator = [f = std::move(f), domain, shared_nodes](const Vec3& x) {
        return -qmc_particular(f, domain, *shared_nodes, x);
    };
    return up;
}

double newton_potential_reference(std::string_view problem_name, const Domain& domain,
                                  const Vec3& x) {
    const ProblemEntry& entry = lookup(problem_name);
    if (!entry.has_newton_potential())
        throw std::invalid_argument("problem '" + entry.name +
                                    "' carries no analytic Newton potential");
    if (entry.domain_kind != domain.kind)
        throw std::invalid_argument("problem '" + entry.name + "' is registered on domain '" +
                                    entry.domain().name() + "', not '" + domain.name() + "'");
    return entry.newton_potential(x);
}

ScalarField add_point_sources(ScalarField u_p, std::vector<PointSource> sources, int dim) {
    if (sources.empty()) return u_p;
    return [u_p = std::move(u_p), sources = std::move(sources), dim](const Vec3& x) {
        double value = u_p ? u_p(x) : 0.0;
        for (const PointSource& s : sources) {
            const double r = distance(x, s.location);
            if (r == 0.0)
                throw singularity_error("point-source field evaluated at a source location");
            value += s.magnitude * fundamental_solution(dim, r);
        }
        return value;
    };
}

ConsistencyReport consistency_diagnostic(const ParticularSolution& drm,
                                         const ParticularSolution& qmc, const ScalarField& f,
                                         std::span<const Vec3> probes, double fd_step) {
    ConsistencyReport report;
    if (fd_step <= 0.0) {
        // Wide enough that the stencil averages over many QMC nodes; below
        // ~6 mean spacings the discrete Laplacian of the kernel sum is
        // dominated by per-node jitter instead of the source density.
        const std::size_t m = qmc.nodes ? qmc.nodes->size() : 256;
        const double volume = qmc.volume > 0.0 ? qmc.volume : 1.0;
        const int dim = qmc.nodes ? qmc.nodes->dim : 2;
        fd_step = 10.0 * std::pow(volume / static_cast<double>(m), 1.0 / dim);
    }
    report.fd_step = fd_step;

    double f_inf = 0.0;
    for (const Vec3& p : probes) f_inf = std::max(f_inf, std::abs(f(p)));
    const double denom = 1.0 + f_inf;

    const int dim = qmc.nodes ? qmc.nodes->dim : 2;
    for (const Vec3& p : probes) {
        const double lap_drm = fd_laplacian(drm.evaluator, p, fd_step, dim);
        const double lap_qmc = fd_laplacian(qmc.evaluator, p, fd_step, dim);
        const double fp = f(p);
        report.max_fd_laplacian_diff =
            std::max(report.max_fd_laplacian_diff, std::abs(lap_drm - lap_qmc) / denom);
        report.defect_drm = std::max(report.defect_drm, std::abs(lap_drm - fp) / denom);
        report.defect_qmc = std::max(report.defect_qmc, std::abs(lap_qmc - fp) / denom);
        ++report.probes_used;
    }
    const double worst = std::max(report.defect_drm, report.defect_qmc);
    report.ratio = worst > 0.0 ? report.max_fd_laplacian_diff / worst
                               : (report.max_fd_laplacian_diff > 0.0 ? 1.0 : 0.0);
    return report;
}

double mq_flatness(const ScalarField& f, const Domain& domain, const NodeSet& nodes, double c,
                   const Vec3* response_point) {
    if (!(c > 0.0)) throw std::invalid_argument("mq_flatness: c must be > 0");
    const Vec3 x = response_point ? *response_point : domain.centroid();
    const double eps = exclusion_radius(domain);
    std::vector<double> g;
    g.reserve(nodes.size());
    for (const Vec3& node : nodes.points) {
        const double r = distance(x, node);
        if (r <= eps) continue;
        g.push_back(f(node) * fundamental_solution(domain.dim, r) / std::sqrt(r * r + c * c));
    }
    if (g.empty()) throw std::invalid_argument("mq_flatness: no usable nodes");
    double mean = 0.0;
    for (double v : g) mean += v;
    mean /= static_cast<double>(g.size());
    if (mean == 0.0) throw numerical_error("mq_flatness: mean of g is zero, CV undefined");
    double var = 0.0;
    for (double v : g) var += (v - mean) * (v - mean);
    return std::sqrt(var / static_cast<double>(g.size())) / std::abs(mean);
}

double integrate_qmc(const ScalarField& w, const Domain& domain, std::size_t m, long seed) {
    if (m < 1) throw std::invalid_argument("integrate_qmc: m must be >= 1");
    const NodeSet nodes = generate_halton(domain, m, seed);
    double sum = 0.0;
    for (const Vec3& p : nodes.points) sum += w(p);
    return domain.measure / static_cast<double>(m) * sum;
}

RbfIntegration integrate_via_rbf(const ScalarField& w, const Domain& domain, const Vec3& s_i,
                                 const KernelSpec& kernel, const NodeSet& nodes,
                                 const MfsConfig& mfs) {
    if (!domain.contains(s_i))
        throw std::invalid_argument("integrate_via_rbf: s_i must be strictly interior");

    // Drop nodes where u*(s_i, .) vanishes (2D: the unit circle around s_i)
    // or is unreadably close to it.
    NodeSet usable;
    usable.strategy = nodes.strategy;
    usable.seed = nodes.seed;
    usable.dim = nodes.dim;
    std::size_t excluded = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double r = distance(s_i, nodes.points[i]);
        bool bad = r <= exclusion_radius(domain);
        if (!bad && std::abs(fundamental_solution(domain.dim, r)) < 1e-10) bad = true;
        if (bad) {
            ++excluded;
            continue;
        }
        usable.points.push_back(nodes.points[i]);
        usable.labels.push_back(nodes.labels[i]);
        usable.normals.push_back(nodes.normals[i]);
    }
    if (usable.interior_count() == 0)
        throw std::invalid_argument("integrate_via_rbf: no usable interior nodes");
    if (usable.boundary_count() < 3)
        usable = merge(usable, sample_boundary(
                                   domain, matching_boundary_count(domain, usable.size())));

    const ScalarField forcing = [&w, &domain, s_i](const Vec3& x) {
        return w(x) / fundamental_solution(domain.dim, distance(s_i, x));
    };
    const BoundaryConditions zero_dirichlet =
        BoundaryConditions::all_dirichlet([](const Vec3&) { return 0.0; });
    const PoissonSolution solution =
        solve_poisson(forcing, zero_dirichlet, domain, ParticularMethod::Drm, kernel, usable, mfs);

    RbfIntegration result;
    result.excluded_nodes = excluded;
    // integral w = integral f u*(s_i,.) = Newton potential at s_i; the solved
    // field is u = u_p + v with u_p = -P + harmonic, so -u(s_i) estimates the
    // integral up to the boundary-flux term left open by the free-space u*.
    result.estimate = -solution.u(s_i);
    result.qmc_baseline = integrate_qmc(w, domain, std::max<std::size_t>(nodes.size(), 1), 0);
    const double denom = std::abs(result.qmc_baseline);
    result.discrepancy = std::abs(result.estimate - result.qmc_baseline) / (denom > 0.0 ? denom : 1.0);
    return result;
}

}  // namespace rbfqmc
