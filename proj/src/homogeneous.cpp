#include "rbfqmc/homogeneous.hpp"

#include <algorithm>
#include <cmath>

#include "rbfqmc/numerics.hpp"

namespace rbfqmc {

BoundaryConditions BoundaryConditions::all_dirichlet(ScalarField d) {
    BoundaryConditions bc;
    bc.dirichlet = std::move(d);
    return bc;
}

namespace {

// Outward normal derivative of u*(||x - y||) with respect to x.
double ustar_normal_derivative(int dim, const Vec3& x, const Vec3& y, const Vec3& n) {
    const Vec3 d = x - y;
    const double r = norm(d);
    if (r == 0.0) throw singularity_error("dn u*: evaluation at the source point");
    const double pi = 3.14159265358979323846;
    if (dim == 2) return -dot(n, d) / (2.0 * pi * r * r);
    return -dot(n, d) / (4.0 * pi * r * r * r);
}

double normal_derivative_fd(const ScalarField& u, const Vec3& x, const Vec3& n, double step) {
    for (int attempt = 0; attempt < 2; ++attempt) {
        try {
            const double plus = u(x + step * n);
            const double minus = u(x - step * n);
            if (std::isfinite(plus) && std::isfinite(minus)) return (plus - minus) / (2.0 * step);
        } catch (const numerical_error&) {
            // stencil left the evaluable region; shrink once
        }
        step *= 0.5;
    }
    throw numerical_error("corrected_boundary_data: normal-derivative stencil not evaluable");
}

}  // namespace

std::vector<double> corrected_boundary_data(const BoundaryConditions& bc,
                                            const ParticularSolution* u_p,
                                            const NodeSet& boundary, const Domain& domain) {
    const double step = 1e-6 * domain.diameter();
    std::vector<double> data;
    data.reserve(boundary.size());
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        if (boundary.labels[i] != NodeLabel::Boundary)
            throw std::invalid_argument("corrected_boundary_data: node set has interior points");
        const Vec3& p = boundary.points[i];
        if (bc.type_at(p) == BcType::Dirichlet) {
            if (!bc.dirichlet) throw std::invalid_argument("boundary conditions: missing Dirichlet data");
            data.push_back(bc.dirichlet(p) - (u_p ? u_p->evaluator(p) : 0.0));
        } else {
            if (!bc.neumann) throw std::invalid_argument("boundary conditions: missing Neumann data");
            const double dn_up =
                u_p ? normal_derivative_fd(u_p->evaluator, p, boundary.normals[i], step) : 0.0;
            data.push_back(bc.neumann(p) - dn_up);
        }
    }
    return data;
}

std::vector<Vec3> mfs_source_points(const Domain& domain, std::size_t n, double offset_factor) {
    if (!(offset_factor > 1.0))
        throw std::invalid_argument("mfs_source_points: offset_factor must be > 1");
    const NodeSet base = sample_boundary(domain, std::max<std::size_t>(n, 3));
    const Vec3 c = domain.centroid();
    std::vector<Vec3> sources;
    sources.reserve(base.size());
    for (const Vec3& p : base.points) {
        const Vec3 y = c + offset_factor * (p - c);
        if (domain.boundary_distance(y) >= 0.0)
            throw std::invalid_argument("mfs_source_points: source not strictly outside the domain");
        sources.push_back(y);
    }
    return sources;
}

double MfsModel::evaluate(const Vec3& x) const {
    double value = 0.0;
    for (std::size_t j = 0; j < source_points.size(); ++j)
        value += weights(static_cast<Eigen::Index>(j)) *
                 fundamental_solution(dim, distance(x, source_points[j]));
    return value;
}

MfsModel mfs_solve(std::span<const double> corrected_data, const NodeSet& boundary,
                   const BoundaryConditions& bc, const Domain& domain, const MfsConfig& config) {
    const std::size_t n_coll = boundary.size();
    if (corrected_data.size() != n_coll)
        throw std::invalid_argument("mfs_solve: data length does not match collocation count");
    if (n_coll < 3) throw std::invalid_argument("mfs_solve: need at least 3 collocation points");
    const std::size_t n_src =
        config.n_sources > 0 ? config.n_sources : std::max<std::size_t>(8, n_coll / 2);

    MfsModel model;
    model.dim = domain.dim;
    model.offset_factor = config.offset_factor;
    model.source_points = mfs_source_points(domain, n_src, config.offset_factor);

    Eigen::MatrixXd a(static_cast<Eigen::Index>(n_coll),
                      static_cast<Eigen::Index>(model.source_points.size()));
    for (std::size_t i = 0; i < n_coll; ++i) {
        const Vec3& x = boundary.points[i];
        const bool neumann = bc.type_at(x) == BcType::Neumann;
        for (std::size_t j = 0; j < model.source_points.size(); ++j) {
            const Vec3& y = model.source_points[j];
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                neumann ? ustar_normal_derivative(domain.dim, x, y, boundary.normals[i])
                        : fundamental_solution(domain.dim, distance(x, y));
        }
    }

    Eigen::VectorXd rhs =
        Eigen::Map<const Eigen::VectorXd>(corrected_data.data(), static_cast<Eigen::Index>(n_coll));
    const double max_data = rhs.size() ? rhs.cwiseAbs().maxCoeff() : 0.0;

    // Orthogonal factorization with pivoting; minimum-norm solution on the
    // numerically rank-deficient systems MFS routinely produces.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    model.weights = cod.solve(rhs);
    if (!model.weights.allFinite() || (cod.rank() == 0 && max_data > 0.0))
        throw numerical_error("mfs_solve: rank-deficient least-squares system at offset_factor = " +
                              format_g17(config.offset_factor));

    model.collocation_residual = (a * model.weights - rhs).cwiseAbs().maxCoeff();
    model.residual_warning = model.collocation_residual > 1e-3 * (1.0 + max_data);
    return model;
}

PoissonSolution solve_poisson(const ScalarField& f, const BoundaryConditions& bc,
                              const Domain& domain, ParticularMethod method,
                              const KernelSpec& kernel, const NodeSet& nodes,
                              const MfsConfig& config, std::span<const PointSource> sources) {
    NodeSet boundary;
    boundary.strategy = nodes.strategy;
    boundary.dim = nodes.dim;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes.labels[i] != NodeLabel::Boundary) continue;
        boundary.points.push_back(nodes.points[i]);
        boundary.labels.push_back(NodeLabel::Boundary);
        boundary.normals.push_back(nodes.normals[i]);
    }
    if (boundary.size() < 3)
        throw std::invalid_argument("solve_poisson: node set needs at least 3 boundary points");
    bool any_dirichlet = false;
    for (const Vec3& p : boundary.points)
        if (bc.type_at(p) == BcType::Dirichlet) any_dirichlet = true;
    if (!any_dirichlet)
        throw std::invalid_argument(
            "solve_poisson: at least one Dirichlet point is required (pure Neumann data leaves "
            "the solution undetermined up to a constant)");

    PoissonSolution solution;
    if (method == ParticularMethod::Drm) {
        std::vector<double> f_at_nodes;
        f_at_nodes.reserve(nodes.size());
        for (const Vec3& p : nodes.points) f_at_nodes.push_back(f(p));
        solution.particular = drm_particular(f_at_nodes, kernel, nodes);
    } else {
        solution.particular = qmc_particular_solution(f, domain, nodes);
    }
    if (!sources.empty())
        solution.particular.evaluator = add_point_sources(
            solution.particular.evaluator, {sources.begin(), sources.end()}, domain.dim);

    const std::vector<double> data =
        corrected_boundary_data(bc, &solution.particular, boundary, domain);
    solution.mfs = mfs_solve(data, boundary, bc, domain, config);

    const MfsModel& mfs = solution.mfs;
    const ScalarField u_p = solution.particular.evaluator;
    solution.u = [mfs, u_p](const Vec3& x) { return mfs.evaluate(x) + u_p(x); };
    return solution;
}

}  // namespace rbfqmc
