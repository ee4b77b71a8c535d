#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>

#include "rbfqmc/particular.hpp"

namespace rbfqmc {

enum class BcType { Dirichlet, Neumann };

// Boundary data split into Dirichlet and Neumann segments; every boundary
// point belongs to exactly one type via `segment` (all-Dirichlet when empty).
struct BoundaryConditions {
    std::function<BcType(const Vec3&)> segment;
    ScalarField dirichlet;
    ScalarField neumann;

    BcType type_at(const Vec3& p) const { return segment ? segment(p) : BcType::Dirichlet; }
    static BoundaryConditions all_dirichlet(ScalarField d);
};

struct MfsConfig {
    double offset_factor = 2.0;   // source boundary inflation about the centroid
    std::size_t n_sources = 0;    // 0: half the collocation count, at least 8
};

// v(x) = sum_j w_j u*(||x - y_j||) with fictitious sources y_j strictly
// outside the domain.
struct MfsModel {
    std::vector<Vec3> source_points;
    Eigen::VectorXd weights;
    double offset_factor = 2.0;
    double collocation_residual = 0.0;  // max norm over collocation rows
    bool residual_warning = false;
    int dim = 2;

    double evaluate(const Vec3& x) const;
    double operator()(const Vec3& x) const { return evaluate(x); }
};

// Dirichlet rows D(x_j) - u_p(x_j); Neumann rows N(x_j) - du_p/dn(x_j) with
// the normal derivative by central differences (step 1e-6 x diameter, halved
// once if the stencil cannot be evaluated). Pass u_p = nullptr for a zero
// particular solution; pure-Dirichlet data never touches the normals.
std::vector<double> corrected_boundary_data(const BoundaryConditions& bc,
                                            const ParticularSolution* u_p,
                                            const NodeSet& boundary, const Domain& domain);

// Collocation sources on the similarity-inflated boundary.
std::vector<Vec3> mfs_source_points(const Domain& domain, std::size_t n, double offset_factor);

// Least squares by orthogonal factorization (minimum-norm solution); the
// system may be rectangular. Residual above 1e-3 (1 + max|data|) sets the
// warning flag; a zero-rank or non-finite solve raises numerical_error naming
// the offset factor.
MfsModel mfs_solve(std::span<const double> corrected_data, const NodeSet& boundary,
                   const BoundaryConditions& bc, const Domain& domain,
                   const MfsConfig& config = {});

struct PoissonSolution {
    ScalarField u;   // v + u_p
    ParticularSolution particular;
    MfsModel mfs;

    double operator()(const Vec3& x) const { return u(x); }
};

// Full Poisson solve: particular solution by DRM or the sign-adjusted QMC
// sum over the given nodes, boundary correction, MFS for the harmonic part.
// The node set must contain the boundary collocation points (label B).
PoissonSolution solve_poisson(const ScalarField& f, const BoundaryConditions& bc,
                              const Domain& domain, ParticularMethod method,
                              const KernelSpec& kernel, const NodeSet& nodes,
                              const MfsConfig& config = {},
                              std::span<const PointSource> sources = {});

}  // namespace rbfqmc
