#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "rbfqmc/interpolation.hpp"

namespace rbfqmc {

struct MfsConfig;  // homogeneous.hpp

using ScalarField = std::function<double(const Vec3&)>;

struct PointSource {
    Vec3 location;
    double magnitude = 0.0;
};

// Forcing term of the Poisson problem, with an analytic Newton potential
// oracle when one is known.
struct SourceTerm {
    std::string name;
    ScalarField evaluator;
    ScalarField analytic_newton_potential;  // may be empty
    std::vector<PointSource> point_sources;
};

enum class ParticularMethod { Drm, Qmc };

// u_p with lap(u_p) = f; the evaluator is finite away from source nodes.
struct ParticularSolution {
    ParticularMethod method = ParticularMethod::Drm;
    ScalarField evaluator;
    std::shared_ptr<const InterpolationModel> model;  // DRM provenance
    std::shared_ptr<const NodeSet> nodes;             // QMC provenance
    double volume = 0.0;

    double operator()(const Vec3& x) const { return evaluator(x); }
};

// DRM: fit f at the nodes with phi, then u_p(x) = sum_k alpha_k psi(r_k).
ParticularSolution drm_particular(std::span<const double> f_at_nodes,
                                  const KernelSpec& kernel, const NodeSet& nodes);

// Raw QMC sum (V/M) sum_k u*(||x - x_k||) f(x_k): the Newton-potential
// estimate. Nodes inside the exclusion ball (1e-6 x domain diameter) around x
// are skipped and counted.
double qmc_particular(const ScalarField& f, const Domain& domain, const NodeSet& nodes,
                      const Vec3& x, std::size_t* skipped = nullptr);

// Sign-adjusted wrapper: u_p = -(V/M) sum u* f, so lap(u_p) = f matches the
// DRM convention.
ParticularSolution qmc_particular_solution(ScalarField f, const Domain& domain, NodeSet nodes);

// Closed-form integral u*(x, .) * f over the domain for registry problems
// that carry one; throws std::invalid_argument otherwise.
double newton_potential_reference(std::string_view problem_name, const Domain& domain,
                                  const Vec3& x);

// u(x) = u_p(x) + sum_l Q_l u*(||x - s_l||); evaluation at a source location
// raises singularity_error.
ScalarField add_point_sources(ScalarField u_p, std::vector<PointSource> sources, int dim);

struct ConsistencyReport {
    double max_fd_laplacian_diff = 0.0;  // max |lap_fd(u_drm - u_qmc)| / (1 + ||f||_inf)
    double defect_drm = 0.0;             // max |lap_fd(u_drm) - f| / (1 + ||f||_inf)
    double defect_qmc = 0.0;
    double ratio = 0.0;                  // diff defect / worse individual defect
    double fd_step = 0.0;
    std::size_t probes_used = 0;
};

// Testable reading of the DRM/QMC equivalence: both particular solutions obey
// lap(u_p) ~ f up to discretization, so their difference must be close to
// harmonic. The finite-difference step defaults to a few mean node spacings
// (pass fd_step = 0), wide enough that the discrete Laplacian of the QMC sum
// sees the averaged source density instead of individual kernels.
ConsistencyReport consistency_diagnostic(const ParticularSolution& drm,
                                         const ParticularSolution& qmc, const ScalarField& f,
                                         std::span<const Vec3> probes, double fd_step = 0.0);

// Coefficient of variation of g = f(x_k) u*(r_k) / sqrt(r_k^2 + c^2) over the
// nodes, radii measured from the response point (domain centroid by default).
// Smaller means the MQ-weighted integrand is closer to constant.
double mq_flatness(const ScalarField& f, const Domain& domain, const NodeSet& nodes, double c,
                   const Vec3* response_point = nullptr);

// (V/m) sum w(x_k) over Halton nodes.
double integrate_qmc(const ScalarField& w, const Domain& domain, std::size_t m, long seed);

struct RbfIntegration {
    double estimate = 0.0;
    double qmc_baseline = 0.0;
    double discrepancy = 0.0;  // relative to the baseline
    std::size_t excluded_nodes = 0;
};

// Experimental route: integrate w by solving the zero-Dirichlet Poisson
// problem with forcing w/u*(s_i, .) and reading the solution at s_i. The
// free-space u* is not the domain Green function, so only the discrepancy
// against the QMC baseline is reported; no accuracy is claimed.
RbfIntegration integrate_via_rbf(const ScalarField& w, const Domain& domain, const Vec3& s_i,
                                 const KernelSpec& kernel, const NodeSet& nodes,
                                 const MfsConfig& mfs);

}  // namespace rbfqmc
