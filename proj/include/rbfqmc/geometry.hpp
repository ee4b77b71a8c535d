#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rbfqmc/types.hpp"

namespace rbfqmc {

enum class DomainKind { UnitSquare, UnitCube, UnitDisk, UnitBall };

// Axis-aligned unit square/cube ([0,1]^d) or unit disk/ball (radius 1 at the
// origin). `measure` is the analytic area/volume V.
struct Domain {
    DomainKind kind = DomainKind::UnitSquare;
    int dim = 2;
    double measure = 1.0;

    static Domain make(DomainKind kind);
    static Domain parse(std::string_view name);  // "square" | "cube" | "disk" | "ball"
    std::string name() const;

    bool contains(const Vec3& p) const;              // strict interior
    double boundary_distance(const Vec3& p) const;   // > 0 inside, < 0 outside
    bool on_boundary(const Vec3& p, double tol = 1e-12) const;
    Vec3 centroid() const;
    double diameter() const;
    double boundary_measure() const;                 // perimeter / surface area
    void bounds(Vec3& lo, Vec3& hi) const;           // bounding box
};

enum class NodeLabel { Interior, Boundary };

enum class Strategy { Uniform, PseudoRandom, Halton, BoundaryInclined };

Strategy parse_strategy(std::string_view name);
std::string strategy_name(Strategy s);

// Labeled point collection. `normals` is aligned with `points`; interior
// entries are zero vectors.
struct NodeSet {
    std::vector<Vec3> points;
    std::vector<NodeLabel> labels;
    std::vector<Vec3> normals;
    Strategy strategy = Strategy::Uniform;
    long seed = 0;
    int dim = 2;

    std::size_t size() const { return points.size(); }
    std::size_t interior_count() const;
    std::size_t boundary_count() const;
};

// Tensor grid over the bounding box restricted to the strict interior, plus a
// separately sampled boundary layer at matching linear density.
NodeSet generate_uniform(const Domain& domain, int n_per_axis);

// First m interior Halton points (bases = first d primes, start index 1); the
// seed offsets the start index. Points falling outside the domain are skipped
// and replenished from the sequence.
NodeSet generate_halton(const Domain& domain, std::size_t m, long seed);

// Tensor product of Chebyshev-Gauss-Lobatto abscissas mapped to [0,1] per
// axis; m is the total requested count, so n_per_axis = round(m^(1/d)).
// Square/cube only.
NodeSet generate_boundary_inclined(const Domain& domain, std::size_t m);

// m interior points from a seeded uniform generator by rejection sampling.
NodeSet generate_pseudo_random(const Domain& domain, std::size_t m, long seed);

// L boundary points equally spaced in the boundary parameterization, with
// outward unit normals.
NodeSet sample_boundary(const Domain& domain, std::size_t count);

// Boundary count matching the linear density of m interior points.
std::size_t matching_boundary_count(const Domain& domain, std::size_t m);

// Concatenates two node sets (typically interior + boundary) and re-validates
// pairwise distinctness.
NodeSet merge(const NodeSet& a, const NodeSet& b);

NodeSet generate_nodes(const Domain& domain, Strategy strategy, std::size_t m, long seed);

double min_pairwise_distance(const NodeSet& nodes);

// Throws if any invariant fails (membership, on-boundary placement, unit
// normals, pairwise distinctness).
void validate_nodeset(const NodeSet& nodes, const Domain& domain);

struct SigmaProfile {
    std::vector<double> values;
    double mean = 0.0;
    double spread = 0.0;  // population standard deviation
};

// sigma(x_i) = (V/M) * sum_k ||x_i - x_k|| over all M nodes.
SigmaProfile sigma_statistic(const NodeSet& nodes, const Domain& domain);

// Radical inverse of `index` in the given base (Halton component).
double halton_radical_inverse(unsigned base, unsigned long long index);

// CSV schema: x,y[,z],label,nx,ny[,nz]; label I|B; normals empty for interior
// rows. Values at 17 significant digits so a write/read cycle is bit exact.
void write_nodes_csv(std::ostream& out, const NodeSet& nodes);
NodeSet read_nodes_csv(std::istream& in);

}  // namespace rbfqmc
