#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rbfqmc/homogeneous.hpp"

namespace rbfqmc {

// Named manufactured problem: forcing, boundary data and the analytic oracles
// that make a study reproducible by name alone.
struct ProblemEntry {
    std::string name;
    std::string description;
    DomainKind domain_kind = DomainKind::UnitSquare;
    ScalarField f;
    ScalarField exact_u;            // empty when no closed form exists
    ScalarField newton_potential;   // empty when no closed form exists
    BoundaryConditions bc;
    std::vector<PointSource> point_sources;

    Domain domain() const { return Domain::make(domain_kind); }
    bool has_exact_u() const { return static_cast<bool>(exact_u); }
    bool has_newton_potential() const { return static_cast<bool>(newton_potential); }
    SourceTerm source_term() const { return {name, f, newton_potential, point_sources}; }
};

// Spot check lap(u) = f by finite differences at 5 interior points (relative
// 1e-5); throws when an entry with an exact solution fails it.
void validate_problem(const ProblemEntry& entry);

// Throws std::invalid_argument listing the registry contents for unknown
// names. Entries are validated once at first access.
const ProblemEntry& lookup(std::string_view name);

const std::vector<ProblemEntry>& all_problems();

}  // namespace rbfqmc
