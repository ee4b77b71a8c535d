#include "rbfqmc/registry.hpp"

#include <cmath>
#include <numbers>

#include "rbfqmc/numerics.hpp"

namespace rbfqmc {

namespace {

constexpr double kPi = std::numbers::pi;

ProblemEntry make_const1_disk() {
    ProblemEntry e;
    e.name = "const1-disk";
    e.description = "f = 1 on the unit disk, zero Dirichlet data; u = (r^2 - 1)/4";
    e.domain_kind = DomainKind::UnitDisk;
    e.f = [](const Vec3&) { return 1.0; };
    e.exact_u = [](const Vec3& p) { return (dot(p, p) - 1.0) / 4.0; };
    // Logarithmic potential of the unit disk: (1 - r^2)/4 inside, -ln(r)/2
    // outside (total mass pi spread over the disk).
    e.newton_potential = [](const Vec3& p) {
        const double r = norm(p);
        return r <= 1.0 ? (1.0 - r * r) / 4.0 : -0.5 * std::log(r);
    };
    e.bc = BoundaryConditions::all_dirichlet([](const Vec3&) { return 0.0; });
    return e;
}

ProblemEntry make_sin_square() {
    ProblemEntry e;
    e.name = "sin-square";
    e.description = "u = sin(pi x) sin(pi y) on the unit square, zero Dirichlet data";
    e.domain_kind = DomainKind::UnitSquare;
    e.exact_u = [](const Vec3& p) { return std::sin(kPi * p.x) * std::sin(kPi * p.y); };
    e.f = [](const Vec3& p) {
        return -2.0 * kPi * kPi * std::sin(kPi * p.x) * std::sin(kPi * p.y);
    };
    e.bc = BoundaryConditions::all_dirichlet([](const Vec3&) { return 0.0; });
    return e;
}

ProblemEntry make_gaussian_bump_square() {
    ProblemEntry e;
    e.name = "gaussian-bump-square";
    e.description = "f = exp(-20 ||x - (0.5,0.5)||^2) on the unit square (diagnostics only)";
    e.domain_kind = DomainKind::UnitSquare;
    e.f = [](const Vec3& p) {
        const double dx = p.x - 0.5;
        const double dy = p.y - 0.5;
        return std::exp(-20.0 * (dx * dx + dy * dy));
    };
    e.bc = BoundaryConditions::all_dirichlet([](const Vec3&) { return 0.0; });
    return e;
}

ProblemEntry make_linear_xy_square() {
    ProblemEntry e;
    e.name = "linear-xy-square";
    e.description = "u = x + y on the unit square, f = 0 (pure MFS case)";
    e.domain_kind = DomainKind::UnitSquare;
    e.exact_u = [](const Vec3& p) { return p.x + p.y; };
    e.f = [](const Vec3&) { return 0.0; };
    e.bc = BoundaryConditions::all_dirichlet([](const Vec3& p) { return p.x + p.y; });
    return e;
}

ProblemEntry make_mixed_bc_square() {
    ProblemEntry e;
    e.name = "mixed-bc-square";
    e.description = "u = x^3 + y^3 on the unit square; Neumann data on the x = 1 edge";
    e.domain_kind = DomainKind::UnitSquare;
    e.exact_u = [](const Vec3& p) { return p.x * p.x * p.x + p.y * p.y * p.y; };
    e.f = [](const Vec3& p) { return 6.0 * (p.x + p.y); };
    e.bc.segment = [](const Vec3& p) {
        return p.x >= 1.0 - 1e-9 ? BcType::Neumann : BcType::Dirichlet;
    };
    e.bc.dirichlet = [](const Vec3& p) { return p.x * p.x * p.x + p.y * p.y * p.y; };
    e.bc.neumann = [](const Vec3& p) { return 3.0 * p.x * p.x; };  // n = (1,0) on that edge
    return e;
}

}  // namespace

void validate_problem(const ProblemEntry& entry) {
    if (!entry.f) throw std::invalid_argument("problem '" + entry.name + "': missing forcing");
    if (!entry.has_exact_u()) return;
    const Domain domain = entry.domain();
    const Vec3 c = domain.centroid();
    const double off = 0.17 * domain.diameter();
    std::vector<Vec3> checks = {c,
                                {c.x + off, c.y, c.z},
                                {c.x - 0.6 * off, c.y + 0.5 * off, c.z},
                                {c.x, c.y - off, c.z},
                                {c.x + 0.4 * off, c.y + 0.8 * off, c.z}};
    const double h = 1e-4 * domain.diameter();
    for (const Vec3& p : checks) {
        if (!domain.contains(p)) continue;
        const double lap = fd_laplacian(entry.exact_u, p, h, domain.dim);
        const double fp = entry.f(p);
        const double scale = 1.0 + std::abs(fp);
        if (std::abs(lap - fp) > 1e-5 * scale)
            throw std::logic_error("problem '" + entry.name +
                                   "': exact solution fails the lap(u) = f spot check at (" +
                                   format_g17(p.x) + ", " + format_g17(p.y) + "): lap = " +
                                   format_g17(lap) + ", f = " + format_g17(fp));
    }
}

const std::vector<ProblemEntry>& all_problems() {
    static const std::vector<ProblemEntry> problems = [] {
        std::vector<ProblemEntry> entries;
        entries.push_back(make_const1_disk());
        entries.push_back(make_sin_square());
        entries.push_back(make_gaussian_bump_square());
        entries.push_back(make_linear_xy_square());
        entries.push_back(make_mixed_bc_square());
        for (const ProblemEntry& e : entries) validate_problem(e);
        return entries;
    }();
    return problems;
}

const ProblemEntry& lookup(std::string_view name) {
    for (const ProblemEntry& e : all_problems())
        if (e.name == name) return e;
    std::string known;
    for (const ProblemEntry& e : all_problems()) {
        if (!known.empty()) known += ", ";
        known += e.name;
    }
    throw std::invalid_argument("unknown problem '" + std::string(name) +
                                "'; registered problems: " + known);
}

}  // namespace rbfqmc
