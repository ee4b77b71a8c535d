#include "rbfqmc/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "rbfqmc/numerics.hpp"

namespace rbfqmc {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_box(DomainKind k) { return k == DomainKind::UnitSquare || k == DomainKind::UnitCube; }

}  // namespace

Domain Domain::make(DomainKind kind) {
    switch (kind) {
        case DomainKind::UnitSquare: return {kind, 2, 1.0};
        case DomainKind::UnitCube: return {kind, 3, 1.0};
        case DomainKind::UnitDisk: return {kind, 2, kPi};
        case DomainKind::UnitBall: return {kind, 3, 4.0 * kPi / 3.0};
    }
    throw std::invalid_argument("unknown domain kind");
}

Domain Domain::parse(std::string_view name) {
    if (name == "square" || name == "unit-square") return make(DomainKind::UnitSquare);
    if (name == "cube" || name == "unit-cube") return make(DomainKind::UnitCube);
    if (name == "disk" || name == "unit-disk") return make(DomainKind::UnitDisk);
    if (name == "ball" || name == "unit-ball") return make(DomainKind::UnitBall);
    throw std::invalid_argument("unknown domain '" + std::string(name) +
                                "' (expected square|cube|disk|ball)");
}

std::string Domain::name() const {
    switch (kind) {
        case DomainKind::UnitSquare: return "square";
        case DomainKind::UnitCube: return "cube";
        case DomainKind::UnitDisk: return "disk";
        case DomainKind::UnitBall: return "ball";
    }
    return "?";
}

bool Domain::contains(const Vec3& p) const { return boundary_distance(p) > 0.0; }

double Domain::boundary_distance(const Vec3& p) const {
    switch (kind) {
        case DomainKind::UnitSquare:
            return std::min(std::min(p.x, 1.0 - p.x), std::min(p.y, 1.0 - p.y));
        case DomainKind::UnitCube:
            return std::min({p.x, 1.0 - p.x, p.y, 1.0 - p.y, p.z, 1.0 - p.z});
        case DomainKind::UnitDisk:
        case DomainKind::UnitBall:
            return 1.0 - norm(p);
    }
    return -std::numeric_limits<double>::infinity();
}

bool Domain::on_boundary(const Vec3& p, double tol) const {
    return std::abs(boundary_distance(p)) <= tol;
}

Vec3 Domain::centroid() const {
    if (is_box(kind)) return dim == 2 ? Vec3{0.5, 0.5, 0.0} : Vec3{0.5, 0.5, 0.5};
    return {0.0, 0.0, 0.0};
}

double Domain::diameter() const {
    switch (kind) {
        case DomainKind::UnitSquare: return std::sqrt(2.0);
        case DomainKind::UnitCube: return std::sqrt(3.0);
        case DomainKind::UnitDisk:
        case DomainKind::UnitBall: return 2.0;
    }
    return 0.0;
}

double Domain::boundary_measure() const {
    switch (kind) {
        case DomainKind::UnitSquare: return 4.0;
        case DomainKind::UnitCube: return 6.0;
        case DomainKind::UnitDisk: return 2.0 * kPi;
        case DomainKind::UnitBall: return 4.0 * kPi;
    }
    return 0.0;
}

void Domain::bounds(Vec3& lo, Vec3& hi) const {
    if (is_box(kind)) {
        lo = {0.0, 0.0, 0.0};
        hi = dim == 2 ? Vec3{1.0, 1.0, 0.0} : Vec3{1.0, 1.0, 1.0};
    } else {
        lo = dim == 2 ? Vec3{-1.0, -1.0, 0.0} : Vec3{-1.0, -1.0, -1.0};
        hi = dim == 2 ? Vec3{1.0, 1.0, 0.0} : Vec3{1.0, 1.0, 1.0};
    }
}

Strategy parse_strategy(std::string_view name) {
    if (name == "uniform") return Strategy::Uniform;
    if (name == "pseudo-random" || name == "pseudo" || name == "random")
        return Strategy::PseudoRandom;
    if (name == "halton") return Strategy::Halton;
    if (name == "boundary-inclined" || name == "inclined") return Strategy::BoundaryInclined;
    throw std::invalid_argument("unknown strategy '" + std::string(name) +
                                "' (expected uniform|pseudo-random|halton|boundary-inclined)");
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Uniform: return "uniform";
        case Strategy::PseudoRandom: return "pseudo-random";
        case Strategy::Halton: return "halton";
        case Strategy::BoundaryInclined: return "boundary-inclined";
    }
    return "?";
}

std::size_t NodeSet::interior_count() const {
    return static_cast<std::size_t>(
        std::count(labels.begin(), labels.end(), NodeLabel::Interior));
}

std::size_t NodeSet::boundary_count() const { return size() - interior_count(); }

double halton_radical_inverse(unsigned base, unsigned long long index) {
    double digit = 1.0;
    double value = 0.0;
    while (index > 0) {
        digit /= base;
        value += digit * static_cast<double>(index % base);
        index /= base;
    }
    return value;
}

double min_pairwise_distance(const NodeSet& nodes) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.points.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.points.size(); ++j)
            best = std::min(best, distance(nodes.points[i], nodes.points[j]));
    return best;
}

namespace {

// Minimum-separation guard: a set whose closest pair falls under
// 1e-10 x diameter is rejected so the interpolation matrix stays usable.
bool separation_ok(const NodeSet& nodes, const Domain& domain) {
    if (nodes.size() < 2) return true;
    return min_pairwise_distance(nodes) >= 1e-10 * domain.diameter();
}

std::array<unsigned, 3> halton_bases(int dim) {
    return dim == 2 ? std::array<unsigned, 3>{2, 3, 0} : std::array<unsigned, 3>{2, 3, 5};
}

NodeSet halton_interior_once(const Domain& domain, std::size_t m, long seed,
                             unsigned long long offset) {
    Vec3 lo;
    Vec3 hi;
    domain.bounds(lo, hi);
    const auto bases = halton_bases(domain.dim);
    NodeSet out;
    out.strategy = Strategy::Halton;
    out.seed = seed;
    out.dim = domain.dim;
    unsigned long long index = 1 + offset;
    while (out.points.size() < m) {
        Vec3 p;
        p.x = lo.x + (hi.x - lo.x) * halton_radical_inverse(bases[0], index);
        p.y = lo.y + (hi.y - lo.y) * halton_radical_inverse(bases[1], index);
        if (domain.dim == 3) p.z = lo.z + (hi.z - lo.z) * halton_radical_inverse(bases[2], index);
        ++index;
        if (!domain.contains(p)) continue;
        out.points.push_back(p);
        out.labels.push_back(NodeLabel::Interior);
        out.normals.push_back({});
    }
    return out;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform double in [0,1) from the top 53 bits; identical on every platform.
double next_unit(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

NodeSet pseudo_random_once(const Domain& domain, std::size_t m, long seed,
                           unsigned long long attempt) {
    Vec3 lo;
    Vec3 hi;
    domain.bounds(lo, hi);
    std::uint64_t state =
        static_cast<std::uint64_t>(seed) * 0x9E3779B97F4A7C15ULL + attempt * 0xD1B54A32D192ED03ULL;
    NodeSet out;
    out.strategy = Strategy::PseudoRandom;
    out.seed = seed;
    out.dim = domain.dim;
    while (out.points.size() < m) {
        Vec3 p;
        p.x = lo.x + (hi.x - lo.x) * next_unit(state);
        p.y = lo.y + (hi.y - lo.y) * next_unit(state);
        if (domain.dim == 3) p.z = lo.z + (hi.z - lo.z) * next_unit(state);
        if (!domain.contains(p)) continue;
        out.points.push_back(p);
        out.labels.push_back(NodeLabel::Interior);
        out.normals.push_back({});
    }
    return out;
}

Vec3 square_boundary_point(double s, Vec3& normal) {
    // Arc length s in [0,4) starting at (0,0) running counterclockwise.
    s = std::fmod(s, 4.0);
    if (s < 1.0) {
        normal = {0.0, -1.0, 0.0};
        return {s, 0.0, 0.0};
    }
    if (s < 2.0) {
        normal = {1.0, 0.0, 0.0};
        return {1.0, s - 1.0, 0.0};
    }
    if (s < 3.0) {
        normal = {0.0, 1.0, 0.0};
        return {3.0 - s, 1.0, 0.0};
    }
    normal = {-1.0, 0.0, 0.0};
    return {0.0, 4.0 - s, 0.0};
}

// Face index order: x=0, x=1, y=0, y=1, z=0, z=1.
Vec3 cube_face_point(int face, double u, double v, Vec3& normal) {
    switch (face) {
        case 0: normal = {-1, 0, 0}; return {0.0, u, v};
        case 1: normal = {1, 0, 0}; return {1.0, u, v};
        case 2: normal = {0, -1, 0}; return {u, 0.0, v};
        case 3: normal = {0, 1, 0}; return {u, 1.0, v};
        case 4: normal = {0, 0, -1}; return {u, v, 0.0};
        default: normal = {0, 0, 1}; return {u, v, 1.0};
    }
}

}  // namespace

NodeSet sample_boundary(const Domain& domain, std::size_t count) {
    if (count < 3) throw std::invalid_argument("sample_boundary: need at least 3 points");
    NodeSet out;
    out.strategy = Strategy::Uniform;
    out.dim = domain.dim;
    out.points.reserve(count);
    switch (domain.kind) {
        case DomainKind::UnitDisk:
            for (std::size_t k = 0; k < count; ++k) {
                const double theta = 2.0 * kPi * static_cast<double>(k) / count;
                const Vec3 p{std::cos(theta), std::sin(theta), 0.0};
                out.points.push_back(p);
                out.normals.push_back(p);
            }
            break;
        case DomainKind::UnitSquare:
            // Midpoint rule in arc length keeps the points off the corners.
            for (std::size_t k = 0; k < count; ++k) {
                Vec3 n;
                const double s = 4.0 * (static_cast<double>(k) + 0.5) / count;
                out.points.push_back(square_boundary_point(s, n));
                out.normals.push_back(n);
            }
            break;
        case DomainKind::UnitBall:
            // Fibonacci sphere: deterministic near-uniform covering.
            for (std::size_t k = 0; k < count; ++k) {
                const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / count;
                const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
                const double phi = kPi * (std::sqrt(5.0) - 1.0) * static_cast<double>(k);
                const Vec3 p{rho * std::cos(phi), rho * std::sin(phi), z};
                out.points.push_back(p);
                out.normals.push_back(p);
            }
            break;
        case DomainKind::UnitCube: {
            const std::size_t base = count / 6;
            const std::size_t rem = count % 6;
            for (int face = 0; face < 6; ++face) {
                const std::size_t n_face = base + (static_cast<std::size_t>(face) < rem ? 1 : 0);
                const std::size_t g =
                    std::max<std::size_t>(1, static_cast<std::size_t>(
                                                 std::ceil(std::sqrt(static_cast<double>(n_face)))));
                for (std::size_t k = 0; k < n_face; ++k) {
                    const double u = (static_cast<double>(k / g) + 0.5) /
                                     static_cast<double>((n_face + g - 1) / g);
                    const double v = (static_cast<double>(k % g) + 0.5) / static_cast<double>(g);
                    Vec3 n;
                    out.points.push_back(cube_face_point(face, u, v, n));
                    out.normals.push_back(n);
                }
            }
            break;
        }
    }
    out.labels.assign(out.points.size(), NodeLabel::Boundary);
    return out;
}

std::size_t matching_boundary_count(const Domain& domain, std::size_t m) {
    // Linear spacing implied by m interior points: h = (V/m)^(1/d).
    const double h = std::pow(domain.measure / std::max<std::size_t>(m, 1),
                              1.0 / domain.dim);
    const double target = domain.dim == 2 ? domain.boundary_measure() / h
                                          : domain.boundary_measure() / (h * h);
    return std::max<std::size_t>(3, static_cast<std::size_t>(std::llround(target)));
}

NodeSet generate_uniform(const Domain& domain, int n_per_axis) {
    if (n_per_axis < 2) throw std::invalid_argument("generate_uniform: n_per_axis must be >= 2");
    Vec3 lo;
    Vec3 hi;
    domain.bounds(lo, hi);
    const int n = n_per_axis;
    const auto coord = [&](double a, double b, int k) {
        return a + (b - a) * static_cast<double>(k) / (n - 1);
    };
    NodeSet interior;
    interior.strategy = Strategy::Uniform;
    interior.dim = domain.dim;
    const int nz = domain.dim == 3 ? n : 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < nz; ++k) {
                Vec3 p{coord(lo.x, hi.x, i), coord(lo.y, hi.y, j),
                       domain.dim == 3 ? coord(lo.z, hi.z, k) : 0.0};
                if (!domain.contains(p)) continue;
                interior.points.push_back(p);
                interior.labels.push_back(NodeLabel::Interior);
                interior.normals.push_back({});
            }
    const double h = (hi.x - lo.x) / (n - 1);
    const double target = domain.dim == 2 ? domain.boundary_measure() / h
                                          : domain.boundary_measure() / (h * h);
    const std::size_t bcount =
        std::max<std::size_t>(3, static_cast<std::size_t>(std::llround(target)));
    NodeSet out = merge(interior, sample_boundary(domain, bcount));
    out.strategy = Strategy::Uniform;
    out.dim = domain.dim;
    if (!separation_ok(out, domain))
        throw numerical_error("generate_uniform: node separation below guard");
    return out;
}

NodeSet generate_halton(const Domain& domain, std::size_t m, long seed) {
    if (m < 1) throw std::invalid_argument("generate_halton: m must be >= 1");
    const unsigned long long base_offset = seed > 0 ? static_cast<unsigned long long>(seed) : 0;
    for (unsigned long long attempt = 0; attempt < 32; ++attempt) {
        NodeSet out = halton_interior_once(domain, m, seed, base_offset + attempt);
        if (separation_ok(out, domain)) return out;
    }
    throw numerical_error("generate_halton: could not reach minimum node separation");
}

NodeSet generate_pseudo_random(const Domain& domain, std::size_t m, long seed) {
    if (m < 1) throw std::invalid_argument("generate_pseudo_random: m must be >= 1");
    for (unsigned long long attempt = 0; attempt < 32; ++attempt) {
        NodeSet out = pseudo_random_once(domain, m, seed, attempt);
        if (separation_ok(out, domain)) return out;
    }
    throw numerical_error("generate_pseudo_random: could not reach minimum node separation");
}

NodeSet generate_boundary_inclined(const Domain& domain, std::size_t m) {
    if (domain.kind != DomainKind::UnitSquare && domain.kind != DomainKind::UnitCube)
        throw std::invalid_argument(
            "generate_boundary_inclined: tensor construction needs a square or cube domain, "
            "not '" + domain.name() + "'");
    if (m < 4) throw std::invalid_argument("generate_boundary_inclined: m must be >= 4");
    const int n = std::max(
        2, static_cast<int>(std::llround(std::pow(static_cast<double>(m), 1.0 / domain.dim))));
    // Chebyshev-Gauss-Lobatto abscissas mapped to [0,1], mirrored about 0.5
    // so the symmetry t_k + t_(n-1-k) = 1 holds exactly.
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int k = 0; k <= (n - 1) / 2; ++k) {
        const double v = 0.5 * (1.0 - std::cos(kPi * k / (n - 1)));
        t[static_cast<std::size_t>(k)] = v;
        t[static_cast<std::size_t>(n - 1 - k)] = 1.0 - v;
    }
    if (n % 2 == 1) t[static_cast<std::size_t>(n / 2)] = 0.5;
    t.front() = 0.0;
    t.back() = 1.0;

    NodeSet out;
    out.strategy = Strategy::BoundaryInclined;
    out.dim = domain.dim;
    const int nz = domain.dim == 3 ? n : 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < nz; ++k) {
                Vec3 p{t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)],
                       domain.dim == 3 ? t[static_cast<std::size_t>(k)] : 0.0};
                out.points.push_back(p);
                if (domain.contains(p)) {
                    out.labels.push_back(NodeLabel::Interior);
                    out.normals.push_back({});
                } else {
                    // Outward direction from the extremal coordinates; corner
                    // and edge points get the normalized diagonal.
                    Vec3 nrm{};
                    if (p.x == 0.0) nrm.x = -1.0;
                    if (p.x == 1.0) nrm.x = 1.0;
                    if (p.y == 0.0) nrm.y = -1.0;
                    if (p.y == 1.0) nrm.y = 1.0;
                    if (domain.dim == 3 && p.z == 0.0) nrm.z = -1.0;
                    if (domain.dim == 3 && p.z == 1.0) nrm.z = 1.0;
                    out.labels.push_back(NodeLabel::Boundary);
                    out.normals.push_back((1.0 / norm(nrm)) * nrm);
                }
            }
    if (!separation_ok(out, domain))
        throw numerical_error("generate_boundary_inclined: node separation below guard");
    return out;
}

NodeSet generate_nodes(const Domain& domain, Strategy strategy, std::size_t m, long seed) {
    switch (strategy) {
        case Strategy::Halton: return generate_halton(domain, m, seed);
        case Strategy::PseudoRandom: return generate_pseudo_random(domain, m, seed);
        case Strategy::BoundaryInclined: return generate_boundary_inclined(domain, m);
        case Strategy::Uniform: {
            // Invert total-count(n) ~ m for the tensor grid (exact n^2 on the
            // square, estimated elsewhere).
            int n = 2;
            if (domain.kind == DomainKind::UnitSquare) {
                n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(m))));
            } else if (domain.kind == DomainKind::UnitCube) {
                n = static_cast<int>(std::llround(std::cbrt(static_cast<double>(m))));
            } else if (domain.kind == DomainKind::UnitDisk) {
                n = static_cast<int>(std::llround(std::sqrt(4.0 * static_cast<double>(m) / kPi)));
            } else {
                n = static_cast<int>(std::llround(std::cbrt(6.0 * static_cast<double>(m) / kPi)));
            }
            return generate_uniform(domain, std::max(2, n));
        }
    }
    throw std::invalid_argument("unknown strategy");
}

NodeSet merge(const NodeSet& a, const NodeSet& b) {
    NodeSet out = a;
    out.points.insert(out.points.end(), b.points.begin(), b.points.end());
    out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
    out.normals.insert(out.normals.end(), b.normals.begin(), b.normals.end());
    for (std::size_t i = 0; i < a.points.size(); ++i)
        for (std::size_t j = 0; j < b.points.size(); ++j)
            if (distance(a.points[i], b.points[j]) == 0.0)
                throw std::invalid_argument("merge: coincident points between the two sets");
    return out;
}

void validate_nodeset(const NodeSet& nodes, const Domain& domain) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Vec3& p = nodes.points[i];
        if (nodes.labels[i] == NodeLabel::Interior) {
            if (!domain.contains(p))
                throw std::invalid_argument("interior node outside the domain");
        } else {
            if (!domain.on_boundary(p))
                throw std::invalid_argument("boundary node not on the boundary");
            if (std::abs(norm(nodes.normals[i]) - 1.0) > 1e-12)
                throw std::invalid_argument("boundary normal not unit length");
        }
    }
    if (nodes.size() >= 2 && min_pairwise_distance(nodes) <= 0.0)
        throw std::invalid_argument("node set contains duplicate points");
}

SigmaProfile sigma_statistic(const NodeSet& nodes, const Domain& domain) {
    if (nodes.size() == 0) throw std::invalid_argument("sigma_statistic: empty node set");
    const std::size_t m = nodes.size();
    SigmaProfile profile;
    profile.values.resize(m, 0.0);
    const double scale = domain.measure / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < m; ++k) sum += distance(nodes.points[i], nodes.points[k]);
        profile.values[i] = scale * sum;
    }
    double mean = 0.0;
    for (double v : profile.values) mean += v;
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (double v : profile.values) var += (v - mean) * (v - mean);
    profile.mean = mean;
    profile.spread = std::sqrt(var / static_cast<double>(m));
    return profile;
}

void write_nodes_csv(std::ostream& out, const NodeSet& nodes) {
    const bool threed = nodes.dim == 3;
    out << (threed ? "x,y,z,label,nx,ny,nz\n" : "x,y,label,nx,ny\n");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Vec3& p = nodes.points[i];
        out << format_g17(p.x) << ',' << format_g17(p.y);
        if (threed) out << ',' << format_g17(p.z);
        if (nodes.labels[i] == NodeLabel::Interior) {
            out << ",I," << (threed ? ",," : ",");
        } else {
            const Vec3& n = nodes.normals[i];
            out << ",B," << format_g17(n.x) << ',' << format_g17(n.y);
            if (threed) out << ',' << format_g17(n.z);
        }
        out << '\n';
    }
}

NodeSet read_nodes_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::invalid_argument("nodes CSV: missing header");
    NodeSet nodes;
    nodes.dim = header.rfind("x,y,z", 0) == 0 ? 3 : 2;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        cells.resize(static_cast<std::size_t>(nodes.dim) * 2 + 1);
        const int d = nodes.dim;
        Vec3 p{std::stod(cells[0]), std::stod(cells[1]), d == 3 ? std::stod(cells[2]) : 0.0};
        const std::string& label = cells[static_cast<std::size_t>(d)];
        nodes.points.push_back(p);
        if (label == "B") {
            Vec3 n{std::stod(cells[static_cast<std::size_t>(d) + 1]),
                   std::stod(cells[static_cast<std::size_t>(d) + 2]),
                   d == 3 ? std::stod(cells[static_cast<std::size_t>(d) + 3]) : 0.0};
            nodes.labels.push_back(NodeLabel::Boundary);
            nodes.normals.push_back(n);
        } else if (label == "I") {
            nodes.labels.push_back(NodeLabel::Interior);
            nodes.normals.push_back({});
        } else {
            throw std::invalid_argument("nodes CSV: bad label '" + label + "'");
        }
    }
    return nodes;
}

}  // namespace rbfqmc
