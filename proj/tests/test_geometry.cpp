#include <algorithm>
#include <cmath>
#include <doctest.h>
#include <sstream>

#include "rbfqmc/geometry.hpp"

using namespace rbfqmc;

TEST_CASE("domain measures and membership") {
    const double pi = 3.14159265358979323846;
    CHECK(Domain::parse("square").measure == 1.0);
    CHECK(Domain::parse("cube").measure == 1.0);
    CHECK(Domain::parse("disk").measure == doctest::Approx(pi).epsilon(1e-15));
    CHECK(Domain::parse("ball").measure == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-15));
    for (const char* name : {"square", "cube", "disk", "ball"}) {
        const Domain d = Domain::parse(name);
        CHECK(d.contains(d.centroid()));
        const Vec3 far = d.centroid() + Vec3{2.0 * d.diameter(), 0.0, 0.0};
        CHECK(!d.contains(far));
    }
    CHECK_THROWS_AS(Domain::parse("triangle"), std::invalid_argument);
}

TEST_CASE("uniform grid nodes") {
    const Domain square = Domain::parse("square");
    const NodeSet n3 = generate_uniform(square, 3);
    REQUIRE(n3.interior_count() == 1);
    std::size_t idx = 0;
    while (n3.labels[idx] != NodeLabel::Interior) ++idx;
    CHECK(n3.points[idx].x == 0.5);
    CHECK(n3.points[idx].y == 0.5);

    CHECK(generate_uniform(square, 5).interior_count() == 9);

    const Domain disk = Domain::parse("disk");
    const NodeSet d5 = generate_uniform(disk, 5);
    for (std::size_t i = 0; i < d5.size(); ++i)
        if (d5.labels[i] == NodeLabel::Interior) CHECK(norm(d5.points[i]) < 1.0);

    CHECK_THROWS_AS(generate_uniform(square, 1), std::invalid_argument);
    validate_nodeset(n3, square);
    validate_nodeset(d5, disk);
}

TEST_CASE("halton radical inverse and nodes") {
    CHECK(halton_radical_inverse(2, 1) == 0.5);
    CHECK(halton_radical_inverse(3, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(halton_radical_inverse(3, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    const Domain square = Domain::parse("square");
    const NodeSet one = generate_halton(square, 1, 0);
    REQUIRE(one.size() == 1);
    CHECK(one.points[0].x == 0.5);
    CHECK(one.points[0].y == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const NodeSet three = generate_halton(square, 3, 0);
    CHECK(three.points[1].x == 0.25);
    CHECK(three.points[1].y == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(min_pairwise_distance(three) > 0.0);

    const Domain ball = Domain::parse("ball");
    const NodeSet b = generate_halton(ball, 64, 0);
    CHECK(b.size() == 64);
    validate_nodeset(b, ball);
    CHECK_THROWS_AS(generate_halton(square, 0, 0), std::invalid_argument);
}

TEST_CASE("pseudo-random nodes are seed deterministic") {
    const Domain disk = Domain::parse("disk");
    const NodeSet a = generate_pseudo_random(disk, 50, 7);
    const NodeSet b = generate_pseudo_random(disk, 50, 7);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.points[i].x == b.points[i].x);
        CHECK(a.points[i].y == b.points[i].y);
    }
    const NodeSet c = generate_pseudo_random(disk, 50, 8);
    bool identical = true;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.points[i].x != c.points[i].x || a.points[i].y != c.points[i].y) identical = false;
    CHECK(!identical);
    validate_nodeset(a, disk);
}

TEST_CASE("boundary-inclined abscissas") {
    const Domain square = Domain::parse("square");
    const NodeSet n9 = generate_boundary_inclined(square, 9);  // 3 per axis
    std::vector<double> xs;
    for (const Vec3& p : n9.points)
        if (p.y == 0.0) xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    REQUIRE(xs.size() == 3);
    CHECK(xs[0] == 0.0);
    CHECK(xs[1] == 0.5);
    CHECK(xs[2] == 1.0);

    const NodeSet n25 = generate_boundary_inclined(square, 25);  // 5 per axis
    std::vector<double> axis;
    for (const Vec3& p : n25.points)
        if (p.y == 0.0) axis.push_back(p.x);
    std::sort(axis.begin(), axis.end());
    REQUIRE(axis.size() == 5);
    CHECK(axis[1] == doctest::Approx((1.0 - std::cos(3.14159265358979323846 / 4.0)) / 2.0)
                         .epsilon(1e-14));
    // symmetric about 0.5, clustered toward the endpoints
    for (std::size_t i = 0; i < axis.size(); ++i)
        CHECK(axis[i] == doctest::Approx(1.0 - axis[axis.size() - 1 - i]).epsilon(1e-14));
    CHECK(axis[1] - axis[0] < axis[2] - axis[1]);

    CHECK_THROWS_AS(generate_boundary_inclined(Domain::parse("disk"), 16), std::invalid_argument);
    CHECK_THROWS_AS(generate_boundary_inclined(square, 3), std::invalid_argument);
    validate_nodeset(n25, square);
}

TEST_CASE("boundary sampling") {
    const Domain disk = Domain::parse("disk");
    const NodeSet circle = sample_boundary(disk, 4);
    REQUIRE(circle.size() == 4);
    CHECK(circle.points[0].x == 1.0);
    CHECK(circle.points[0].y == 0.0);
    CHECK(circle.normals[0].x == 1.0);
    CHECK(circle.points[1].x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(circle.points[1].y == 1.0);

    const Domain square = Domain::parse("square");
    const NodeSet edges = sample_boundary(square, 4);
    REQUIRE(edges.size() == 4);
    CHECK(edges.points[0].x == 0.5);
    CHECK(edges.points[0].y == 0.0);
    CHECK(edges.points[1].x == 1.0);
    CHECK(edges.points[1].y == 0.5);
    for (const Vec3& n : edges.normals) CHECK(norm(n) == doctest::Approx(1.0).epsilon(1e-15));

    for (const char* name : {"cube", "ball"}) {
        const Domain d = Domain::parse(name);
        const NodeSet b = sample_boundary(d, 100);
        CHECK(b.size() == 100);
        validate_nodeset(b, d);
    }
    CHECK_THROWS_AS(sample_boundary(disk, 2), std::invalid_argument);
}

TEST_CASE("sigma statistic") {
    const Domain square = Domain::parse("square");
    NodeSet two;
    two.dim = 2;
    two.points = {{0.0, 0.0, 0.0}, {1.0, 1.0, 0.0}};
    two.labels = {NodeLabel::Interior, NodeLabel::Interior};
    two.normals = {{}, {}};
    const SigmaProfile profile = sigma_statistic(two, square);
    CHECK(std::abs(profile.values[0] - 0.5 * std::sqrt(2.0)) <= 1e-12);
    CHECK(profile.spread == 0.0);  // both values equal by symmetry

    NodeSet single;
    single.dim = 2;
    single.points = {{0.3, 0.4, 0.0}};
    single.labels = {NodeLabel::Interior};
    single.normals = {{}};
    CHECK(sigma_statistic(single, square).values[0] == 0.0);

    // Corner-adjacent sigma exceeds the central sigma on a uniform grid.
    const NodeSet grid = generate_uniform(square, 7);
    const SigmaProfile gp = sigma_statistic(grid, square);
    std::size_t corner = 0;
    std::size_t center = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid.labels[i] != NodeLabel::Interior) continue;
        if (distance(grid.points[i], {1.0 / 6, 1.0 / 6, 0.0}) < 1e-12) corner = i;
        if (distance(grid.points[i], {0.5, 0.5, 0.0}) < 1e-12) center = i;
    }
    CHECK(gp.values[corner] > gp.values[center]);

    // Translation invariance: sigma unchanged when all nodes shift together.
    NodeSet shifted = two;
    for (Vec3& p : shifted.points) p = p + Vec3{0.25, -0.125, 0.0};
    const SigmaProfile sp = sigma_statistic(shifted, square);
    for (std::size_t i = 0; i < sp.values.size(); ++i)
        CHECK(sp.values[i] == profile.values[i]);
}

TEST_CASE("halton sigma spread below pseudo-random at fixed seeds") {
    const Domain square = Domain::parse("square");
    for (std::size_t m : {std::size_t{64}, std::size_t{256}}) {
        const double halton = sigma_statistic(generate_halton(square, m, 0), square).spread;
        const double random =
            sigma_statistic(generate_pseudo_random(square, m, 1), square).spread;
        CAPTURE(m);
        CHECK(halton < random);
    }
}

TEST_CASE("nodes CSV round trip is bit exact") {
    const Domain disk = Domain::parse("disk");
    const NodeSet nodes = merge(generate_halton(disk, 37, 5), sample_boundary(disk, 11));
    std::ostringstream out;
    write_nodes_csv(out, nodes);
    std::istringstream in(out.str());
    const NodeSet back = read_nodes_csv(in);
    REQUIRE(back.size() == nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        CHECK(back.points[i].x == nodes.points[i].x);
        CHECK(back.points[i].y == nodes.points[i].y);
        CHECK(back.labels[i] == nodes.labels[i]);
        CHECK(back.normals[i].x == nodes.normals[i].x);
        CHECK(back.normals[i].y == nodes.normals[i].y);
    }

    // 3D schema carries z and nz.
    const Domain ball = Domain::parse("ball");
    const NodeSet nodes3 = merge(generate_halton(ball, 9, 0), sample_boundary(ball, 7));
    std::ostringstream out3;
    write_nodes_csv(out3, nodes3);
    std::istringstream in3(out3.str());
    const NodeSet back3 = read_nodes_csv(in3);
    REQUIRE(back3.dim == 3);
    for (std::size_t i = 0; i < nodes3.size(); ++i) {
        CHECK(back3.points[i].z == nodes3.points[i].z);
        CHECK(back3.normals[i].z == nodes3.normals[i].z);
    }
}

TEST_CASE("merge rejects coincident points") {
    const Domain square = Domain::parse("square");
    NodeSet a = generate_halton(square, 5, 0);
    CHECK_THROWS_AS(merge(a, a), std::invalid_argument);
}

TEST_CASE("all strategies on all domains satisfy the node invariants") {
    for (const char* name : {"square", "cube", "disk", "ball"}) {
        const Domain domain = Domain::parse(name);
        for (Strategy strategy : {Strategy::Uniform, Strategy::PseudoRandom, Strategy::Halton,
                                  Strategy::BoundaryInclined}) {
            if (strategy == Strategy::BoundaryInclined &&
                (domain.kind == DomainKind::UnitDisk || domain.kind == DomainKind::UnitBall))
                continue;
            CAPTURE(name);
            CAPTURE(strategy_name(strategy));
            const NodeSet nodes = generate_nodes(domain, strategy, 60, 3);
            CHECK_NOTHROW(validate_nodeset(nodes, domain));
            CHECK(min_pairwise_distance(nodes) > 1e-10 * domain.diameter());
        }
    }
}

TEST_CASE("boundary-inclined gaps grow from the edge to the center") {
    const Domain square = Domain::parse("square");
    const NodeSet nodes = generate_boundary_inclined(square, 81);  // 9 per axis
    std::vector<double> axis;
    for (const Vec3& p : nodes.points)
        if (p.y == 0.0) axis.push_back(p.x);
    std::sort(axis.begin(), axis.end());
    REQUIRE(axis.size() == 9);
    for (std::size_t i = 0; i + 2 < axis.size() / 2 + 1; ++i)
        CHECK(axis[i + 1] - axis[i] < axis[i + 2] - axis[i + 1]);
}
