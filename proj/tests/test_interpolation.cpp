#include <algorithm>
#include <cmath>
#include <doctest.h>
#include <numeric>
#include <random>
#include <sstream>

#include "rbfqmc/interpolation.hpp"

using namespace rbfqmc;

namespace {

NodeSet interior_set(std::initializer_list<Vec3> pts) {
    NodeSet n;
    n.dim = 2;
    for (const Vec3& p : pts) {
        n.points.push_back(p);
        n.labels.push_back(NodeLabel::Interior);
        n.normals.push_back({});
    }
    return n;
}

}  // namespace

TEST_CASE("matrix assembly") {
    const KernelSpec linear = KernelSpec::parse("linear");
    const NodeSet two = interior_set({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}});
    const Eigen::MatrixXd a = assemble_matrix(two, linear);
    CHECK(a(0, 0) == 0.0);
    CHECK(a(0, 1) == 1.0);
    CHECK(a(1, 0) == 1.0);
    CHECK(a(1, 1) == 0.0);

    const KernelSpec mq = KernelSpec::parse("mq:1");
    const NodeSet collinear =
        interior_set({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}});
    const Eigen::MatrixXd b = assemble_matrix(collinear, mq);
    CHECK(b(0, 0) == 1.0);
    CHECK(b(0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(b(0, 2) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    CHECK((b - b.transpose()).cwiseAbs().maxCoeff() == 0.0);  // bitwise symmetric

    const NodeSet dup = interior_set({{0.25, 0.5, 0.0}, {0.25, 0.5, 0.0}});
    CHECK_THROWS_AS(assemble_matrix(dup, linear), std::invalid_argument);
}

TEST_CASE("fit solves the collocation system") {
    const Domain square = Domain::parse("square");
    const KernelSpec tps = KernelSpec::parse("tps");
    const NodeSet nodes = generate_halton(square, 50, 0);

    SUBCASE("zero data gives zero coefficients") {
        const std::vector<double> zero(nodes.size(), 0.0);
        const InterpolationModel model = fit(nodes, zero, tps);
        CHECK(model.alpha.cwiseAbs().maxCoeff() == 0.0);
        CHECK(evaluate_interpolant(model, {0.4, 0.6, 0.0}) == 0.0);
    }

    SUBCASE("exactly representable data recovers the unit coefficient") {
        const NodeSet small = generate_halton(square, 20, 3);
        const KernelSpec mq = KernelSpec::parse("mq:1");
        std::vector<double> values;
        for (const Vec3& p : small.points)
            values.push_back(eval_phi(mq, distance(p, small.points[0])));
        const InterpolationModel model = fit(small, values, mq);
        CHECK(std::abs(model.alpha(0) - 1.0) <= 1e-10);
        for (Eigen::Index k = 1; k < model.alpha.size(); ++k)
            CHECK(std::abs(model.alpha(k)) <= 1e-10);
    }

    SUBCASE("random data residual stays below the acceptance band") {
        std::mt19937 rng(42);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<double> values(nodes.size());
        for (double& v : values) v = dist(rng);
        const InterpolationModel model = fit(nodes, values, tps);
        CHECK(model.residual_at_nodes <= 1e-8 * (1.0 + 1.0));
        for (std::size_t j = 0; j < nodes.size(); ++j)
            CHECK(std::abs(evaluate_interpolant(model, nodes.points[j]) - values[j]) <=
                  10 * model.residual_at_nodes + 1e-12);
        CHECK(model.condition_estimate > 1.0);
    }

    SUBCASE("length mismatch is rejected") {
        const std::vector<double> short_values(3, 1.0);
        CHECK_THROWS_AS(fit(nodes, short_values, tps), std::invalid_argument);
    }
}

TEST_CASE("singular system raises") {
    // A gaussian with an enormous width makes every entry 1 to machine
    // precision: numerically rank one.
    const KernelSpec flat = KernelSpec::parse("gauss:1e12");
    const NodeSet nodes = interior_set({{0.1, 0.1, 0.0}, {0.2, 0.3, 0.0}, {0.8, 0.5, 0.0}});
    const std::vector<double> values{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(fit(nodes, values, flat), singular_system_error);
}

TEST_CASE("interpolation reproduces smooth functions") {
    const Domain square = Domain::parse("square");
    const KernelSpec tps = KernelSpec::parse("tps");
    const NodeSet nodes = generate_halton(square, 100, 0);
    std::vector<double> values;
    for (const Vec3& p : nodes.points) values.push_back(p.x + p.y);
    const InterpolationModel model = fit(nodes, values, tps);
    // Random interior probes clear of the boundary band, where plain TPS
    // (no polynomial tail) loses accuracy; that band is studied separately.
    const NodeSet draw = generate_pseudo_random(square, 64, 2025);
    std::size_t used = 0;
    for (const Vec3& p : draw.points) {
        if (used == 5) break;
        if (square.boundary_distance(p) < 0.2) continue;
        ++used;
        CHECK(std::abs(evaluate_interpolant(model, p) - (p.x + p.y)) <= 1e-3);
    }
    CHECK(used == 5);
}

TEST_CASE("interpolation error decreases with node count") {
    const Domain square = Domain::parse("square");
    const KernelSpec tps = KernelSpec::parse("tps");
    const auto reference = [](const Vec3& p) { return std::sin(2.0 * p.x) * std::cos(p.y); };
    const NodeSet probes = generate_halton(square, 50, 10007);
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t m : {std::size_t{25}, std::size_t{100}, std::size_t{400}}) {
        const NodeSet nodes = generate_halton(square, m, 0);
        std::vector<double> values;
        for (const Vec3& p : nodes.points) values.push_back(reference(p));
        const InterpolationModel model = fit(nodes, values, tps);
        const ErrorStats stats = interpolation_error(model, reference, probes);
        CHECK(stats.rms < previous);
        previous = stats.rms;
    }
}

TEST_CASE("permutation invariance") {
    const Domain square = Domain::parse("square");
    const KernelSpec linear = KernelSpec::parse("linear");
    const NodeSet nodes = generate_halton(square, 24, 1);
    std::vector<double> values;
    for (const Vec3& p : nodes.points) values.push_back(std::exp(-dot(p, p)));
    const InterpolationModel model = fit(nodes, values, linear);

    std::vector<std::size_t> perm(nodes.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::mt19937 rng(7);
    std::shuffle(perm.begin(), perm.end(), rng);

    NodeSet shuffled = nodes;
    std::vector<double> shuffled_values(values.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        shuffled.points[i] = nodes.points[perm[i]];
        shuffled_values[i] = values[perm[i]];
    }
    const InterpolationModel model2 = fit(shuffled, shuffled_values, linear);
    for (std::size_t i = 0; i < perm.size(); ++i)
        CHECK(std::abs(model2.alpha(static_cast<Eigen::Index>(i)) -
                       model.alpha(static_cast<Eigen::Index>(perm[i]))) <= 1e-12);
    const Vec3 probe{0.37, 0.61, 0.0};
    CHECK(std::abs(evaluate_interpolant(model2, probe) - evaluate_interpolant(model, probe)) <=
          1e-12);
}

TEST_CASE("mq conditioning grows with the shape parameter") {
    // Fixed 64-node Halton set on the disk: all four shapes stay above the
    // singular-pivot threshold while the condition estimate climbs.
    const Domain disk = Domain::parse("disk");
    const NodeSet nodes = generate_halton(disk, 64, 0);
    std::vector<double> values(nodes.size(), 1.0);
    double previous = 0.0;
    for (double c : {0.1, 0.5, 1.0, 2.0}) {
        KernelSpec mq = KernelSpec::parse("mq:1");
        mq.shape_c = c;
        const InterpolationModel model = fit(nodes, values, mq);
        CHECK(model.condition_estimate >= previous);
        previous = model.condition_estimate;
        if (c == 0.1) CHECK(!model.condition_warning);
        if (c == 2.0) CHECK(model.condition_warning);
    }
}

TEST_CASE("ridge parameter perturbs the solve") {
    const Domain square = Domain::parse("square");
    const KernelSpec mq = KernelSpec::parse("mq:1");
    const NodeSet nodes = generate_halton(square, 32, 2);
    std::vector<double> values;
    for (const Vec3& p : nodes.points) values.push_back(p.x);
    const InterpolationModel plain = fit(nodes, values, mq);
    const InterpolationModel ridged = fit(nodes, values, mq, 1e-6);
    CHECK((plain.alpha - ridged.alpha).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("model dump CSV and metadata") {
    const Domain square = Domain::parse("square");
    const KernelSpec tps = KernelSpec::parse("tps");
    const NodeSet nodes = generate_halton(square, 8, 0);
    std::vector<double> values(nodes.size(), 2.0);
    const InterpolationModel model = fit(nodes, values, tps);
    std::ostringstream csv;
    write_model_csv(csv, model);
    const std::string text = csv.str();
    CHECK(text.rfind("index,x,y,alpha\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 9);
    std::ostringstream meta;
    write_model_metadata(meta, model);
    const std::string info = meta.str();
    CHECK(info.find("\"kernel\":\"tps\"") != std::string::npos);
    CHECK(info.find("\"residual\":") != std::string::npos);
}
