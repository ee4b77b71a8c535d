#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rbfqmc/numerics.hpp"
#include "rbfqmc/studies.hpp"

namespace rbfqmc::cli {

namespace {

std::string join_sizes(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t x : v) {
        if (!s.empty()) s += ',';
        s += std::to_string(x);
    }
    return s;
}

std::string join_longs(const std::vector<long>& v) {
    std::string s;
    for (long x : v) {
        if (!s.empty()) s += ',';
        s += std::to_string(x);
    }
    return s;
}

template <class T>
std::vector<T> split_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            if constexpr (std::is_same_v<T, std::size_t>)
                out.push_back(static_cast<std::size_t>(std::stoull(cell)));
            else
                out.push_back(static_cast<T>(std::stol(cell)));
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("bad ") + what + " list entry '" + cell + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument(std::string("empty ") + what + " list");
    return out;
}

Vec3 parse_point(const std::string& text, int dim) {
    std::stringstream ss(text);
    std::string cell;
    std::vector<double> c;
    while (std::getline(ss, cell, ',')) c.push_back(std::stod(cell));
    if (static_cast<int>(c.size()) != dim)
        throw std::invalid_argument("point '" + text + "' does not have " + std::to_string(dim) +
                                    " coordinates");
    return {c[0], c[1], dim == 3 ? c[2] : 0.0};
}

std::string point_string(const Vec3& p, int dim) {
    std::string s = format_g17(p.x) + "," + format_g17(p.y);
    if (dim == 3) s += "," + format_g17(p.z);
    return s;
}

ScalarField named_integrand(const std::string& name) {
    if (name == "one") return [](const Vec3&) { return 1.0; };
    if (name == "x") return [](const Vec3& p) { return p.x; };
    if (name == "y") return [](const Vec3& p) { return p.y; };
    if (name == "xy") return [](const Vec3& p) { return p.x * p.y; };
    if (name == "r2") return [](const Vec3& p) { return dot(p, p); };
    if (name.rfind("problem:", 0) == 0) return lookup(name.substr(8)).f;
    throw std::invalid_argument("unknown integrand '" + name +
                                "' (expected one|x|y|xy|r2|problem:<name>)");
}

std::ofstream open_out(const std::string& path) {
    if (path.empty()) throw std::invalid_argument("missing --out path");
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    return out;
}

std::string sidecar_path(const std::string& out, const char* suffix) {
    const auto dot = out.rfind('.');
    const std::string stem = dot == std::string::npos ? out : out.substr(0, dot);
    return stem + suffix;
}

// Node set for one run: interior points by strategy, boundary points appended
// for strategies that do not produce their own.
NodeSet nodes_with_boundary(const Domain& domain, Strategy strategy, std::size_t m, long seed,
                            std::size_t boundary_count) {
    NodeSet nodes = generate_nodes(domain, strategy, m, seed);
    if (nodes.boundary_count() == 0) {
        const std::size_t l =
            boundary_count > 0 ? boundary_count : matching_boundary_count(domain, m);
        nodes = merge(nodes, sample_boundary(domain, l));
    }
    return nodes;
}

int run_nodes(const RunConfig& config) {
    const Domain domain = Domain::parse(config.domain);
    const NodeSet nodes = nodes_with_boundary(domain, parse_strategy(config.strategy), config.m,
                                              config.seed, config.boundary);
    auto out = open_out(config.out);
    write_nodes_csv(out, nodes);
    std::cout << "wrote " << config.out << ": " << nodes.interior_count() << " interior + "
              << nodes.boundary_count() << " boundary nodes\n";
    return 0;
}

int run_sigma(const RunConfig& config) {
    const Domain domain = Domain::parse(config.domain);
    const NodeSet nodes = nodes_with_boundary(domain, parse_strategy(config.strategy), config.m,
                                              config.seed, config.boundary);
    const SigmaProfile profile = sigma_statistic(nodes, domain);
    auto out = open_out(config.out);
    out << (domain.dim == 3 ? "x,y,z,label,sigma\n" : "x,y,label,sigma\n");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Vec3& p = nodes.points[i];
        out << format_g17(p.x) << ',' << format_g17(p.y);
        if (domain.dim == 3) out << ',' << format_g17(p.z);
        out << ',' << (nodes.labels[i] == NodeLabel::Interior ? 'I' : 'B') << ','
            << format_g17(profile.values[i]) << '\n';
    }
    std::cout << "sigma mean = " << format_g17(profile.mean)
              << ", spread = " << format_g17(profile.spread) << "\n";
    return 0;
}

int run_interp(const RunConfig& config) {
    const ProblemEntry& problem = lookup(config.problem);
    const Domain domain = problem.domain();
    const KernelSpec kernel = KernelSpec::parse(config.kernel, domain.dim);
    const NodeSet nodes = nodes_with_boundary(domain, parse_strategy(config.strategy), config.m,
                                              config.seed, config.boundary);
    const ScalarField reference = problem.has_exact_u() ? problem.exact_u : problem.f;
    std::vector<double> values;
    values.reserve(nodes.size());
    for (const Vec3& p : nodes.points) values.push_back(reference(p));
    const InterpolationModel model = fit(nodes, values, kernel, config.ridge);

    auto out = open_out(config.out);
    write_model_csv(out, model);
    auto meta = open_out(sidecar_path(config.out, ".meta.json"));
    write_model_metadata(meta, model);

    const std::vector<Vec3> probes = probe_points(domain, 200, 10007, &nodes);
    double sq = 0.0;
    double max_err = 0.0;
    for (const Vec3& p : probes) {
        const double e = std::abs(evaluate_interpolant(model, p) - reference(p));
        sq += e * e;
        max_err = std::max(max_err, e);
    }
    std::cout << "fit " << nodes.size() << " nodes, kernel " << kernel.grammar()
              << ": condition " << format_g17(model.condition_estimate) << ", residual "
              << format_g17(model.residual_at_nodes) << "\n"
              << "held-out probes: rms "
              << format_g17(std::sqrt(sq / static_cast<double>(probes.size()))) << ", max "
              << format_g17(max_err) << "\n";
    if (model.condition_warning) std::cout << "warning: condition estimate above 1e14\n";
    return 0;
}

int run_solve(const RunConfig& config) {
    const ProblemEntry& problem = lookup(config.problem);
    const Domain domain = problem.domain();
    const KernelSpec kernel = KernelSpec::parse(config.kernel, domain.dim);
    const NodeSet nodes = nodes_with_boundary(domain, parse_strategy(config.strategy), config.m,
                                              config.seed, config.boundary);
    const ParticularMethod method =
        config.method == "qmc" ? ParticularMethod::Qmc : ParticularMethod::Drm;
    if (config.method != "qmc" && config.method != "drm")
        throw std::invalid_argument("unknown method '" + config.method + "' (expected drm|qmc)");
    MfsConfig mfs;
    mfs.offset_factor = config.offset_factor;
    mfs.n_sources = config.n_sources;
    const PoissonSolution solution =
        solve_poisson(problem.f, problem.bc, domain, method, kernel, nodes, mfs,
                      problem.point_sources);

    auto out = open_out(config.out);
    out << (domain.dim == 3 ? "x,y,z,u,v,u_p,exact,abs_error\n" : "x,y,u,v,u_p,exact,abs_error\n");
    Vec3 lo;
    Vec3 hi;
    domain.bounds(lo, hi);
    const std::size_t g = std::max<std::size_t>(config.grid, 2);
    double max_abs_error = 0.0;
    const std::size_t gz = domain.dim == 3 ? g : 1;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j)
            for (std::size_t k = 0; k < gz; ++k) {
                const Vec3 p{
                    lo.x + (hi.x - lo.x) * static_cast<double>(i) / static_cast<double>(g - 1),
                    lo.y + (hi.y - lo.y) * static_cast<double>(j) / static_cast<double>(g - 1),
                    domain.dim == 3 ? lo.z + (hi.z - lo.z) * static_cast<double>(k) /
                                                 static_cast<double>(g - 1)
                                    : 0.0};
                if (domain.boundary_distance(p) < 0.0) continue;
                const double v = solution.mfs.evaluate(p);
                const double up = solution.particular(p);
                out << format_g17(p.x) << ',' << format_g17(p.y);
                if (domain.dim == 3) out << ',' << format_g17(p.z);
                out << ',' << format_g17(v + up) << ',' << format_g17(v) << ','
                    << format_g17(up) << ',';
                if (problem.has_exact_u()) {
                    const double exact = problem.exact_u(p);
                    const double err = std::abs(v + up - exact);
                    max_abs_error = std::max(max_abs_error, err);
                    out << format_g17(exact) << ',' << format_g17(err);
                } else {
                    out << ',';
                }
                out << '\n';
            }
    std::cout << "solved " << problem.name << " by " << config.method << "(" << kernel.grammar()
              << ") on " << nodes.interior_count() << "+" << nodes.boundary_count()
              << " nodes; mfs residual " << format_g17(solution.mfs.collocation_residual) << "\n";
    if (problem.has_exact_u())
        std::cout << "field max abs error " << format_g17(max_abs_error) << "\n";
    if (solution.mfs.residual_warning) std::cout << "warning: mfs residual above tolerance\n";
    return 0;
}

int run_qmc(const RunConfig& config) {
    const ProblemEntry& problem = lookup(config.problem);
    const Domain domain = problem.domain();
    const KernelSpec kernel = KernelSpec::parse(config.kernel, domain.dim);
    NodeSet nodes = generate_nodes(domain, parse_strategy(config.strategy), config.m, config.seed);

    std::vector<double> values;
    values.reserve(nodes.size());
    for (const Vec3& p : nodes.points) values.push_back(problem.f(p));
    const ParticularSolution drm = drm_particular(values, kernel, nodes);
    const ParticularSolution qmc = qmc_particular_solution(problem.f, domain, nodes);

    const double fd_step =
        config.fd_step > 0.0
            ? config.fd_step
            : 10.0 * std::pow(domain.measure / static_cast<double>(nodes.size()),
                              1.0 / domain.dim);
    const std::vector<Vec3> probes = probe_points(domain, 200, 10007, &nodes, 1e-3);

    auto out = open_out(config.out);
    out << (domain.dim == 3 ? "x,y,z,u_drm,u_qmc,diff,fd_laplacian_diff,skipped_nodes\n"
                            : "x,y,u_drm,u_qmc,diff,fd_laplacian_diff,skipped_nodes\n");
    const auto diff_field = [&](const Vec3& p) { return drm(p) - qmc(p); };
    for (const Vec3& p : probes) {
        std::size_t skipped = 0;
        const double u_qmc_raw = qmc_particular(problem.f, domain, nodes, p, &skipped);
        const double u_qmc = -u_qmc_raw;
        const double u_drm = drm(p);
        const double lap = fd_laplacian(diff_field, p, fd_step, domain.dim);
        out << format_g17(p.x) << ',' << format_g17(p.y);
        if (domain.dim == 3) out << ',' << format_g17(p.z);
        out << ',' << format_g17(u_drm) << ',' << format_g17(u_qmc) << ','
            << format_g17(u_drm - u_qmc) << ',' << format_g17(lap) << ',' << skipped << '\n';
    }

    std::vector<Vec3> clear;
    for (const Vec3& p : probes)
        if (domain.boundary_distance(p) > fd_step + 1e-3) clear.push_back(p);
    if (!clear.empty()) {
        const ConsistencyReport rep = consistency_diagnostic(drm, qmc, problem.f, clear, fd_step);
        std::cout << "consistency (" << rep.probes_used << " probes, fd step "
                  << format_g17(rep.fd_step) << "): diff defect "
                  << format_g17(rep.max_fd_laplacian_diff) << ", drm defect "
                  << format_g17(rep.defect_drm) << ", qmc defect "
                  << format_g17(rep.defect_qmc) << ", ratio " << format_g17(rep.ratio) << "\n";
    } else {
        std::cout << "consistency: no probes clear of the boundary at fd step "
                  << format_g17(fd_step) << "\n";
    }
    return 0;
}

int run_integrate(const RunConfig& config) {
    const Domain domain = Domain::parse(config.domain);
    const ScalarField w = named_integrand(config.integrand);
    const double baseline = integrate_qmc(w, domain, config.m, config.seed);
    if (config.via.empty()) {
        std::cout << "qmc integral of " << config.integrand << " over " << domain.name()
                  << " with m = " << config.m << ": " << format_g17(baseline) << "\n";
        if (!config.out.empty()) {
            auto out = open_out(config.out);
            out << "integrand,domain,m,seed,estimate\n"
                << config.integrand << ',' << domain.name() << ',' << config.m << ','
                << config.seed << ',' << format_g17(baseline) << '\n';
        }
        return 0;
    }
    if (config.via != "rbf")
        throw std::invalid_argument("unknown route '" + config.via + "' (expected rbf)");
    const KernelSpec kernel = KernelSpec::parse(config.kernel, domain.dim);
    const Vec3 s_i = config.si.empty() ? Vec3{0.25, 0.375, domain.dim == 3 ? 0.3125 : 0.0}
                                       : parse_point(config.si, domain.dim);
    const NodeSet nodes = nodes_with_boundary(domain, parse_strategy(config.strategy), config.m,
                                              config.seed, config.boundary);
    MfsConfig mfs;
    mfs.offset_factor = config.offset_factor;
    mfs.n_sources = config.n_sources;
    const RbfIntegration result = integrate_via_rbf(w, domain, s_i, kernel, nodes, mfs);
    std::cout << "rbf-route integral of " << config.integrand << " at s_i = ("
              << point_string(s_i, domain.dim) << "): estimate " << format_g17(result.estimate)
              << ", qmc baseline " << format_g17(result.qmc_baseline) << ", discrepancy "
              << format_g17(result.discrepancy) << ", excluded nodes " << result.excluded_nodes
              << "\n";
    if (!config.out.empty()) {
        auto out = open_out(config.out);
        out << "integrand,domain,m,si,estimate,qmc_baseline,discrepancy,excluded_nodes\n"
            << config.integrand << ',' << domain.name() << ',' << config.m << ",\""
            << point_string(s_i, domain.dim) << "\"," << format_g17(result.estimate) << ','
            << format_g17(result.qmc_baseline) << ',' << format_g17(result.discrepancy) << ','
            << result.excluded_nodes << '\n';
    }
    return 0;
}

int run_study_conv(const RunConfig& config) {
    ConvergenceConfig conv;
    conv.method = parse_study_method(config.method);
    conv.problem = config.problem;
    conv.strategy = parse_strategy(config.strategy);
    conv.kernel = KernelSpec::parse(config.kernel, lookup(config.problem).domain().dim);
    conv.m_list = config.m_list.empty() ? std::vector<std::size_t>{64, 256, 1024, 4096}
                                        : config.m_list;
    conv.seeds = config.seeds;
    conv.mfs.offset_factor = config.offset_factor;
    conv.mfs.n_sources = config.n_sources;
    const std::vector<StudyRecord> records = run_convergence(conv);

    auto out = open_out(config.out);
    write_study_csv(out, records, config.runtimes);
    const ExponentFit fit = fit_error_exponent(records, records.front().d);
    const std::string study_id = "conv-" + config.method + "-" + config.problem + "-" +
                                 strategy_name(conv.strategy);
    auto fit_out = open_out(sidecar_path(config.out, ".fit.csv"));
    write_fit_csv(fit_out, study_id, fit);

    std::cout << study_id << ": eta = " << format_g17(fit.eta)
              << " with (log M)^" << fit.log_exponent << " imposed, r^2 = "
              << format_g17(fit.r_squared) << "\n"
              << "reference exponents, reported only: linear 0.5, tps 1.0 (2D), mq unpinned\n";
    for (const StudyRecord& r : records)
        std::cout << "  M = " << r.M << " seed " << r.seed << ": rms "
                  << format_g17(r.error_rms) << " (" << format_g17(r.runtime_ms) << " ms)\n";
    return 0;
}

int run_study_edge(const RunConfig& config) {
    const ProblemEntry& problem = lookup(config.problem);
    const Domain domain = problem.domain();
    if (domain.kind != DomainKind::UnitSquare && domain.kind != DomainKind::UnitCube)
        throw std::invalid_argument("study edge compares tensor strategies; pick a square/cube problem");
    const KernelSpec kernel = KernelSpec::parse(config.kernel, domain.dim);
    const ScalarField reference = problem.has_exact_u() ? problem.exact_u : problem.f;
    const std::vector<Vec3> probes = probe_points(domain, 200, 10007);

    auto out = open_out(config.out);
    out << "strategy,kernel,d,M,band_width,boundary_band_error,interior_error,ratio\n";
    for (Strategy strategy : {Strategy::Uniform, Strategy::BoundaryInclined}) {
        const NodeSet nodes = strategy == Strategy::Uniform
                                  ? generate_nodes(domain, strategy, config.m, 0)
                                  : generate_boundary_inclined(domain, config.m);
        std::vector<double> values;
        for (const Vec3& p : nodes.points) values.push_back(reference(p));
        const InterpolationModel model = fit(nodes, values, kernel);
        const auto approx = [&model](const Vec3& p) { return evaluate_interpolant(model, p); };
        const EdgeProfile profile = edge_profile(approx, reference, domain, config.band, probes);
        out << strategy_name(strategy) << ',' << kernel.grammar() << ',' << domain.dim << ','
            << nodes.size() << ',' << format_g17(profile.band_width) << ','
            << format_g17(profile.boundary_band_error) << ','
            << format_g17(profile.interior_error) << ',' << format_g17(profile.ratio) << '\n';
        std::cout << strategy_name(strategy) << ": band/interior ratio "
                  << format_g17(profile.ratio) << " at M = " << nodes.size() << "\n";
    }
    return 0;
}

int run_study_strategies(const RunConfig& config) {
    StrategiesConfig cmp;
    cmp.problem = config.problem;
    cmp.kernel = KernelSpec::parse(config.kernel, lookup(config.problem).domain().dim);
    cmp.m = config.m;
    cmp.seeds = config.seeds;
    cmp.band_width = config.band;
    cmp.strategies = {Strategy::Uniform, Strategy::PseudoRandom, Strategy::Halton};
    if (lookup(config.problem).domain_kind == DomainKind::UnitSquare ||
        lookup(config.problem).domain_kind == DomainKind::UnitCube)
        cmp.strategies.push_back(Strategy::BoundaryInclined);
    const StrategyComparison result = compare_strategies(cmp);

    auto out = open_out(config.out);
    write_study_csv(out, result.records, config.runtimes);
    auto edge_out = open_out(sidecar_path(config.out, ".edge.csv"));
    edge_out << "strategy,band_width,boundary_band_error,interior_error,ratio\n";
    for (const auto& [strategy, profile] : result.edge)
        edge_out << strategy_name(strategy) << ',' << format_g17(profile.band_width) << ','
                 << format_g17(profile.boundary_band_error) << ','
                 << format_g17(profile.interior_error) << ',' << format_g17(profile.ratio)
                 << '\n';
    for (const StudyRecord& r : result.records)
        std::cout << strategy_name(r.strategy) << " seed " << r.seed << ": rms "
                  << format_g17(r.error_rms) << ", sigma spread "
                  << format_g17(r.sigma_spread) << "\n";
    return 0;
}

int run_list_problems() {
    for (const ProblemEntry& e : all_problems())
        std::cout << e.name << " - " << e.description << "\n";
    return 0;
}

void add_common_output(CLI::App* cmd, RunConfig& config, bool required = true) {
    auto* opt = cmd->add_option("--out", config.out, "output CSV path");
    if (required) opt->required();
}

}  // namespace

std::vector<std::string> RunConfig::to_argv() const {
    std::vector<std::string> argv;
    std::stringstream sub(subcommand);
    std::string word;
    while (sub >> word) argv.push_back(word);
    if (subcommand == "help") return {"--help"};
    if (subcommand == "list-problems") return argv;

    const auto add = [&argv](const std::string& flag, const std::string& value) {
        argv.push_back(flag);
        argv.push_back(value);
    };
    if (subcommand == "nodes" || subcommand == "sigma") {
        add("--domain", domain);
        add("--strategy", strategy);
        add("--m", std::to_string(m));
        add("--seed", std::to_string(seed));
        if (boundary > 0) add("--boundary", std::to_string(boundary));
    } else if (subcommand == "interp") {
        add("--problem", problem);
        add("--kernel", kernel);
        add("--strategy", strategy);
        add("--m", std::to_string(m));
        add("--seed", std::to_string(seed));
        if (boundary > 0) add("--boundary", std::to_string(boundary));
        add("--ridge", format_g17(ridge));
    } else if (subcommand == "solve") {
        add("--problem", problem);
        add("--method", method);
        add("--kernel", kernel);
        add("--strategy", strategy);
        add("--m", std::to_string(m));
        add("--seed", std::to_string(seed));
        if (boundary > 0) add("--boundary", std::to_string(boundary));
        add("--offset", format_g17(offset_factor));
        if (n_sources > 0) add("--sources", std::to_string(n_sources));
        add("--grid", std::to_string(grid));
    } else if (subcommand == "qmc") {
        add("--problem", problem);
        add("--kernel", kernel);
        add("--strategy", strategy);
        add("--m", std::to_string(m));
        add("--seed", std::to_string(seed));
        if (fd_step > 0) add("--fd-step", format_g17(fd_step));
    } else if (subcommand == "integrate") {
        add("--domain", domain);
        add("--w", integrand);
        add("--m", std::to_string(m));
        add("--seed", std::to_string(seed));
        if (!via.empty()) {
            add("--via", via);
            add("--kernel", kernel);
            if (!si.empty()) add("--si", si);
        }
    } else if (subcommand == "study conv") {
        add("--method", method);
        add("--problem", problem);
        add("--kernel", kernel);
        add("--strategy", strategy);
        add("--m", join_sizes(m_list));
        add("--seeds", join_longs(seeds));
        if (runtimes) argv.push_back("--runtimes");
    } else if (subcommand == "study edge") {
        add("--problem", problem);
        add("--kernel", kernel);
        add("--m", std::to_string(m));
        add("--band", format_g17(band));
    } else if (subcommand == "study strategies") {
        add("--problem", problem);
        add("--kernel", kernel);
        add("--m", std::to_string(m));
        add("--seeds", join_longs(seeds));
        add("--band", format_g17(band));
        if (runtimes) argv.push_back("--runtimes");
    }
    if (!out.empty()) add("--out", out);
    return argv;
}

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig config;
    std::string m_list_text;
    std::string seeds_text;

    CLI::App app{"meshless laboratory: RBF interpolation, DRM/QMC particular solutions, "
                 "MFS Poisson solves, node-placement and convergence studies"};
    app.require_subcommand(1);

    auto* nodes = app.add_subcommand("nodes", "generate a node set and write it as CSV");
    nodes->add_option("--domain", config.domain, "square|cube|disk|ball")->capture_default_str();
    nodes->add_option("--strategy", config.strategy,
                      "uniform|pseudo-random|halton|boundary-inclined")
        ->capture_default_str();
    nodes->add_option("--m", config.m, "interior node count")->capture_default_str();
    nodes->add_option("--seed", config.seed, "sequence offset / RNG seed")->capture_default_str();
    nodes->add_option("--boundary", config.boundary,
                      "boundary point count (0: match interior density)")
        ->capture_default_str();
    add_common_output(nodes, config);

    auto* sigma = app.add_subcommand("sigma", "per-node sigma distribution statistic");
    sigma->add_option("--domain", config.domain, "square|cube|disk|ball")->capture_default_str();
    sigma->add_option("--strategy", config.strategy,
                      "uniform|pseudo-random|halton|boundary-inclined")
        ->capture_default_str();
    sigma->add_option("--m", config.m, "interior node count")->capture_default_str();
    sigma->add_option("--seed", config.seed, "sequence offset / RNG seed")->capture_default_str();
    sigma->add_option("--boundary", config.boundary,
                      "boundary point count (0: match interior density)")
        ->capture_default_str();
    add_common_output(sigma, config);

    auto* interp = app.add_subcommand("interp", "fit an RBF interpolant to a registry problem");
    interp->add_option("--problem", config.problem, "registry problem name")->required();
    interp->add_option("--kernel", config.kernel,
                       "linear|phs:<N>|tps|tps-mod|mq:<c>|gauss:<c>|gsrbf:<m>[+pre:<c>]")
        ->capture_default_str();
    interp->add_option("--strategy", config.strategy, "node strategy")->capture_default_str();
    interp->add_option("--m", config.m, "interior node count")->capture_default_str();
    interp->add_option("--seed", config.seed, "sequence offset / RNG seed")->capture_default_str();
    interp->add_option("--boundary", config.boundary, "boundary point count (0: matched)")
        ->capture_default_str();
    interp->add_option("--ridge", config.ridge, "diagonal regularization")->capture_default_str();
    add_common_output(interp, config);

    auto* solve = app.add_subcommand("solve", "solve a Poisson problem and dump the field");
    solve->add_option("--problem", config.problem, "registry problem name")->required();
    solve->add_option("--method", config.method, "drm|qmc particular solution")
        ->capture_default_str();
    solve->add_option("--kernel", config.kernel, "kernel grammar (DRM route)")
        ->capture_default_str();
    solve->add_option("--strategy", config.strategy, "node strategy")->capture_default_str();
    solve->add_option("--m", config.m, "interior node count")->capture_default_str();
    solve->add_option("--seed", config.seed, "sequence offset / RNG seed")->capture_default_str();
    solve->add_option("--boundary", config.boundary, "boundary collocation count (0: matched)")
        ->capture_default_str();
    solve->add_option("--offset", config.offset_factor, "MFS source inflation factor")
        ->capture_default_str();
    solve->add_option("--sources", config.n_sources, "MFS source count (0: half collocation)")
        ->capture_default_str();
    solve->add_option("--grid", config.grid, "evaluation grid points per axis")
        ->capture_default_str();
    add_common_output(solve, config);

    auto* qmc = app.add_subcommand(
        "qmc", "DRM vs QMC particular solutions at held-out probes, with the harmonicity check");
    qmc->add_option("--problem", config.problem, "registry problem name")->required();
    qmc->add_option("--kernel", config.kernel, "kernel grammar (DRM side)")
        ->capture_default_str();
    qmc->add_option("--strategy", config.strategy, "node strategy")->capture_default_str();
    qmc->add_option("--m", config.m, "node count")->capture_default_str();
    qmc->add_option("--seed", config.seed, "sequence offset / RNG seed")->capture_default_str();
    qmc->add_option("--fd-step", config.fd_step,
                    "finite-difference step (0: 10 mean node spacings)")
        ->capture_default_str();
    add_common_output(qmc, config);

    auto* integrate = app.add_subcommand("integrate", "integrate w over a domain by QMC, "
                                                      "optionally also through the RBF route");
    integrate->add_option("--domain", config.domain, "square|cube|disk|ball")
        ->capture_default_str();
    integrate->add_option("--w", config.integrand, "one|x|y|xy|r2|problem:<name>")
        ->capture_default_str();
    integrate->add_option("--m", config.m, "node count")->capture_default_str();
    integrate->add_option("--seed", config.seed, "sequence offset")->capture_default_str();
    integrate->add_option("--via", config.via, "rbf: also solve the zero-Dirichlet Poisson route");
    integrate->add_option("--kernel", config.kernel, "kernel grammar (rbf route)")
        ->capture_default_str();
    integrate->add_option("--si", config.si, "response point x,y[,z] (rbf route)");
    add_common_output(integrate, config, false);

    auto* study = app.add_subcommand("study", "reproducible studies");
    study->require_subcommand(1);
    auto* conv = study->add_subcommand("conv", "convergence sweep and error-exponent fit");
    conv->add_option("--method", config.method, "interp|drm|qmc|solve")->capture_default_str();
    conv->add_option("--problem", config.problem, "registry problem name")->required();
    conv->add_option("--kernel", config.kernel, "kernel grammar")->capture_default_str();
    conv->add_option("--strategy", config.strategy, "node strategy")->capture_default_str();
    conv->add_option("--m", m_list_text, "comma list of node counts (default 64,256,1024,4096)");
    conv->add_option("--seeds", seeds_text, "comma list of seeds (default 0)");
    conv->add_flag("--runtimes", config.runtimes, "include runtimes in the CSV (not reproducible)");
    add_common_output(conv, config);

    auto* edge = study->add_subcommand("edge", "boundary-band error profile, uniform vs "
                                               "boundary-inclined nodes");
    edge->add_option("--problem", config.problem, "registry problem name")->required();
    edge->add_option("--kernel", config.kernel, "kernel grammar")->capture_default_str();
    edge->add_option("--m", config.m, "node count")->capture_default_str();
    edge->add_option("--band", config.band, "boundary band width")->capture_default_str();
    add_common_output(edge, config);

    auto* strategies = study->add_subcommand("strategies", "errors, sigma spreads and edge "
                                                           "ratios per node strategy");
    strategies->add_option("--problem", config.problem, "registry problem name")->required();
    strategies->add_option("--kernel", config.kernel, "kernel grammar")->capture_default_str();
    strategies->add_option("--m", config.m, "node count")->capture_default_str();
    strategies->add_option("--seeds", seeds_text, "comma list of seeds (default 0)");
    strategies->add_option("--band", config.band, "boundary band width")->capture_default_str();
    strategies->add_flag("--runtimes", config.runtimes,
                         "include runtimes in the CSV (not reproducible)");
    add_common_output(strategies, config);

    app.add_subcommand("list-problems", "list the registered problems");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        config.subcommand = "help";
        return config;
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(std::string("argument error: ") + e.what());
    }

    if (app.got_subcommand("nodes")) config.subcommand = "nodes";
    if (app.got_subcommand("sigma")) config.subcommand = "sigma";
    if (app.got_subcommand("interp")) config.subcommand = "interp";
    if (app.got_subcommand("solve")) config.subcommand = "solve";
    if (app.got_subcommand("qmc")) config.subcommand = "qmc";
    if (app.got_subcommand("integrate")) config.subcommand = "integrate";
    if (app.got_subcommand("list-problems")) config.subcommand = "list-problems";
    if (app.got_subcommand("study")) {
        if (study->got_subcommand("conv")) config.subcommand = "study conv";
        if (study->got_subcommand("edge")) config.subcommand = "study edge";
        if (study->got_subcommand("strategies")) config.subcommand = "study strategies";
    }
    if (!m_list_text.empty()) config.m_list = split_list<std::size_t>(m_list_text, "M");
    if (!seeds_text.empty()) config.seeds = split_list<long>(seeds_text, "seed");
    return config;
}

int execute(const RunConfig& config) {
    if (config.subcommand == "help") return 0;
    if (config.subcommand == "nodes") return run_nodes(config);
    if (config.subcommand == "sigma") return run_sigma(config);
    if (config.subcommand == "interp") return run_interp(config);
    if (config.subcommand == "solve") return run_solve(config);
    if (config.subcommand == "qmc") return run_qmc(config);
    if (config.subcommand == "integrate") return run_integrate(config);
    if (config.subcommand == "study conv") return run_study_conv(config);
    if (config.subcommand == "study edge") return run_study_edge(config);
    if (config.subcommand == "study strategies") return run_study_strategies(config);
    if (config.subcommand == "list-problems") return run_list_problems();
    throw std::invalid_argument("unknown subcommand '" + config.subcommand + "'");
}

int dispatch(const std::vector<std::string>& args) {
    try {
        return execute(parse_args(args));
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace rbfqmc::cli
