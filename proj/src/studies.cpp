#include "rbfqmc/studies.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

#include "rbfqmc/numerics.hpp"

namespace rbfqmc {

StudyMethod parse_study_method(std::string_view name) {
    if (name == "interp") return StudyMethod::Interp;
    if (name == "drm") return StudyMethod::Drm;
    if (name == "qmc") return StudyMethod::Qmc;
    if (name == "solve") return StudyMethod::Solve;
    throw std::invalid_argument("unknown study method '" + std::string(name) +
                                "' (expected interp|drm|qmc|solve)");
}

std::string study_method_name(StudyMethod m) {
    switch (m) {
        case StudyMethod::Interp: return "interp";
        case StudyMethod::Drm: return "drm";
        case StudyMethod::Qmc: return "qmc";
        case StudyMethod::Solve: return "solve";
    }
    return "?";
}

std::vector<Vec3> probe_points(const Domain& domain, std::size_t count, long offset,
                               const NodeSet* exclude, double min_distance) {
    const NodeSet raw = generate_halton(domain, count, offset);
    std::vector<Vec3> probes;
    probes.reserve(raw.size());
    for (const Vec3& p : raw.points) {
        bool keep = true;
        if (exclude)
            for (const Vec3& q : exclude->points)
                if (distance(p, q) < min_distance) {
                    keep = false;
                    break;
                }
        if (keep) probes.push_back(p);
    }
    return probes;
}

namespace {

NodeSet nodes_for_cell(const Domain& domain, Strategy strategy, std::size_t m, long seed,
                       bool need_boundary) {
    // The halton strategy ignores the seed here on purpose: study cells with
    // different seeds are identical for it (the offset stays 0).
    NodeSet nodes = strategy == Strategy::Halton ? generate_halton(domain, m, 0)
                                                 : generate_nodes(domain, strategy, m, seed);
    nodes.seed = seed;
    if (need_boundary && nodes.boundary_count() < 3)
        nodes = merge(nodes, sample_boundary(domain, matching_boundary_count(domain, m)));
    return nodes;
}

struct CellErrors {
    double rms = 0.0;
    double max = 0.0;
};

CellErrors reduce(const std::vector<double>& errors) {
    CellErrors cell;
    double sq = 0.0;
    for (double e : errors) {
        cell.max = std::max(cell.max, e);
        sq += e * e;
    }
    if (!errors.empty()) cell.rms = std::sqrt(sq / static_cast<double>(errors.size()));
    return cell;
}

}  // namespace

std::vector<StudyRecord> run_convergence(const ConvergenceConfig& config) {
    if (config.m_list.size() < 4)
        throw std::invalid_argument("run_convergence: need at least 4 M values");
    if (!std::is_sorted(config.m_list.begin(), config.m_list.end()) ||
        std::adjacent_find(config.m_list.begin(), config.m_list.end()) != config.m_list.end())
        throw std::invalid_argument("run_convergence: M list must be strictly increasing");
    if (config.seeds.empty()) throw std::invalid_argument("run_convergence: need at least 1 seed");

    const ProblemEntry& problem = lookup(config.problem);
    const Domain domain = problem.domain();
    KernelSpec kernel = config.kernel;
    kernel.dim = domain.dim;

    // Resolve the oracle up front so a bad configuration fails before any
    // cell runs.
    ScalarField oracle;
    switch (config.method) {
        case StudyMethod::Interp:
            oracle = problem.has_exact_u() ? problem.exact_u : problem.f;
            break;
        case StudyMethod::Drm:
            oracle = problem.f;
            break;
        case StudyMethod::Qmc:
            if (!problem.has_newton_potential())
                throw std::invalid_argument("run_convergence: problem '" + problem.name +
                                            "' has no Newton-potential oracle for the qmc method");
            oracle = problem.newton_potential;
            break;
        case StudyMethod::Solve:
            if (!problem.has_exact_u())
                throw std::invalid_argument("run_convergence: problem '" + problem.name +
                                            "' has no exact solution for the solve method");
            oracle = problem.exact_u;
            break;
    }

    const std::vector<Vec3> base_probes =
        probe_points(domain, config.probe_count, config.probe_offset);

    std::vector<StudyRecord> records;
    for (std::size_t m : config.m_list) {
        for (long seed : config.seeds) {
            const auto start = std::chrono::steady_clock::now();
            const bool need_boundary = config.method == StudyMethod::Solve;
            const NodeSet nodes = nodes_for_cell(domain, config.strategy, m, seed, need_boundary);

            // Keep probes clear of this cell's nodes.
            std::vector<Vec3> probes;
            probes.reserve(base_probes.size());
            for (const Vec3& p : base_probes) {
                bool keep = true;
                for (const Vec3& q : nodes.points)
                    if (distance(p, q) < 1e-9) {
                        keep = false;
                        break;
                    }
                if (keep) probes.push_back(p);
            }

            std::vector<double> errors;
            errors.reserve(probes.size());
            switch (config.method) {
                case StudyMethod::Interp: {
                    std::vector<double> values;
                    values.reserve(nodes.size());
                    for (const Vec3& p : nodes.points) values.push_back(oracle(p));
                    const InterpolationModel model = fit(nodes, values, kernel);
                    for (const Vec3& p : probes)
                        errors.push_back(std::abs(evaluate_interpolant(model, p) - oracle(p)));
                    break;
                }
                case StudyMethod::Drm: {
                    // Residual of the f approximation off the nodes: the
                    // driver of the DRM particular-solution error.
                    std::vector<double> values;
                    values.reserve(nodes.size());
                    for (const Vec3& p : nodes.points) values.push_back(problem.f(p));
                    const InterpolationModel model = fit(nodes, values, kernel);
                    for (const Vec3& p : probes)
                        errors.push_back(std::abs(evaluate_interpolant(model, p) - problem.f(p)));
                    break;
                }
                case StudyMethod::Qmc: {
                    for (const Vec3& p : probes)
                        errors.push_back(
                            std::abs(qmc_particular(problem.f, domain, nodes, p) - oracle(p)));
                    break;
                }
                case StudyMethod::Solve: {
                    const PoissonSolution solution =
                        solve_poisson(problem.f, problem.bc, domain, ParticularMethod::Drm,
                                      kernel, nodes, config.mfs, problem.point_sources);
                    for (const Vec3& p : probes)
                        errors.push_back(std::abs(solution.u(p) - oracle(p)));
                    break;
                }
            }

            const CellErrors cell = reduce(errors);
            const auto stop = std::chrono::steady_clock::now();
            StudyRecord record;
            record.method = config.method;
            record.kernel = kernel.grammar();
            record.strategy = config.strategy;
            record.d = domain.dim;
            record.M = nodes.size();
            record.seed = seed;
            record.error_rms = cell.rms;
            record.error_max = cell.max;
            record.sigma_spread = sigma_statistic(nodes, domain).spread;
            record.runtime_ms =
                std::chrono::duration<double, std::milli>(stop - start).count();
            records.push_back(std::move(record));
        }
    }
    return records;
}

ExponentFit fit_error_exponent(std::span<const StudyRecord> records, int d) {
    // Pool per M across seeds (root mean square of the per-seed RMS errors),
    // rejecting records the regression cannot use.
    std::map<std::size_t, std::pair<double, std::size_t>> pooled;
    std::size_t rejected = 0;
    for (const StudyRecord& r : records) {
        if (!(r.error_rms > 0.0) || r.M <= 2) {
            ++rejected;
            continue;
        }
        auto& [sq_sum, n] = pooled[r.M];
        sq_sum += r.error_rms * r.error_rms;
        n += 1;
    }
    if (pooled.size() < 4)
        throw std::invalid_argument(
            "fit_error_exponent: need at least 4 distinct usable M values, have " +
            std::to_string(pooled.size()) + " (" + std::to_string(rejected) +
            " records rejected for nonpositive error or M <= 2)");

    std::vector<double> xs;
    std::vector<double> ys;
    ExponentFit result;
    result.log_exponent = d - 1;
    result.M_min = pooled.begin()->first;
    result.M_max = pooled.rbegin()->first;
    result.n_points = pooled.size();
    for (const auto& [m, acc] : pooled) {
        const double err = std::sqrt(acc.first / static_cast<double>(acc.second));
        const double log_m = std::log(static_cast<double>(m));
        xs.push_back(-log_m);
        ys.push_back(std::log(err) - static_cast<double>(d - 1) * std::log(log_m));
    }

    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    result.eta = sxy / sxx;
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double fit_y = my + result.eta * (xs[i] - mx);
            ss_res += (ys[i] - fit_y) * (ys[i] - fit_y);
        }
        result.r_squared = 1.0 - ss_res / syy;
    } else {
        result.r_squared = 1.0;  // flat data, perfectly reproduced
    }
    return result;
}

double curse_reference(double kappa, int d, std::size_t M) {
    if (!(kappa > 0.0)) throw std::invalid_argument("curse_reference: kappa must be > 0");
    if (d < 1) throw std::invalid_argument("curse_reference: d must be >= 1");
    if (M < 2) throw std::invalid_argument("curse_reference: M must be >= 2");
    return std::pow(static_cast<double>(M), -kappa / static_cast<double>(d));
}

EdgeProfile edge_profile(const ScalarField& approx, const ScalarField& oracle,
                         const Domain& domain, double band_width, std::span<const Vec3> probes) {
    if (!(band_width > 0.0)) throw std::invalid_argument("edge_profile: band_width must be > 0");
    EdgeProfile profile;
    for (int attempt = 0; attempt < 2; ++attempt) {
        double sq_boundary = 0.0;
        double sq_interior = 0.0;
        std::size_t n_boundary = 0;
        std::size_t n_interior = 0;
        for (const Vec3& p : probes) {
            const double err = approx(p) - oracle(p);
            if (domain.boundary_distance(p) < band_width) {
                sq_boundary += err * err;
                ++n_boundary;
            } else {
                sq_interior += err * err;
                ++n_interior;
            }
        }
        if (n_boundary == 0 || n_interior == 0) {
            band_width *= 2.0;  // widen once, then fail
            continue;
        }
        profile.band_width = band_width;
        profile.boundary_count = n_boundary;
        profile.interior_count = n_interior;
        profile.boundary_band_error = std::sqrt(sq_boundary / static_cast<double>(n_boundary));
        profile.interior_error = std::sqrt(sq_interior / static_cast<double>(n_interior));
        if (profile.boundary_band_error == 0.0 && profile.interior_error == 0.0)
            profile.ratio = 1.0;
        else if (profile.interior_error == 0.0)
            profile.ratio = std::numeric_limits<double>::infinity();
        else
            profile.ratio = profile.boundary_band_error / profile.interior_error;
        return profile;
    }
    throw std::invalid_argument("edge_profile: a probe partition stayed empty after widening the band");
}

StrategyComparison compare_strategies(const StrategiesConfig& config) {
    if (config.strategies.empty())
        throw std::invalid_argument("compare_strategies: need at least 1 strategy");
    const ProblemEntry& problem = lookup(config.problem);
    const Domain domain = problem.domain();
    KernelSpec kernel = config.kernel;
    kernel.dim = domain.dim;
    const ScalarField reference = problem.has_exact_u() ? problem.exact_u : problem.f;
    const std::vector<Vec3> probes =
        probe_points(domain, config.probe_count, config.probe_offset);

    StrategyComparison comparison;
    for (Strategy strategy : config.strategies) {
        for (long seed : config.seeds) {
            const auto start = std::chrono::steady_clock::now();
            const NodeSet nodes = nodes_for_cell(domain, strategy, config.m, seed, false);
            std::vector<double> values;
            values.reserve(nodes.size());
            for (const Vec3& p : nodes.points) values.push_back(reference(p));
            const InterpolationModel model = fit(nodes, values, kernel);

            std::vector<double> errors;
            errors.reserve(probes.size());
            std::vector<Vec3> used;
            used.reserve(probes.size());
            for (const Vec3& p : probes) {
                bool keep = true;
                for (const Vec3& q : nodes.points)
                    if (distance(p, q) < 1e-9) {
                        keep = false;
                        break;
                    }
                if (!keep) continue;
                used.push_back(p);
                errors.push_back(std::abs(evaluate_interpolant(model, p) - reference(p)));
            }
            const CellErrors cell = reduce(errors);
            const auto stop = std::chrono::steady_clock::now();

            StudyRecord record;
            record.method = StudyMethod::Interp;
            record.kernel = kernel.grammar();
            record.strategy = strategy;
            record.d = domain.dim;
            record.M = nodes.size();
            record.seed = seed;
            record.error_rms = cell.rms;
            record.error_max = cell.max;
            record.sigma_spread = sigma_statistic(nodes, domain).spread;
            record.runtime_ms =
                std::chrono::duration<double, std::milli>(stop - start).count();
            comparison.records.push_back(std::move(record));

            if (seed == config.seeds.front()) {
                const ScalarField approx = [&model](const Vec3& p) {
                    return evaluate_interpolant(model, p);
                };
                comparison.edge[strategy] =
                    edge_profile(approx, reference, domain, config.band_width, used);
            }
        }
    }
    return comparison;
}

void write_study_csv(std::ostream& out, std::span<const StudyRecord> records,
                     bool with_runtimes) {
    out << "method,kernel,strategy,d,M,seed,error_rms,error_max,sigma_spread,runtime_ms\n";
    for (const StudyRecord& r : records) {
        out << study_method_name(r.method) << ',' << r.kernel << ',' << strategy_name(r.strategy)
            << ',' << r.d << ',' << r.M << ',' << r.seed << ',' << format_g17(r.error_rms) << ','
            << format_g17(r.error_max) << ',' << format_g17(r.sigma_spread) << ',';
        if (with_runtimes) out << format_g17(r.runtime_ms);
        out << '\n';
    }
}

void write_fit_csv(std::ostream& out, const std::string& study_id, const ExponentFit& fit) {
    out << "study_id,eta,log_exponent,r_squared,M_min,M_max\n";
    out << study_id << ',' << format_g17(fit.eta) << ',' << fit.log_exponent << ','
        << format_g17(fit.r_squared) << ',' << fit.M_min << ',' << fit.M_max << '\n';
}

}  // namespace rbfqmc
