#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rbfqmc/registry.hpp"

namespace rbfqmc {

enum class StudyMethod { Interp, Drm, Qmc, Solve };

StudyMethod parse_study_method(std::string_view name);
std::string study_method_name(StudyMethod m);

// One (method, kernel, strategy, M, seed) cell of a convergence sweep.
struct StudyRecord {
    StudyMethod method = StudyMethod::Interp;
    std::string kernel;
    Strategy strategy = Strategy::Halton;
    int d = 2;
    std::size_t M = 0;
    long seed = 0;
    double error_rms = 0.0;
    double error_max = 0.0;
    double sigma_spread = 0.0;
    double runtime_ms = 0.0;
};

struct ConvergenceConfig {
    StudyMethod method = StudyMethod::Interp;
    KernelSpec kernel;
    Strategy strategy = Strategy::Halton;
    std::string problem;
    std::vector<std::size_t> m_list;   // strictly increasing, length >= 4
    std::vector<long> seeds = {0};
    MfsConfig mfs;
    std::size_t probe_count = 200;
    long probe_offset = 10007;
};

// One record per (M, seed); errors are measured against the registered oracle
// at held-out probe points. The oracle per method: interp and solve use the
// exact solution (interp falls back to f), qmc uses the analytic Newton
// potential, drm measures the residual of the f approximation off the nodes.
// A missing oracle is a configuration error raised before any cell runs.
// The halton strategy is deterministic: the seed is recorded but the sequence
// offset stays fixed, so repeated seeds yield identical cells.
std::vector<StudyRecord> run_convergence(const ConvergenceConfig& config);

struct ExponentFit {
    double eta = 0.0;
    int log_exponent = 1;     // imposed (log M)^(d-1) power, not fitted
    double r_squared = 0.0;
    std::size_t M_min = 0;
    std::size_t M_max = 0;
    std::size_t n_points = 0;
};

// Least-squares regression of log(err) - (d-1) log log M against -log M;
// the slope is eta. Records with nonpositive error or M <= 2 are rejected;
// at least 4 distinct M values must survive.
ExponentFit fit_error_exponent(std::span<const StudyRecord> records, int d);

// Classical-method error model M^(-kappa/d) with kappa the accuracy order.
double curse_reference(double kappa, int d, std::size_t M);

struct EdgeProfile {
    double boundary_band_error = 0.0;  // RMS within band_width of the boundary
    double interior_error = 0.0;       // RMS elsewhere
    double ratio = 1.0;                // boundary / interior (1 when both are 0)
    double band_width = 0.0;
    std::size_t boundary_count = 0;
    std::size_t interior_count = 0;
};

// Probe errors split by distance to the boundary. An empty partition widens
// the band once (x2) before failing.
EdgeProfile edge_profile(const ScalarField& approx, const ScalarField& oracle,
                         const Domain& domain, double band_width, std::span<const Vec3> probes);

struct StrategiesConfig {
    std::vector<Strategy> strategies;
    KernelSpec kernel;
    std::string problem;
    std::size_t m = 256;
    std::vector<long> seeds = {0};
    double band_width = 0.1;
    std::size_t probe_count = 200;
    long probe_offset = 10007;
};

struct StrategyComparison {
    std::vector<StudyRecord> records;
    std::map<Strategy, EdgeProfile> edge;
};

// Interpolation error, sigma spread and edge ratio per strategy at equal M.
StrategyComparison compare_strategies(const StrategiesConfig& config);

// Fixed interior probe set (Halton, offset 10007 by default), kept clear of
// the given nodes.
std::vector<Vec3> probe_points(const Domain& domain, std::size_t count, long offset,
                               const NodeSet* exclude = nullptr, double min_distance = 1e-9);

// Study CSV: method,kernel,strategy,d,M,seed,error_rms,error_max,sigma_spread,
// runtime_ms. Runtimes vary run to run, so the column is left empty unless
// with_runtimes is set; this keeps reruns bitwise identical.
void write_study_csv(std::ostream& out, std::span<const StudyRecord> records,
                     bool with_runtimes = false);

// Fit summary CSV: study_id,eta,log_exponent,r_squared,M_min,M_max.
void write_fit_csv(std::ostream& out, const std::string& study_id, const ExponentFit& fit);

}  // namespace rbfqmc
