#pragma once

#include <string>
#include <vector>

namespace rbfqmc::cli {

// Fully parsed command line. Serializing with to_argv() and re-parsing yields
// an identical config, so any run is reproducible from its argv alone.
struct RunConfig {
    std::string subcommand;  // nodes | sigma | interp | solve | qmc | integrate |
                             // study conv | study edge | study strategies | list-problems
    std::string domain = "square";
    std::string kernel = "tps";
    std::string strategy = "halton";
    std::string problem;
    std::string integrand = "one";
    std::string method = "drm";
    std::string si;                  // response point "x,y[,z]" for integrate --via rbf
    std::string via;                 // "" | "rbf"
    std::vector<std::size_t> m_list;
    std::size_t m = 256;
    std::size_t boundary = 0;        // 0: matching density
    std::size_t n_sources = 0;       // 0: half the collocation count
    std::size_t grid = 24;
    std::vector<long> seeds{0};
    long seed = 0;
    double offset_factor = 2.0;
    double ridge = 0.0;
    double band = 0.1;
    double fd_step = 0.0;            // 0: 10 mean node spacings
    bool runtimes = false;
    std::string out;

    std::vector<std::string> to_argv() const;
};

// Throws std::invalid_argument on unparseable argv (including unknown flags).
// A --help request returns a config with subcommand "help".
RunConfig parse_args(const std::vector<std::string>& args);

// Runs one parsed command; writes the declared CSVs; returns the exit code.
int execute(const RunConfig& config);

// parse + execute with the documented exit codes: 0 success, 1 configuration
// error, 2 numerical failure.
int dispatch(const std::vector<std::string>& args);

}  // namespace rbfqmc::cli
