#ifndef FINRES_CLI_HPP
#define FINRES_CLI_HPP

#include "finres/construct.hpp"
#include "finres/dynmap.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace finres {

namespace exit_code {
inline constexpr int mixing_certified = 0;
inline constexpr int not_certified = 1;
inline constexpr int construction_failure = 2;
inline constexpr int config_error = 3;
inline constexpr int budget_exceeded = 4;
} // namespace exit_code

struct RunConfig {
    MapKind map = MapKind::henon;
    Rational a{14, 10};
    Rational b{3, 10};
    std::vector<double> region{-1.4, 2.8, -0.5, 1.0};  // a_1, w_1, a_2, w_2, ...
    std::uint64_t p1 = 446;
    double kappa = default_kappa;
    std::vector<double> x0{0.61989426930989, 0.17586130934794};
    Metric metric = Metric::euclidean;
    double eps = 0.05;
    std::string export_cover;
    std::string export_graph;
    std::string report;
    std::uint64_t memory_budget = std::uint64_t{4} << 30;
    unsigned workers = 1;
    SeenSetMode seen_set = SeenSetMode::automatic;
    int index_width = 32;
    std::uint64_t progress_interval = 0;

    // Defaults for the given map: the Hénon setup above, the logistic map
    // r = 4 on a region slightly larger than [0, 1], and x -> x/2 + 1/4.
    static RunConfig defaults_for(MapKind kind);

    MapSpec map_spec() const;
    GridSpec grid() const;
    // Throws domain_error describing the first inconsistency.
    void validate() const;
};

struct AnalysisReport {
    bool constructed = false;
    std::optional<ConstructionFailure> failure;
    std::uint64_t boxes = 0;
    std::uint64_t edges = 0;
    double r_plus = 0;
    double r_minus_bound = 0;
    std::size_t scc_count = 0;
    std::uint64_t period = 0;
    bool transitive = false;
    bool mixing = false;
    bool certified = false;
    std::uint64_t memory_estimate = 0;
    double construct_seconds = 0;
    double analysis_seconds = 0;
};

// Runs construction, graph analysis and the certificate; writes the
// requested exports. Throws budget_exceeded.
AnalysisReport cmd_verify(const RunConfig& cfg);

std::vector<AnalysisReport> cmd_sweep(const RunConfig& cfg, const std::vector<std::uint64_t>& p1s);

// Reads an edge list; throws parse_error.
GraphVerdict cmd_analyze_graph(const std::string& path, int index_width,
                               std::uint64_t* vertices = nullptr, std::uint64_t* edges = nullptr);

int report_exit_code(const AnalysisReport& r);

// `key value` lines. Everything above the "timings" marker depends only on
// the configuration.
void write_report(std::ostream& os, const RunConfig& cfg, const AnalysisReport& r);
void write_sweep(std::ostream& os, const std::vector<std::uint64_t>& p1s,
                 const std::vector<AnalysisReport>& rows);

// Entry point of the finres executable.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace finres

#endif
