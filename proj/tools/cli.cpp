#include "finres/cli.hpp"

#include "finres/cover_io.hpp"
#include "finres/error.hpp"
#include "finres/graph.hpp"
#include "finres/hexfloat.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>

namespace finres {

RunConfig RunConfig::defaults_for(MapKind kind)
{
    RunConfig c;
    c.map = kind;
    switch (kind) {
    case MapKind::henon:
        break;
    case MapKind::logistic:
        c.a = {4, 1};
        c.b = {0, 1};
        c.region = {-0x1p-8, 1 + 0x1p-7};
        c.x0 = {0.3};
        c.p1 = 64;
        break;
    case MapKind::linear1d:
        c.a = {1, 2};
        c.b = {1, 4};
        c.region = {-1.0, 2.0};
        c.x0 = {0.5};
        c.p1 = 64;
        break;
    }
    return c;
}

MapSpec RunConfig::map_spec() const
{
    switch (map) {
    case MapKind::henon:
        return MapSpec::henon(a, b);
    case MapKind::logistic:
        return MapSpec::logistic(a);
    case MapKind::linear1d:
        return MapSpec::linear1d(a, b);
    }
    throw domain_error("unknown map");
}

GridSpec RunConfig::grid() const
{
    std::vector<double> lo, w;
    for (std::size_t i = 0; i + 1 < region.size(); i += 2) {
        lo.push_back(region[i]);
        w.push_back(region[i + 1]);
    }
    return grid_new(std::move(lo), std::move(w), p1, kappa);
}

void RunConfig::validate() const
{
    const MapSpec m = map_spec();
    if (region.size() != 2 * m.dim()) {
        throw domain_error("region needs " + std::to_string(2 * m.dim()) + " numbers a_1,w_1,...");
    }
    if (x0.size() != m.dim()) {
        throw domain_error("x0 needs " + std::to_string(m.dim()) + " coordinates");
    }
    if (p1 == 0) {
        throw domain_error("p1 must be positive");
    }
    if (!(eps > 0)) {
        throw domain_error("eps must be positive");
    }
    if (index_width != 32 && index_width != 64) {
        throw domain_error("index width must be 32 or 64");
    }
    if (workers == 0) {
        throw domain_error("workers must be positive");
    }
    const GridSpec g = grid();
    boxes_containing_point(g, x0);  // throws when x0 is outside B
}

namespace {

std::ofstream open_output(const std::string& path)
{
    std::ofstream os(path);
    if (!os) {
        throw domain_error("cannot open '" + path + "' for writing");
    }
    return os;
}

template <class Index>
AnalysisReport verify_with(const RunConfig& cfg, const GridSpec& g, const MapSpec& m,
                           const BuildOptions& opt)
{
    // Open exports first so that a bad path is reported before any work.
    std::ofstream cover_out, graph_out;
    if (!cfg.export_cover.empty()) {
        cover_out = open_output(cfg.export_cover);
    }
    if (!cfg.export_graph.empty()) {
        graph_out = open_output(cfg.export_graph);
    }

    AnalysisReport r;
    r.r_minus_bound = inner_resolution_bound(g);
    auto result = build<Index>(g, m, cfg.x0, opt);
    if (auto* f = std::get_if<ConstructionFailure>(&result)) {
        r.failure = *f;
        return r;
    }
    auto& rep = std::get<BasicRepresentation<Index>>(result);
    r.constructed = true;
    r.boxes = rep.stats.boxes;
    r.edges = rep.stats.edges;
    r.r_plus = rep.r_plus;
    r.construct_seconds = rep.stats.seconds;

    const std::uint64_t analysis_bytes = rep.graph.memory_bytes() + rep.cover.size() * 8 +
                                         analysis_memory_estimate<Index>(rep.stats.boxes);
    r.memory_estimate = std::max(rep.stats.memory_bytes, analysis_bytes);
    if (analysis_bytes > cfg.memory_budget) {
        throw budget_exceeded("graph analysis would exceed the memory budget");
    }

    const auto start = std::chrono::steady_clock::now();
    const GraphVerdict v = analyze(rep.graph);
    r.analysis_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.scc_count = v.scc_count;
    r.period = v.period;
    r.transitive = v.transitive;
    r.mixing = v.mixing;
    r.certified = resolution_certificate(rep, cfg.eps);

    if (cover_out.is_open()) {
        write_cover(cover_out, g, cfg.metric, rep.cover);
    }
    if (graph_out.is_open()) {
        write_edge_list(graph_out, rep.graph);
    }
    return r;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

std::string rational_text(const Rational& q)
{
    return std::to_string(q.num) + "/" + std::to_string(q.den);
}

} // namespace

AnalysisReport cmd_verify(const RunConfig& cfg)
{
    cfg.validate();
    const GridSpec g = cfg.grid();
    const MapSpec m = cfg.map_spec();
    BuildOptions opt;
    opt.metric = cfg.metric;
    opt.memory_budget = cfg.memory_budget;
    opt.workers = cfg.workers;
    opt.seen_set = cfg.seen_set;
    opt.progress_interval = cfg.progress_interval;
    return cfg.index_width == 64 ? verify_with<std::uint64_t>(cfg, g, m, opt)
                                 : verify_with<std::uint32_t>(cfg, g, m, opt);
}

int report_exit_code(const AnalysisReport& r)
{
    if (!r.constructed) {
        return exit_code::construction_failure;
    }
    return r.mixing && r.certified ? exit_code::mixing_certified : exit_code::not_certified;
}

void write_report(std::ostream& os, const RunConfig& cfg, const AnalysisReport& r)
{
    os << "map " << to_string(cfg.map) << '\n';
    os << "a " << rational_text(cfg.a) << '\n';
    if (cfg.map != MapKind::logistic) {
        os << "b " << rational_text(cfg.b) << '\n';
    }
    os << "region";
    for (double v : cfg.region) {
        os << ' ' << format_hex(v);
    }
    os << '\n';
    const GridSpec g = cfg.grid();
    os << "p";
    for (auto p : g.counts()) {
        os << ' ' << p;
    }
    os << '\n';
    os << "kappa " << format_hex(cfg.kappa) << '\n';
    os << "x0";
    for (double v : cfg.x0) {
        os << ' ' << format_hex(v);
    }
    os << '\n';
    os << "metric " << to_string(cfg.metric) << '\n';
    os << "eps " << format_hex(cfg.eps) << '\n';
    os << "index_width " << cfg.index_width << '\n';
    if (!r.constructed) {
        os << "status construction-failure\n";
        if (r.failure) {
            os << "escape_box";
            for (auto k : r.failure->box.k) {
                os << ' ' << k;
            }
            os << "\nescape_image";
            for (std::size_t i = 0; i < r.failure->image.dim(); ++i) {
                os << ' ' << format_hex(r.failure->image[i].lo()) << ' '
                   << format_hex(r.failure->image[i].hi());
            }
            os << '\n';
        }
        os << "r_minus_bound " << format_hex(r.r_minus_bound) << '\n';
        return;
    }
    os << "status constructed\n";
    os << "boxes " << r.boxes << '\n';
    os << "edges " << r.edges << '\n';
    os << "r_plus " << format_hex(r.r_plus) << '\n';
    os << "r_minus_bound " << format_hex(r.r_minus_bound) << '\n';
    os << "scc_count " << r.scc_count << '\n';
    os << "period " << r.period << '\n';
    os << "transitive " << yes_no(r.transitive) << '\n';
    os << "mixing " << yes_no(r.mixing) << '\n';
    os << "certified " << yes_no(r.certified) << '\n';
    os << "memory_estimate_bytes " << r.memory_estimate << '\n';
    os << "timings\n";
    os << "construct_seconds " << format_hex(r.construct_seconds) << '\n';
    os << "analysis_seconds " << format_hex(r.analysis_seconds) << '\n';
}

std::vector<AnalysisReport> cmd_sweep(const RunConfig& cfg, const std::vector<std::uint64_t>& p1s)
{
    for (auto p1 : p1s) {
        RunConfig c = cfg;
        c.p1 = p1;
        c.validate();
    }
    std::vector<AnalysisReport> rows;
    for (auto p1 : p1s) {
        RunConfig c = cfg;
        c.p1 = p1;
        c.export_cover.clear();
        c.export_graph.clear();
        try {
            rows.push_back(cmd_verify(c));
        } catch (const budget_exceeded&) {
            rows.push_back(AnalysisReport{});  // constructed = false, no failure box
        }
    }
    return rows;
}

void write_sweep(std::ostream& os, const std::vector<std::uint64_t>& p1s,
                 const std::vector<AnalysisReport>& rows)
{
    char buf[64];
    os << "p1 status boxes edges r_plus mixing certified seconds\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const AnalysisReport& r = rows[i];
        const char* status = r.constructed ? "constructed"
                             : r.failure   ? "construction-failure"
                                           : "budget-exceeded";
        std::snprintf(buf, sizeof buf, "%.3f", r.construct_seconds + r.analysis_seconds);
        os << p1s[i] << ' ' << status << ' ' << r.boxes << ' ' << r.edges << ' '
           << format_hex(r.r_plus) << ' ' << yes_no(r.mixing) << ' ' << yes_no(r.certified) << ' '
           << buf << '\n';
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const AnalysisReport& x = rows[i - 1];
        const AnalysisReport& y = rows[i];
        if (!x.constructed || !y.constructed) {
            continue;
        }
        std::snprintf(buf, sizeof buf, "%.4f %.4f", static_cast<double>(y.boxes) / x.boxes,
                      x.r_plus / y.r_plus);
        os << "ratio " << p1s[i - 1] << ' ' << p1s[i] << ' ' << buf << '\n';
    }
}

GraphVerdict cmd_analyze_graph(const std::string& path, int index_width, std::uint64_t* vertices,
                               std::uint64_t* edges)
{
    std::ifstream in(path);
    if (!in) {
        throw domain_error("cannot open '" + path + "'");
    }
    auto run = [&](const auto& g) {
        if (vertices) {
            *vertices = g.vertex_count();
        }
        if (edges) {
            *edges = g.edge_count();
        }
        return analyze(g);
    };
    if (index_width == 64) {
        return run(read_edge_list<std::uint64_t>(in));
    }
    return run(read_edge_list<std::uint32_t>(in));
}

namespace {

std::vector<double> parse_reals(const std::vector<std::string>& items, const char* what)
{
    std::vector<double> out;
    for (const auto& t : items) {
        try {
            out.push_back(parse_real(t));
        } catch (const domain_error&) {
            throw domain_error(std::string("bad number in ") + what + ": '" + t + "'");
        }
    }
    return out;
}

std::vector<std::uint64_t> parse_counts(const std::vector<std::string>& items)
{
    std::vector<std::uint64_t> out;
    for (double v : parse_reals(items, "--p1-list")) {
        if (!(v >= 1) || v != static_cast<double>(static_cast<std::uint64_t>(v))) {
            throw domain_error("--p1-list entries must be positive integers");
        }
        out.push_back(static_cast<std::uint64_t>(v));
    }
    return out;
}

// Raw option values; unset entries fall back to the per-map defaults.
struct RawOptions {
    std::optional<std::string> map;
    std::optional<std::int64_t> a_num, a_den, b_num, b_den;
    std::vector<std::string> region, x0;
    std::optional<std::string> kappa, eps;
    std::optional<std::uint64_t> p1;
    std::optional<std::string> metric, seen_set;
    std::optional<std::string> export_cover, export_graph, report;
    std::optional<std::uint64_t> memory_budget, progress_interval;
    std::optional<unsigned> workers;
    std::optional<int> index_width;
};

RunConfig resolve(const RawOptions& o)
{
    RunConfig c = RunConfig::defaults_for(o.map ? parse_map_kind(*o.map) : MapKind::henon);
    auto rational = [](std::optional<std::int64_t> num, std::optional<std::int64_t> den,
                       Rational fallback) {
        return Rational{num.value_or(fallback.num), den.value_or(num ? 1 : fallback.den)};
    };
    c.a = rational(o.a_num, o.a_den, c.a);
    c.b = rational(o.b_num, o.b_den, c.b);
    if (!o.region.empty()) {
        c.region = parse_reals(o.region, "--region");
    }
    if (!o.x0.empty()) {
        c.x0 = parse_reals(o.x0, "--x0");
    }
    if (o.kappa) {
        c.kappa = parse_real(*o.kappa);
    }
    if (o.eps) {
        c.eps = parse_real(*o.eps);
    }
    c.p1 = o.p1.value_or(c.p1);
    if (o.metric) {
        c.metric = parse_metric(*o.metric);
    }
    if (o.seen_set) {
        c.seen_set = *o.seen_set == "dense"    ? SeenSetMode::dense
                     : *o.seen_set == "hashed" ? SeenSetMode::hashed
                                               : SeenSetMode::automatic;
    }
    c.export_cover = o.export_cover.value_or("");
    c.export_graph = o.export_graph.value_or("");
    c.report = o.report.value_or("");
    c.memory_budget = o.memory_budget.value_or(c.memory_budget);
    c.progress_interval = o.progress_interval.value_or(0);
    c.workers = o.workers.value_or(std::max(1u, std::thread::hardware_concurrency()));
    c.index_width = o.index_width.value_or(32);
    c.validate();
    return c;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Finite-resolution transitivity and mixing checks for maps"};
    app.name("finres");
    app.require_subcommand(1);
    app.set_config("--config", "", "flat 'key = value' file; command-line flags take precedence");
    app.allow_config_extras(false);

    RawOptions o;
    app.add_option("--map", o.map, "henon, logistic or linear1d")
        ->check(CLI::IsMember({"henon", "logistic", "linear1d"}));
    app.add_option("--a-num", o.a_num, "numerator of a (Henon a, logistic r, linear slope)");
    app.add_option("--a-den", o.a_den, "denominator of a");
    app.add_option("--b-num", o.b_num, "numerator of b (Henon b, linear offset)");
    app.add_option("--b-den", o.b_den, "denominator of b");
    app.add_option("--region", o.region, "a_1,w_1,a_2,w_2,... for B = prod (a_i, a_i + w_i)")
        ->delimiter(',');
    app.add_option("--p1", o.p1, "number of grid cells along the first axis");
    app.add_option("--kappa", o.kappa, "box overlap margin");
    app.add_option("--x0", o.x0, "seed point, comma separated")->delimiter(',');
    app.add_option("--metric", o.metric, "euclidean or max")
        ->check(CLI::IsMember({"euclidean", "max"}));
    app.add_option("--eps", o.eps, "target outer resolution for the certificate");
    app.add_option("--export-cover", o.export_cover, "write the cover file here");
    app.add_option("--export-graph", o.export_graph, "write the edge list here");
    app.add_option("--report", o.report, "write the report here instead of standard output");
    app.add_option("--memory-budget", o.memory_budget, "bytes");
    app.add_option("--workers", o.workers, "threads for image evaluation");
    app.add_option("--index-width", o.index_width, "vertex index width")
        ->check(CLI::IsMember({32, 64}));
    app.add_option("--seen-set", o.seen_set, "auto, dense or hashed")
        ->check(CLI::IsMember({"auto", "dense", "hashed"}));
    app.add_option("--progress-interval", o.progress_interval,
                   "report progress every N processed boxes (0: off)");

    CLI::App* verify = app.add_subcommand("verify", "build, analyze and certify one grid");
    CLI::App* sweep = app.add_subcommand("sweep", "verify over several p1 values");
    std::vector<std::string> p1_list;
    sweep->add_option("--p1-list", p1_list, "comma separated p1 values")
        ->required()
        ->delimiter(',');
    CLI::App* analyze_graph = app.add_subcommand("analyze-graph", "analyze an edge-list file");
    std::string graph_path;
    analyze_graph->add_option("path", graph_path, "edge-list file")->required();
    for (CLI::App* sub : {verify, sweep, analyze_graph}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "finres: " << e.what() << '\n';
        return exit_code::config_error;
    }

    try {
        if (analyze_graph->parsed()) {
            std::uint64_t n = 0, m = 0;
            const GraphVerdict v = cmd_analyze_graph(graph_path, o.index_width.value_or(32), &n, &m);
            out << "vertices " << n << '\n';
            out << "edges " << m << '\n';
            out << "scc_count " << v.scc_count << '\n';
            out << "period " << v.period << '\n';
            out << "transitive " << yes_no(v.transitive) << '\n';
            out << "mixing " << yes_no(v.mixing) << '\n';
            return v.mixing ? exit_code::mixing_certified : exit_code::not_certified;
        }

        RunConfig cfg;
        std::vector<std::uint64_t> p1s;
        std::ofstream report_file;
        try {
            cfg = resolve(o);
            if (sweep->parsed()) {
                p1s = parse_counts(p1_list);
            }
            if (!cfg.report.empty()) {
                report_file = open_output(cfg.report);
            }
        } catch (const std::exception& e) {
            err << "finres: configuration error: " << e.what() << '\n';
            return exit_code::config_error;
        }
        std::ostream& rep_out = cfg.report.empty() ? out : report_file;
        if (cfg.progress_interval != 0) {
            err << "finres: p1 " << cfg.p1 << ", " << cfg.workers << " workers\n";
        }

        if (sweep->parsed()) {
            const auto rows = cmd_sweep(cfg, p1s);
            write_sweep(rep_out, p1s, rows);
            for (const auto& r : rows) {
                if (!r.constructed && !r.failure) {
                    return exit_code::budget_exceeded;
                }
                if (const int code = report_exit_code(r); code != 0) {
                    return code;
                }
            }
            return exit_code::mixing_certified;
        }

        const AnalysisReport r = cmd_verify(cfg);
        write_report(rep_out, cfg, r);
        if (r.failure) {
            err << "finres: construction failed: the image of box";
            for (auto k : r.failure->box.k) {
                err << ' ' << k;
            }
            err << " leaves the region\n";
        }
        return report_exit_code(r);
    } catch (const budget_exceeded& e) {
        err << "finres: budget exceeded: " << e.what() << '\n';
        return exit_code::budget_exceeded;
    } catch (const parse_error& e) {
        err << "finres: parse error: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const domain_error& e) {
        err << "finres: " << e.what() << '\n';
        return exit_code::config_error;
    }
}

} // namespace finres
