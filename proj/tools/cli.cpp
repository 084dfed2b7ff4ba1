#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hfda/io.hpp"
#include "hfda/pipeline.hpp"
#include "hfda/synth.hpp"
#include "report.hpp"

namespace hfda::cli {

namespace fs = std::filesystem;
using report::json;

namespace {

struct Options {
    Index grid = 0;
    Index dp_grid = 256;
    Index k = 3;
    std::string pns_mode = "small";
    std::uint64_t seed = 7;
    std::string out;
    std::string config_file;

    // synth
    std::string family;
    Index n = 30;
    double a_min = -5.0;
    double a_max = 5.0;
    double jitter = 0.15;

    // registration
    int max_iter = 20;
    double tol = 1e-4;

    std::string input;
    std::string method;

    // plot
    std::string kind;
    Index component = 1;
    std::string pair = "1,2";
};

SphereMode parse_mode(const std::string& m)
{
    if (m == "small") return SphereMode::small;
    if (m == "great") return SphereMode::great;
    throw DomainError("--pns-mode must be small or great");
}

DpConfig dp_config(const Options& o)
{
    DpConfig cfg;
    cfg.grid_size = o.dp_grid;
    cfg.validate();
    return cfg;
}

json config_echo(const Options& o, const std::string& command)
{
    json c = {{"command", command}, {"grid", o.grid},     {"dp_grid", o.dp_grid},   {"k", o.k},
              {"pns_mode", o.pns_mode}, {"seed", o.seed}, {"max_iter", o.max_iter}, {"tol", o.tol}};
    if (!o.input.empty()) c["input"] = fs::path(o.input).filename().string();
    if (!o.method.empty()) c["method"] = o.method;
    json meta = {{"config", c}};
    if (!o.config_file.empty()) meta["config_file"] = read_text(o.config_file);
    return meta;
}

std::vector<SampledFunction> load_functions(const Options& o)
{
    FunctionTable t = read_function_csv(o.input);
    if (o.grid > 0 && o.grid != t.grid.size()) {
        const UniformGrid g(o.grid, t.grid.lo(), t.grid.hi());
        for (auto& f : t.functions) f = resample(f, g);
    }
    return t.functions;
}

void require_out(const Options& o)
{
    if (o.out.empty()) throw DomainError("--out is required");
}

int cmd_synth(const Options& o)
{
    require_out(o);
    const Index grid_n = o.grid > 0 ? o.grid : 256;
    const UniformGrid grid(grid_n);
    json params = {{"family", o.family}, {"seed", o.seed}, {"grid", grid_n}};
    FunctionTable table{grid, {}, {}};
    if (o.family == "toy") {
        ToyConfig tc;
        tc.n = o.n;
        tc.a_min = o.a_min;
        tc.a_max = o.a_max;
        tc.grid_size = grid_n;
        tc.seed = o.seed;
        tc.amplitude_jitter = o.jitter;
        tc.validate();
        table = make_table(gen_bimodal_toy(tc), "f");
        params["n"] = o.n;
        params["a_min"] = o.a_min;
        params["a_max"] = o.a_max;
        params["amplitude_jitter"] = o.jitter;
        params["a"] = exponential_parameters(tc);
    } else if (o.family == "steps") {
        auto [f1, f2] = gen_step_pair(grid);
        table = make_table({f1, f2}, "f");
    } else if (o.family == "warp2d") {
        const auto knots = gen_2d_warp_knots(o.n, o.seed);
        std::vector<SampledFunction> ws;
        json kj = json::array();
        for (const auto& k : knots) {
            ws.push_back(two_knot_warp(grid, k).function());
            kj.push_back({k.at_third, k.at_two_thirds});
        }
        table = make_table(ws, "gamma");
        params["n"] = o.n;
        params["knots"] = kj;
    } else {
        throw DomainError("unknown family '" + o.family + "' (expected toy, steps or warp2d)");
    }
    write_function_csv(fs::path(o.out) / "functions.csv", table);
    json meta = config_echo(o, "synth");
    meta["params"] = params;
    write_text(fs::path(o.out) / "params.json", meta.dump(2) + "\n");
    std::cout << "synth " << o.family << ": " << table.functions.size() << " functions on " << grid_n
              << " points -> " << (fs::path(o.out) / "functions.csv").string() << "\n";
    return 0;
}

RegistrationOptions reg_options(const Options& o)
{
    return {o.tol, o.max_iter};
}

int cmd_align(const Options& o)
{
    require_out(o);
    const auto fns = load_functions(o);
    const RegistrationResult reg = karcher_mean_registration(fns, dp_config(o), reg_options(o));
    const std::string hash = report::write_registration(o.out, reg, config_echo(o, "align"));
    std::cout << "align: " << fns.size() << " functions, " << reg.iterations << " iterations"
              << (reg.converged ? "" : " (not converged)") << ", hash " << hash << "\n";
    return 0;
}

int cmd_analyze(const Options& o)
{
    require_out(o);
    if (o.k < 1) throw DomainError("--k must be at least 1");
    const Method m = method_from_string(o.method);
    const auto fns = load_functions(o);
    const HorizontalData data = prepare_horizontal(fns, dp_config(o), reg_options(o));
    const HorizontalAnalysis a = analyze(data, m, o.k, parse_mode(o.pns_mode));
    json meta = config_echo(o, "analyze");
    const std::string hash = report::write_registration(fs::path(o.out) / "registration", data.registration, meta);
    meta["registration_hash"] = hash;
    report::write_analysis(o.out, a, meta);
    std::cout << "analyze " << o.method << ": first component explains "
              << a.variance.individual[0] << " of the variance\n";
    return 0;
}

int cmd_compare(const Options& o)
{
    require_out(o);
    if (o.k < 1) throw DomainError("--k must be at least 1");
    const auto fns = load_functions(o);
    const HorizontalData data = prepare_horizontal(fns, dp_config(o), reg_options(o));
    const SphereMode mode = parse_mode(o.pns_mode);
    const fs::path out(o.out);

    json meta = config_echo(o, "compare");
    const std::string hash = report::write_registration(out / "registration", data.registration, meta);
    meta["registration_hash"] = hash;

    std::vector<HorizontalAnalysis> analyses;
    for (Method m : kAllMethods) {
        analyses.push_back(analyze(data, m, o.k, mode));
        report::write_analysis(out / to_string(m), analyses.back(), meta);
    }
    const std::vector<ScreeRow> rows = scree_table(analyses, o.k);
    const std::string scree = report::scree_csv(rows);
    write_text(out / "scree.csv", scree);
    write_text(out / "scree.svg", report::scree_svg(report::parse_scree_csv(scree)));

    const HorizontalAnalysis& pga = analyses[2];
    const HorizontalAnalysis& pns = analyses[3];
    const Eigen::VectorXd order = pns.scores.row(0).transpose();
    struct Panel {
        const HorizontalAnalysis* a;
        Index i, j;
        std::string name;
    };
    const std::vector<Panel> panels{{&pga, 0, 1, "pga_1_2"}, {&pga, 1, 2, "pga_2_3"}, {&pns, 0, 1, "pns_1_2"}};
    json scatter_meta = json::array();
    for (const auto& p : panels) {
        if (p.a->scores.rows() <= std::max(p.i, p.j)) continue;
        const auto pts = score_scatter(*p.a, p.i, p.j, order);
        write_text(out / "scatter" / (p.name + ".csv"), report::scatter_csv(pts));
        scatter_meta.push_back(p.name);
    }
    meta["scatter"] = scatter_meta;
    write_text(out / "meta.json", meta.dump(2) + "\n");

    std::cout << "compare: first-component proportions";
    for (const auto& r : rows) std::cout << " " << to_string(r.method) << "=" << r.individual[0];
    std::cout << "\n";
    return 0;
}

std::vector<fs::path> missing(const std::vector<fs::path>& paths)
{
    std::vector<fs::path> out;
    for (const auto& p : paths)
        if (!fs::exists(p)) out.push_back(p);
    return out;
}

int report_missing(const std::vector<fs::path>& gone)
{
    std::cerr << "error: missing input files:\n";
    for (const auto& p : gone) std::cerr << "  " << p.string() << "\n";
    return 2;
}

int cmd_plot(const Options& o)
{
    require_out(o);
    const fs::path dir(o.input);
    std::string svg;
    if (o.kind == "components") {
        const fs::path cdir = dir / "components" / std::to_string(o.component);
        std::vector<fs::path> need;
        for (double s : kDisplaySteps) need.push_back(cdir / (report::step_label(s) + ".csv"));
        if (auto gone = missing(need); !gone.empty()) return report_missing(gone);
        std::vector<report::Curve> curves;
        for (std::size_t j = 0; j < need.size(); ++j) {
            const FunctionTable t = read_function_csv(need[j]);
            curves.push_back({report::step_label(kDisplaySteps[j]) + " sd", t.grid.points(), t.functions.front().values()});
        }
        svg = report::components_svg(curves, "component " + std::to_string(o.component));
    } else if (o.kind == "scree") {
        const fs::path f = dir / "scree.csv";
        if (auto gone = missing({f}); !gone.empty()) return report_missing(gone);
        svg = report::scree_svg(report::parse_scree_csv(read_text(f)));
    } else if (o.kind == "scatter") {
        int i = 0, j = 0;
        char comma = 0;
        std::istringstream ps(o.pair);
        if (!(ps >> i >> comma >> j) || comma != ',' || i < 1 || j < 1) throw DomainError("--pair must look like 1,2");
        const fs::path scores = dir / "scores.csv";
        if (auto gone = missing({scores}); !gone.empty()) return report_missing(gone);
        // Colour by the first score column, as in the comparison panels.
        std::istringstream in(read_text(scores));
        std::string line;
        std::getline(in, line);
        std::vector<std::vector<double>> rows;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::vector<double> r;
            std::istringstream ls(line);
            std::string cell;
            std::getline(ls, cell, ',');
            while (std::getline(ls, cell, ',')) r.push_back(std::stod(cell));
            rows.push_back(std::move(r));
        }
        if (rows.empty() || static_cast<int>(rows.front().size()) < std::max(i, j))
            throw DomainError("scores.csv has fewer components than requested");
        Eigen::VectorXd order(static_cast<Index>(rows.size()));
        for (std::size_t r = 0; r < rows.size(); ++r) order[static_cast<Index>(r)] = rows[r][0];
        const std::vector<Index> rk = ranks(order);
        std::vector<ScatterPoint> pts;
        for (std::size_t r = 0; r < rows.size(); ++r)
            pts.push_back({rows[r][static_cast<std::size_t>(i - 1)], rows[r][static_cast<std::size_t>(j - 1)], rk[r]});
        svg = report::scatter_svg(pts, "component " + std::to_string(i), "component " + std::to_string(j));
    } else {
        throw DomainError("--kind must be components, scree or scatter");
    }
    write_text(o.out, svg);
    std::cout << "plot " << o.kind << " -> " << o.out << "\n";
    return 0;
}

void add_common(CLI::App* sub, Options& o)
{
    sub->add_option("--grid", o.grid, "Grid size (synth) or resampling size for input functions");
    sub->add_option("--dp-grid", o.dp_grid, "Dynamic-programming lattice size")->check(CLI::Range(16, 1 << 14));
    sub->add_option("--k", o.k, "Number of components");
    sub->add_option("--pns-mode", o.pns_mode, "Subsphere type for PNS")->check(CLI::IsMember({"small", "great"}));
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--out", o.out, "Output directory (file for plot)");
    sub->add_option("--max-iter", o.max_iter, "Registration iterations");
    sub->add_option("--tol", o.tol, "Registration tolerance on the template change");
}

} // namespace

int run(const std::vector<std::string>& args)
{
    Options o;
    CLI::App app{"Elastic horizontal-variation analysis of functional data"};
    app.require_subcommand(1);
    // lets --config follow the subcommand like the other shared flags
    app.fallthrough();
    app.set_config("--config", "", "INI or TOML file with option values (flags take precedence)");

    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    synth->add_option("family", o.family, "toy, steps or warp2d")->required()->check(CLI::IsMember({"toy", "steps", "warp2d"}));
    synth->add_option("--n", o.n, "Number of functions");
    synth->add_option("--a-min", o.a_min, "Smallest warp parameter (toy)");
    synth->add_option("--a-max", o.a_max, "Largest warp parameter (toy)");
    synth->add_option("--jitter", o.jitter, "Bump amplitude jitter (toy)");
    add_common(synth, o);

    auto* align = app.add_subcommand("align", "Karcher-mean registration of a function CSV");
    align->add_option("input", o.input, "Function CSV")->required();
    add_common(align, o);

    auto* analyze_cmd = app.add_subcommand("analyze", "One horizontal analysis");
    analyze_cmd->add_option("input", o.input, "Function CSV")->required();
    analyze_cmd->add_option("--method", o.method, "fpca-shifted, fpca-warp, pga-srvf or pns-srvf")
        ->required()
        ->check(CLI::IsMember({"fpca-shifted", "fpca-warp", "pga-srvf", "pns-srvf"}));
    add_common(analyze_cmd, o);

    auto* compare = app.add_subcommand("compare", "All four analyses on one shared registration");
    compare->add_option("input", o.input, "Function CSV")->required();
    add_common(compare, o);

    auto* plot = app.add_subcommand("plot", "Render an SVG from analysis output");
    plot->add_option("dir", o.input, "Analysis or compare directory")->required();
    plot->add_option("--kind", o.kind, "components, scree or scatter")->required()->check(CLI::IsMember({"components", "scree", "scatter"}));
    plot->add_option("--component", o.component, "Component to draw (components)");
    plot->add_option("--pair", o.pair, "Score columns i,j (scatter)");
    add_common(plot, o);

    std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        std::cout << out.str();
        std::cerr << err.str();
        return code;
    }
    if (auto* cfg = app.get_config_ptr(); cfg && cfg->count() > 0) o.config_file = cfg->as<std::string>();

    try {
        if (synth->parsed()) return cmd_synth(o);
        if (align->parsed()) return cmd_align(o);
        if (analyze_cmd->parsed()) return cmd_analyze(o);
        if (compare->parsed()) return cmd_compare(o);
        if (plot->parsed()) return cmd_plot(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace hfda::cli
