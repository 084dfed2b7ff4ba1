#include "report.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "hfda/io.hpp"

namespace hfda::report {

namespace {

std::string fixed(double v, int digits = 2)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    std::string s(buf);
    if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
    return s;
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) out.push_back(cell);
    return out;
}

double to_double(const std::string& s, const std::string& what)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw IoError("cannot parse '" + s + "' in " + what);
    }
}

// Evenly spread hues from blue (rank 0) to red (rank n-1).
std::string rank_color(Index rank, Index n)
{
    const double f = n > 1 ? static_cast<double>(rank) / static_cast<double>(n - 1) : 0.0;
    return "hsl(" + fixed(240.0 * (1.0 - f), 1) + ",80%,45%)";
}

const char* kMethodColors[] = {"#2ca02c", "#17becf", "#9467bd", "#d62728"};

std::string svg_open(int w, int h)
{
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) + "\" height=\"" +
           std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " + std::to_string(h) + "\">\n" +
           "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(w) + "\" height=\"" + std::to_string(h) +
           "\" fill=\"white\"/>\n";
}

struct Frame {
    double x0, x1, y0, y1;  // data range
    double left, top, width, height;  // pixel box

    double px(double x) const { return left + (x - x0) / (x1 - x0) * width; }
    double py(double y) const { return top + height - (y - y0) / (y1 - y0) * height; }
};

std::string axes(const Frame& f, const std::string& xlabel, const std::string& ylabel)
{
    std::string s = "<rect x=\"" + fixed(f.left) + "\" y=\"" + fixed(f.top) + "\" width=\"" + fixed(f.width) +
                    "\" height=\"" + fixed(f.height) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = f.x0 + (f.x1 - f.x0) * k / 4.0;
        const double yv = f.y0 + (f.y1 - f.y0) * k / 4.0;
        s += "<text x=\"" + fixed(f.px(xv)) + "\" y=\"" + fixed(f.top + f.height + 16) +
             "\" font-size=\"11\" text-anchor=\"middle\">" + fixed(xv) + "</text>\n";
        s += "<text x=\"" + fixed(f.left - 6) + "\" y=\"" + fixed(f.py(yv) + 4) +
             "\" font-size=\"11\" text-anchor=\"end\">" + fixed(yv) + "</text>\n";
    }
    s += "<text x=\"" + fixed(f.left + f.width / 2) + "\" y=\"" + fixed(f.top + f.height + 34) +
         "\" font-size=\"13\" text-anchor=\"middle\">" + xlabel + "</text>\n";
    s += "<text x=\"14\" y=\"" + fixed(f.top + f.height / 2) + "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
         fixed(f.top + f.height / 2) + ")\">" + ylabel + "</text>\n";
    return s;
}

std::string polyline(const Frame& f, const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::string& color, bool dashed)
{
    std::string s = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"";
    if (dashed) s += " stroke-dasharray=\"6,4\"";
    s += " points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ' ';
        s += fixed(f.px(xs[i])) + "," + fixed(f.py(ys[i]));
    }
    return s + "\"/>\n";
}

} // namespace

std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json to_json(const Eigen::VectorXd& v)
{
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

json to_json(const VarianceProportions& v)
{
    return {{"individual", to_json(v.individual)}, {"cumulative", to_json(v.cumulative)}};
}

std::string write_registration(const std::filesystem::path& dir, const RegistrationResult& reg, json meta)
{
    std::vector<SampledFunction> warps;
    for (const auto& w : reg.warps) warps.push_back(w.function());
    const std::string warps_csv = to_function_csv(make_table(warps, "gamma"));
    const std::string hash = fnv1a_hex(warps_csv);
    write_text(dir / "warps.csv", warps_csv);
    write_function_csv(dir / "mean.csv", make_table({reg.karcher_mean}, "mean"));
    write_function_csv(dir / "aligned.csv", make_table(reg.aligned, "f"));
    meta["registration_hash"] = hash;
    meta["registration"] = {{"iterations", reg.iterations},
                            {"converged", reg.converged},
                            {"final_cost", reg.final_cost},
                            {"template_changes", reg.template_changes}};
    write_text(dir / "meta.json", meta.dump(2) + "\n");
    return hash;
}

std::string step_label(double s)
{
    const long v = std::lround(s);
    return std::string("s") + (v < 0 ? "-" : "+") + std::to_string(std::labs(v));
}

std::string scores_csv(const Eigen::MatrixXd& scores)
{
    std::string out = "sample";
    for (Index k = 0; k < scores.rows(); ++k) out += ",c" + std::to_string(k + 1);
    out += "\n";
    for (Index i = 0; i < scores.cols(); ++i) {
        out += std::to_string(i + 1);
        for (Index k = 0; k < scores.rows(); ++k) out += "," + format_double(scores(k, i));
        out += "\n";
    }
    return out;
}

namespace {

json decomposition_json(const HorizontalAnalysis& a)
{
    json d = {{"method", to_string(a.method)}};
    if (a.fpca) {
        d["eigenvalues"] = to_json(a.fpca->eigenvalues);
        d["mean"] = to_json(a.fpca->mean_fn.values());
        json efs = json::array();
        for (std::size_t k = 0; k < std::min<std::size_t>(a.components.size(), a.fpca->eigenfunctions.size()); ++k)
            efs.push_back(to_json(a.fpca->eigenfunctions[k].values()));
        d["eigenfunctions"] = efs;
    }
    if (a.pga) {
        d["eigenvalues"] = to_json(a.pga->eigenvalues);
        d["mean"] = to_json(a.pga->mean);
        json basis = json::array();
        for (std::size_t k = 0; k < a.components.size(); ++k) basis.push_back(to_json(a.pga->basis.col(static_cast<Index>(k))));
        d["basis"] = basis;
    }
    if (a.pns) {
        const PnsDecomposition& p = *a.pns;
        d["mode"] = p.mode == SphereMode::small ? "small" : "great";
        d["span_dimension"] = p.span.dim();
        json levels = json::array();
        for (const auto& lv : p.levels)
            levels.push_back({{"radius", lv.sphere.radius}, {"scale", lv.scale}, {"axis", to_json(lv.sphere.axis)}});
        d["levels"] = levels;
        d["circle_mean"] = p.circle_mean;
        d["circle_scale"] = p.circle_scale;
        d["circle_orientation"] = p.circle_orientation;
    }
    d["variance"] = to_json(a.variance);
    return d;
}

json validity_json(const HorizontalAnalysis& a)
{
    json comps = json::array();
    int invalid = 0;
    for (std::size_t k = 0; k < a.components.size(); ++k) {
        const ComponentCurves& cc = a.components[k];
        json projs = json::array();
        for (std::size_t j = 0; j < cc.validity.size(); ++j) {
            const WarpValidityReport& r = cc.validity[j];
            invalid += r.valid ? 0 : 1;
            projs.push_back({{"s", cc.steps[j]},
                             {"valid", r.valid},
                             {"start_deviation", r.start_deviation},
                             {"end_deviation", r.end_deviation},
                             {"violations", r.violations}});
        }
        comps.push_back({{"component", k + 1}, {"projections", projs}});
    }
    const bool applicable = a.method != Method::fpca_shifted;
    return {{"method", to_string(a.method)}, {"applicable", applicable}, {"invalid_count", invalid}, {"components", comps}};
}

} // namespace

void write_analysis(const std::filesystem::path& dir, const HorizontalAnalysis& a, json meta)
{
    for (std::size_t k = 0; k < a.components.size(); ++k) {
        const ComponentCurves& cc = a.components[k];
        const auto cdir = dir / "components" / std::to_string(k + 1);
        for (std::size_t j = 0; j < cc.curves.size(); ++j) {
            FunctionTable t{cc.curves[j].grid(), {"curve"}, {cc.curves[j]}};
            if (j < cc.warps.size()) {
                t.names.push_back("warp");
                t.functions.push_back(cc.warps[j]);
            }
            write_function_csv(cdir / (step_label(cc.steps[j]) + ".csv"), t);
        }
    }
    write_text(dir / "scores.csv", scores_csv(a.scores));
    json var = to_json(a.variance);
    var["method"] = to_string(a.method);
    write_text(dir / "variance.json", var.dump(2) + "\n");
    write_text(dir / "validity.json", validity_json(a).dump(2) + "\n");
    write_text(dir / "decomposition.json", decomposition_json(a).dump(2) + "\n");
    meta["method"] = to_string(a.method);
    meta["components_written"] = a.components.size();
    write_text(dir / "meta.json", meta.dump(2) + "\n");
}

std::string scree_csv(const std::vector<ScreeRow>& rows)
{
    const Index k = rows.empty() ? 0 : rows.front().individual.size();
    std::string out = "method";
    for (Index c = 0; c < k; ++c) out += ",individual_" + std::to_string(c + 1);
    for (Index c = 0; c < k; ++c) out += ",cumulative_" + std::to_string(c + 1);
    out += "\n";
    for (const auto& r : rows) {
        out += to_string(r.method);
        for (Index c = 0; c < k; ++c) out += "," + format_double(r.individual[c]);
        for (Index c = 0; c < k; ++c) out += "," + format_double(r.cumulative[c]);
        out += "\n";
    }
    return out;
}

std::vector<ScreeSeries> parse_scree_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("scree.csv is empty");
    const std::vector<std::string> header = split(line, ',');
    if (header.size() < 3 || header.front() != "method" || (header.size() - 1) % 2 != 0)
        throw IoError("scree.csv header must be method,individual_*,cumulative_*");
    const std::size_t k = (header.size() - 1) / 2;
    std::vector<ScreeSeries> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> cells = split(line, ',');
        if (cells.size() != header.size()) throw IoError("scree.csv row has " + std::to_string(cells.size()) + " cells");
        ScreeSeries s{cells[0], {}, {}};
        for (std::size_t c = 0; c < k; ++c) s.individual.push_back(to_double(cells[1 + c], "scree.csv"));
        for (std::size_t c = 0; c < k; ++c) s.cumulative.push_back(to_double(cells[1 + k + c], "scree.csv"));
        out.push_back(std::move(s));
    }
    return out;
}

std::string scatter_csv(const std::vector<ScatterPoint>& pts)
{
    std::string out = "sample,x,y,color\n";
    for (std::size_t i = 0; i < pts.size(); ++i)
        out += std::to_string(i + 1) + "," + format_double(pts[i].x) + "," + format_double(pts[i].y) + "," +
               std::to_string(pts[i].color) + "\n";
    return out;
}

std::vector<ScatterPoint> parse_scatter_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "sample,x,y,color") throw IoError("scatter CSV header must be sample,x,y,color");
    std::vector<ScatterPoint> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> c = split(line, ',');
        if (c.size() != 4) throw IoError("scatter CSV rows need 4 cells");
        out.push_back({to_double(c[1], "scatter CSV"), to_double(c[2], "scatter CSV"),
                       static_cast<Index>(to_double(c[3], "scatter CSV"))});
    }
    return out;
}

std::string components_svg(const std::vector<Curve>& curves, const std::string& title)
{
    double lo = 0.0, hi = 1.0, tlo = 0.0, thi = 1.0;
    if (!curves.empty()) {
        lo = curves.front().y.minCoeff();
        hi = curves.front().y.maxCoeff();
        tlo = curves.front().t.minCoeff();
        thi = curves.front().t.maxCoeff();
        for (const auto& c : curves) {
            lo = std::min(lo, c.y.minCoeff());
            hi = std::max(hi, c.y.maxCoeff());
        }
    }
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    const Frame f{tlo, thi, lo - pad, hi + pad, 60, 40, 520, 300};
    std::string s = svg_open(640, 400);
    s += "<text x=\"320\" y=\"24\" font-size=\"15\" text-anchor=\"middle\">" + title + "</text>\n";
    s += axes(f, "t", "f");
    const Index n = static_cast<Index>(curves.size());
    for (Index i = 0; i < n; ++i) {
        const Curve& c = curves[static_cast<std::size_t>(i)];
        std::vector<double> xs(c.t.data(), c.t.data() + c.t.size());
        std::vector<double> ys(c.y.data(), c.y.data() + c.y.size());
        s += polyline(f, xs, ys, rank_color(i, n), false);
        s += "<text x=\"590\" y=\"" + fixed(56 + 16 * static_cast<double>(i)) + "\" font-size=\"11\" fill=\"" +
             rank_color(i, n) + "\">" + c.label + "</text>\n";
    }
    return s + "</svg>\n";
}

std::string scree_svg(const std::vector<ScreeSeries>& series)
{
    std::size_t k = 1;
    for (const auto& s : series) k = std::max(k, s.individual.size());
    const Frame f{1.0, std::max(2.0, static_cast<double>(k)), 0.0, 1.0, 60, 40, 440, 300};
    std::string out = svg_open(680, 400);
    out += "<text x=\"280\" y=\"24\" font-size=\"15\" text-anchor=\"middle\">Proportion of variance explained</text>\n";
    out += axes(f, "component", "proportion");
    std::vector<double> xs;
    for (std::size_t c = 0; c < k; ++c) xs.push_back(static_cast<double>(c + 1));
    std::vector<std::size_t> order(series.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = series[a].individual.empty() ? 0.0 : series[a].individual[0];
        const double vb = series[b].individual.empty() ? 0.0 : series[b].individual[0];
        return va > vb;
    });
    for (std::size_t i = 0; i < series.size(); ++i) {
        const ScreeSeries& s = series[i];
        const std::string color = kMethodColors[i % 4];
        std::vector<double> x(xs.begin(), xs.begin() + static_cast<long>(s.individual.size()));
        out += polyline(f, x, s.individual, color, false);
        out += polyline(f, x, s.cumulative, color, true);
    }
    // Legend ordered by first-component proportion, largest on top.
    for (std::size_t r = 0; r < order.size(); ++r) {
        const std::size_t i = order[r];
        out += "<text x=\"520\" y=\"" + fixed(60 + 18 * static_cast<double>(r)) + "\" font-size=\"12\" fill=\"" +
               kMethodColors[i % 4] + "\">" + series[i].name + "</text>\n";
    }
    return out + "</svg>\n";
}

std::string scatter_svg(const std::vector<ScatterPoint>& pts, const std::string& xlabel, const std::string& ylabel)
{
    double xlo = -1, xhi = 1, ylo = -1, yhi = 1;
    if (!pts.empty()) {
        xlo = xhi = pts.front().x;
        ylo = yhi = pts.front().y;
        for (const auto& p : pts) {
            xlo = std::min(xlo, p.x);
            xhi = std::max(xhi, p.x);
            ylo = std::min(ylo, p.y);
            yhi = std::max(yhi, p.y);
        }
    }
    // One data unit has the same length on both axes.
    double half = 0.55 * std::max(xhi - xlo, yhi - ylo);
    if (half < 1e-12) half = 1.0;
    const double cx = 0.5 * (xlo + xhi), cy = 0.5 * (ylo + yhi);
    const Frame f{cx - half, cx + half, cy - half, cy + half, 60, 30, 390, 390};
    std::string s = svg_open(480, 480);
    s += axes(f, xlabel, ylabel);
    const Index n = static_cast<Index>(pts.size());
    for (const auto& p : pts)
        s += "<circle cx=\"" + fixed(f.px(p.x)) + "\" cy=\"" + fixed(f.py(p.y)) + "\" r=\"4\" fill=\"" +
             rank_color(p.color, n) + "\"/>\n";
    return s + "</svg>\n";
}

} // namespace hfda::report
