#include "hfda/pipeline.hpp"

#include <algorithm>
#include <numeric>

#include "hfda/sphere.hpp"

namespace hfda {

namespace {

std::vector<SampledFunction> as_functions(const std::vector<WarpingFunction>& ws)
{
    std::vector<SampledFunction> out;
    out.reserve(ws.size());
    for (const auto& w : ws) out.push_back(w.function());
    return out;
}

void require_variation(const std::vector<SampledFunction>& objs, Method m)
{
    for (const auto& f : objs)
        if ((f.values() - objs.front().values()).cwiseAbs().maxCoeff() > 1e-12) return;
    throw ZeroVarianceError(to_string(m) + ": all data objects coincide; there is no variation to decompose");
}

SampledFunction compose_values(const SampledFunction& mean, const Eigen::VectorXd& warp_values)
{
    const UniformGrid& g = mean.grid();
    return {g, interpolate(g.points(), mean.values(), warp_values.cwiseMax(g.lo()).cwiseMin(g.hi()),
                           Interpolation::linear)};
}

// Isotonic clamp (running maximum) rescaled to fix the endpoints.
Eigen::VectorXd clamp_to_warp(const Eigen::VectorXd& v)
{
    Eigen::VectorXd g = v;
    for (Index j = 1; j < g.size(); ++j) g[j] = std::max(g[j], g[j - 1]);
    const double lo = g[0];
    const double span = g[g.size() - 1] - lo;
    if (span > 0.0) {
        g = (g.array() - lo) / span;
    } else {
        g = Eigen::VectorXd::LinSpaced(g.size(), 0.0, 1.0);
    }
    return g;
}

void add_warp_curve(ComponentCurves& cc, double s, const SampledFunction& mean, const SampledFunction& warp,
                    const Eigen::VectorXd& display)
{
    cc.steps.push_back(s);
    cc.warps.push_back(warp);
    cc.validity.push_back(check_warp_validity(warp));
    cc.curves.push_back(compose_values(mean, display));
}

SampledFunction warp_from_sphere(const Eigen::VectorXd& point, const EmbeddedSrvfs& emb)
{
    return warp_of_psi(unembed(point, emb)).function();
}

} // namespace

std::string to_string(Method m)
{
    switch (m) {
    case Method::fpca_shifted: return "fpca-shifted";
    case Method::fpca_warp: return "fpca-warp";
    case Method::pga_srvf: return "pga-srvf";
    case Method::pns_srvf: return "pns-srvf";
    }
    return "unknown";
}

Method method_from_string(const std::string& name)
{
    for (Method m : kAllMethods)
        if (to_string(m) == name) return m;
    throw DomainError("unknown method '" + name + "' (expected fpca-shifted, fpca-warp, pga-srvf or pns-srvf)");
}

HorizontalData prepare_horizontal(std::span<const SampledFunction> fs, const DpConfig& cfg,
                                  const RegistrationOptions& opts)
{
    HorizontalData d{karcher_mean_registration(fs, cfg, opts), {}, {}, {}};
    for (const auto& w : d.registration.warps) {
        d.warps.push_back(warp_inverse(w));
        d.psis.push_back(psi_of_warp(d.warps.back()));
        d.shifted.push_back(compose(d.registration.karcher_mean, d.warps.back()));
    }
    return d;
}

HorizontalAnalysis analyze(const HorizontalData& data, Method method, Index k, SphereMode mode)
{
    if (k < 1) throw DomainError("number of components must be at least 1");
    if (data.warps.size() < 3) throw DomainError("horizontal analysis needs at least 3 functions");
    const SampledFunction& mean = data.registration.karcher_mean;
    HorizontalAnalysis out{method, {}, {}, {}, {}, {}, {}};

    try {
        switch (method) {
        case Method::fpca_shifted: {
            require_variation(data.shifted, method);
            FpcaResult r = fpca_fit(data.shifted);
            for (Index c = 0; c < std::min(k, r.components()); ++c) {
                ComponentCurves cc;
                for (double s : kDisplaySteps) {
                    cc.steps.push_back(s);
                    cc.curves.push_back(fpca_project(r, c, s));
                }
                out.components.push_back(std::move(cc));
            }
            out.scores = r.scores;
            out.variance = variance_explained(r);
            out.fpca = std::move(r);
            break;
        }
        case Method::fpca_warp: {
            const std::vector<SampledFunction> ws = as_functions(data.warps);
            require_variation(ws, method);
            FpcaResult r = fpca_fit(ws);
            for (Index c = 0; c < std::min(k, r.components()); ++c) {
                ComponentCurves cc;
                for (double s : kDisplaySteps) {
                    const SampledFunction proj = fpca_project(r, c, s);
                    add_warp_curve(cc, s, mean, proj, clamp_to_warp(proj.values()));
                }
                out.components.push_back(std::move(cc));
            }
            out.scores = r.scores;
            out.variance = variance_explained(r);
            out.fpca = std::move(r);
            break;
        }
        case Method::pga_srvf:
        case Method::pns_srvf: {
            std::vector<SampledFunction> ps;
            for (const auto& p : data.psis) ps.push_back(p.function());
            require_variation(ps, method);
            const EmbeddedSrvfs emb = embed_horizontal_srvfs(data.psis);
            if (method == Method::pga_srvf) {
                PgaResult r = pga_fit(emb.points);
                for (Index c = 0; c < std::min(k, r.components()); ++c) {
                    ComponentCurves cc;
                    for (double s : kDisplaySteps) {
                        const SampledFunction w = warp_from_sphere(pga_project(r, c, s), emb);
                        add_warp_curve(cc, s, mean, w, w.values());
                    }
                    out.components.push_back(std::move(cc));
                }
                out.scores = r.scores;
                out.variance = variance_explained(r);
                out.pga = std::move(r);
            } else {
                PnsDecomposition r = pns_fit(emb.points, mode);
                const Eigen::VectorXd sd = row_variances(r.scores).cwiseSqrt();
                for (Index c = 0; c < std::min(k, r.components()); ++c) {
                    ComponentCurves cc;
                    for (double s : kDisplaySteps) {
                        Eigen::MatrixXd sc = Eigen::MatrixXd::Zero(r.components(), 1);
                        sc(c, 0) = s * sd[c];
                        const SampledFunction w = warp_from_sphere(pns_reconstruct(r, sc, r.components()).col(0), emb);
                        add_warp_curve(cc, s, mean, w, w.values());
                    }
                    out.components.push_back(std::move(cc));
                }
                out.scores = r.scores;
                out.variance = variance_explained(r);
                out.pns = std::move(r);
            }
            break;
        }
        }
    } catch (const Error&) {
        rethrow_with_context(to_string(method) + ": ");
    }
    return out;
}

HorizontalAnalysis analyze_horizontal(std::span<const SampledFunction> fs, Method method, Index k,
                                      const DpConfig& cfg, SphereMode mode)
{
    return analyze(prepare_horizontal(fs, cfg), method, k, mode);
}

std::vector<ScreeRow> scree_table(std::span<const HorizontalAnalysis> analyses, Index n_components)
{
    if (analyses.empty()) throw DomainError("scree table needs at least one analysis");
    if (n_components < 1) throw DomainError("scree table needs at least one component");
    std::vector<ScreeRow> rows;
    for (const auto& a : analyses) {
        ScreeRow row{a.method, Eigen::VectorXd::Zero(n_components), Eigen::VectorXd::Ones(n_components)};
        const Index have = std::min(n_components, a.variance.individual.size());
        row.individual.head(have) = a.variance.individual.head(have);
        row.cumulative.head(have) = a.variance.cumulative.head(have);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Index> ranks(const Eigen::VectorXd& v)
{
    std::vector<Index> order(static_cast<std::size_t>(v.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return v[a] < v[b]; });
    std::vector<Index> rank(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[static_cast<std::size_t>(order[r])] = static_cast<Index>(r);
    return rank;
}

std::vector<ScatterPoint> score_scatter(const HorizontalAnalysis& analysis, Index i, Index j,
                                        const Eigen::VectorXd& order_scores)
{
    const Index rows = analysis.scores.rows();
    if (i < 0 || j < 0 || i >= rows || j >= rows) throw DomainError("score component out of range");
    if (order_scores.size() != analysis.scores.cols()) throw DomainError("colouring scores must have one entry per sample");
    const std::vector<Index> rank = ranks(order_scores);
    std::vector<ScatterPoint> pts;
    for (Index c = 0; c < analysis.scores.cols(); ++c)
        pts.push_back({analysis.scores(i, c), analysis.scores(j, c), rank[static_cast<std::size_t>(c)]});
    return pts;
}

} // namespace hfda
