#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <hfda/errors.hpp>
#include <hfda/pipeline.hpp>

#include <map>

using namespace hfda;
using hfda::testing::sup_dist;

namespace {

const HorizontalData& toy_data()
{
    static const HorizontalData d = prepare_horizontal(gen_bimodal_toy(ToyConfig{}));
    return d;
}

const HorizontalAnalysis& toy_analysis(Method m)
{
    static std::map<Method, HorizontalAnalysis> cache;
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, analyze(toy_data(), m, 3)).first;
    return it->second;
}

double spread(const Eigen::VectorXd& v)
{
    return std::sqrt((v.array() - v.mean()).square().mean());
}

// RMS orthogonal distance to the total-least-squares line.
double line_residual(const Eigen::VectorXd& x, const Eigen::VectorXd& y)
{
    Eigen::MatrixXd p(x.size(), 2);
    p.col(0) = x.array() - x.mean();
    p.col(1) = y.array() - y.mean();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(p);
    return svd.singularValues()[1] / std::sqrt(static_cast<double>(x.size()));
}

} // namespace

TEST_CASE("method names round-trip")
{
    for (Method m : kAllMethods) CHECK(method_from_string(to_string(m)) == m);
    CHECK(to_string(Method::pns_srvf) == "pns-srvf");
    CHECK_THROWS_AS(method_from_string("pca"), DomainError);
}

TEST_CASE("horizontal data objects share one registration")
{
    const auto& d = toy_data();
    const auto& reg = d.registration;
    REQUIRE(d.warps.size() == reg.warps.size());
    for (std::size_t i = 0; i < d.warps.size(); ++i) {
        CHECK(sup_dist(warp_compose(d.warps[i], reg.warps[i]).values(), d.warps[i].grid().points()) <= 2e-2);
        CHECK(sup_dist(d.shifted[i].values(), compose(reg.karcher_mean, d.warps[i]).values()) == 0.0);
        CHECK(sup_dist(d.psis[i].values(), psi_of_warp(d.warps[i]).values()) == 0.0);
    }
}

TEST_CASE("PNS1 moves both peaks")
{
    const auto& a = toy_analysis(Method::pns_srvf);
    const auto& c = a.components.at(0);
    REQUIRE(c.steps.front() == -2.0);
    REQUIRE(c.steps.back() == 2.0);
    auto [l1, r1] = testing::two_peaks(c.curves.front());
    auto [l2, r2] = testing::two_peaks(c.curves.back());
    const double cell = c.curves.front().grid().spacing();
    CHECK(std::abs(l1 - l2) > cell);
    CHECK(std::abs(r1 - r2) > cell);
}

TEST_CASE("FPCA of shifted functions leaves the orbit of the mean")
{
    const auto& a = toy_analysis(Method::fpca_shifted);
    bool other = false;
    for (const auto& comp : a.components)
        for (const auto& f : comp.curves) other = other || testing::local_maxima(f.values()).size() != 2;
    CHECK(other);
    for (const auto& comp : a.components) CHECK(comp.warps.empty());
}

TEST_CASE("SRVF methods emit the mean composed with valid warps")
{
    const auto& d = toy_data();
    for (Method m : {Method::pga_srvf, Method::pns_srvf}) {
        const auto& a = toy_analysis(m);
        for (const auto& comp : a.components) {
            REQUIRE(comp.warps.size() == comp.curves.size());
            for (std::size_t s = 0; s < comp.curves.size(); ++s) {
                CHECK(check_warp_validity(comp.warps[s]).valid);
                CHECK(comp.validity[s].valid);
                CHECK(sup_dist(comp.curves[s].values(),
                               compose(d.registration.karcher_mean, WarpingFunction(comp.warps[s])).values()) == 0.0);
            }
        }
    }
}

TEST_CASE("FPCA of warps records validity of every projection")
{
    const auto& a = toy_analysis(Method::fpca_warp);
    const auto& mean = toy_data().registration.karcher_mean;
    for (std::size_t k = 0; k < a.components.size(); ++k) {
        const auto& comp = a.components[k];
        REQUIRE(comp.validity.size() == comp.steps.size());
        for (std::size_t s = 0; s < comp.steps.size(); ++s) {
            const auto raw = fpca_project(*a.fpca, static_cast<Index>(k), comp.steps[s]);
            CHECK(comp.warps[s].values() == raw.values());
            CHECK(comp.validity[s].valid == check_warp_validity(raw).valid);
            // displayed curves stay pinned to the mean's endpoints even when the warp is not
            const auto& c = comp.curves[s];
            CHECK(c[0] == doctest::Approx(mean[0]).epsilon(1e-12));
            CHECK(c[c.size() - 1] == doctest::Approx(mean[mean.size() - 1]).epsilon(1e-12));
            if (comp.validity[s].valid)
                CHECK(sup_dist(c.values(), compose(mean, WarpingFunction(raw)).values()) <= 1e-12);
        }
    }
}

TEST_CASE("the s = 0 curve is the method's mean")
{
    const auto& d = toy_data();
    const auto& mean = d.registration.karcher_mean;
    for (Method m : kAllMethods) {
        const auto& a = toy_analysis(m);
        for (const auto& comp : a.components) {
            const auto& mid = comp.curves.at(2);
            REQUIRE(comp.steps.at(2) == 0.0);
            if (m == Method::fpca_shifted)
                CHECK(sup_dist(mid.values(), a.fpca->mean_fn.values()) <= 1e-12);
            else if (m == Method::fpca_warp)
                CHECK(sup_dist(mid.values(), compose(mean, WarpingFunction(comp.warps[2])).values()) == 0.0);
            else
                CHECK(mid.values() == a.components.front().curves.at(2).values());
        }
    }
}

TEST_CASE("variance proportions sum to one")
{
    for (Method m : kAllMethods) {
        const auto& v = toy_analysis(m).variance;
        CHECK(std::abs(v.individual.sum() - 1.0) <= 1e-12);
        CHECK(std::abs(v.cumulative[v.cumulative.size() - 1] - 1.0) <= 1e-12);
    }
}

TEST_CASE("PNS leaves little for its second component")
{
    const auto& a = toy_analysis(Method::pns_srvf);
    auto pts = score_scatter(a, 0, 1, a.scores.row(0).transpose());
    Eigen::VectorXd x(pts.size()), y(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        x[static_cast<Index>(i)] = pts[i].x;
        y[static_cast<Index>(i)] = pts[i].y;
    }
    CHECK(spread(y) <= 0.2 * spread(x));
}

TEST_CASE("PG1 against PG2 is curved")
{
    const auto& a = toy_analysis(Method::pga_srvf);
    const Eigen::VectorXd x = a.scores.row(0).transpose(), y = a.scores.row(1).transpose();
    CHECK(line_residual(x, y) >= 0.05 * spread(x));
}

TEST_CASE("score scatter")
{
    const auto& a = toy_analysis(Method::pns_srvf);
    const Eigen::VectorXd order = a.scores.row(0).transpose();
    auto diag = score_scatter(a, 0, 0, order);
    REQUIRE(diag.size() == static_cast<std::size_t>(a.scores.cols()));
    for (const auto& p : diag) CHECK(p.x == p.y);
    const auto r = ranks(order);
    for (std::size_t i = 0; i < diag.size(); ++i) CHECK(diag[i].color == r[i]);
    CHECK(ranks(Eigen::Vector3d(2.0, -1.0, 2.0)) == std::vector<Index>{1, 0, 2});
}

TEST_CASE("scree table")
{
    std::vector<HorizontalAnalysis> one{toy_analysis(Method::pga_srvf)};
    auto rows = scree_table(one, 1);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].cumulative[0] == rows[0].individual[0]);

    std::vector<HorizontalAnalysis> all;
    for (Method m : kAllMethods) all.push_back(toy_analysis(m));
    const Index wide = 40;
    auto padded = scree_table(all, wide);
    REQUIRE(padded.size() == 4);
    for (const auto& row : padded) {
        CHECK(row.individual.size() == wide);
        CHECK(row.individual[wide - 1] == 0.0);
        CHECK(std::abs(row.cumulative[wide - 1] - 1.0) <= 1e-12);
    }
    CHECK_THROWS_AS(scree_table(std::vector<HorizontalAnalysis>{}, 3), DomainError);
}

TEST_CASE("identical functions have no horizontal variance")
{
    UniformGrid g(64);
    auto f = SampledFunction::from(g, [](double t) { return bimodal_base(t); });
    std::vector<SampledFunction> fs(4, f);
    DpConfig c;
    c.grid_size = 64;
    auto d = prepare_horizontal(fs, c);
    for (Method m : kAllMethods) CHECK_THROWS_AS(analyze(d, m, 2), ZeroVarianceError);
}

TEST_CASE("preconditions")
{
    UniformGrid g(64);
    std::vector<SampledFunction> two{SampledFunction::constant(g, 1.0), SampledFunction::constant(g, 2.0)};
    CHECK_THROWS_AS(analyze_horizontal(two, Method::pns_srvf, 1), DomainError);
    CHECK_THROWS_AS(analyze(toy_data(), Method::pns_srvf, 0), DomainError);
}

TEST_CASE("analysis is deterministic")
{
    ToyConfig c;
    c.n = 8;
    c.grid_size = 128;
    DpConfig d;
    d.grid_size = 128;
    auto fs = gen_bimodal_toy(c);
    auto a = analyze_horizontal(fs, Method::pns_srvf, 2, d);
    auto b = analyze_horizontal(fs, Method::pns_srvf, 2, d);
    CHECK(a.scores == b.scores);
    for (std::size_t k = 0; k < a.components.size(); ++k)
        for (std::size_t s = 0; s < a.components[k].curves.size(); ++s)
            CHECK(a.components[k].curves[s].values() == b.components[k].curves[s].values());
}
