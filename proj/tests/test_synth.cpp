#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <hfda/errors.hpp>
#include <hfda/fpca.hpp>

using namespace hfda;
using hfda::testing::sup_dist;

TEST_CASE("splitmix64 reference stream")
{
    // Reference values of the standard SplitMix64 generator seeded with 0.
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);
    SplitMix64 u(9);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        CHECK((x >= 0.0 && x < 1.0));
    }
}

TEST_CASE("exponential warps")
{
    UniformGrid g(1025);
    CHECK(exponential_warp(g, 0.0).values() == WarpingFunction::identity(g).values());
    auto w5 = exponential_warp(g, 5.0);
    CHECK(w5[512] == doctest::Approx(std::expm1(2.5) / std::expm1(5.0)).epsilon(1e-14));
    CHECK(w5[512] == doctest::Approx(0.07586).epsilon(1e-4));

    ToyConfig cfg;
    auto a = exponential_parameters(cfg);
    CHECK(a.size() == 30);
    CHECK(a.front() == -5.0);
    CHECK(a.back() == 5.0);
    for (const auto& w : gen_exponential_warps(cfg)) {
        CHECK(w[0] == 0.0);
        CHECK(w[w.grid().size() - 1] == 1.0);
    }
}

TEST_CASE("negated parameter is the point reflection of the warp")
{
    // gamma_{-a}(t) = 1 - gamma_a(1 - t); the two are not group inverses.
    UniformGrid g(1024);
    for (double a : {0.7, 2.0, 5.0}) {
        auto plus = exponential_warp(g, a);
        auto minus = exponential_warp(g, -a);
        Eigen::VectorXd reflected = Eigen::VectorXd::Ones(g.size()) - plus.values().reverse();
        CHECK(sup_dist(minus.values(), reflected) <= 1e-14);
    }
    auto inv = warp_compose(exponential_warp(g, 5.0), exponential_warp(g, -5.0));
    CHECK(inv[512] > 0.6);  // composition is far from the identity
}

TEST_CASE("bimodal toy data")
{
    ToyConfig cfg;
    SUBCASE("zero jitter at a=0 is the base")
    {
        cfg.n = 3;
        cfg.a_min = -1;
        cfg.a_max = 1;
        cfg.amplitude_jitter = 0.0;
        auto fs = gen_bimodal_toy(cfg);
        auto base = SampledFunction::from(UniformGrid(256), [](double t) { return bimodal_base(t); });
        CHECK(fs[1].values() == base.values());
    }
    SUBCASE("every function is bimodal and peaks are ordered")
    {
        auto fs = gen_bimodal_toy(cfg);
        CHECK(fs.size() == 30);
        double prev = -INFINITY;
        for (const auto& f : fs) {
            CHECK(testing::local_maxima(f.values()).size() == 2);
            const double first = testing::two_peaks(f).first;
            CHECK(first >= prev);
            prev = first;
        }
    }
    SUBCASE("pure function of config and seed")
    {
        auto a = gen_bimodal_toy(cfg), b = gen_bimodal_toy(cfg);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].values() == b[i].values());
        cfg.seed = 8;
        auto c = gen_bimodal_toy(cfg);
        CHECK(c[3].values() != a[3].values());
    }
    SUBCASE("invalid configs")
    {
        cfg.n = 1;
        CHECK_THROWS_AS(gen_bimodal_toy(cfg), DomainError);
        cfg.n = 5;
        cfg.a_min = 2;
        cfg.a_max = 1;
        CHECK_THROWS_AS(gen_bimodal_toy(cfg), DomainError);
    }
}

TEST_CASE("step pair")
{
    UniformGrid g(256);
    auto [f1, f2] = gen_step_pair(g);
    CHECK(std::abs(f1[0]) <= 1e-6);
    CHECK(std::abs(f2[0]) <= 1e-6);
    CHECK(std::abs(f1[255] - 1) <= 1e-6);
    CHECK(std::abs(f2[255] - 1) <= 1e-6);
    auto shifted = SampledFunction::from(UniformGrid(301), [&](double t) {
        return 1.0 / (1.0 + std::exp(-(t + 0.3 - 0.65) / 0.01));
    });
    auto direct = SampledFunction::from(UniformGrid(301), [&](double t) {
        return 1.0 / (1.0 + std::exp(-(t - 0.35) / 0.01));
    });
    CHECK(sup_dist(shifted.values(), direct.values()) <= 1e-8);
    // on the shared grid, nodes 0.3 apart
    UniformGrid g11(11);
    auto [a, b] = gen_step_pair(g11);
    for (Index j = 0; j + 3 < 11; ++j) CHECK(std::abs(a[j] - b[j + 3]) <= 1e-8);
}

TEST_CASE("two-knot warp family")
{
    UniformGrid g(301);
    auto fam = gen_2d_warp_family(40, 11, g);
    CHECK(fam.size() == 40);
    double mean_third = 0;
    for (const auto& w : fam) {
        CHECK(check_warp_validity(w.function()).valid);
        mean_third += w[100] / 40.0;
    }
    CHECK(std::abs(mean_third - 1.0 / 3.0) <= 0.1);

    std::vector<SampledFunction> fs;
    for (const auto& w : fam) fs.push_back(w.function());
    auto res = fpca_fit(fs);
    bool crossed = false;
    for (double s : {-2.0, -1.0, 1.0, 2.0}) {
        auto p = fpca_project(res, 0, s);
        crossed = crossed || p[100] > p[200];
    }
    CHECK(crossed);
    CHECK_THROWS_AS(gen_2d_warp_family(2, 1, g), DomainError);
}
