#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <hfda/errors.hpp>

using namespace hfda;
using hfda::testing::sup_dist;

namespace {

WarpingFunction exp_warp(const UniformGrid& g, double a)
{
    return WarpingFunction(SampledFunction::from(g, [a](double t) { return std::expm1(a * t) / std::expm1(a); }));
}

} // namespace

TEST_CASE("warp construction snaps endpoints and rejects non-monotone samples")
{
    UniformGrid g(5);
    WarpingFunction w(SampledFunction(g, (Eigen::VectorXd(5) << 1e-10, 0.2, 0.5, 0.7, 1 - 1e-10).finished()));
    CHECK(w[0] == 0.0);
    CHECK(w[4] == 1.0);
    CHECK_THROWS_AS(WarpingFunction(SampledFunction(g, (Eigen::VectorXd(5) << 0, 0.5, 0.4, 0.7, 1).finished())),
                    MonotonicityError);
    CHECK_THROWS_AS(WarpingFunction(SampledFunction(g, (Eigen::VectorXd(5) << 0, 0.2, 0.4, 0.7, 0.9).finished())),
                    DomainError);
}

TEST_CASE("srvf of known functions")
{
    UniformGrid g(256);
    auto q = srvf_of_fn(SampledFunction::from(g, [](double t) { return t * t; }));
    CHECK(sup_dist(q.values(), (2 * g.points()).cwiseSqrt()) <= 2e-2);
    CHECK(srvf_of_fn(SampledFunction::constant(g, 3.0)).values().isZero(0.0));
    auto dec = srvf_of_fn(SampledFunction::from(g, [](double t) { return -2 * t; }));
    CHECK(sup_dist(dec.values(), Eigen::VectorXd::Constant(256, -std::sqrt(2.0))) <= 1e-12);
}

TEST_CASE("srvf inverse")
{
    UniformGrid g(1024);
    auto f = SampledFunction::from(g, [](double t) { return 0.3 + std::sin(3 * t) + t * t; });
    auto back = fn_of_srvf(srvf_of_fn(f), f[0]);
    CHECK(sup_dist(back.values(), f.values()) <= 1e-3);
    auto c = fn_of_srvf(Srvf(SampledFunction::constant(g, 0.0)), 2.5);
    CHECK(c.values().isApproxToConstant(2.5));
}

TEST_CASE("psi lies on the unit sphere")
{
    std::mt19937_64 rng(2);
    UniformGrid g(1024);
    for (int trial = 0; trial < 20; ++trial) {
        auto psi = psi_of_warp(testing::random_warp(g, rng));
        CHECK(std::abs(l2_norm(psi.function()) - 1.0) <= 1e-12);
        CHECK(psi.values().minCoeff() >= 0.0);
    }
    auto id = psi_of_warp(WarpingFunction::identity(g));
    CHECK(sup_dist(id.values(), Eigen::VectorXd::Ones(1024)) <= 1e-12);
}

TEST_CASE("psi and warp round trips")
{
    UniformGrid g(1024);
    for (double a : {-4.0, -1.5, 0.5, 3.0}) {
        auto gamma = exp_warp(g, a);
        auto psi = psi_of_warp(gamma);
        auto back = warp_of_psi(psi);
        CHECK(sup_dist(back.values(), gamma.values()) <= 1e-4);
        auto psi2 = psi_of_warp(back);
        CHECK(sup_dist(psi2.values(), psi.values()) <= 1e-4);
    }
}

TEST_CASE("warp_of_psi accepts signed sphere points")
{
    UniformGrid g(129);
    auto xi = SampledFunction::from(g, [](double t) { return std::cos(3 * t); });
    auto w = warp_of_psi(xi);
    CHECK(w[0] == 0.0);
    CHECK(w[128] == 1.0);
}

TEST_CASE("warp action")
{
    UniformGrid g(1024);
    auto q = Srvf(SampledFunction::from(g, [](double t) { return std::sin(5 * t) + 0.2; }));
    auto same = warp_action(q, WarpingFunction::identity(g));
    CHECK(sup_dist(same.values(), q.values()) <= 1e-12);
    auto zero = warp_action(Srvf(SampledFunction::constant(g, 0.0)), exp_warp(g, 2.0));
    CHECK(zero.values().isZero(0.0));
}

TEST_CASE("warp action is an isometry on random smooth triples")
{
    std::mt19937_64 rng(17);
    UniformGrid g(1024);
    for (int trial = 0; trial < 20; ++trial) {
        Srvf q1(testing::random_smooth(g, rng)), q2(testing::random_smooth(g, rng));
        auto gamma = testing::random_warp(g, rng);
        const double before = l2_dist(q1.function(), q2.function());
        const double after = l2_dist(warp_action(q1, gamma).function(), warp_action(q2, gamma).function());
        CHECK(std::abs(after - before) <= 1e-2 * before);
        const double norm = l2_norm(q1.function());
        CHECK(std::abs(l2_norm(warp_action(q1, gamma).function()) - norm) <= 1e-2 * norm);
    }
}

TEST_CASE("warp group operations")
{
    UniformGrid g(1024);
    auto gamma = exp_warp(g, 3.0);
    auto id = WarpingFunction::identity(g);
    CHECK(sup_dist(warp_compose(gamma, id).values(), gamma.values()) <= 1e-14);
    CHECK(sup_dist(warp_inverse(id).values(), id.values()) <= 1e-14);
    CHECK(sup_dist(warp_compose(gamma, warp_inverse(gamma)).values(), id.values()) <= 1e-4);
    CHECK(sup_dist(warp_compose(warp_inverse(gamma), gamma).values(), id.values()) <= 1e-4);
}

TEST_CASE("compose with a warp")
{
    UniformGrid g(257);
    auto gamma = exp_warp(g, 1.3);
    auto lin = SampledFunction::from(g, [](double t) { return t; });
    CHECK(sup_dist(compose(lin, gamma).values(), gamma.values()) <= 1e-14);
}

TEST_CASE("warp derivative stays positive on kinked warps")
{
    UniformGrid g(31);
    auto kinked = WarpingFunction(SampledFunction::from(g, [](double t) { return t < 0.1 ? 5 * t : 0.5 + (t - 0.1) * 5.0 / 9.0; }));
    CHECK(warp_derivative(kinked).values().minCoeff() > 0.0);
}
