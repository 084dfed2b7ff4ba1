#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <hfda/errors.hpp>
#include <hfda/io.hpp>

using namespace hfda;
using hfda::testing::sup_dist;

TEST_CASE("grid nodes and weights")
{
    UniformGrid g(11);
    CHECK(g[0] == 0.0);
    CHECK(g[10] == 1.0);
    CHECK(g.spacing() == doctest::Approx(0.1));
    CHECK(g.weights().sum() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(UniformGrid(1), DomainError);
}

TEST_CASE("non-finite samples are rejected")
{
    UniformGrid g(3);
    CHECK_THROWS(SampledFunction(g, Eigen::Vector3d(0, NAN, 1)));
    CHECK_THROWS(SampledFunction(g, Eigen::Vector2d(0, 1)));
}

TEST_CASE("derivative")
{
    SUBCASE("linear is exact everywhere")
    {
        UniformGrid g(11);
        auto d = derivative(SampledFunction::from(g, [](double t) { return 3 * t; }));
        for (Index j = 0; j < g.size(); ++j) CHECK(d[j] == doctest::Approx(3.0).epsilon(1e-13));
    }
    SUBCASE("quadratic against analytic derivative")
    {
        UniformGrid g(101);
        auto d = derivative(SampledFunction::from(g, [](double t) { return t * t; }));
        CHECK(sup_dist(d.values(), 2 * g.points()) <= 1e-3);
    }
    SUBCASE("constant gives zero")
    {
        auto d = derivative(SampledFunction::constant(UniformGrid(17), 5.0));
        CHECK(d.values().cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("integrate")
{
    CHECK(integrate(SampledFunction::constant(UniformGrid(33), 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(integrate(SampledFunction::from(UniformGrid(2), [](double t) { return t; })) == 0.5);
    UniformGrid g(256);
    CHECK(std::abs(integrate(SampledFunction::from(g, [](double t) { return std::sin(2 * M_PI * t); }))) <= 1e-6);
}

TEST_CASE("integrate is linear and agrees with the cumulative integral")
{
    std::mt19937_64 rng(3);
    UniformGrid g(97);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = testing::random_smooth(g, rng);
        auto h = testing::random_smooth(g, rng);
        const double a = 1.7, b = -0.3;
        SampledFunction comb(g, a * f.values() + b * h.values());
        CHECK(integrate(comb) == doctest::Approx(a * integrate(f) + b * integrate(h)).epsilon(1e-13));
        CHECK(cumulative_integral(f)[g.size() - 1] == doctest::Approx(integrate(f)).epsilon(1e-13));
    }
}

TEST_CASE("cumulative integral")
{
    UniformGrid g(101);
    auto one = cumulative_integral(SampledFunction::constant(g, 1.0));
    CHECK(sup_dist(one.values(), g.points()) <= 1e-14);
    auto sq = cumulative_integral(SampledFunction::from(g, [](double t) { return 2 * t; }));
    CHECK(sup_dist(sq.values(), g.points().array().square().matrix()) <= 1e-4);
    CHECK(cumulative_integral(SampledFunction::constant(g, 0.0)).values().isZero(0.0));
}

TEST_CASE("resample")
{
    UniformGrid g(21), fine(81);
    auto lin = SampledFunction::from(g, [](double t) { return 2 * t - 1; });
    CHECK(resample(lin, g).values() == lin.values());
    auto up = resample(lin, fine);
    CHECK(sup_dist(up.values(), (2 * fine.points().array() - 1).matrix()) <= 1e-14);

    auto sq = SampledFunction::from(g, [](double t) { return t * t; });
    auto mono = resample(sq, UniformGrid(41), Interpolation::monotone_cubic);
    for (Index j = 0; j + 1 < mono.size(); ++j) CHECK(mono[j + 1] > mono[j]);

    CHECK_THROWS_AS(resample(lin, UniformGrid(5, 0.0, 2.0)), DomainError);
}

TEST_CASE("monotone cubic keeps random increasing data increasing")
{
    std::mt19937_64 rng(11);
    std::exponential_distribution<double> gap(1.0);
    for (int trial = 0; trial < 20; ++trial) {
        UniformGrid g(15);
        Eigen::VectorXd v(15);
        v[0] = 0;
        for (Index j = 1; j < 15; ++j) v[j] = v[j - 1] + gap(rng) + 1e-6;
        auto out = resample(SampledFunction(g, v), UniformGrid(113), Interpolation::monotone_cubic);
        for (Index j = 0; j + 1 < out.size(); ++j) CHECK(out[j + 1] > out[j]);
    }
}

TEST_CASE("L2 geometry")
{
    UniformGrid g(512);
    auto one = SampledFunction::constant(g, 1.0);
    CHECK(l2_inner(one, one) == doctest::Approx(1.0).epsilon(1e-14));
    auto s = SampledFunction::from(g, [](double t) { return std::sin(2 * M_PI * t); });
    auto c = SampledFunction::from(g, [](double t) { return std::cos(2 * M_PI * t); });
    CHECK(std::abs(l2_inner(s, c)) <= 1e-6);
    CHECK(l2_dist(s, s) == 0.0);
    CHECK_THROWS_AS(l2_dist(s, SampledFunction::constant(UniformGrid(10), 1.0)), GridMismatchError);
}

TEST_CASE("L2 triangle inequality on random triples")
{
    std::mt19937_64 rng(5);
    UniformGrid g(64);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = testing::random_smooth(g, rng), b = testing::random_smooth(g, rng), c = testing::random_smooth(g, rng);
        CHECK(l2_dist(a, c) <= l2_dist(a, b) + l2_dist(b, c) + 1e-12);
    }
}

TEST_CASE("function CSV round trip")
{
    UniformGrid g(9);
    std::mt19937_64 rng(1);
    std::vector<SampledFunction> fs{testing::random_smooth(g, rng), testing::random_smooth(g, rng)};
    auto table = make_table(fs, "f");
    auto text = to_function_csv(table);
    CHECK(text.rfind("t,f1,f2\n", 0) == 0);
    auto back = parse_function_csv(text);
    CHECK(back.names == table.names);
    CHECK(back.grid == g);
    for (std::size_t i = 0; i < fs.size(); ++i) CHECK(back.functions[i].values() == fs[i].values());
}

TEST_CASE("function CSV diagnostics name the row")
{
    CHECK_THROWS_WITH_AS(parse_function_csv("t,f1\n0,1\n0.5,x\n1,2\n"), doctest::Contains("row"), IoError);
    CHECK_THROWS_AS(parse_function_csv("t,f1\n0,1\n0.7,1\n1,2\n"), IoError);
}
