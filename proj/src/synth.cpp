#include "hfda/synth.hpp"

#include <cmath>
#include <numbers>

namespace hfda {

namespace {

double gaussian_bump(double t, double center)
{
    const double z = (t - center) / 0.06;
    return std::exp(-0.5 * z * z);
}

} // namespace

std::uint64_t SplitMix64::next()
{
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform()
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

void ToyConfig::validate() const
{
    if (n < 2) throw DomainError("toy data needs n >= 2");
    if (!(a_min < a_max)) throw DomainError("toy data needs a_min < a_max");
    if (amplitude_jitter < 0.0) throw DomainError("amplitude jitter must be nonnegative");
    if (grid_size < 2) throw DomainError("grid needs at least 2 points");
}

WarpingFunction exponential_warp(const UniformGrid& grid, double a)
{
    if (std::abs(a) < 1e-12) return WarpingFunction::identity(grid);
    const double denom = std::expm1(a);
    return WarpingFunction(SampledFunction::from(grid, [&](double t) { return std::expm1(a * t) / denom; }));
}

std::vector<double> exponential_parameters(const ToyConfig& cfg)
{
    cfg.validate();
    std::vector<double> a(static_cast<std::size_t>(cfg.n));
    for (Index i = 0; i < cfg.n; ++i)
        a[static_cast<std::size_t>(i)] = cfg.a_min + (cfg.a_max - cfg.a_min) * static_cast<double>(i) / static_cast<double>(cfg.n - 1);
    return a;
}

std::vector<WarpingFunction> gen_exponential_warps(const ToyConfig& cfg)
{
    const UniformGrid grid(cfg.grid_size);
    std::vector<WarpingFunction> out;
    for (double a : exponential_parameters(cfg)) out.push_back(exponential_warp(grid, a));
    return out;
}

double bimodal_base(double t, double left_scale, double right_scale)
{
    return 0.8 * left_scale * gaussian_bump(t, 0.35) + right_scale * gaussian_bump(t, 0.65);
}

std::vector<SampledFunction> gen_bimodal_toy(const ToyConfig& cfg)
{
    const std::vector<WarpingFunction> warps = gen_exponential_warps(cfg);
    SplitMix64 rng(cfg.seed);
    std::vector<SampledFunction> out;
    for (const auto& gamma : warps) {
        const double left = 1.0 + cfg.amplitude_jitter * rng.uniform(-1.0, 1.0);
        const double right = 1.0 + cfg.amplitude_jitter * rng.uniform(-1.0, 1.0);
        Eigen::VectorXd v(gamma.grid().size());
        for (Index j = 0; j < v.size(); ++j) v[j] = bimodal_base(gamma[j], left, right);
        out.emplace_back(gamma.grid(), std::move(v));
    }
    return out;
}

std::pair<SampledFunction, SampledFunction> gen_step_pair(const UniformGrid& grid)
{
    auto step = [](double rise) {
        return [rise](double t) { return 1.0 / (1.0 + std::exp(-(t - rise) / 0.01)); };
    };
    return {SampledFunction::from(grid, step(0.35)), SampledFunction::from(grid, step(0.65))};
}

std::vector<KnotPair> gen_2d_warp_knots(Index n, std::uint64_t seed)
{
    if (n < 3) throw DomainError("warp family needs n >= 3");
    // Mass spread along the anti-diagonal direction (+d, -d) around
    // (1/3, 2/3), arcsine-distributed so the leading component is long
    // enough for +-2 sd to cross gamma(1/3) = gamma(2/3).
    SplitMix64 rng(seed);
    std::vector<KnotPair> knots;
    while (static_cast<Index>(knots.size()) < n) {
        const double d = 0.16 * std::sin(std::numbers::pi * (rng.uniform() - 0.5));
        const double e = rng.uniform(-0.015, 0.015);
        const KnotPair k{1.0 / 3.0 + d, 2.0 / 3.0 - d + e};
        if (k.at_third > 0.01 && k.at_two_thirds - k.at_third > 0.01 && k.at_two_thirds < 0.99) knots.push_back(k);
    }
    return knots;
}

WarpingFunction two_knot_warp(const UniformGrid& grid, const KnotPair& knots)
{
    const Eigen::Vector4d x(0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0);
    const Eigen::Vector4d y(0.0, knots.at_third, knots.at_two_thirds, 1.0);
    return WarpingFunction(SampledFunction(grid, interpolate(x, y, grid.points(), Interpolation::linear)));
}

std::vector<WarpingFunction> gen_2d_warp_family(Index n, std::uint64_t seed, const UniformGrid& grid)
{
    std::vector<WarpingFunction> out;
    for (const KnotPair& k : gen_2d_warp_knots(n, seed)) out.push_back(two_knot_warp(grid, k));
    return out;
}

} // namespace hfda
