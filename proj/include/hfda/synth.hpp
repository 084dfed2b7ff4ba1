#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hfda/srvf.hpp"

namespace hfda {

/// SplitMix64 stream. Fully specified so any implementation reproduces the
/// same datasets: state += 0x9E3779B97F4A7C15, then the standard
/// (30, 27, 31) xor-shift-multiply finaliser; uniform() takes the top 53 bits.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

struct ToyConfig {
    Index n = 30;
    double a_min = -5.0;
    double a_max = 5.0;
    Index grid_size = 256;
    std::uint64_t seed = 7;
    double amplitude_jitter = 0.15;

    void validate() const;
};

/// gamma_a(t) = (e^{a t} - 1) / (e^a - 1); the identity at a = 0.
WarpingFunction exponential_warp(const UniformGrid& grid, double a);

/// The warp parameters a_i, equally spaced on [a_min, a_max].
std::vector<double> exponential_parameters(const ToyConfig& cfg);

std::vector<WarpingFunction> gen_exponential_warps(const ToyConfig& cfg);

/// Two-bump template: 0.8 N(0.35, 0.06) + 1.0 N(0.65, 0.06) (unnormalised Gaussians).
double bimodal_base(double t, double left_scale = 1.0, double right_scale = 1.0);

/// f_i = base_i o gamma_i with per-bump amplitudes 1 + jitter * U[-1, 1].
std::vector<SampledFunction> gen_bimodal_toy(const ToyConfig& cfg);

/// Logistic steps of width 0.01 rising at 0.35 (first) and 0.65 (second).
std::pair<SampledFunction, SampledFunction> gen_step_pair(const UniformGrid& grid);

/// Knot values (gamma(1/3), gamma(2/3)) of one piecewise-linear warp.
struct KnotPair {
    double at_third;
    double at_two_thirds;
};

std::vector<KnotPair> gen_2d_warp_knots(Index n, std::uint64_t seed);
WarpingFunction two_knot_warp(const UniformGrid& grid, const KnotPair& knots);
std::vector<WarpingFunction> gen_2d_warp_family(Index n, std::uint64_t seed, const UniformGrid& grid);

} // namespace hfda
