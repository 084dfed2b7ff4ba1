#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hfda/srvf.hpp"

namespace hfda {

/// One admissible lattice move: `dt` cells along the source axis and `dg`
/// cells along the warp-value axis (slope dg/dt).
struct DpStep {
    int dt;
    int dg;
};

/// All coprime (dt, dg) with 1 <= dt, dg <= max_step, ordered by closeness of
/// the slope to 1 (ties: shorter step first). This order is the tie-break.
std::vector<DpStep> coprime_steps(int max_step);

/// coprime_steps(max_coprime) plus the steep moves (1,k) and (k,1) for
/// max_coprime < k <= max_slope, which reach the near-flat and near-vertical
/// slopes of strongly warped data at little extra cost.
std::vector<DpStep> extended_steps(int max_coprime, int max_slope);

struct DpConfig {
    Index grid_size = 256;
    std::vector<DpStep> steps = extended_steps(5, 12);
    /// Gaussian pre-smoothing bandwidth on [0,1]; disabled when empty.
    std::optional<double> smoothing_bandwidth;
    /// Sine modes used to polish the lattice warp; 0 returns the raw DP path.
    int refine_basis = 64;
    int refine_iterations = 50;

    void validate() const;
    int max_step() const;
};

struct Alignment {
    WarpingFunction warp;
    double cost;
};

/// Fisher-Rao alignment: gamma* minimising |q1 - (q2 o gamma) sqrt(gamma')|.
Alignment pairwise_align(const Srvf& q1, const Srvf& q2, const DpConfig& cfg = {});

/// Plain L2 alignment: gamma* minimising |f1 - f2 o gamma|. Not symmetric;
/// kept to demonstrate why the SRVF criterion is used.
Alignment l2_align(const SampledFunction& f1, const SampledFunction& f2, const DpConfig& cfg = {});

struct RegistrationOptions {
    double tol = 1e-4;
    int max_iter = 20;
};

struct RegistrationResult {
    SampledFunction karcher_mean;
    Srvf template_srvf;
    /// Aligning warps: aligned[i] = f_i o warps[i].
    std::vector<WarpingFunction> warps;
    std::vector<SampledFunction> aligned;
    int iterations = 0;
    double final_cost = 0.0;
    bool converged = false;
    std::vector<double> template_changes;
};

RegistrationResult karcher_mean_registration(std::span<const SampledFunction> fs, const DpConfig& cfg = {},
                                             const RegistrationOptions& opts = {});

struct CenteredWarps {
    std::vector<WarpingFunction> warps;
    WarpingFunction mean_warp;
};

/// gamma_i o mean^-1 where `mean` is the Frechet mean on the psi sphere,
/// repeated until the returned warps average to the identity. `mean_warp` is
/// the accumulated correction, so gamma_i = warps[i] o mean_warp.
CenteredWarps center_warps(std::span<const WarpingFunction> warps);

/// h_i = mean o gamma_i.
std::vector<SampledFunction> horizontally_shifted(const SampledFunction& mean,
                                                  std::span<const WarpingFunction> warps);

} // namespace hfda
