#pragma once

#include <span>
#include <vector>

#include "hfda/grid.hpp"
#include "hfda/stats.hpp"

namespace hfda {

/// L2 functional PCA with trapezoid quadrature.
struct FpcaResult {
    SampledFunction mean_fn;
    std::vector<SampledFunction> eigenfunctions;
    Eigen::VectorXd eigenvalues;
    /// components x n
    Eigen::MatrixXd scores;

    Index components() const { return eigenvalues.size(); }
};

/// Keeps min(n - 1, N) components; eigenvalues use 1/n normalisation.
FpcaResult fpca_fit(std::span<const SampledFunction> fs);

/// mean + s sqrt(lambda_k) phi_k
SampledFunction fpca_project(const FpcaResult& result, Index component, double s);

VarianceProportions variance_explained(const FpcaResult& result);

struct WarpValidityReport {
    double start_deviation = 0.0;
    double end_deviation = 0.0;
    /// Indices j with f[j+1] <= f[j].
    std::vector<Index> violations;
    bool valid = true;
};

/// Checks f against the warp requirements: f(0) = 0, f(1) = 1 within 1e-8,
/// strictly increasing.
WarpValidityReport check_warp_validity(const SampledFunction& f);

} // namespace hfda
