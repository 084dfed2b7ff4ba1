#pragma once

#include "hfda/sphere.hpp"
#include "hfda/stats.hpp"

namespace hfda {

/// Tangent-space PCA at the Frechet mean.
struct PgaResult {
    Eigen::VectorXd mean;
    /// Orthonormal tangent directions at `mean`, one per column.
    Eigen::MatrixXd basis;
    Eigen::VectorXd eigenvalues;
    /// components x n
    Eigen::MatrixXd scores;

    Index components() const { return eigenvalues.size(); }
};

/// Keeps at most n - 1 components, dropping directions with zero variance.
PgaResult pga_fit(const SpherePoints& xs);

/// exp_mean(s sqrt(lambda_k) e_k). Throws DomainError once the ray leaves
/// the injectivity radius (|s| sqrt(lambda_k) >= pi).
Eigen::VectorXd pga_project(const PgaResult& result, Index component, double s);

VarianceProportions variance_explained(const PgaResult& result);

} // namespace hfda
