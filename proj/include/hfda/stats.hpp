#pragma once

#include <Eigen/Core>

#include "hfda/errors.hpp"

namespace hfda {

struct VarianceProportions {
    Eigen::VectorXd individual;
    Eigen::VectorXd cumulative;
};

/// Normalises per-component variances to proportions. A zero total throws
/// ZeroVarianceError.
VarianceProportions variance_proportions(const Eigen::VectorXd& variances);

/// Population (1/n) variance of each row about its own mean.
Eigen::VectorXd row_variances(const Eigen::MatrixXd& scores);

/// Flips each row of `scores` (and the matching column of `basis`, if any)
/// so that the entry of largest magnitude is positive. Returns the signs.
Eigen::VectorXd orient_by_scores(Eigen::MatrixXd& scores, Eigen::MatrixXd* basis = nullptr);

} // namespace hfda
