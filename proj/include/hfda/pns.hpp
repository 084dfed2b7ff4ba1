#pragma once

#include <vector>

#include "hfda/sphere.hpp"
#include "hfda/stats.hpp"

namespace hfda {

struct PnsLevel {
    Subsphere sphere;
    DimensionDrop drop;
    /// Product of sin(r) over the levels fitted before this one.
    double scale;
};

/// Backward nested-sphere decomposition. Score row 0 is PNS1, the angular
/// deviation on the final circle; row k >= 1 is the signed residual of
/// level (levels.size() - k). Every row is scaled to arc length on the
/// original sphere.
struct PnsDecomposition {
    SpanBasis span;
    std::vector<PnsLevel> levels;
    double circle_mean = 0.0;
    double circle_scale = 1.0;
    /// +1 or -1; applied to circle deviations so PNS1 has a canonical sign.
    double circle_orientation = 1.0;
    Eigen::MatrixXd scores;
    SphereMode mode = SphereMode::small;

    Index components() const { return scores.rows(); }
};

PnsDecomposition pns_fit(const SpherePoints& xs, SphereMode mode = SphereMode::small);

/// Maps score columns (components() rows) back to the sphere, keeping the
/// first `rank` components and zeroing the rest.
SpherePoints pns_reconstruct(const PnsDecomposition& decomp, const Eigen::MatrixXd& scores, Index rank);

/// The point reached with every score zero.
Eigen::VectorXd pns_mean(const PnsDecomposition& decomp);

VarianceProportions variance_explained(const PnsDecomposition& decomp);

/// Frechet mean angle of points on S^1, in [0, 2 pi).
double circle_frechet_mean(const Eigen::VectorXd& angles);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

} // namespace hfda
