#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "hfda/errors.hpp"
#include "hfda/srvf.hpp"

namespace hfda {

/// Points on a unit sphere are unit column vectors; collections of points
/// are matrices whose columns are the points.
using SpherePoints = Eigen::MatrixXd;

/// Great-circle distance in [0, pi].
template <typename DX, typename DY>
typename DX::Scalar geodesic_dist(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y)
{
    using std::atan2;
    // 2 atan2(|x-y|, |x+y|) equals acos(<x,y>) but keeps full precision near 0 and pi.
    return typename DX::Scalar(2) * atan2((x - y).norm(), (x + y).norm());
}

template <typename DB, typename DV>
Eigen::Matrix<typename DB::Scalar, Eigen::Dynamic, 1> exp_map(const Eigen::MatrixBase<DB>& base,
                                                              const Eigen::MatrixBase<DV>& v)
{
    using Scalar = typename DB::Scalar;
    using std::cos;
    using std::sin;
    const Scalar len = v.norm();
    if (len < Scalar(1e-14)) return base;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out = cos(len) * base + (sin(len) / len) * v;
    return out.normalized();
}

/// Inverse of exp_map; throws SingularityError at the antipode of `base`.
template <typename DB, typename DX>
Eigen::Matrix<typename DB::Scalar, Eigen::Dynamic, 1> log_map(const Eigen::MatrixBase<DB>& base,
                                                              const Eigen::MatrixBase<DX>& x)
{
    using Scalar = typename DB::Scalar;
    using std::atan2;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w = x - x.dot(base) * base;
    const Scalar theta = geodesic_dist(base, x);
    if (theta < Scalar(1e-14)) return Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(base.size());
    if (std::numbers::pi_v<Scalar> - theta < Scalar(1e-10))
        throw SingularityError("log map is undefined at the antipode");
    return (theta / w.norm()) * w;
}

/// (axis, radius): the points at geodesic distance `radius` from `axis`.
struct Subsphere {
    Eigen::VectorXd axis;
    double radius = std::numbers::pi / 2;

    /// Replaces (v, r) by (-v, pi - r) when r > pi/2.
    Subsphere canonical() const;
};

enum class SphereMode { small, great };

struct SubsphereFit {
    Subsphere sphere;
    /// Signed residuals dist(x_i, axis) - radius, for the canonical sphere.
    Eigen::VectorXd residuals;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct EmbeddedSrvfs {
    SpherePoints points;
    Eigen::VectorXd sqrt_weights;
    UniformGrid grid;
};

/// coords_j = psi(t_j) sqrt(w_j) so Euclidean geometry matches L2 geometry.
EmbeddedSrvfs embed_horizontal_srvfs(const std::vector<HorizontalSrvf>& psis);
SampledFunction unembed(const Eigen::VectorXd& point, const EmbeddedSrvfs& embedding);

/// Intrinsic mean by fixed-point iteration on the tangent mean.
/// Data must lie in an open hemisphere; otherwise ConvergenceError.
Eigen::VectorXd frechet_mean(const SpherePoints& xs, double tol = 1e-12, int max_iter = 1000);

/// Least-squares subsphere: minimises sum (dist(x_i, v) - r)^2 by
/// Gauss-Newton on the axis with halving line search. In great mode r = pi/2.
SubsphereFit fit_subsphere(const SpherePoints& xs, SphereMode mode = SphereMode::small);

double subsphere_objective(const SpherePoints& xs, const Subsphere& sphere);

Eigen::VectorXd project_to_subsphere(const Eigen::VectorXd& x, const Subsphere& sphere);

/// Householder reflection taking the subsphere axis to the last basis
/// vector, followed by dropping that coordinate and rescaling by 1/sin(r).
class DimensionDrop {
public:
    explicit DimensionDrop(const Subsphere& sphere);

    Eigen::Index ambient_dim() const { return dim_; }
    double radius() const { return radius_; }
    const Eigen::VectorXd& householder() const { return u_; }

    Eigen::MatrixXd apply(const SpherePoints& xs) const;
    Eigen::MatrixXd lift(const Eigen::MatrixXd& ys) const;

private:
    Eigen::MatrixXd reflect(Eigen::MatrixXd m) const;

    Eigen::Index dim_;
    double radius_;
    Eigen::VectorXd u_;  // empty when the axis is already e_last
};

struct DroppedPoints {
    SpherePoints points;
    DimensionDrop record;
};

DroppedPoints drop_dimension(const SpherePoints& xs, const Subsphere& sphere);

/// Orthonormal basis of the linear span of a point set.
class SpanBasis {
public:
    SpanBasis() = default;
    SpanBasis(Eigen::Index ambient_dim, Eigen::MatrixXd basis);

    Eigen::Index ambient_dim() const { return ambient_; }
    Eigen::Index dim() const { return identity() ? ambient_ : basis_.cols(); }
    bool identity() const { return basis_.size() == 0; }
    const Eigen::MatrixXd& basis() const { return basis_; }

    Eigen::MatrixXd reduce(const Eigen::MatrixXd& xs) const;
    Eigen::MatrixXd lift(const Eigen::MatrixXd& ys) const;

private:
    Eigen::Index ambient_ = 0;
    Eigen::MatrixXd basis_;  // empty means identity
};

struct ReducedPoints {
    SpherePoints points;
    SpanBasis basis;
};

/// Re-expresses points in an orthonormal basis of their span (numerical rank:
/// singular values above eps * max(rows, cols) * largest). Rank below 2
/// throws DegenerateError.
ReducedPoints reduce_to_span(const SpherePoints& xs);

} // namespace hfda
