#pragma once

#include "hfda/grid.hpp"

namespace hfda {

/// Boundary-fixed, strictly increasing map of [0,1] onto itself.
///
/// Construction snaps endpoints lying within 1e-8 of {0, 1} and rejects
/// anything that is not strictly increasing.
class WarpingFunction {
public:
    explicit WarpingFunction(const SampledFunction& samples);

    static WarpingFunction identity(const UniformGrid& grid);

    const SampledFunction& function() const { return fn_; }
    const UniformGrid& grid() const { return fn_.grid(); }
    const Eigen::VectorXd& values() const { return fn_.values(); }
    double operator[](Index j) const { return fn_[j]; }

private:
    SampledFunction fn_;
};

/// Square-root velocity function q = f' / sqrt(|f'|).
class Srvf {
public:
    explicit Srvf(SampledFunction q) : q_(std::move(q)) {}

    const SampledFunction& function() const { return q_; }
    const UniformGrid& grid() const { return q_.grid(); }
    const Eigen::VectorXd& values() const { return q_.values(); }

private:
    SampledFunction q_;
};

/// psi = sqrt(gamma'), a nonnegative point of the unit Hilbert sphere.
/// The constructor rescales to exact unit trapezoid norm.
class HorizontalSrvf {
public:
    explicit HorizontalSrvf(const SampledFunction& psi);

    const SampledFunction& function() const { return psi_; }
    const UniformGrid& grid() const { return psi_.grid(); }
    const Eigen::VectorXd& values() const { return psi_.values(); }

private:
    SampledFunction psi_;
};

Srvf srvf_of_fn(const SampledFunction& f);
SampledFunction fn_of_srvf(const Srvf& q, double f0);

HorizontalSrvf psi_of_warp(const WarpingFunction& gamma);

/// gamma(t) = int_0^t xi^2, normalised so gamma(1) = 1. `xi` may be any
/// point of the sphere (its sign is irrelevant).
WarpingFunction warp_of_psi(const SampledFunction& xi);
WarpingFunction warp_of_psi(const HorizontalSrvf& xi);

/// (q o gamma) sqrt(gamma'), the isometric action of the warp group.
Srvf warp_action(const Srvf& q, const WarpingFunction& gamma);

/// f o gamma by linear interpolation.
SampledFunction compose(const SampledFunction& f, const WarpingFunction& gamma);

WarpingFunction warp_compose(const WarpingFunction& outer, const WarpingFunction& inner);
WarpingFunction warp_inverse(const WarpingFunction& gamma);

/// Derivative of a warp with endpoint stencils that never go negative.
SampledFunction warp_derivative(const WarpingFunction& gamma);

} // namespace hfda
