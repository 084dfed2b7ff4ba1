#include "hfda/srvf.hpp"

#include <cmath>
#include <string>

namespace hfda {

namespace {

constexpr double kEndpointSnap = 1e-8;
constexpr double kZeroDerivative = 1e-12;

} // namespace

WarpingFunction::WarpingFunction(const SampledFunction& samples) : fn_(samples)
{
    const UniformGrid& g = samples.grid();
    if (g.lo() != 0.0 || g.hi() != 1.0) throw DomainError("warping functions live on [0, 1]");
    Eigen::VectorXd v = samples.values();
    const Index n = v.size();
    if (std::abs(v[0]) > kEndpointSnap || std::abs(v[n - 1] - 1.0) > kEndpointSnap)
        throw DomainError("warp endpoints must be 0 and 1");
    v[0] = 0.0;
    v[n - 1] = 1.0;
    for (Index j = 0; j + 1 < n; ++j) {
        if (!(v[j + 1] - v[j] > 0.0))
            throw MonotonicityError("warp is not strictly increasing at node " + std::to_string(j));
    }
    fn_ = SampledFunction(g, std::move(v));
}

WarpingFunction WarpingFunction::identity(const UniformGrid& grid)
{
    return WarpingFunction(SampledFunction(grid, grid.points()));
}

HorizontalSrvf::HorizontalSrvf(const SampledFunction& psi) : psi_(psi)
{
    if ((psi.values().array() < 0.0).any()) throw DomainError("horizontal SRVF must be nonnegative");
    const double norm = l2_norm(psi);
    if (!(norm > 0.0)) throw DegenerateError("horizontal SRVF has zero norm");
    psi_ = SampledFunction(psi.grid(), psi.values() / norm);
}

Srvf srvf_of_fn(const SampledFunction& f)
{
    const SampledFunction df = derivative(f);
    Eigen::VectorXd q = df.values();
    for (Index j = 0; j < q.size(); ++j) {
        const double a = std::abs(q[j]);
        q[j] = a < kZeroDerivative ? 0.0 : q[j] / std::sqrt(a);
    }
    return Srvf(SampledFunction(f.grid(), std::move(q)));
}

SampledFunction fn_of_srvf(const Srvf& q, double f0)
{
    const Eigen::VectorXd& v = q.values();
    const SampledFunction speed(q.grid(), v.cwiseProduct(v.cwiseAbs()));
    const SampledFunction g = cumulative_integral(speed);
    return {q.grid(), g.values().array() + f0};
}

SampledFunction warp_derivative(const WarpingFunction& gamma)
{
    SampledFunction d = derivative(gamma.function());
    const Index n = d.size();
    if (n <= 2) return d;
    Eigen::VectorXd v = d.values();
    const double h = gamma.grid().spacing();
    // A kinked warp can drive the second-order end stencils negative.
    if (v[0] <= 0.0) v[0] = (gamma[1] - gamma[0]) / h;
    if (v[n - 1] <= 0.0) v[n - 1] = (gamma[n - 1] - gamma[n - 2]) / h;
    return {gamma.grid(), std::move(v)};
}

HorizontalSrvf psi_of_warp(const WarpingFunction& gamma)
{
    Eigen::VectorXd d = warp_derivative(gamma).values();
    if (d.minCoeff() < -kZeroDerivative) throw MonotonicityError("warp derivative is negative");
    d = d.cwiseMax(0.0).cwiseSqrt();
    return HorizontalSrvf(SampledFunction(gamma.grid(), std::move(d)));
}

WarpingFunction warp_of_psi(const SampledFunction& xi)
{
    const SampledFunction sq(xi.grid(), xi.values().cwiseAbs2());
    Eigen::VectorXd g = cumulative_integral(sq).values();
    const double total = g[g.size() - 1];
    if (!(total > 0.0)) throw DegenerateError("cannot build a warp from a zero SRVF");
    g /= total;
    g[g.size() - 1] = 1.0;
    try {
        return WarpingFunction(SampledFunction(xi.grid(), std::move(g)));
    } catch (const MonotonicityError& e) {
        throw DegenerateError(std::string("degenerate warp from SRVF: ") + e.what());
    }
}

WarpingFunction warp_of_psi(const HorizontalSrvf& xi)
{
    return warp_of_psi(xi.function());
}

SampledFunction compose(const SampledFunction& f, const WarpingFunction& gamma)
{
    const Eigen::VectorXd mapped = f.grid().lo() + gamma.values().array() * (f.grid().hi() - f.grid().lo());
    return {gamma.grid(), interpolate(f.grid().points(), f.values(), mapped, Interpolation::linear)};
}

Srvf warp_action(const Srvf& q, const WarpingFunction& gamma)
{
    require_same_grid(q.function(), gamma.function());
    const SampledFunction qg = compose(q.function(), gamma);
    const Eigen::VectorXd rate = warp_derivative(gamma).values().cwiseMax(0.0).cwiseSqrt();
    return Srvf(SampledFunction(q.grid(), qg.values().cwiseProduct(rate)));
}

WarpingFunction warp_compose(const WarpingFunction& outer, const WarpingFunction& inner)
{
    require_same_grid(outer.function(), inner.function());
    Eigen::VectorXd v = interpolate(outer.grid().points(), outer.values(), inner.values(),
                                    Interpolation::monotone_cubic);
    return WarpingFunction(SampledFunction(inner.grid(), std::move(v)));
}

WarpingFunction warp_inverse(const WarpingFunction& gamma)
{
    const Eigen::VectorXd t = gamma.grid().points();
    Eigen::VectorXd v = interpolate(gamma.values(), t, t, Interpolation::monotone_cubic);
    return WarpingFunction(SampledFunction(gamma.grid(), std::move(v)));
}

} // namespace hfda
