#include "hfda/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hfda {

namespace {

constexpr double kDomainSlack = 1e-12;

// Shape-preserving node slopes (Fritsch-Butland interior, three-point ends).
Eigen::VectorXd pchip_slopes(const Eigen::VectorXd& x, const Eigen::VectorXd& y)
{
    const Index n = x.size();
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    if (n == 2) {
        d.setConstant((y[1] - y[0]) / (x[1] - x[0]));
        return d;
    }
    Eigen::VectorXd h = x.tail(n - 1) - x.head(n - 1);
    Eigen::VectorXd delta = (y.tail(n - 1) - y.head(n - 1)).cwiseQuotient(h);

    for (Index k = 1; k < n - 1; ++k) {
        if (delta[k - 1] * delta[k] <= 0.0) continue;
        const double w1 = 2.0 * h[k] + h[k - 1];
        const double w2 = h[k] + 2.0 * h[k - 1];
        d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }

    auto end_slope = [](double h0, double h1, double del0, double del1) {
        double s = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
        if (std::signbit(s) != std::signbit(del0) || s == 0.0) return 0.0;
        if (std::signbit(del0) != std::signbit(del1) && std::abs(s) > 3.0 * std::abs(del0))
            return 3.0 * del0;
        return s;
    };
    d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return d;
}

} // namespace

UniformGrid::UniformGrid(Index n_points, double lo, double hi) : n_(n_points), lo_(lo), hi_(hi)
{
    if (n_points < 2) throw DomainError("grid needs at least 2 points");
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("grid interval must be finite and non-empty");
}

double UniformGrid::operator[](Index j) const
{
    if (j == n_ - 1) return hi_;
    return lo_ + static_cast<double>(j) * spacing();
}

Eigen::VectorXd UniformGrid::points() const
{
    Eigen::VectorXd t(n_);
    for (Index j = 0; j < n_; ++j) t[j] = (*this)[j];
    return t;
}

Eigen::VectorXd UniformGrid::weights() const
{
    Eigen::VectorXd w = Eigen::VectorXd::Constant(n_, spacing());
    w[0] *= 0.5;
    w[n_ - 1] *= 0.5;
    return w;
}

bool UniformGrid::contains(const UniformGrid& other) const
{
    return other.lo_ >= lo_ - kDomainSlack && other.hi_ <= hi_ + kDomainSlack;
}

SampledFunction::SampledFunction(UniformGrid grid, Eigen::VectorXd values)
    : grid_(grid), values_(std::move(values))
{
    if (values_.size() != grid_.size())
        throw DomainError("sample count " + std::to_string(values_.size()) +
                          " does not match grid size " + std::to_string(grid_.size()));
    if (!values_.allFinite()) throw DomainError("sampled function has non-finite values");
}

double SampledFunction::operator()(double t) const
{
    if (t < grid_.lo() - kDomainSlack || t > grid_.hi() + kDomainSlack)
        throw DomainError("evaluation point outside the grid domain");
    const double pos = std::clamp((t - grid_.lo()) / grid_.spacing(), 0.0,
                                  static_cast<double>(size() - 1));
    const Index k = std::min<Index>(static_cast<Index>(pos), size() - 2);
    const double frac = pos - static_cast<double>(k);
    return (1.0 - frac) * values_[k] + frac * values_[k + 1];
}

void require_same_grid(const SampledFunction& f, const SampledFunction& g)
{
    if (!(f.grid() == g.grid())) throw GridMismatchError("functions are sampled on different grids");
}

SampledFunction derivative(const SampledFunction& f)
{
    const Index n = f.size();
    const double h = f.grid().spacing();
    const Eigen::VectorXd& v = f.values();
    Eigen::VectorXd d(n);
    if (n == 2) {
        d.setConstant((v[1] - v[0]) / h);
        return {f.grid(), d};
    }
    for (Index j = 1; j < n - 1; ++j) d[j] = (v[j + 1] - v[j - 1]) / (2.0 * h);
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return {f.grid(), d};
}

double integrate(const SampledFunction& f)
{
    return f.grid().weights().dot(f.values());
}

SampledFunction cumulative_integral(const SampledFunction& f)
{
    const Index n = f.size();
    const double half_h = 0.5 * f.grid().spacing();
    const Eigen::VectorXd& v = f.values();
    Eigen::VectorXd g(n);
    g[0] = 0.0;
    for (Index j = 1; j < n; ++j) g[j] = g[j - 1] + half_h * (v[j - 1] + v[j]);
    return {f.grid(), g};
}

SampledFunction resample(const SampledFunction& f, const UniformGrid& new_grid, Interpolation scheme)
{
    if (!f.grid().contains(new_grid)) throw DomainError("resample grid extends outside the function domain");
    if (new_grid == f.grid()) return f;
    Eigen::VectorXd q = new_grid.points().cwiseMax(f.grid().lo()).cwiseMin(f.grid().hi());
    return {new_grid, interpolate(f.grid().points(), f.values(), q, scheme)};
}

double l2_inner(const SampledFunction& f, const SampledFunction& g)
{
    require_same_grid(f, g);
    return f.grid().weights().dot(f.values().cwiseProduct(g.values()));
}

double l2_norm(const SampledFunction& f)
{
    return std::sqrt(l2_inner(f, f));
}

double l2_dist(const SampledFunction& f, const SampledFunction& g)
{
    require_same_grid(f, g);
    return l2_norm(SampledFunction(f.grid(), f.values() - g.values()));
}

Eigen::VectorXd interpolate(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                            const Eigen::VectorXd& queries, Interpolation scheme)
{
    const Index n = x.size();
    if (n < 2 || y.size() != n) throw DomainError("interpolation needs at least 2 matching knots");
    const double lo = x[0];
    const double hi = x[n - 1];

    Eigen::VectorXd slopes;
    if (scheme == Interpolation::monotone_cubic) slopes = pchip_slopes(x, y);

    Eigen::VectorXd out(queries.size());
    for (Index i = 0; i < queries.size(); ++i) {
        const double t = queries[i];
        if (t < lo - kDomainSlack || t > hi + kDomainSlack)
            throw DomainError("interpolation query " + std::to_string(t) + " outside [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
        const double tc = std::clamp(t, lo, hi);
        const auto it = std::upper_bound(x.data(), x.data() + n, tc);
        const Index k = std::clamp<Index>(static_cast<Index>(it - x.data()) - 1, 0, n - 2);
        const double h = x[k + 1] - x[k];
        const double s = (tc - x[k]) / h;
        if (scheme == Interpolation::linear) {
            out[i] = (1.0 - s) * y[k] + s * y[k + 1];
        } else {
            const double s2 = s * s;
            const double s3 = s2 * s;
            out[i] = (2 * s3 - 3 * s2 + 1) * y[k] + (s3 - 2 * s2 + s) * h * slopes[k] +
                     (-2 * s3 + 3 * s2) * y[k + 1] + (s3 - s2) * h * slopes[k + 1];
        }
    }
    return out;
}

} // namespace hfda
