#pragma once

#include <Eigen/Core>

#include "hfda/errors.hpp"

namespace hfda {

using Index = Eigen::Index;

/// Equispaced nodes t_j = lo + j (hi - lo) / (n - 1) on a closed interval.
class UniformGrid {
public:
    explicit UniformGrid(Index n_points, double lo = 0.0, double hi = 1.0);

    Index size() const { return n_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double spacing() const { return (hi_ - lo_) / static_cast<double>(n_ - 1); }

    double operator[](Index j) const;
    Eigen::VectorXd points() const;

    /// Trapezoid weights; weights().dot(values) is the trapezoid integral.
    Eigen::VectorXd weights() const;

    bool contains(const UniformGrid& other) const;

    bool operator==(const UniformGrid& other) const = default;

private:
    Index n_;
    double lo_;
    double hi_;
};

/// Real function sampled on a UniformGrid. Values are always finite.
class SampledFunction {
public:
    SampledFunction(UniformGrid grid, Eigen::VectorXd values);

    /// Samples `fn` at every grid node.
    template <typename Fn>
    static SampledFunction from(const UniformGrid& grid, Fn&& fn)
    {
        Eigen::VectorXd v(grid.size());
        for (Index j = 0; j < grid.size(); ++j) v[j] = fn(grid[j]);
        return SampledFunction(grid, std::move(v));
    }

    static SampledFunction constant(const UniformGrid& grid, double c)
    {
        return SampledFunction(grid, Eigen::VectorXd::Constant(grid.size(), c));
    }

    const UniformGrid& grid() const { return grid_; }
    const Eigen::VectorXd& values() const { return values_; }
    Index size() const { return grid_.size(); }
    double operator[](Index j) const { return values_[j]; }

    /// Piecewise-linear evaluation; throws DomainError outside the grid.
    double operator()(double t) const;

private:
    UniformGrid grid_;
    Eigen::VectorXd values_;
};

enum class Interpolation { linear, monotone_cubic };

void require_same_grid(const SampledFunction& f, const SampledFunction& g);

/// Central differences inside, one-sided second-order stencils at the ends.
SampledFunction derivative(const SampledFunction& f);

double integrate(const SampledFunction& f);

/// Running trapezoid integral from the left end; first value is 0.
SampledFunction cumulative_integral(const SampledFunction& f);

SampledFunction resample(const SampledFunction& f, const UniformGrid& new_grid,
                         Interpolation scheme = Interpolation::linear);

double l2_inner(const SampledFunction& f, const SampledFunction& g);
double l2_norm(const SampledFunction& f);
double l2_dist(const SampledFunction& f, const SampledFunction& g);

/// Interpolates the data (x_k, y_k), x strictly increasing, at each query.
/// The monotone cubic scheme is the shape-preserving PCHIP interpolant.
Eigen::VectorXd interpolate(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                            const Eigen::VectorXd& queries, Interpolation scheme);

} // namespace hfda
