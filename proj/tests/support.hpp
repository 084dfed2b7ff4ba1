#pragma once

#include <hfda/align.hpp>
#include <hfda/grid.hpp>
#include <hfda/srvf.hpp>
#include <hfda/synth.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

namespace hfda::testing {

inline double sup_dist(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

/// Strict interior local maxima above `floor` (plateaus count once).
inline std::vector<Index> local_maxima(const Eigen::VectorXd& v, double floor = 1e-3)
{
    std::vector<Index> out;
    const Index n = v.size();
    for (Index j = 1; j + 1 < n; ++j) {
        if (v[j] <= floor || v[j] <= v[j - 1]) continue;
        Index k = j;
        while (k + 1 < n && v[k + 1] == v[j]) ++k;
        if (k + 1 < n && v[k + 1] < v[j]) out.push_back(j);
        j = k;
    }
    return out;
}

/// Locations of the two highest local maxima, ordered left to right.
inline std::pair<double, double> two_peaks(const SampledFunction& f)
{
    auto idx = local_maxima(f.values());
    std::sort(idx.begin(), idx.end(), [&](Index a, Index b) { return f[a] > f[b]; });
    if (idx.size() < 2) return {NAN, NAN};
    double p = f.grid()[idx[0]], q = f.grid()[idx[1]];
    if (p > q) std::swap(p, q);
    return {p, q};
}

/// Smooth random warp: normalised integral of exp(sum of low sine modes).
inline WarpingFunction random_warp(const UniformGrid& grid, std::mt19937_64& rng, double amp = 0.6)
{
    std::uniform_real_distribution<double> u(-amp, amp);
    const double c1 = u(rng), c2 = u(rng), c3 = u(rng);
    auto rate = SampledFunction::from(grid, [&](double t) {
        return std::exp(c1 * std::sin(2 * M_PI * t) + c2 * std::cos(2 * M_PI * t) + c3 * std::sin(4 * M_PI * t));
    });
    auto g = cumulative_integral(rate);
    return WarpingFunction(SampledFunction(grid, g.values() / g.values()[grid.size() - 1]));
}

inline SampledFunction random_smooth(const UniformGrid& grid, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    return SampledFunction::from(grid, [&](double t) {
        return a + b * std::sin(2 * M_PI * t) + c * std::cos(3 * M_PI * t) + d * t * t;
    });
}

inline Eigen::VectorXd random_unit(Index dim, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Eigen::VectorXd v(dim);
    for (Index i = 0; i < dim; ++i) v[i] = g(rng);
    return v.normalized();
}

/// Random orthogonal matrix from the QR of a Gaussian matrix.
inline Eigen::MatrixXd random_rotation(Index dim, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Eigen::MatrixXd m(dim, dim);
    for (Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
}

/// Orthonormal (e1, e2) spanning the complement of `v` in R^3.
inline std::pair<Eigen::Vector3d, Eigen::Vector3d> complement_frame(const Eigen::Vector3d& v)
{
    Eigen::Vector3d a = std::abs(v.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    Eigen::Vector3d e1 = (a - a.dot(v) * v).normalized();
    Eigen::Vector3d e2 = v.cross(e1);
    return {e1, e2};
}

/// n points on the circle at geodesic distance r from v in S^2.
inline Eigen::MatrixXd circle_points(const Eigen::Vector3d& v, double r, const Eigen::VectorXd& angles)
{
    auto [e1, e2] = complement_frame(v);
    Eigen::MatrixXd xs(3, angles.size());
    for (Index i = 0; i < angles.size(); ++i)
        xs.col(i) = std::cos(r) * v + std::sin(r) * (std::cos(angles[i]) * e1 + std::sin(angles[i]) * e2);
    return xs;
}

inline std::vector<Srvf> srvfs_of(const std::vector<SampledFunction>& fs)
{
    std::vector<Srvf> qs;
    for (const auto& f : fs) qs.push_back(srvf_of_fn(f));
    return qs;
}

} // namespace hfda::testing
