#pragma once

#include <hfda/fpca.hpp>
#include <hfda/sphere.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

namespace hfda::testing {

struct DenseEigen {
    Eigen::VectorXd values;
    Eigen::MatrixXd functions;  // one eigenfunction per column, unit L2 norm
};

/// Eigenpairs of the integral operator (K phi)(s) = int C(s,t) phi(t) dt
/// from the non-symmetric matrix C W, solved by a general dense solver.
inline DenseEigen covariance_eigen_oracle(const std::vector<SampledFunction>& fs)
{
    const Index N = fs.front().size();
    const auto n = static_cast<double>(fs.size());
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(N);
    for (const auto& f : fs) mean += f.values() / n;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(N, N);
    for (const auto& f : fs) C += (f.values() - mean) * (f.values() - mean).transpose() / n;
    const Eigen::VectorXd w = fs.front().grid().weights();
    Eigen::EigenSolver<Eigen::MatrixXd> es(C * w.asDiagonal());
    Eigen::VectorXd vals = es.eigenvalues().real();
    Eigen::MatrixXd vecs = es.eigenvectors().real();
    std::vector<Index> order(static_cast<std::size_t>(N));
    for (Index i = 0; i < N; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return vals[a] > vals[b]; });
    DenseEigen out{Eigen::VectorXd(N), Eigen::MatrixXd(N, N)};
    for (Index k = 0; k < N; ++k) {
        const Index src = order[static_cast<std::size_t>(k)];
        out.values[k] = vals[src];
        Eigen::VectorXd phi = vecs.col(src);
        out.functions.col(k) = phi / std::sqrt(phi.dot(w.asDiagonal() * phi));
    }
    return out;
}

/// Least-squares circle objective minimised over a 1 degree grid of axes on S^2.
inline double brute_force_circle_objective(const Eigen::MatrixXd& xs)
{
    // 1 degree grid over axis directions (upper hemisphere suffices by canonicalisation) and radius.
    double best = INFINITY;
    const double deg = M_PI / 180;
    for (int a = 0; a <= 90; ++a) {
        for (int b = 0; b < 360; ++b) {
            Eigen::Vector3d v(std::sin(a * deg) * std::cos(b * deg), std::sin(a * deg) * std::sin(b * deg),
                              std::cos(a * deg));
            Eigen::VectorXd d(xs.cols());
            for (Index i = 0; i < xs.cols(); ++i) d[i] = geodesic_dist(v, xs.col(i));
            // optimal radius for a fixed axis is the mean distance
            const double r = d.mean();
            best = std::min(best, (d.array() - r).square().sum());
            if (a == 0) break;
        }
    }
    return best;
}

} // namespace hfda::testing
