#include "hfda/pns.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace hfda {

namespace {

constexpr double kPi = std::numbers::pi;

double circle_objective(const Eigen::VectorXd& angles, double c)
{
    double s = 0.0;
    for (Index i = 0; i < angles.size(); ++i) {
        const double d = wrap_angle(angles[i] - c);
        s += d * d;
    }
    return s;
}

double normalize_angle(double a)
{
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    if (a >= 2.0 * kPi) a = 0.0;
    return a;
}

} // namespace

double wrap_angle(double a)
{
    a = std::remainder(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

double circle_frechet_mean(const Eigen::VectorXd& angles)
{
    const Index n = angles.size();
    if (n == 0) throw DomainError("circle mean of an empty set");
    // Each local minimiser of the wrapped squared distance is the plain mean
    // shifted by a multiple of 2 pi / n; refine each candidate and keep the best.
    const double base = angles.mean();
    double best = 0.0;
    double best_obj = std::numeric_limits<double>::infinity();
    for (Index k = 0; k < n; ++k) {
        double c = base + 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        for (int it = 0; it < 100; ++it) {
            double shift = 0.0;
            for (Index i = 0; i < n; ++i) shift += wrap_angle(angles[i] - c);
            shift /= static_cast<double>(n);
            c += shift;
            if (std::abs(shift) < 1e-15) break;
        }
        c = normalize_angle(c);
        const double obj = circle_objective(angles, c);
        const double slack = 1e-12 * (1.0 + obj);
        if (k == 0 || obj < best_obj - slack || (std::abs(obj - best_obj) <= slack && c < best)) {
            best_obj = std::min(obj, best_obj);
            best = c;
        }
    }
    return best;
}

PnsDecomposition pns_fit(const SpherePoints& xs, SphereMode mode)
{
    if (xs.cols() < 3) throw DomainError("PNS needs at least 3 points");
    PnsDecomposition out;
    out.mode = mode;
    ReducedPoints reduced = reduce_to_span(xs);
    out.span = reduced.basis;
    SpherePoints ys = std::move(reduced.points);

    std::vector<Eigen::VectorXd> residual_rows;
    double scale = 1.0;
    while (ys.rows() > 2) {
        const std::size_t level = out.levels.size();
        try {
            SubsphereFit fit = fit_subsphere(ys, mode);
            residual_rows.push_back(fit.residuals * scale);
            SpherePoints projected(ys.rows(), ys.cols());
            for (Index i = 0; i < ys.cols(); ++i) projected.col(i) = project_to_subsphere(ys.col(i), fit.sphere);
            DroppedPoints dropped = drop_dimension(projected, fit.sphere);
            out.levels.push_back({fit.sphere, dropped.record, scale});
            scale *= std::sin(fit.sphere.radius);
            ys = std::move(dropped.points);
        } catch (const Error&) {
            rethrow_with_context("PNS level " + std::to_string(level + 1) + ": ");
        }
    }

    Eigen::VectorXd angles(ys.cols());
    for (Index i = 0; i < ys.cols(); ++i) angles[i] = std::atan2(ys(1, i), ys(0, i));
    out.circle_mean = circle_frechet_mean(angles);
    out.circle_scale = scale;
    Eigen::VectorXd circle_row(ys.cols());
    for (Index i = 0; i < ys.cols(); ++i) circle_row[i] = wrap_angle(angles[i] - out.circle_mean) * scale;

    const Index d = static_cast<Index>(residual_rows.size()) + 1;
    out.scores.resize(d, xs.cols());
    out.scores.row(0) = circle_row.transpose();
    for (Index k = 1; k < d; ++k) out.scores.row(k) = residual_rows[static_cast<std::size_t>(d - 1 - k)].transpose();

    Eigen::MatrixXd first = out.scores.topRows(1);
    out.circle_orientation = orient_by_scores(first)[0];
    out.scores.row(0) = first.row(0);
    return out;
}

SpherePoints pns_reconstruct(const PnsDecomposition& decomp, const Eigen::MatrixXd& scores, Index rank)
{
    const Index d = decomp.components();
    if (rank < 0 || rank > d) throw DomainError("rank must lie in [0, " + std::to_string(d) + "]");
    if (scores.rows() != d) throw DomainError("score matrix must have one row per PNS component");
    const Index n = scores.cols();
    const Index levels = static_cast<Index>(decomp.levels.size());

    Eigen::MatrixXd ys(2, n);
    for (Index i = 0; i < n; ++i) {
        double theta = decomp.circle_mean;
        if (rank >= 1) theta += decomp.circle_orientation * scores(0, i) / decomp.circle_scale;
        ys(0, i) = std::cos(theta);
        ys(1, i) = std::sin(theta);
    }
    for (Index l = levels - 1; l >= 0; --l) {
        const PnsLevel& lv = decomp.levels[static_cast<std::size_t>(l)];
        const Index row = levels - l;  // reported component index of this level
        Eigen::MatrixXd lifted = lv.drop.lift(ys);
        const Eigen::VectorXd& v = lv.sphere.axis;
        const double r = lv.sphere.radius;
        for (Index i = 0; i < n; ++i) {
            const double xi = row < rank ? scores(row, i) / lv.scale : 0.0;
            if (xi == 0.0) continue;
            const Eigen::VectorXd p = lifted.col(i);
            const Eigen::VectorXd u = (p - std::cos(r) * v) / std::sin(r);
            lifted.col(i) = (std::cos(r + xi) * v + std::sin(r + xi) * u).normalized();
        }
        ys = std::move(lifted);
    }
    return decomp.span.lift(ys);
}

Eigen::VectorXd pns_mean(const PnsDecomposition& decomp)
{
    return pns_reconstruct(decomp, Eigen::MatrixXd::Zero(decomp.components(), 1), 0).col(0);
}

VarianceProportions variance_explained(const PnsDecomposition& decomp)
{
    return variance_proportions(row_variances(decomp.scores));
}

} // namespace hfda
