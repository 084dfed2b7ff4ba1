#include "hfda/pga.hpp"

#include <Eigen/SVD>

#include <string>

namespace hfda {

PgaResult pga_fit(const SpherePoints& xs)
{
    const Index n = xs.cols();
    if (n < 1) throw DomainError("PGA of an empty set");
    PgaResult out;
    out.mean = frechet_mean(xs);
    Eigen::MatrixXd tangent(xs.rows(), n);
    for (Index i = 0; i < n; ++i) tangent.col(i) = log_map(out.mean, xs.col(i));

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(tangent / std::sqrt(static_cast<double>(n)), Eigen::ComputeThinU);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double floor = 1e-12 * std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
    Index keep = 0;
    while (keep < sv.size() && keep < n - 1 && sv[keep] > floor) ++keep;

    out.basis = svd.matrixU().leftCols(keep);
    // Re-orthogonalise against the mean; the tangent vectors are orthogonal
    // to it only up to rounding.
    for (Index k = 0; k < keep; ++k) {
        out.basis.col(k) -= out.basis.col(k).dot(out.mean) * out.mean;
        out.basis.col(k).normalize();
    }
    out.eigenvalues = sv.head(keep).cwiseAbs2();
    out.scores = out.basis.transpose() * tangent;
    orient_by_scores(out.scores, &out.basis);
    return out;
}

Eigen::VectorXd pga_project(const PgaResult& result, Index component, double s)
{
    if (component < 0 || component >= result.components())
        throw DomainError("PGA component " + std::to_string(component + 1) + " does not exist");
    const double len = std::abs(s) * std::sqrt(result.eigenvalues[component]);
    if (len >= std::numbers::pi) throw DomainError("projection leaves the exponential chart (|s| sqrt(lambda) >= pi)");
    const Eigen::VectorXd v = s * std::sqrt(result.eigenvalues[component]) * result.basis.col(component);
    return exp_map(result.mean, v);
}

VarianceProportions variance_explained(const PgaResult& result)
{
    return variance_proportions(result.eigenvalues);
}

} // namespace hfda
