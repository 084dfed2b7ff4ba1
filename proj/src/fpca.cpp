#include "hfda/fpca.hpp"

#include <Eigen/SVD>

#include <string>

namespace hfda {

FpcaResult fpca_fit(std::span<const SampledFunction> fs)
{
    if (fs.size() < 2) throw DomainError("FPCA needs at least 2 functions");
    for (const auto& f : fs) require_same_grid(f, fs.front());
    const UniformGrid grid = fs.front().grid();
    const Index n = static_cast<Index>(fs.size());
    const Index npts = grid.size();

    Eigen::MatrixXd data(npts, n);
    for (Index i = 0; i < n; ++i) data.col(i) = fs[static_cast<std::size_t>(i)].values();
    const Eigen::VectorXd mean = data.rowwise().mean();
    const double raw_power = (grid.weights().asDiagonal() * data.cwiseAbs2()).sum() / static_cast<double>(n);
    data.colwise() -= mean;

    const Eigen::VectorXd sw = grid.weights().cwiseSqrt();
    const Eigen::MatrixXd weighted = sw.asDiagonal() * data;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(weighted / std::sqrt(static_cast<double>(n)), Eigen::ComputeThinU);
    const Index keep = std::min(n - 1, npts);

    Eigen::MatrixXd u = svd.matrixU().leftCols(keep);
    FpcaResult out{SampledFunction(grid, mean), {}, svd.singularValues().head(keep).cwiseAbs2(), {}};
    // Variance at the roundoff level of the raw data is zero.
    for (auto& ev : out.eigenvalues)
        if (ev <= 1e-28 * raw_power) ev = 0.0;
    out.scores = u.transpose() * weighted;
    orient_by_scores(out.scores, &u);
    for (Index k = 0; k < keep; ++k) out.eigenfunctions.emplace_back(grid, u.col(k).cwiseQuotient(sw));
    return out;
}

SampledFunction fpca_project(const FpcaResult& result, Index component, double s)
{
    if (component < 0 || component >= result.components())
        throw DomainError("FPCA component " + std::to_string(component + 1) + " does not exist");
    const double amp = s * std::sqrt(std::max(0.0, result.eigenvalues[component]));
    return {result.mean_fn.grid(),
            result.mean_fn.values() + amp * result.eigenfunctions[static_cast<std::size_t>(component)].values()};
}

VarianceProportions variance_explained(const FpcaResult& result)
{
    return variance_proportions(result.eigenvalues);
}

WarpValidityReport check_warp_validity(const SampledFunction& f)
{
    constexpr double tol = 1e-8;
    WarpValidityReport r;
    const Index n = f.size();
    r.start_deviation = std::abs(f[0]);
    r.end_deviation = std::abs(f[n - 1] - 1.0);
    for (Index j = 0; j + 1 < n; ++j)
        if (!(f[j + 1] > f[j])) r.violations.push_back(j);
    r.valid = r.start_deviation <= tol && r.end_deviation <= tol && r.violations.empty();
    return r;
}

} // namespace hfda
