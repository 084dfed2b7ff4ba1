#include "hfda/stats.hpp"

namespace hfda {

VarianceProportions variance_proportions(const Eigen::VectorXd& variances)
{
    const double total = variances.sum();
    if (!(total > 0.0)) throw ZeroVarianceError("total variance is zero; proportions are undefined");
    VarianceProportions out;
    out.individual = variances / total;
    out.cumulative.resize(variances.size());
    double run = 0.0;
    for (Eigen::Index k = 0; k < variances.size(); ++k) {
        run += out.individual[k];
        out.cumulative[k] = run;
    }
    if (variances.size() > 0) out.cumulative[variances.size() - 1] = 1.0;
    return out;
}

Eigen::VectorXd row_variances(const Eigen::MatrixXd& scores)
{
    if (scores.cols() == 0) return Eigen::VectorXd::Zero(scores.rows());
    const Eigen::VectorXd mean = scores.rowwise().mean();
    return (scores.colwise() - mean).rowwise().squaredNorm() / static_cast<double>(scores.cols());
}

Eigen::VectorXd orient_by_scores(Eigen::MatrixXd& scores, Eigen::MatrixXd* basis)
{
    Eigen::VectorXd signs = Eigen::VectorXd::Ones(scores.rows());
    for (Eigen::Index k = 0; k < scores.rows(); ++k) {
        Eigen::Index arg = 0;
        scores.row(k).cwiseAbs().maxCoeff(&arg);
        if (scores(k, arg) < 0.0) {
            signs[k] = -1.0;
            scores.row(k) *= -1.0;
            if (basis) basis->col(k) *= -1.0;
        }
    }
    return signs;
}

} // namespace hfda
