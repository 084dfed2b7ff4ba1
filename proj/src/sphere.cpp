#include "hfda/sphere.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <string>

namespace hfda {

namespace {

constexpr double kPi = std::numbers::pi;

struct AxisState {
    Eigen::VectorXd dist;
    double radius = 0.0;
    double objective = 0.0;
};

AxisState evaluate_axis(const SpherePoints& xs, const Eigen::VectorXd& v, SphereMode mode)
{
    AxisState s;
    s.dist.resize(xs.cols());
    for (Index i = 0; i < xs.cols(); ++i) s.dist[i] = geodesic_dist(xs.col(i), v);
    s.radius = mode == SphereMode::great ? kPi / 2 : s.dist.mean();
    s.objective = (s.dist.array() - s.radius).square().sum();
    return s;
}

Eigen::VectorXd initial_axis(const SpherePoints& xs, SphereMode mode)
{
    Eigen::MatrixXd centered = xs;
    if (mode == SphereMode::small) centered.colwise() -= xs.rowwise().mean();
    const Eigen::MatrixXd cov = centered * centered.transpose() / static_cast<double>(xs.cols());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    Eigen::VectorXd v = eig.eigenvectors().col(0);
    if (xs.rowwise().sum().dot(v) < 0.0) v = -v;
    return v.normalized();
}

} // namespace

Subsphere Subsphere::canonical() const
{
    if (radius > kPi / 2) return {-axis, kPi - radius};
    return *this;
}

EmbeddedSrvfs embed_horizontal_srvfs(const std::vector<HorizontalSrvf>& psis)
{
    if (psis.empty()) throw DomainError("no horizontal SRVFs to embed");
    const UniformGrid grid = psis.front().grid();
    EmbeddedSrvfs out{SpherePoints(grid.size(), static_cast<Index>(psis.size())),
                      grid.weights().cwiseSqrt(), grid};
    for (std::size_t i = 0; i < psis.size(); ++i) {
        if (!(psis[i].grid() == grid)) throw GridMismatchError("horizontal SRVFs must share one grid");
        out.points.col(static_cast<Index>(i)) = psis[i].values().cwiseProduct(out.sqrt_weights).normalized();
    }
    return out;
}

SampledFunction unembed(const Eigen::VectorXd& point, const EmbeddedSrvfs& embedding)
{
    return {embedding.grid, point.cwiseQuotient(embedding.sqrt_weights)};
}

Eigen::VectorXd frechet_mean(const SpherePoints& xs, double tol, int max_iter)
{
    if (xs.cols() < 1) throw DomainError("Frechet mean of an empty set");
    const Eigen::VectorXd sum = xs.rowwise().sum();
    if (sum.norm() < 1e-14) throw ConvergenceError("data not contained in an open hemisphere");
    Eigen::VectorXd mu = sum.normalized();
    for (Index i = 0; i < xs.cols(); ++i) {
        if (geodesic_dist(xs.col(i), mu) >= kPi / 2 - 1e-6)
            throw ConvergenceError("data not contained in an open hemisphere");
    }
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(mu.size());
        for (Index i = 0; i < xs.cols(); ++i) g += log_map(mu, xs.col(i));
        g /= static_cast<double>(xs.cols());
        if (g.norm() < tol) return mu;
        mu = exp_map(mu, g);
    }
    throw ConvergenceError("Frechet mean did not converge in " + std::to_string(max_iter) + " iterations");
}

double subsphere_objective(const SpherePoints& xs, const Subsphere& sphere)
{
    double sum = 0.0;
    for (Index i = 0; i < xs.cols(); ++i) {
        const double e = geodesic_dist(xs.col(i), sphere.axis) - sphere.radius;
        sum += e * e;
    }
    return sum;
}

SubsphereFit fit_subsphere(const SpherePoints& xs, SphereMode mode)
{
    const Index n = xs.cols();
    const Index dim = xs.rows();
    if (n < 3) throw DomainError("subsphere fit needs at least 3 points");
    if (dim < 2) throw DomainError("subsphere fit needs ambient dimension >= 2");
    double spread = 0.0;
    for (Index i = 1; i < n; ++i) spread = std::max(spread, geodesic_dist(xs.col(i), xs.col(0)));
    if (spread < 1e-12) throw DegenerateError("all points coincide; subsphere is undetermined");

    Eigen::VectorXd v = initial_axis(xs, mode);
    AxisState state = evaluate_axis(xs, v, mode);

    auto jacobian = [&](const Eigen::VectorXd& axis, const AxisState& st) {
        Eigen::MatrixXd jac(n, dim);
        for (Index i = 0; i < n; ++i) {
            const Eigen::VectorXd perp = xs.col(i) - xs.col(i).dot(axis) * axis;
            const double s = std::sin(st.dist[i]);
            jac.row(i) = s > 1e-12 ? Eigen::RowVectorXd(-perp.transpose() / s) : Eigen::RowVectorXd::Zero(dim);
        }
        if (mode == SphereMode::small) jac.rowwise() -= jac.colwise().mean();
        return jac;
    };

    SubsphereFit fit;
    Eigen::MatrixXd jac = jacobian(v, state);
    Eigen::VectorXd resid = state.dist.array() - state.radius;
    double grad_norm = (jac.transpose() * resid).norm();
    for (fit.iterations = 0; fit.iterations < 100; ++fit.iterations) {
        if (grad_norm < 1e-10) {
            fit.converged = true;
            break;
        }
        Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-resid);
        step -= step.dot(v) * v;
        if (step.norm() > kPi / 4) step *= (kPi / 4) / step.norm();

        bool improved = false;
        for (int halving = 0; halving < 50; ++halving) {
            const Eigen::VectorXd trial = exp_map(v, step);
            AxisState next = evaluate_axis(xs, trial, mode);
            const Eigen::MatrixXd next_jac = jacobian(trial, next);
            const Eigen::VectorXd next_resid = next.dist.array() - next.radius;
            const double next_grad = (next_jac.transpose() * next_resid).norm();
            // Near the optimum objective changes drown in roundoff; a tie that
            // shrinks the gradient still counts as progress.
            const bool tie = next.objective <= state.objective * (1 + 1e-14) && next_grad < 0.5 * grad_norm;
            if (next.objective < state.objective || tie) {
                v = trial;
                state = std::move(next);
                jac = next_jac;
                resid = next_resid;
                grad_norm = next_grad;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) {
            fit.converged = true;  // stationary to working precision
            break;
        }
    }

    fit.sphere = Subsphere{v, state.radius}.canonical();
    fit.residuals.resize(n);
    for (Index i = 0; i < n; ++i) fit.residuals[i] = geodesic_dist(xs.col(i), fit.sphere.axis) - fit.sphere.radius;
    fit.objective = fit.residuals.squaredNorm();
    return fit;
}

Eigen::VectorXd project_to_subsphere(const Eigen::VectorXd& x, const Subsphere& sphere)
{
    const double d = geodesic_dist(x, sphere.axis);
    if (d < 1e-12 || kPi - d < 1e-12) throw SingularityError("projection undefined at a pole of the subsphere axis");
    const Eigen::VectorXd p = (std::sin(sphere.radius) * x + std::sin(d - sphere.radius) * sphere.axis) / std::sin(d);
    return p.normalized();
}

DimensionDrop::DimensionDrop(const Subsphere& sphere) : dim_(sphere.axis.size()), radius_(sphere.radius)
{
    if (radius_ < 1e-8) throw DegenerateError("subsphere has collapsed to a point");
    Eigen::VectorXd u = sphere.axis;
    u[dim_ - 1] -= 1.0;
    if (u.norm() > 1e-15) u_ = u;
}

Eigen::MatrixXd DimensionDrop::reflect(Eigen::MatrixXd m) const
{
    if (u_.size() == 0) return m;
    const double scale = 2.0 / u_.squaredNorm();
    m -= (scale * u_) * (u_.transpose() * m);
    return m;
}

Eigen::MatrixXd DimensionDrop::apply(const SpherePoints& xs) const
{
    return reflect(xs).topRows(dim_ - 1) / std::sin(radius_);
}

Eigen::MatrixXd DimensionDrop::lift(const Eigen::MatrixXd& ys) const
{
    Eigen::MatrixXd full(dim_, ys.cols());
    full.topRows(dim_ - 1) = std::sin(radius_) * ys;
    full.row(dim_ - 1).setConstant(std::cos(radius_));
    return reflect(std::move(full));
}

DroppedPoints drop_dimension(const SpherePoints& xs, const Subsphere& sphere)
{
    for (Index i = 0; i < xs.cols(); ++i) {
        if (std::abs(geodesic_dist(xs.col(i), sphere.axis) - sphere.radius) > 1e-8)
            throw DomainError("point " + std::to_string(i) + " does not lie on the subsphere");
    }
    DimensionDrop record(sphere);
    return {record.apply(xs), record};
}

SpanBasis::SpanBasis(Index ambient_dim, Eigen::MatrixXd basis) : ambient_(ambient_dim), basis_(std::move(basis)) {}

Eigen::MatrixXd SpanBasis::reduce(const Eigen::MatrixXd& xs) const
{
    if (identity()) return xs;
    return basis_.transpose() * xs;
}

Eigen::MatrixXd SpanBasis::lift(const Eigen::MatrixXd& ys) const
{
    if (identity()) return ys;
    return basis_ * ys;
}

ReducedPoints reduce_to_span(const SpherePoints& xs)
{
    if (xs.cols() < 2) throw DomainError("span reduction needs at least 2 points");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(xs, Eigen::ComputeThinU);
    const Eigen::VectorXd& sv = svd.singularValues();
    // Numerical rank. A fixed 1e-10 cutoff drops real directions of smooth
    // warp families, whose spectra decay through 1e-12, and lifting then
    // misses them.
    const double cutoff = std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(xs.rows(), xs.cols())) *
                          (sv.size() ? sv[0] : 0.0);
    Index rank = 0;
    while (rank < sv.size() && sv[rank] > cutoff) ++rank;
    if (rank < 2) throw DegenerateError("points span fewer than 2 dimensions");
    if (rank == xs.rows()) return {xs, SpanBasis(xs.rows(), {})};
    // Householder vectors give a basis orthonormal to working precision,
    // tighter than the SVD's U; the SVD only reveals the rank.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xs);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(xs.rows(), rank);
    SpanBasis basis(xs.rows(), std::move(q));
    return {basis.reduce(xs), basis};
}

} // namespace hfda
