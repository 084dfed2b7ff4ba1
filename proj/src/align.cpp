#include "hfda/align.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Cholesky>

#include "hfda/sphere.hpp"

namespace hfda {

namespace {

enum class DpCriterion { srvf, l2 };

struct StepKernel {
    DpStep step;
    double factor;  // sqrt(slope) for SRVFs, 1 for plain L2
    std::vector<int> ix, iy;
    std::vector<double> fx, fy, w;
    // Per start node: weighted source samples, target samples, and their
    // weighted squared sums, so a segment costs one dot product.
    int samples = 0;
    std::vector<double> a_w, b_s, a_sq, b_sq;
};

inline double lerp_at(const double* v, int i, double f)
{
    return f == 0.0 ? v[i] : v[i] + f * (v[i + 1] - v[i]);
}

void tabulate(StepKernel& k, const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    const int m = static_cast<int>(a.size());
    const int ns = static_cast<int>(k.w.size());
    k.samples = ns;
    const int na = m - k.step.dt;
    const int nb = m - k.step.dg;
    k.a_w.assign(static_cast<std::size_t>(std::max(na, 0)) * ns, 0.0);
    k.a_sq.assign(static_cast<std::size_t>(std::max(na, 0)), 0.0);
    k.b_s.assign(static_cast<std::size_t>(std::max(nb, 0)) * ns, 0.0);
    k.b_sq.assign(static_cast<std::size_t>(std::max(nb, 0)), 0.0);
    for (int i0 = 0; i0 < na; ++i0) {
        for (int r = 0; r < ns; ++r) {
            const double x = lerp_at(a.data(), i0 + k.ix[r], k.fx[r]);
            k.a_w[static_cast<std::size_t>(i0) * ns + r] = k.w[r] * x;
            k.a_sq[i0] += k.w[r] * x * x;
        }
    }
    for (int j0 = 0; j0 < nb; ++j0) {
        for (int r = 0; r < ns; ++r) {
            const double y = k.factor * lerp_at(b.data(), j0 + k.iy[r], k.fy[r]);
            k.b_s[static_cast<std::size_t>(j0) * ns + r] = y;
            k.b_sq[j0] += k.w[r] * y * y;
        }
    }
}

// Samples along a step segment. SRVF segments are sampled at max(dt, dg)
// equal parameter intervals so that transposing a path leaves its cost
// unchanged; L2 segments are sampled at the source nodes only.
StepKernel make_kernel(DpStep s, double h, DpCriterion crit)
{
    StepKernel k;
    k.step = s;
    k.factor = crit == DpCriterion::srvf ? std::sqrt(static_cast<double>(s.dg) / s.dt) : 1.0;
    const int m = crit == DpCriterion::srvf ? std::max(s.dt, s.dg) : s.dt;
    const double seg = h * s.dt / m;
    for (int r = 0; r <= m; ++r) {
        const int xn = r * s.dt;
        const int yn = r * s.dg;
        k.ix.push_back(xn / m);
        k.fx.push_back(static_cast<double>(xn % m) / m);
        k.iy.push_back(yn / m);
        k.fy.push_back(static_cast<double>(yn % m) / m);
        k.w.push_back((r == 0 || r == m ? 0.5 : 1.0) * seg);
    }
    return k;
}

Eigen::VectorXd smooth(const Eigen::VectorXd& v, double bandwidth, double h)
{
    const Index n = v.size();
    const int half = static_cast<int>(std::ceil(4.0 * bandwidth / h));
    Eigen::VectorXd out(n);
    for (Index j = 0; j < n; ++j) {
        double num = 0.0, den = 0.0;
        for (int o = -half; o <= half; ++o) {
            const Index k = j + o;
            if (k < 0 || k >= n) continue;
            const double z = o * h / bandwidth;
            const double wgt = std::exp(-0.5 * z * z);
            num += wgt * v[k];
            den += wgt;
        }
        out[j] = num / den;
    }
    return out;
}

// Minimises the segment-additive cost over monotone lattice paths
// (0,0) -> (M-1,M-1). `a` lives on the source axis, `b` on the warp axis.
Alignment dp_align(const SampledFunction& a_fn, const SampledFunction& b_fn, const DpConfig& cfg, DpCriterion crit)
{
    cfg.validate();
    require_same_grid(a_fn, b_fn);
    const UniformGrid& fgrid = a_fn.grid();
    if (fgrid.lo() != 0.0 || fgrid.hi() != 1.0) throw DomainError("alignment expects functions on [0, 1]");

    const UniformGrid dgrid(cfg.grid_size);
    Eigen::VectorXd a = resample(a_fn, dgrid).values();
    Eigen::VectorXd b = resample(b_fn, dgrid).values();
    const double h = dgrid.spacing();
    if (cfg.smoothing_bandwidth) {
        a = smooth(a, *cfg.smoothing_bandwidth, h);
        b = smooth(b, *cfg.smoothing_bandwidth, h);
    }

    std::vector<StepKernel> kernels;
    for (const DpStep& s : cfg.steps) {
        kernels.push_back(make_kernel(s, h, crit));
        tabulate(kernels.back(), a, b);
    }

    const int m = static_cast<int>(dgrid.size());
    const int last = m - 1;
    const int reach = cfg.max_step();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> energy(static_cast<std::size_t>(m) * m, inf);
    std::vector<std::int16_t> choice(static_cast<std::size_t>(m) * m, -1);
    auto at = [m](int i, int j) { return static_cast<std::size_t>(i) * m + j; };
    energy[at(0, 0)] = 0.0;

    for (int i = 1; i < m; ++i) {
        for (int j = 1; j < m; ++j) {
            if (j > reach * i || i > reach * j || last - j > reach * (last - i) || last - i > reach * (last - j))
                continue;
            double best = inf;
            int best_k = -1;
            for (std::size_t s = 0; s < kernels.size(); ++s) {
                const StepKernel& k = kernels[s];
                const int i0 = i - k.step.dt;
                const int j0 = j - k.step.dg;
                if (i0 < 0 || j0 < 0) continue;
                const double prev = energy[at(i0, j0)];
                if (prev == inf) continue;
                const double* aw = k.a_w.data() + static_cast<std::size_t>(i0) * k.samples;
                const double* bs = k.b_s.data() + static_cast<std::size_t>(j0) * k.samples;
                double cross = 0.0;
                for (int r = 0; r < k.samples; ++r) cross += aw[r] * bs[r];
                const double seg = std::max(0.0, k.a_sq[i0] - 2.0 * cross + k.b_sq[j0]);
                const double cand = prev + seg;
                // Earlier steps (closer to slope 1) win near-ties.
                if (best_k < 0 || cand < best - 1e-12 * (1.0 + best)) {
                    best = cand;
                    best_k = static_cast<int>(s);
                }
            }
            energy[at(i, j)] = best;
            choice[at(i, j)] = static_cast<std::int16_t>(best_k);
        }
    }
    if (energy[at(last, last)] == inf) throw Error("no admissible alignment path");

    // Backtrack; path vertices from the end to the origin.
    std::vector<std::pair<int, int>> path{{last, last}};
    while (path.back().first > 0) {
        const auto [i, j] = path.back();
        const DpStep& s = kernels[static_cast<std::size_t>(choice[at(i, j)])].step;
        path.emplace_back(i - s.dt, j - s.dg);
    }
    std::reverse(path.begin(), path.end());

    Eigen::VectorXd gamma(m);
    for (std::size_t p = 0; p + 1 < path.size(); ++p) {
        const auto [i0, j0] = path[p];
        const auto [i1, j1] = path[p + 1];
        for (int i = i0; i < i1; ++i)
            gamma[i] = (j0 + static_cast<double>(i - i0) * (j1 - j0) / (i1 - i0)) / last;
    }
    gamma[last] = 1.0;

    const SampledFunction warp_on_dp(dgrid, std::move(gamma));
    const SampledFunction warp = resample(warp_on_dp, fgrid, Interpolation::linear);
    return {WarpingFunction(warp), std::sqrt(std::max(0.0, energy[at(last, last)]))};
}

double weighted_energy(const Eigen::VectorXd& r, const Eigen::VectorXd& w)
{
    return r.cwiseAbs2().dot(w);
}

// Levenberg-Marquardt polish of a lattice warp. Updates act on the right,
// gamma <- gamma o (id + sum_k c_k v_k), with v_k = sqrt2 sin(pi k t) / (pi k)
// so each update fixes the endpoints.
Alignment refine_alignment(const Srvf& q1, const Srvf& q2, WarpingFunction gamma, int basis_size, int max_iter)
{
    const UniformGrid& grid = q1.grid();
    const Index n = grid.size();
    const Eigen::VectorXd t = grid.points();
    const Eigen::VectorXd w = grid.weights();
    const int nb = static_cast<int>(std::min<Index>(basis_size, n / 4));
    if (nb < 1) return {gamma, l2_dist(q1.function(), warp_action(q2, gamma).function())};

    Eigen::MatrixXd v(n, nb), dv(n, nb);
    for (int k = 0; k < nb; ++k) {
        const double f = std::numbers::pi * (k + 1);
        v.col(k) = std::sqrt(2.0) * (f * t.array()).sin() / f;
        dv.col(k) = std::sqrt(2.0) * (f * t.array()).cos();
    }

    Srvf moved = warp_action(q2, gamma);
    Eigen::VectorXd r = q1.values() - moved.values();
    double energy = weighted_energy(r, w);
    double lambda = 1e-3;
    for (int it = 0; it < max_iter && lambda < 1e8; ++it) {
        const Eigen::VectorXd dq = derivative(moved.function()).values();
        Eigen::MatrixXd jac(n, nb);
        for (int k = 0; k < nb; ++k)
            jac.col(k) = dq.cwiseProduct(v.col(k)) + 0.5 * moved.values().cwiseProduct(dv.col(k));
        const Eigen::MatrixXd jtj = jac.transpose() * w.asDiagonal() * jac;
        const Eigen::VectorXd jtr = jac.transpose() * w.asDiagonal() * r;
        const Eigen::VectorXd scale = jtj.diagonal().cwiseMax(1e-12);

        bool accepted = false;
        while (lambda < 1e8) {
            Eigen::MatrixXd sys = jtj;
            sys.diagonal() += lambda * scale;
            Eigen::VectorXd c = sys.ldlt().solve(jtr);
            const double min_rate = (1.0 + (dv * c).array()).minCoeff();
            if (min_rate < 0.2) c *= 0.8 / (1.0 - min_rate);
            Eigen::VectorXd u = t + v * c;
            u[0] = 0.0;
            u[n - 1] = 1.0;
            if ((u.tail(n - 1) - u.head(n - 1)).minCoeff() <= 0.0) {
                lambda *= 4.0;
                continue;
            }
            std::optional<WarpingFunction> composed;
            try {
                composed = warp_compose(gamma, WarpingFunction(SampledFunction(grid, u)));
            } catch (const MonotonicityError&) {
                lambda *= 4.0;
                continue;
            }
            WarpingFunction trial = std::move(*composed);
            Srvf trial_moved = warp_action(q2, trial);
            Eigen::VectorXd trial_r = q1.values() - trial_moved.values();
            const double trial_energy = weighted_energy(trial_r, w);
            if (trial_energy < energy) {
                const double gain = energy - trial_energy;
                gamma = std::move(trial);
                moved = std::move(trial_moved);
                r = std::move(trial_r);
                energy = trial_energy;
                lambda = std::max(lambda / 3.0, 1e-9);
                accepted = gain > 1e-10 * energy;
                break;
            }
            lambda *= 4.0;
        }
        if (!accepted) break;
    }
    return {std::move(gamma), std::sqrt(std::max(0.0, energy))};
}

std::vector<Srvf> srvfs_of(std::span<const SampledFunction> fs)
{
    std::vector<Srvf> qs;
    qs.reserve(fs.size());
    for (const auto& f : fs) qs.push_back(srvf_of_fn(f));
    return qs;
}

SampledFunction mean_of(const std::vector<Srvf>& qs)
{
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(qs.front().grid().size());
    for (const auto& q : qs) sum += q.values();
    return {qs.front().grid(), sum / static_cast<double>(qs.size())};
}

} // namespace

std::vector<DpStep> coprime_steps(int max_step)
{
    if (max_step < 1) throw DomainError("max DP step must be at least 1");
    std::vector<DpStep> steps;
    for (int dt = 1; dt <= max_step; ++dt)
        for (int dg = 1; dg <= max_step; ++dg)
            if (std::gcd(dt, dg) == 1) steps.push_back({dt, dg});
    std::stable_sort(steps.begin(), steps.end(), [](const DpStep& x, const DpStep& y) {
        const double ox = std::abs(std::log(static_cast<double>(x.dg) / x.dt));
        const double oy = std::abs(std::log(static_cast<double>(y.dg) / y.dt));
        if (ox != oy) return ox < oy;
        return x.dt + x.dg < y.dt + y.dg;
    });
    return steps;
}

std::vector<DpStep> extended_steps(int max_coprime, int max_slope)
{
    std::vector<DpStep> steps = coprime_steps(max_coprime);
    for (int k = max_coprime + 1; k <= max_slope; ++k) {
        steps.push_back({1, k});
        steps.push_back({k, 1});
    }
    return steps;
}

void DpConfig::validate() const
{
    if (grid_size < 16) throw DomainError("DP grid size must be at least 16");
    if (steps.empty()) throw DomainError("DP step set is empty");
    if (steps.size() > 32767) throw DomainError("DP step set too large");
    bool has_diagonal = false;
    for (const DpStep& s : steps) {
        if (s.dt < 1 || s.dg < 1) throw DomainError("DP steps must advance both coordinates");
        has_diagonal = has_diagonal || (s.dt == 1 && s.dg == 1);
    }
    if (!has_diagonal) throw DomainError("DP step set must contain the diagonal step (1,1)");
    if (smoothing_bandwidth && !(*smoothing_bandwidth > 0.0)) throw DomainError("smoothing bandwidth must be positive");
    if (refine_basis < 0 || refine_iterations < 0) throw DomainError("refinement settings must be nonnegative");
}

int DpConfig::max_step() const
{
    int r = 1;
    for (const DpStep& s : steps) r = std::max({r, s.dt, s.dg});
    return r;
}

Alignment pairwise_align(const Srvf& q1, const Srvf& q2, const DpConfig& cfg)
{
    Alignment al = dp_align(q1.function(), q2.function(), cfg, DpCriterion::srvf);
    if (cfg.refine_basis == 0) return al;
    // The lattice path is a staircase of rational slopes; smoothing its rate
    // over a couple of lattice cells gives the polish a kink-free start.
    const double bw = 2.0 / static_cast<double>(cfg.grid_size - 1);
    const SampledFunction rate = warp_derivative(al.warp);
    const Eigen::VectorXd soft = smooth(rate.values(), bw, rate.grid().spacing());
    WarpingFunction start = warp_of_psi(SampledFunction(rate.grid(), soft.cwiseMax(0.0).cwiseSqrt()));
    Alignment polished = refine_alignment(q1, q2, std::move(start), cfg.refine_basis, cfg.refine_iterations);
    const double raw = l2_dist(q1.function(), warp_action(q2, al.warp).function());
    if (raw <= polished.cost) return {std::move(al.warp), raw};
    return polished;
}

Alignment l2_align(const SampledFunction& f1, const SampledFunction& f2, const DpConfig& cfg)
{
    return dp_align(f1, f2, cfg, DpCriterion::l2);
}

RegistrationResult karcher_mean_registration(std::span<const SampledFunction> fs, const DpConfig& cfg,
                                             const RegistrationOptions& opts)
{
    if (fs.size() < 2) throw DomainError("need >= 2 functions for registration");
    for (const auto& f : fs) require_same_grid(f, fs.front());
    const UniformGrid grid = fs.front().grid();
    const std::vector<Srvf> qs = srvfs_of(fs);

    // Start from the sample closest to the cross-sectional SRVF mean.
    const SampledFunction qbar = mean_of(qs);
    std::size_t start = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const double d = l2_dist(qs[i].function(), qbar);
        if (d < best_dist) {
            best_dist = d;
            start = i;
        }
    }

    RegistrationResult out{fs.front(), qs[start], {}, {}, 0, 0.0, false, {}};
    Srvf tmpl = qs[start];
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<WarpingFunction> best_warps;
    Srvf best_tmpl = tmpl;

    for (int it = 1; it <= opts.max_iter; ++it) {
        std::vector<WarpingFunction> warps;
        std::vector<Srvf> aligned_q;
        double cost = 0.0;
        for (const Srvf& q : qs) {
            Alignment al = pairwise_align(tmpl, q, cfg);
            cost += al.cost * al.cost;
            aligned_q.push_back(warp_action(q, al.warp));
            warps.push_back(std::move(al.warp));
        }
        if (cost < best_cost) {
            best_cost = cost;
            best_warps = warps;
            best_tmpl = tmpl;
        }
        Srvf next(mean_of(aligned_q));
        const double change = l2_dist(next.function(), tmpl.function());
        out.template_changes.push_back(change);
        out.iterations = it;
        if (change < opts.tol) {
            out.converged = true;
            best_warps = std::move(warps);
            best_cost = cost;
            best_tmpl = std::move(next);
            break;
        }
        tmpl = std::move(next);
    }

    CenteredWarps centered = center_warps(best_warps);
    out.warps = std::move(centered.warps);
    out.template_srvf = warp_action(best_tmpl, warp_inverse(centered.mean_warp));
    out.final_cost = best_cost;

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(grid.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        out.aligned.push_back(compose(fs[i], out.warps[i]));
        mean += out.aligned.back().values();
    }
    out.karcher_mean = SampledFunction(grid, mean / static_cast<double>(fs.size()));
    return out;
}

namespace {

WarpingFunction psi_mean_warp(std::span<const WarpingFunction> warps)
{
    std::vector<HorizontalSrvf> psis;
    for (const auto& g : warps) psis.push_back(psi_of_warp(g));
    const EmbeddedSrvfs emb = embed_horizontal_srvfs(psis);
    return warp_of_psi(unembed(frechet_mean(emb.points), emb));
}

} // namespace

// One pass g_i o mean^-1 recenters only to first order in the spread, so the
// pass is repeated until the mean of the returned warps is the identity.
CenteredWarps center_warps(std::span<const WarpingFunction> warps)
{
    if (warps.empty()) throw DomainError("no warps to center");
    std::vector<WarpingFunction> current(warps.begin(), warps.end());
    WarpingFunction total = WarpingFunction::identity(warps.front().grid());
    for (int pass = 0; pass < 20; ++pass) {
        const WarpingFunction m = psi_mean_warp(current);
        const double off = (m.values() - m.grid().points()).cwiseAbs().maxCoeff();
        if (pass > 0 && off <= 1e-6) break;
        const WarpingFunction inv = warp_inverse(m);
        for (auto& g : current) g = warp_compose(g, inv);
        total = warp_compose(m, total);
        if (off <= 1e-6) break;
    }
    return {std::move(current), std::move(total)};
}

std::vector<SampledFunction> horizontally_shifted(const SampledFunction& mean, std::span<const WarpingFunction> warps)
{
    std::vector<SampledFunction> out;
    out.reserve(warps.size());
    for (const auto& g : warps) {
        require_same_grid(mean, g.function());
        out.push_back(compose(mean, g));
    }
    return out;
}

} // namespace hfda
