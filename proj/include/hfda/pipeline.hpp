#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hfda/align.hpp"
#include "hfda/fpca.hpp"
#include "hfda/pga.hpp"
#include "hfda/pns.hpp"

namespace hfda {

enum class Method { fpca_shifted, fpca_warp, pga_srvf, pns_srvf };

inline constexpr std::array<Method, 4> kAllMethods{Method::fpca_shifted, Method::fpca_warp, Method::pga_srvf,
                                                   Method::pns_srvf};

std::string to_string(Method m);
Method method_from_string(const std::string& name);

/// Projection display grid, in standard deviations.
inline constexpr std::array<double, 5> kDisplaySteps{-2.0, -1.0, 0.0, 1.0, 2.0};

/// The three horizontal data objects, all derived from one registration.
struct HorizontalData {
    RegistrationResult registration;
    /// gamma_i with f_i ~ mean o gamma_i (inverses of the aligning warps).
    std::vector<WarpingFunction> warps;
    /// h_i = mean o gamma_i
    std::vector<SampledFunction> shifted;
    std::vector<HorizontalSrvf> psis;
};

HorizontalData prepare_horizontal(std::span<const SampledFunction> fs, const DpConfig& cfg = {},
                                  const RegistrationOptions& opts = {});

struct ComponentCurves {
    std::vector<double> steps;
    std::vector<SampledFunction> curves;
    /// Warp behind each curve (empty for fpca-shifted).
    std::vector<SampledFunction> warps;
    std::vector<WarpValidityReport> validity;
};

struct HorizontalAnalysis {
    Method method;
    std::vector<ComponentCurves> components;
    Eigen::MatrixXd scores;
    VarianceProportions variance;
    std::optional<FpcaResult> fpca;
    std::optional<PgaResult> pga;
    std::optional<PnsDecomposition> pns;
};

/// Runs one method on prepared data, emitting curves for the first k
/// components (fewer if the method has fewer).
HorizontalAnalysis analyze(const HorizontalData& data, Method method, Index k,
                           SphereMode mode = SphereMode::small);

HorizontalAnalysis analyze_horizontal(std::span<const SampledFunction> fs, Method method, Index k,
                                      const DpConfig& cfg = {}, SphereMode mode = SphereMode::small);

struct ScreeRow {
    Method method;
    Eigen::VectorXd individual;
    Eigen::VectorXd cumulative;
};

/// Proportions for components 1..n_components; missing components count as
/// zero and the cumulative column saturates.
std::vector<ScreeRow> scree_table(std::span<const HorizontalAnalysis> analyses, Index n_components);

struct ScatterPoint {
    double x;
    double y;
    /// Rank (0-based) of the sample's colouring score.
    Index color;
};

/// Points (score_i, score_j), coloured by the rank of `order_scores`.
std::vector<ScatterPoint> score_scatter(const HorizontalAnalysis& analysis, Index i, Index j,
                                        const Eigen::VectorXd& order_scores);

/// Rank of each entry in ascending order (ties by index).
std::vector<Index> ranks(const Eigen::VectorXd& v);

} // namespace hfda
