#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hfda/pipeline.hpp"

namespace hfda::report {

using nlohmann::json;

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

json to_json(const Eigen::VectorXd& v);
json to_json(const VarianceProportions& v);

/// Writes mean.csv, warps.csv, aligned.csv and meta.json. Returns the
/// registration hash (FNV-1a of warps.csv).
std::string write_registration(const std::filesystem::path& dir, const RegistrationResult& reg, json meta);

/// "s-2", "s-1", "s+0", "s+1", "s+2"
std::string step_label(double s);

/// components/<k>/s<step>.csv, scores.csv, variance.json, validity.json,
/// decomposition.json and meta.json.
void write_analysis(const std::filesystem::path& dir, const HorizontalAnalysis& a, json meta);

std::string scores_csv(const Eigen::MatrixXd& scores);
std::string scree_csv(const std::vector<ScreeRow>& rows);
std::string scatter_csv(const std::vector<ScatterPoint>& pts);

struct ScreeSeries {
    std::string name;
    std::vector<double> individual;
    std::vector<double> cumulative;
};
std::vector<ScreeSeries> parse_scree_csv(const std::string& text);
std::vector<ScatterPoint> parse_scatter_csv(const std::string& text);

struct Curve {
    std::string label;
    Eigen::VectorXd t;
    Eigen::VectorXd y;
};

std::string components_svg(const std::vector<Curve>& curves, const std::string& title);
std::string scree_svg(const std::vector<ScreeSeries>& series);
std::string scatter_svg(const std::vector<ScatterPoint>& pts, const std::string& xlabel, const std::string& ylabel);

} // namespace hfda::report
