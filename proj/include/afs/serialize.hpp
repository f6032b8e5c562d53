#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "afs/logistic.hpp"
#include "afs/model_selection.hpp"
#include "afs/path.hpp"
#include "afs/simbench.hpp"
#include "afs/standardize.hpp"

namespace afs {

using ordered_json = nlohmann::ordered_json;

/// Self-contained fitted-path file: config, per-step coefficients on the
/// model scale, and the back-transform metadata needed to report original
/// scale coefficients or re-run inference.
struct PathFile {
  std::string family = "gaussian";  // or "binomial"
  AfsConfig config;
  StopReason stop_reason = StopReason::kMaxSteps;
  double l1_cap_used = 0.0;
  int n = 0;
  int p = 0;
  Eigen::VectorXd col_means, col_scales;
  double y_mean = 0.0;
  bool unit_norm = true;
  std::vector<std::string> feature_names;
  std::vector<AfsStep> steps;            // gaussian
  std::vector<LogisticStep> glm_steps;   // binomial
};

PathFile make_path_file(const AfsPath& path, const StandardizedDesign& design,
                        std::vector<std::string> feature_names = {});
PathFile make_path_file(const LogisticAfsPath& path,
                        const StandardizedDesign& design,
                        std::vector<std::string> feature_names = {});

ordered_json to_json(const PathFile& file);
PathFile path_file_from_json(const ordered_json& j);

/// Long-format plot data: step,variable,coefficient,l1,rss with the
/// coefficient reported on the original predictor scale (the rss column
/// carries the deviance for binomial paths).
std::string to_csv(const PathFile& file);

ordered_json to_json(const CvReport& report);
std::string to_csv(const CvReport& report);

ordered_json to_json(const BenchmarkReport& report, bool include_timing = false);
std::string to_csv(const BenchmarkReport& report, bool include_timing = false);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace afs
