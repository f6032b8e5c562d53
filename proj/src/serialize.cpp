#include "afs/serialize.hpp"

#include <charconv>

#include "afs/errors.hpp"

namespace afs {

namespace {

StopReason stop_reason_from_string(const std::string& s) {
  if (s == "max_steps") return StopReason::kMaxSteps;
  if (s == "l1_cap_reached") return StopReason::kL1CapReached;
  if (s == "singular_gram") return StopReason::kSingularGram;
  if (s == "exact_fit") return StopReason::kExactFit;
  if (s == "separable") return StopReason::kSeparable;
  throw Error("unknown stop reason '" + s + "'");
}

std::vector<double> to_vec(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

Eigen::VectorXd from_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

void base_metadata(const PathFile& file, ordered_json& j) {
  j["family"] = file.family;
  j["config"] = {{"rho", file.config.rho},
                 {"max_steps", file.config.max_steps},
                 {"l1_cap", file.config.l1_cap
                                ? ordered_json(*file.config.l1_cap)
                                : ordered_json("auto")}};
  j["stop_reason"] = to_string(file.stop_reason);
  j["l1_cap_used"] = file.l1_cap_used;
  j["n"] = file.n;
  j["p"] = file.p;
  j["standardization"] = {{"col_means", to_vec(file.col_means)},
                          {"col_scales", to_vec(file.col_scales)},
                          {"y_mean", file.y_mean},
                          {"unit_norm", file.unit_norm}};
  j["feature_names"] = file.feature_names;
}

void fill_design_fields(PathFile& file, const StandardizedDesign& design,
                        std::vector<std::string> feature_names) {
  file.n = design.n();
  file.p = design.p();
  file.col_means = design.col_means;
  file.col_scales = design.col_scales;
  file.y_mean = design.y_mean;
  file.unit_norm = design.standardized;
  if (feature_names.empty()) {
    for (int j = 0; j < design.p(); ++j) {
      feature_names.push_back("x" + std::to_string(j));
    }
  }
  file.feature_names = std::move(feature_names);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

PathFile make_path_file(const AfsPath& path, const StandardizedDesign& design,
                        std::vector<std::string> feature_names) {
  PathFile file;
  file.family = "gaussian";
  file.config = path.config;
  file.stop_reason = path.stop_reason;
  file.l1_cap_used = path.l1_cap_used;
  file.steps = path.steps;
  fill_design_fields(file, design, std::move(feature_names));
  return file;
}

PathFile make_path_file(const LogisticAfsPath& path,
                        const StandardizedDesign& design,
                        std::vector<std::string> feature_names) {
  PathFile file;
  file.family = "binomial";
  file.config = path.config;
  file.stop_reason = path.stop_reason;
  file.l1_cap_used = path.l1_cap_used;
  file.glm_steps = path.steps;
  fill_design_fields(file, design, std::move(feature_names));
  return file;
}

ordered_json to_json(const PathFile& file) {
  ordered_json j;
  base_metadata(file, j);
  ordered_json steps = ordered_json::array();
  if (file.family == "binomial") {
    for (const auto& s : file.glm_steps) {
      steps.push_back({{"m", s.m},
                       {"chosen", s.chosen},
                       {"entered", s.entered},
                       {"active", s.active},
                       {"deviance", s.deviance},
                       {"l1", s.l1},
                       {"intercept", s.intercept},
                       {"beta", to_vec(s.beta)}});
    }
  } else {
    for (const auto& s : file.steps) {
      steps.push_back({{"m", s.m},
                       {"chosen", s.chosen},
                       {"entered", s.entered},
                       {"active", s.active},
                       {"rss", s.rss},
                       {"l1", s.l1},
                       {"beta", to_vec(s.beta)}});
    }
  }
  j["steps"] = std::move(steps);
  return j;
}

PathFile path_file_from_json(const ordered_json& j) {
  PathFile file;
  file.family = j.at("family").get<std::string>();
  const auto& cfg = j.at("config");
  file.config.rho = cfg.at("rho").get<double>();
  file.config.max_steps = cfg.at("max_steps").get<int>();
  if (cfg.at("l1_cap").is_number()) {
    file.config.l1_cap = cfg.at("l1_cap").get<double>();
  }
  file.stop_reason = stop_reason_from_string(j.at("stop_reason"));
  file.l1_cap_used = j.at("l1_cap_used").get<double>();
  file.n = j.at("n").get<int>();
  file.p = j.at("p").get<int>();
  const auto& std_j = j.at("standardization");
  file.col_means = from_vec(std_j.at("col_means").get<std::vector<double>>());
  file.col_scales = from_vec(std_j.at("col_scales").get<std::vector<double>>());
  file.y_mean = std_j.at("y_mean").get<double>();
  file.unit_norm = std_j.at("unit_norm").get<bool>();
  file.feature_names = j.at("feature_names").get<std::vector<std::string>>();

  for (const auto& s : j.at("steps")) {
    if (file.family == "binomial") {
      LogisticStep step;
      step.m = s.at("m").get<int>();
      step.chosen = s.at("chosen").get<int>();
      step.entered = s.at("entered").get<bool>();
      step.active = s.at("active").get<std::vector<int>>();
      step.deviance = s.at("deviance").get<double>();
      step.l1 = s.at("l1").get<double>();
      step.intercept = s.at("intercept").get<double>();
      step.beta = from_vec(s.at("beta").get<std::vector<double>>());
      file.glm_steps.push_back(std::move(step));
    } else {
      AfsStep step;
      step.m = s.at("m").get<int>();
      step.chosen = s.at("chosen").get<int>();
      step.entered = s.at("entered").get<bool>();
      step.active = s.at("active").get<std::vector<int>>();
      step.rss = s.at("rss").get<double>();
      step.l1 = s.at("l1").get<double>();
      step.beta = from_vec(s.at("beta").get<std::vector<double>>());
      file.steps.push_back(std::move(step));
    }
  }
  return file;
}

std::string to_csv(const PathFile& file) {
  std::string out = "step,variable,coefficient,l1,rss\n";
  auto emit = [&](int m, double l1, double fit_stat,
                  const Eigen::VectorXd& beta) {
    for (int v = 0; v < file.p; ++v) {
      out += std::to_string(m);
      out += ',';
      out += file.feature_names[v];
      out += ',';
      out += format_double(beta[v] / file.col_scales[v]);
      out += ',';
      out += format_double(l1);
      out += ',';
      out += format_double(fit_stat);
      out += '\n';
    }
  };
  if (file.family == "binomial") {
    for (const auto& s : file.glm_steps) emit(s.m, s.l1, s.deviance, s.beta);
  } else {
    for (const auto& s : file.steps) emit(s.m, s.l1, s.rss, s.beta);
  }
  return out;
}

ordered_json to_json(const CvReport& report) {
  ordered_json j;
  j["fitter"] = to_string(report.fitter);
  j["k"] = report.k;
  j["seed"] = report.seed;
  j["selected"] = report.selected;
  ordered_json grid = ordered_json::array();
  for (const auto& e : report.entries) {
    ordered_json entry;
    if (report.fitter == FitterKind::kLasso) {
      entry["lambda_index"] = e.lambda_index;
      entry["lambda"] = e.lambda;
    } else {
      entry["rho"] = e.rho;
      entry["m"] = e.m;
    }
    entry["cv_mean"] = e.cv_mean;
    entry["cv_se"] = e.cv_se;
    grid.push_back(std::move(entry));
  }
  j["grid"] = std::move(grid);
  return j;
}

std::string to_csv(const CvReport& report) {
  const bool lasso = report.fitter == FitterKind::kLasso;
  std::string out =
      lasso ? "lambda_index,lambda,cv_mean,cv_se,selected\n"
            : "rho,m,cv_mean,cv_se,selected\n";
  for (size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    if (lasso) {
      out += std::to_string(e.lambda_index) + ',' + format_double(e.lambda);
    } else {
      out += format_double(e.rho) + ',' + std::to_string(e.m);
    }
    out += ',' + format_double(e.cv_mean) + ',' + format_double(e.cv_se) +
           ',' + (static_cast<int>(i) == report.selected ? "1" : "0") + '\n';
  }
  return out;
}

ordered_json to_json(const BenchmarkReport& report, bool include_timing) {
  ordered_json j;
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  ordered_json cells = ordered_json::array();
  for (size_t c = 0; c < report.cells.size(); ++c) {
    const auto& cell = report.cells[c];
    ordered_json cj;
    cj["cell"] = c;
    cj["n"] = cell.config.n;
    cj["p"] = cell.config.p;
    cj["s_x"] = cell.config.s_x;
    cj["sigma2_x"] = cell.config.sigma2_x;
    cj["snr"] = cell.config.snr;
    ordered_json methods = ordered_json::array();
    for (const auto& method : cell.methods) {
      ordered_json mj;
      mj["method"] = method;
      mj["median_mse"] = report.median_metric(static_cast<int>(c), method, "mse");
      mj["median_support"] =
          report.median_metric(static_cast<int>(c), method, "support");
      mj["median_fpr"] = report.median_metric(static_cast<int>(c), method, "fpr");
      mj["median_tpr"] = report.median_metric(static_cast<int>(c), method, "tpr");
      if (include_timing) {
        mj["median_wall_time_s"] =
            report.median_metric(static_cast<int>(c), method, "wall_time");
      }
      methods.push_back(std::move(mj));
    }
    cj["methods"] = std::move(methods);
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  return j;
}

std::string to_csv(const BenchmarkReport& report, bool include_timing) {
  std::string out =
      "cell,n,p,s_x,sigma2_x,snr,trial,method,mse,support,fpr,tpr,"
      "selected_rho,selected_m,selected_lambda,failed";
  if (include_timing) out += ",wall_time_s";
  out += '\n';
  for (const auto& row : report.rows) {
    const auto& cfg = report.cells[row.cell].config;
    out += std::to_string(row.cell) + ',' + std::to_string(cfg.n) + ',' +
           std::to_string(cfg.p) + ',' + format_double(cfg.s_x) + ',' +
           format_double(cfg.sigma2_x) + ',' + format_double(cfg.snr) + ',' +
           std::to_string(row.trial) + ',' + row.method + ',' +
           format_double(row.metrics.mse) + ',' +
           std::to_string(row.metrics.support) + ',' +
           format_double(row.metrics.fpr) + ',' +
           format_double(row.metrics.tpr) + ',' +
           format_double(row.selected_rho) + ',' +
           std::to_string(row.selected_m) + ',' +
           format_double(row.selected_lambda) + ',' +
           (row.failed ? "1" : "0");
    if (include_timing) out += ',' + format_double(row.metrics.wall_time_s);
    out += '\n';
  }
  return out;
}

}  // namespace afs
