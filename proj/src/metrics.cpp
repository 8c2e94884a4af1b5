// SPDX-License-Identifier: Apache-2.0
#include "bgaug/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "bgaug/error.hpp"
#include "csv.hpp"

namespace bgaug {
namespace fs = std::filesystem;

namespace {

void check_pair(std::span<const double> y_true, std::span<const double> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorKind::Argument, "r_squared: length mismatch (" + std::to_string(y_true.size()) + " vs " +
                                         std::to_string(y_pred.size()) + ")");
  }
  if (y_true.size() < 2) throw Error(ErrorKind::Argument, "r_squared needs at least two values");
}

double ratio_to_r2(double ss_res, double ss_tot) {
  if (!(ss_tot > 0.0)) throw Error(ErrorKind::DegenerateTarget, "target has zero variance");
  return 1.0 - ss_res / ss_tot;
}

}  // namespace

double r_squared(std::span<const double> y_true, std::span<const double> y_pred) {
  check_pair(y_true, y_pred);
  double mean = 0.0;
  for (double v : y_true) mean += v;
  mean /= static_cast<double>(y_true.size());
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    ss_res += (y_true[i] - y_pred[i]) * (y_true[i] - y_pred[i]);
    ss_tot += (y_true[i] - mean) * (y_true[i] - mean);
  }
  return ratio_to_r2(ss_res, ss_tot);
}

double angular_residual(double phi_true, double phi_pred) { return wrap_angle(phi_pred - phi_true); }

double circular_mean(std::span<const double> angles) {
  double s = 0.0;
  double c = 0.0;
  for (double a : angles) {
    s += std::sin(a);
    c += std::cos(a);
  }
  return std::atan2(s, c);
}

double circular_r_squared(std::span<const double> phi_true, std::span<const double> phi_pred) {
  check_pair(phi_true, phi_pred);
  const double mu = circular_mean(phi_true);
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < phi_true.size(); ++i) {
    const double r = angular_residual(phi_true[i], phi_pred[i]);
    const double d = wrap_angle(phi_true[i] - mu);
    ss_res += r * r;
    ss_tot += d * d;
  }
  return ratio_to_r2(ss_res, ss_tot);
}

EvalReport evaluate(const std::vector<LabeledFrame>& labels, const std::vector<LabeledFrame>& predictions,
                    PhiMode mode) {
  std::unordered_map<std::string, const LabeledFrame*> by_id;
  for (const LabeledFrame& p : predictions) {
    if (!by_id.emplace(p.frame_id, &p).second) {
      throw Error(ErrorKind::Data, "duplicate frame_id in predictions: " + p.frame_id);
    }
  }
  std::vector<std::pair<const LabeledFrame*, const LabeledFrame*>> joined;
  for (const LabeledFrame& l : labels) {
    if (auto it = by_id.find(l.frame_id); it != by_id.end()) joined.emplace_back(&l, it->second);
  }
  if (joined.size() < 2) {
    throw Error(ErrorKind::Data, "labels and predictions share " + std::to_string(joined.size()) +
                                     " frame_id(s); need at least 2");
  }
  // Summation order follows frame_id so the report does not depend on row order.
  std::sort(joined.begin(), joined.end(), [](const auto& a, const auto& b) { return a.first->frame_id < b.first->frame_id; });
  for (std::size_t i = 1; i < joined.size(); ++i) {
    if (joined[i].first->frame_id == joined[i - 1].first->frame_id) {
      throw Error(ErrorKind::Data, "duplicate frame_id in labels: " + joined[i].first->frame_id);
    }
  }

  const std::size_t n = joined.size();
  std::vector<double> tx(n), ty(n), tp(n), px(n), py(n), pp(n);
  for (std::size_t i = 0; i < n; ++i) {
    tx[i] = joined[i].first->pose.x;
    ty[i] = joined[i].first->pose.y;
    tp[i] = joined[i].first->pose.phi;
    px[i] = joined[i].second->pose.x;
    py[i] = joined[i].second->pose.y;
    pp[i] = joined[i].second->pose.phi;
  }
  auto mae = [n](const std::vector<double>& a, const std::vector<double>& b, bool angular) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::abs(angular ? angular_residual(a[i], b[i]) : b[i] - a[i]);
    return sum / static_cast<double>(n);
  };

  const bool circular = mode == PhiMode::Circular;
  EvalReport report;
  report.phi_circular = circular;
  report.x = {r_squared(tx, px), mae(tx, px, false), n};
  report.y = {r_squared(ty, py), mae(ty, py, false), n};
  report.phi = {circular ? circular_r_squared(tp, pp) : r_squared(tp, pp), mae(tp, pp, circular), n};
  return report;
}

std::vector<LabeledFrame> read_labels_csv(const fs::path& path) {
  std::vector<LabeledFrame> rows;
  csv::for_each_row(path, 1, [&](const std::vector<std::string_view>& f, std::size_t line) {
    if (f.size() < 4) throw Error(ErrorKind::Format, path.string() + ":" + std::to_string(line) + ": expected frame_id,x,y,phi");
    rows.push_back({std::string(f[0]), RelativePose{csv::field_as_double(f, 1, path, line),
                                                    csv::field_as_double(f, 2, path, line),
                                                    csv::field_as_double(f, 3, path, line)}});
  });
  return rows;
}

EvalReport evaluate_files(const fs::path& labels, const fs::path& predictions, PhiMode mode) {
  return evaluate(read_labels_csv(labels), read_labels_csv(predictions), mode);
}

nlohmann::json to_json(const EvalReport& report) {
  auto score = [](const VariableScore& s) { return nlohmann::json{{"r2", s.r2}, {"mae", s.mae}, {"n", s.n}}; };
  return nlohmann::json{{"x", score(report.x)},
                        {"y", score(report.y)},
                        {"phi", score(report.phi)},
                        {"phi_mode", report.phi_circular ? "circular" : "linear"}};
}

}  // namespace bgaug
