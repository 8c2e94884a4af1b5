// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "bgaug/pose.hpp"

namespace bgaug {

/// 1 - SS_res / SS_tot. Throws ErrorKind::Argument on length mismatch or
/// fewer than two values, ErrorKind::DegenerateTarget on constant targets.
double r_squared(std::span<const double> y_true, std::span<const double> y_pred);

/// wrap_angle(phi_pred - phi_true)
double angular_residual(double phi_true, double phi_pred);

/// atan2 of the mean sine and cosine.
double circular_mean(std::span<const double> angles);

/// R^2 for an angle: wrapped residuals over deviations from the circular mean.
double circular_r_squared(std::span<const double> phi_true, std::span<const double> phi_pred);

struct VariableScore {
  double r2 = 0.0;
  double mae = 0.0;
  std::size_t n = 0;
};

struct EvalReport {
  VariableScore x;
  VariableScore y;
  VariableScore phi;
  bool phi_circular = true;
};

enum class PhiMode { Circular, Linear };

/// Joins labels and predictions on frame_id. Fewer than two joined rows
/// throw ErrorKind::Data.
EvalReport evaluate(const std::vector<LabeledFrame>& labels,
                    const std::vector<LabeledFrame>& predictions, PhiMode mode = PhiMode::Circular);

EvalReport evaluate_files(const std::filesystem::path& labels,
                          const std::filesystem::path& predictions,
                          PhiMode mode = PhiMode::Circular);

/// Parses `frame_id, x, y, phi` rows; a non-numeric first row is a header.
std::vector<LabeledFrame> read_labels_csv(const std::filesystem::path& path);

nlohmann::json to_json(const EvalReport& report);

}  // namespace bgaug
