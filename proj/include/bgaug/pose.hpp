// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace bgaug {

struct AbsolutePose2D {
  double px = 0.0;   // m
  double py = 0.0;   // m
  double yaw = 0.0;  // rad
};

/// Subject pose in the drone's frame: x forward, y left, phi = heading difference.
struct RelativePose {
  double x = 0.0;
  double y = 0.0;
  double phi = 0.0;
};

/// Maps to (-pi, pi]. Non-finite input throws ErrorKind::Argument.
double wrap_angle(double a);

RelativePose relative_pose(const AbsolutePose2D& drone, const AbsolutePose2D& subject);

/// Inverse of relative_pose: the subject's absolute pose.
AbsolutePose2D compose_pose(const AbsolutePose2D& drone, const RelativePose& rel);

/// Heading of the body x axis projected on the ground plane.
double yaw_from_quaternion(double qx, double qy, double qz, double qw);

struct TrackSample {
  double t = 0.0;
  AbsolutePose2D pose;
};

struct TimedFrame {
  std::string frame_id;
  double t = 0.0;
};

struct LabeledFrame {
  std::string frame_id;
  RelativePose pose;
};

struct LabelingResult {
  std::vector<LabeledFrame> labels;
  std::size_t dropped = 0;
};

/// Interpolates both tracks at every frame time (linear position,
/// shortest-arc yaw). Frames outside a track, or whose bracketing samples are
/// more than max_gap apart, are dropped. Unsorted tracks throw ErrorKind::Format.
LabelingResult resample_and_label(const std::vector<TimedFrame>& frames,
                                  const std::vector<TrackSample>& drone_track,
                                  const std::vector<TrackSample>& subject_track, double max_gap);

/// Parses `timestamp_s, px, py, pz, qx, qy, qz, qw` rows; z is discarded.
std::vector<TrackSample> read_track_csv(const std::filesystem::path& path);

/// Parses `frame_id, timestamp_s` rows.
std::vector<TimedFrame> read_frame_times_csv(const std::filesystem::path& path);

/// Writes `frame_id,x,y,phi` with 9 significant digits.
void write_labels_csv(const std::filesystem::path& path, const std::vector<LabeledFrame>& labels);

}  // namespace bgaug
