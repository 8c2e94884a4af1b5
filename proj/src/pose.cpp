// SPDX-License-Identifier: Apache-2.0
#include "bgaug/pose.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>

#include "bgaug/error.hpp"
#include "csv.hpp"

namespace bgaug {
namespace fs = std::filesystem;

double wrap_angle(double a) {
  if (!std::isfinite(a)) throw Error(ErrorKind::Argument, "cannot wrap a non-finite angle");
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = std::remainder(a, kTwoPi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

RelativePose relative_pose(const AbsolutePose2D& drone, const AbsolutePose2D& subject) {
  const double dx = subject.px - drone.px;
  const double dy = subject.py - drone.py;
  const double c = std::cos(drone.yaw);
  const double s = std::sin(drone.yaw);
  return RelativePose{c * dx + s * dy, -s * dx + c * dy, wrap_angle(subject.yaw - drone.yaw)};
}

AbsolutePose2D compose_pose(const AbsolutePose2D& drone, const RelativePose& rel) {
  const double c = std::cos(drone.yaw);
  const double s = std::sin(drone.yaw);
  return AbsolutePose2D{drone.px + c * rel.x - s * rel.y, drone.py + s * rel.x + c * rel.y,
                        wrap_angle(drone.yaw + rel.phi)};
}

double yaw_from_quaternion(double qx, double qy, double qz, double qw) {
  // Body x axis in world coordinates, projected on the ground plane.
  const double hx = 1.0 - 2.0 * (qy * qy + qz * qz);
  const double hy = 2.0 * (qx * qy + qw * qz);
  return std::atan2(hy, hx);
}

namespace {

void check_sorted(const std::vector<TrackSample>& track, const char* name) {
  for (std::size_t i = 1; i < track.size(); ++i) {
    if (track[i].t < track[i - 1].t) {
      throw Error(ErrorKind::Format, std::string(name) + " track is not sorted by timestamp at row " +
                                         std::to_string(i + 1));
    }
  }
}

std::optional<AbsolutePose2D> interpolate(const std::vector<TrackSample>& track, double t, double max_gap) {
  const auto it = std::lower_bound(track.begin(), track.end(), t,
                                   [](const TrackSample& s, double v) { return s.t < v; });
  if (it != track.end() && it->t == t) return it->pose;
  if (it == track.end() || it == track.begin()) return std::nullopt;
  const TrackSample& a = *(it - 1);
  const TrackSample& b = *it;
  if (b.t - a.t > max_gap) return std::nullopt;
  const double u = (t - a.t) / (b.t - a.t);
  return AbsolutePose2D{a.pose.px + u * (b.pose.px - a.pose.px), a.pose.py + u * (b.pose.py - a.pose.py),
                        wrap_angle(a.pose.yaw + u * wrap_angle(b.pose.yaw - a.pose.yaw))};
}

}  // namespace

LabelingResult resample_and_label(const std::vector<TimedFrame>& frames, const std::vector<TrackSample>& drone_track,
                                  const std::vector<TrackSample>& subject_track, double max_gap) {
  check_sorted(drone_track, "drone");
  check_sorted(subject_track, "subject");
  LabelingResult result;
  for (const TimedFrame& f : frames) {
    const auto drone = interpolate(drone_track, f.t, max_gap);
    const auto subject = interpolate(subject_track, f.t, max_gap);
    if (!drone || !subject) {
      ++result.dropped;
      continue;
    }
    result.labels.push_back({f.frame_id, relative_pose(*drone, *subject)});
  }
  return result;
}

std::vector<TrackSample> read_track_csv(const fs::path& path) {
  std::vector<TrackSample> track;
  csv::for_each_row(path, 0, [&](const std::vector<std::string_view>& f, std::size_t line) {
    if (f.size() < 8) {
      throw Error(ErrorKind::Format, path.string() + ":" + std::to_string(line) +
                                         ": expected timestamp_s,px,py,pz,qx,qy,qz,qw");
    }
    double v[8];
    for (std::size_t i = 0; i < 8; ++i) v[i] = csv::field_as_double(f, i, path, line);
    track.push_back({v[0], AbsolutePose2D{v[1], v[2], yaw_from_quaternion(v[4], v[5], v[6], v[7])}});
  });
  return track;
}

std::vector<TimedFrame> read_frame_times_csv(const fs::path& path) {
  std::vector<TimedFrame> frames;
  csv::for_each_row(path, 1, [&](const std::vector<std::string_view>& f, std::size_t line) {
    if (f.size() < 2) throw Error(ErrorKind::Format, path.string() + ":" + std::to_string(line) + ": expected frame_id,timestamp_s");
    frames.push_back({std::string(f[0]), csv::field_as_double(f, 1, path, line)});
  });
  return frames;
}

void write_labels_csv(const fs::path& path, const std::vector<LabeledFrame>& labels) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot create " + path.string());
  out << "frame_id,x,y,phi\n";
  char buf[96];
  for (const LabeledFrame& l : labels) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g", l.pose.x, l.pose.y, l.pose.phi);
    out << l.frame_id << ',' << buf << '\n';
  }
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

}  // namespace bgaug
