// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>

#include "bgaug/pose.hpp"
#include "bgaug/rng.hpp"
#include "support/synthetic.hpp"

namespace bgaug {
namespace {

using std::numbers::pi;

// Rotation of a 2-vector by -theta as an explicit matrix product.
std::array<double, 2> rotate_minus(double theta, double dx, double dy) {
  const double m[2][2] = {{std::cos(theta), std::sin(theta)}, {-std::sin(theta), std::cos(theta)}};
  return {m[0][0] * dx + m[0][1] * dy, m[1][0] * dx + m[1][1] * dy};
}

AbsolutePose2D random_pose(RngStream& rng) {
  return {draw_uniform(rng, -10, 10), draw_uniform(rng, -10, 10), wrap_angle(draw_uniform(rng, -pi, pi))};
}

TEST(WrapAngle, Examples) {
  EXPECT_EQ(wrap_angle(0.0), 0.0);
  EXPECT_NEAR(wrap_angle(3 * pi / 2), -pi / 2, 1e-15);
  EXPECT_EQ(wrap_angle(pi), pi);
  EXPECT_EQ(wrap_angle(-pi), pi);
  EXPECT_THROW(wrap_angle(std::nan("")), Error);
  EXPECT_THROW(wrap_angle(INFINITY), Error);
}

TEST(WrapAngle, RangeIdempotenceAndPeriodicity) {
  RngStream rng(6);
  for (int i = 0; i < 10000; ++i) {
    const double a = draw_uniform(rng, -50.0, 50.0);
    const double w = wrap_angle(a);
    ASSERT_GT(w, -pi);
    ASSERT_LE(w, pi);
    ASSERT_EQ(wrap_angle(w), w);
    for (int k = -10; k <= 10; ++k) {
      const double d = wrap_angle(a + 2 * pi * k) - w;
      ASSERT_NEAR(std::remainder(d, 2 * pi), 0.0, 1e-12) << a << " k=" << k;
      ASSERT_NEAR(wrap_angle(a + 2 * pi * k), w, 1e-12) << a << " k=" << k;
    }
  }
}

TEST(RelativePose, WorkedExamples) {
  const RelativePose same = relative_pose({1.5, -2.0, 0.3}, {1.5, -2.0, 0.3});
  EXPECT_EQ(same.x, 0.0);
  EXPECT_EQ(same.y, 0.0);
  EXPECT_EQ(same.phi, 0.0);

  const RelativePose b = relative_pose({0, 0, 0}, {2, 1, pi});
  EXPECT_DOUBLE_EQ(b.x, 2.0);
  EXPECT_DOUBLE_EQ(b.y, 1.0);
  EXPECT_DOUBLE_EQ(b.phi, pi);

  const RelativePose c = relative_pose({1, 1, pi / 2}, {1, 3, pi});
  const auto want = rotate_minus(pi / 2, 0.0, 2.0);
  EXPECT_NEAR(c.x, want[0], 1e-12);
  EXPECT_NEAR(c.y, want[1], 1e-12);
  EXPECT_NEAR(c.x, 2.0, 1e-12);
  EXPECT_NEAR(c.y, 0.0, 1e-12);
  EXPECT_NEAR(c.phi, pi / 2, 1e-12);
}

TEST(RelativePose, MatchesMatrixOracle) {
  RngStream rng(10);
  for (int i = 0; i < 1000; ++i) {
    const AbsolutePose2D d = random_pose(rng), s = random_pose(rng);
    const RelativePose r = relative_pose(d, s);
    const auto want = rotate_minus(d.yaw, s.px - d.px, s.py - d.py);
    ASSERT_NEAR(r.x, want[0], 1e-12);
    ASSERT_NEAR(r.y, want[1], 1e-12);
  }
}

TEST(RelativePose, RigidMotionInvariance) {
  RngStream rng(11);
  for (int i = 0; i < 10000; ++i) {
    const AbsolutePose2D d = random_pose(rng), s = random_pose(rng);
    const double th = draw_uniform(rng, -pi, pi);
    const double tx = draw_uniform(rng, -20, 20), ty = draw_uniform(rng, -20, 20);
    const auto move = [&](const AbsolutePose2D& p) {
      return AbsolutePose2D{std::cos(th) * p.px - std::sin(th) * p.py + tx,
                            std::sin(th) * p.px + std::cos(th) * p.py + ty, wrap_angle(p.yaw + th)};
    };
    const RelativePose a = relative_pose(d, s);
    const RelativePose b = relative_pose(move(d), move(s));
    ASSERT_NEAR(a.x, b.x, 1e-9);
    ASSERT_NEAR(a.y, b.y, 1e-9);
    ASSERT_NEAR(std::abs(wrap_angle(a.phi - b.phi)), 0.0, 1e-9);
  }
}

TEST(RelativePose, RoundTripReconstructsSubject) {
  RngStream rng(12);
  for (int i = 0; i < 10000; ++i) {
    const AbsolutePose2D d = random_pose(rng), s = random_pose(rng);
    const AbsolutePose2D back = compose_pose(d, relative_pose(d, s));
    ASSERT_NEAR(back.px, s.px, 1e-9);
    ASSERT_NEAR(back.py, s.py, 1e-9);
    ASSERT_NEAR(std::abs(wrap_angle(back.yaw - s.yaw)), 0.0, 1e-9);
  }
}

TEST(Quaternion, YawAboutVerticalAxis) {
  for (double th : {0.0, 0.5, -1.2, 3.0, pi}) {
    EXPECT_NEAR(std::abs(wrap_angle(yaw_from_quaternion(0, 0, std::sin(th / 2), std::cos(th / 2)) - th)), 0.0, 1e-12);
  }
  // A pitched body keeps its heading.
  const double a = 0.4, p = 0.3;
  const double qw = std::cos(a / 2) * std::cos(p / 2), qx = -std::sin(a / 2) * std::sin(p / 2),
               qy = std::cos(a / 2) * std::sin(p / 2), qz = std::sin(a / 2) * std::cos(p / 2);
  EXPECT_NEAR(yaw_from_quaternion(qx, qy, qz, qw), a, 1e-12);
}

std::vector<TrackSample> line_track(double yaw0, double yaw1) {
  return {{0.0, {0.0, 0.0, yaw0}}, {0.02, {1.0, 2.0, yaw1}}};
}

TEST(Resample, ExactTimestampUsesSampleVerbatim) {
  const std::vector<TrackSample> drone = {{0.0, {0, 0, 0}}, {0.5, {9, 9, 1}}};
  const std::vector<TrackSample> subj = {{0.0, {0.3, -0.7, 0.25}}, {0.5, {4, 4, 2}}};
  const LabelingResult r = resample_and_label({{"f0", 0.0}, {"f1", 0.5}}, drone, subj, 1.0);
  ASSERT_EQ(r.labels.size(), 2u);
  EXPECT_EQ(r.labels[0].pose.x, 0.3);
  EXPECT_EQ(r.labels[0].pose.y, -0.7);
  EXPECT_EQ(r.labels[0].pose.phi, 0.25);
  // An exact match survives even when its neighbours are far apart.
  const LabelingResult tight = resample_and_label({{"f0", 0.0}}, drone, subj, 0.05);
  EXPECT_EQ(tight.labels.size(), 1u);
}

TEST(Resample, ShortestArcThroughPi) {
  const double a = 170.0 * pi / 180.0;
  const std::vector<TrackSample> still = {{0.0, {0, 0, 0}}, {0.02, {0, 0, 0}}};
  const auto subj = line_track(a, -a);
  const LabelingResult r = resample_and_label({{"mid", 0.01}}, still, subj, 0.05);
  ASSERT_EQ(r.labels.size(), 1u);
  EXPECT_NEAR(std::abs(r.labels[0].pose.phi), pi, 1e-12);
  EXPECT_NEAR(r.labels[0].pose.x, 0.5, 1e-12);
  EXPECT_NEAR(r.labels[0].pose.y, 1.0, 1e-12);
}

TEST(Resample, GapsAndOutOfRangeFramesAreDropped) {
  const std::vector<TrackSample> drone = {{0.0, {0, 0, 0}}, {0.01, {0, 0, 0}}, {1.0, {0, 0, 0}}};
  const std::vector<TrackSample> subj = {{0.0, {1, 0, 0}}, {1.0, {1, 0, 0}}};
  const LabelingResult r = resample_and_label({{"a", 0.005}, {"b", 0.5}, {"c", 2.0}, {"d", -1.0}}, drone, subj, 0.05);
  EXPECT_EQ(r.labels.size(), 0u);
  EXPECT_EQ(r.dropped, 4u);

  const std::vector<TrackSample> dense = {{0.0, {1, 0, 0}}, {0.01, {1, 0, 0}}, {0.02, {1, 0, 0}}};
  const LabelingResult ok = resample_and_label({{"a", 0.005}, {"b", 0.015}}, drone, dense, 0.05);
  EXPECT_EQ(ok.labels.size(), 1u);  // b falls in the drone's 0.01..1.0 gap
  EXPECT_EQ(ok.dropped, 1u);
}

TEST(Resample, UnsortedTrackIsFormatError) {
  const std::vector<TrackSample> bad = {{0.5, {0, 0, 0}}, {0.1, {0, 0, 0}}};
  const std::vector<TrackSample> good = {{0.0, {0, 0, 0}}, {1.0, {0, 0, 0}}};
  try {
    resample_and_label({{"a", 0.3}}, bad, good, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Format);
  }
}

TEST(PoseFiles, TrackCsvAndLabelsOutput) {
  testing::TempDir tmp("pose_csv");
  {
    std::ofstream out(tmp.path() / "track.csv");
    out.precision(17);
    out << "timestamp_s,px,py,pz,qx,qy,qz,qw\n";
    out << "0.0,1.0,2.0,0.5,0,0,0,1\n";
    out << "0.1,1.5,2.5,0.5,0," << "0," << std::sin(pi / 4) << "," << std::cos(pi / 4) << "\n";
  }
  const auto track = read_track_csv(tmp.path() / "track.csv");
  ASSERT_EQ(track.size(), 2u);
  EXPECT_DOUBLE_EQ(track[1].pose.px, 1.5);
  EXPECT_NEAR(track[1].pose.yaw, pi / 2, 1e-9);

  write_labels_csv(tmp.path() / "labels.csv", {{"f0", {0.123456789012, -2.0, pi}}});
  std::ifstream in(tmp.path() / "labels.csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "frame_id,x,y,phi");
  EXPECT_EQ(row, "f0,0.123456789,-2,3.14159265");
}

}  // namespace
}  // namespace bgaug
