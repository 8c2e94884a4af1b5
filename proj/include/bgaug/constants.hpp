// SPDX-License-Identifier: Apache-2.0
#pragma once

// Pipeline constants for nano-drone pose training data.

namespace bgaug::constants {

inline constexpr int kFrameWidth = 160;
inline constexpr int kFrameHeight = 160;
inline constexpr int kCropHeight = 96;
inline constexpr int kMaxRowOffset = kFrameHeight - kCropHeight;  // 64
inline constexpr int kEvalRowOffset = 32;                          // middle 96 rows

inline constexpr double kMaskSigma = 1.0;
inline constexpr bool kMaskSofteningDefault = true;
inline constexpr int kMaskThreshold = 128;

// Pitch difference between the top-96 and middle-96 row crops, degrees.
inline constexpr double kTopCropPitchDelta = 14.0;

inline constexpr int kStepsPerEpoch = 320;
inline constexpr int kBatchSize = 64;
inline constexpr int kSamplesPerEpoch = kStepsPerEpoch * kBatchSize;  // 20480
inline constexpr double kValidationFraction = 0.2;

inline constexpr int kDatasetD1 = 2629;
inline constexpr int kDatasetD2 = 1119;
inline constexpr int kDatasetD3 = 8737;

inline constexpr double kMaxTrackGap = 0.050;  // seconds

}  // namespace bgaug::constants
