// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "bgaug/augment.hpp"
#include "bgaug/constants.hpp"

namespace bgaug {

struct EpochPlan {
  std::uint64_t seed = 0;
  int epochs = 1;
  int steps_per_epoch = constants::kStepsPerEpoch;
  int batch_size = constants::kBatchSize;
  AugMode mode = AugMode::BgAug;
  double split_fraction = constants::kValidationFraction;

  std::size_t samples_per_epoch() const noexcept {
    return static_cast<std::size_t>(steps_per_epoch) * static_cast<std::size_t>(batch_size);
  }
  void validate() const;
};

nlohmann::json to_json(const EpochPlan& plan);

struct TrainValSplit {
  std::vector<std::size_t> train;  // entry indices
  std::vector<std::size_t> val;
};

/// Shuffles 0..n-1 with the Split substream, then the first
/// ceil((1 - fraction) n) indices train and the rest validate.
TrainValSplit split_train_val(std::size_t n, double fraction, std::uint64_t seed);

/// Epoch value reserved for the train/validation shuffle substream.
inline constexpr std::uint64_t kSplitShuffleEpoch = ~std::uint64_t{0};
/// Validation samples use index kValidationIndexBit | j.
inline constexpr std::uint64_t kValidationIndexBit = std::uint64_t{1} << 63;

struct SampleSpec {
  std::uint64_t epoch = 0;
  std::uint64_t index = 0;  // sample number within the epoch
  std::size_t entry = 0;    // manifest entry index
  AugParams params;
};

/// steps x batch training samples. Sample k draws its frame uniformly with
/// replacement from `train` using the Split substream keyed (epoch, k) and
/// its augmentation from its own substreams.
std::vector<SampleSpec> build_epoch(const EpochPlan& plan, std::span<const std::size_t> train,
                                    std::uint64_t epoch, const AugRanges& ranges,
                                    const BackgroundPool* pool);

/// One augmented view of every validation entry for the given epoch.
std::vector<SampleSpec> build_validation(const EpochPlan& plan, std::span<const std::size_t> val,
                                         std::uint64_t epoch, const AugRanges& ranges,
                                         const BackgroundPool* pool);

}  // namespace bgaug
