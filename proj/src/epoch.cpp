// SPDX-License-Identifier: Apache-2.0
#include "bgaug/epoch.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace bgaug {

void EpochPlan::validate() const {
  if (epochs < 1 || steps_per_epoch < 1 || batch_size < 1) {
    throw Error(ErrorKind::Config, "epochs, steps and batch size must be >= 1");
  }
  if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
    throw Error(ErrorKind::Config, "split fraction must be in (0,1)");
  }
  const std::size_t total = samples_per_epoch() * static_cast<std::size_t>(epochs);
  if (total > 0xffffffffULL) throw Error(ErrorKind::Config, "plan exceeds the packed format's u32 sample count");
}

nlohmann::json to_json(const EpochPlan& plan) {
  return nlohmann::json{{"seed", plan.seed},
                        {"epochs", plan.epochs},
                        {"steps_per_epoch", plan.steps_per_epoch},
                        {"batch_size", plan.batch_size},
                        {"samples_per_epoch", plan.samples_per_epoch()},
                        {"mode", to_string(plan.mode)},
                        {"split_fraction", plan.split_fraction}};
}

TrainValSplit split_train_val(std::size_t n, double fraction, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::Data, "cannot split an empty manifest");
  if (!(fraction > 0.0 && fraction < 1.0)) throw Error(ErrorKind::Argument, "split fraction must be in (0,1)");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  RngStream rng = derive_substream(seed, kSplitShuffleEpoch, 0, Purpose::Split);
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(draw_uniform_int(rng, 0, static_cast<std::int64_t>(i)));
    std::swap(order[i], order[j]);
  }
  // The epsilon absorbs representation error, e.g. (1 - 0.2) * 5.
  const auto n_train = static_cast<std::size_t>(std::ceil((1.0 - fraction) * static_cast<double>(n) - 1e-9));

  TrainValSplit split;
  split.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.val.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  return split;
}

std::vector<SampleSpec> build_epoch(const EpochPlan& plan, std::span<const std::size_t> train, std::uint64_t epoch,
                                    const AugRanges& ranges, const BackgroundPool* pool) {
  if (train.empty()) throw Error(ErrorKind::Data, "training list is empty");
  const std::size_t count = plan.samples_per_epoch();
  std::vector<SampleSpec> specs;
  specs.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    RngStream pick = derive_substream(plan.seed, epoch, k, Purpose::Split);
    const auto slot = static_cast<std::size_t>(draw_uniform_int(pick, 0, static_cast<std::int64_t>(train.size()) - 1));
    specs.push_back({epoch, k, train[slot], sample_aug_params(plan.mode, ranges, pool, plan.seed, epoch, k)});
  }
  return specs;
}

std::vector<SampleSpec> build_validation(const EpochPlan& plan, std::span<const std::size_t> val, std::uint64_t epoch,
                                         const AugRanges& ranges, const BackgroundPool* pool) {
  std::vector<SampleSpec> specs;
  specs.reserve(val.size());
  for (std::uint64_t j = 0; j < val.size(); ++j) {
    const std::uint64_t index = kValidationIndexBit | j;
    specs.push_back({epoch, index, val[j], sample_aug_params(plan.mode, ranges, pool, plan.seed, epoch, index)});
  }
  return specs;
}

}  // namespace bgaug
