// SPDX-License-Identifier: Apache-2.0
#include "bgaug/cli.hpp"

#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>

#include "bgaug/config.hpp"
#include "bgaug/constants.hpp"
#include "bgaug/image_io.hpp"
#include "bgaug/metrics.hpp"
#include "bgaug/pipeline.hpp"
#include "bgaug/pose.hpp"

namespace bgaug {
namespace fs = std::filesystem;

namespace {

struct CommonFlags {
  std::string seed;
  std::string mode = "bgaug";
  std::string config;
  std::string pool;
};

AugRanges ranges_from(const CommonFlags& f) { return f.config.empty() ? AugRanges{} : load_aug_ranges(f.config); }

void add_pool_flag(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--pool", f.pool, "Background image directory")->envname("BGAUG_POOL");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Background-randomization augmentation for drone pose datasets", "bgaug"};
  app.require_subcommand(1);

  CommonFlags common;

  // mask-prep
  MaskPrepOptions mask_opts;
  bool no_soften = false;
  auto* mask_cmd = app.add_subcommand("mask-prep", "Select the subject and write softened alpha masks");
  mask_cmd->add_option("--manifest", mask_opts.manifest, "Input manifest JSON")->required();
  mask_cmd->add_option("--out", mask_opts.out_dir, "Output directory")->required();
  mask_cmd->add_option("--mask-sigma", mask_opts.sigma, "Gaussian softening sigma in pixels")->capture_default_str();
  mask_cmd->add_flag("--no-soften", no_soften, "Keep binary masks");

  // pool-stats
  int pool_w = constants::kFrameWidth, pool_h = constants::kFrameHeight;
  auto* pool_cmd = app.add_subcommand("pool-stats", "Index a background directory and report statistics");
  add_pool_flag(pool_cmd, common);
  pool_cmd->add_option("--width", pool_w, "Target width")->capture_default_str();
  pool_cmd->add_option("--height", pool_h, "Target height")->capture_default_str();

  // augment
  AugmentOptions aug_opts;
  std::string format = "packed";
  bool no_val = false;
  auto* aug_cmd = app.add_subcommand("augment", "Generate augmented training epochs");
  aug_cmd->add_option("--manifest", aug_opts.manifest, "Dataset manifest JSON")->required();
  aug_cmd->add_option("--out", aug_opts.out_dir, "Output directory")->required();
  add_pool_flag(aug_cmd, common);
  aug_cmd->add_option("--seed", common.seed, "Seed, decimal or 0x-hex")->required();
  aug_cmd->add_option("--mode", common.mode, "aug or bgaug")->capture_default_str();
  aug_cmd->add_option("--epochs", aug_opts.plan.epochs, "Epoch count")->capture_default_str();
  aug_cmd->add_option("--steps", aug_opts.plan.steps_per_epoch, "Steps per epoch")->capture_default_str();
  aug_cmd->add_option("--batch", aug_opts.plan.batch_size, "Batch size")->capture_default_str();
  aug_cmd->add_option("--split", aug_opts.plan.split_fraction, "Validation fraction")->capture_default_str();
  aug_cmd->add_option("--workers", aug_opts.workers, "Worker threads")->capture_default_str();
  aug_cmd->add_option("--config", common.config, "JSON or TOML file overriding sampling ranges");
  aug_cmd->add_option("--format", format, "png or packed")->capture_default_str();
  aug_cmd->add_flag("--no-val", no_val, "Skip the validation archive");

  // preview
  fs::path preview_manifest, preview_out;
  int preview_n = 5;
  std::size_t preview_entry = 0;
  auto* preview_cmd = app.add_subcommand("preview", "Write a grid of one frame and its augmentations");
  preview_cmd->add_option("--manifest", preview_manifest, "Dataset manifest JSON")->required();
  preview_cmd->add_option("--out", preview_out, "Output PNG")->required();
  add_pool_flag(preview_cmd, common);
  preview_cmd->add_option("--seed", common.seed, "Seed, decimal or 0x-hex")->required();
  preview_cmd->add_option("--mode", common.mode, "aug or bgaug")->capture_default_str();
  preview_cmd->add_option("--n", preview_n, "Number of augmented variants")->capture_default_str();
  preview_cmd->add_option("--entry", preview_entry, "Manifest entry index")->capture_default_str();
  preview_cmd->add_option("--config", common.config, "JSON or TOML file overriding sampling ranges");

  // pose-derive
  fs::path frames_csv, drone_csv, subject_csv, labels_out;
  double max_gap = constants::kMaxTrackGap;
  auto* pose_cmd = app.add_subcommand("pose-derive", "Relative pose labels from motion-capture tracks");
  pose_cmd->add_option("--frames", frames_csv, "CSV: frame_id,timestamp_s")->required();
  pose_cmd->add_option("--drone", drone_csv, "Drone track CSV")->required();
  pose_cmd->add_option("--subject", subject_csv, "Subject track CSV")->required();
  pose_cmd->add_option("--out", labels_out, "Output labels CSV")->required();
  pose_cmd->add_option("--max-gap", max_gap, "Largest bracketing gap in seconds")->capture_default_str();

  // eval-r2
  fs::path eval_labels, eval_pred, eval_out;
  bool phi_linear = false;
  auto* eval_cmd = app.add_subcommand("eval-r2", "Coefficient of determination per pose variable");
  eval_cmd->add_option("--labels", eval_labels, "Ground truth CSV")->required();
  eval_cmd->add_option("--predictions", eval_pred, "Predictions CSV")->required();
  eval_cmd->add_option("--out", eval_out, "Also write the JSON report here");
  eval_cmd->add_flag("--phi-linear", phi_linear, "Plain R^2 for phi instead of the circular form");

  // center-crop
  fs::path crop_manifest, crop_out;
  auto* crop_cmd = app.add_subcommand("center-crop", "Middle-96-row evaluation crops");
  crop_cmd->add_option("--manifest", crop_manifest, "Dataset manifest JSON")->required();
  crop_cmd->add_option("--out", crop_out, "Output directory")->required();

  std::vector<char*> argv;
  std::vector<std::string> storage(args);
  for (std::string& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    nlohmann::json result;
    if (mask_cmd->parsed()) {
      if (no_soften) mask_opts.sigma = 0.0;
      result = run_mask_prep(mask_opts);
    } else if (pool_cmd->parsed()) {
      if (common.pool.empty()) throw Error(ErrorKind::Config, "no pool given (--pool or BGAUG_POOL)");
      result = pool_stats(load_pool(common.pool, pool_w, pool_h));
    } else if (aug_cmd->parsed()) {
      aug_opts.plan.seed = parse_seed(common.seed);
      aug_opts.plan.mode = parse_aug_mode(common.mode);
      aug_opts.ranges = ranges_from(common);
      aug_opts.format = parse_archive_format(format);
      aug_opts.write_validation = !no_val;
      if (!common.pool.empty()) aug_opts.pool = common.pool;
      result = run_augment(aug_opts);
    } else if (preview_cmd->parsed()) {
      const AugMode mode = parse_aug_mode(common.mode);
      const AugRanges ranges = ranges_from(common);
      std::optional<BackgroundPool> pool;
      if (mode == AugMode::BgAug) {
        if (common.pool.empty()) throw Error(ErrorKind::Config, "BgAug preview needs --pool or BGAUG_POOL");
        pool.emplace(load_pool(common.pool, constants::kFrameWidth, constants::kFrameHeight));
      }
      const Raster grid = make_preview(load_manifest(preview_manifest), preview_entry, pool ? &*pool : nullptr, mode,
                                       parse_seed(common.seed), preview_n, ranges);
      write_png(preview_out, grid);
      result = {{"out", preview_out.string()}, {"width", grid.width()}, {"height", grid.height()}};
    } else if (pose_cmd->parsed()) {
      const LabelingResult labels = resample_and_label(read_frame_times_csv(frames_csv), read_track_csv(drone_csv),
                                                       read_track_csv(subject_csv), max_gap);
      write_labels_csv(labels_out, labels.labels);
      result = {{"labeled", labels.labels.size()}, {"dropped", labels.dropped}, {"out", labels_out.string()}};
    } else if (eval_cmd->parsed()) {
      result = to_json(evaluate_files(eval_labels, eval_pred, phi_linear ? PhiMode::Linear : PhiMode::Circular));
      if (!eval_out.empty()) {
        const std::string text = result.dump(2) + "\n";
        write_file_bytes(eval_out, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
      }
    } else if (crop_cmd->parsed()) {
      result = run_center_crop(crop_manifest, crop_out);
    }
    out << result.dump(2) << '\n';
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(ErrorKind::Io);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(ErrorKind::Data);
  }
}

}  // namespace bgaug
