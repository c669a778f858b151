/* Copyright 2026 The ascene Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "ascene/cli/cli.h"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ascene/augment/augment.h"
#include "ascene/cli/config.h"
#include "ascene/cli/pipeline.h"
#include "ascene/data/batch.h"
#include "ascene/data/manifest.h"
#include "ascene/data/split.h"
#include "ascene/dsp/pgm.h"
#include "ascene/eval/eval.h"
#include "ascene/nn/checkpoint.h"
#include "ascene/nn/train.h"

namespace fs = std::filesystem;

namespace ascene {
namespace cli {
namespace {

struct CommonFlags {
  std::string config_path;
  bool verbose = false;
};

PipelineConfig resolve_config(const CommonFlags& flags) {
  if (flags.config_path.empty()) {
    PipelineConfig cfg;
    cfg.validate();
    return cfg;
  }
  return load_pipeline_config(flags.config_path);
}

void log_line(const std::string& msg) { std::cerr << msg << '\n'; }

std::string format_rate(double rate) {
  std::ostringstream out;
  out << rate;
  return out.str();
}

// ---------------------------------------------------------------------------
// convert

struct ConvertFailure {
  std::string path;
  std::string message;
};

int cmd_convert(const CommonFlags& flags, const std::string& in_dir,
                const std::string& out_dir, size_t jobs,
                const std::vector<double>& stretch_rates) {
  PipelineConfig cfg = resolve_config(flags);
  if (!fs::is_directory(in_dir)) {
    throw Error("input directory does not exist: " + in_dir);
  }
  fs::create_directories(out_dir);

  std::vector<std::string> wavs;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".wav") {
      wavs.push_back(entry.path().string());
    }
  }
  std::sort(wavs.begin(), wavs.end());

  for (double r : stretch_rates) {
    if (!(r >= 0.25 && r <= 4.0)) {
      throw augment::RateOutOfRange("stretch rate " + format_rate(r) +
                                    " outside [0.25, 4.0]");
    }
  }

  std::atomic<size_t> next{0};
  std::atomic<size_t> converted{0};
  std::mutex failures_mutex;
  std::vector<ConvertFailure> failures;

  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= wavs.size()) break;
      const std::string& wav_path = wavs[i];
      std::string stem = fs::path(wav_path).stem().string();
      try {
        audio::AudioClip clip = load_audio(wav_path, cfg);
        std::vector<std::pair<double, audio::AudioClip>> variants;
        variants.emplace_back(1.0, clip);
        for (double r : stretch_rates) {
          if (r == 1.0) continue;
          variants.emplace_back(r, augment::time_stretch(clip, r));
        }
        for (const auto& [rate, variant] : variants) {
          std::string name =
              rate == 1.0 ? stem : stem + "_s" + format_rate(rate);
          fs::path pgm_path = fs::path(out_dir) / (name + ".pgm");
          fs::path sidecar_path = fs::path(out_dir) / (name + ".txt");
          dsp::SpectrogramImage img = clip_to_image(variant, cfg);
          dsp::write_pgm(img, pgm_path.string());
          dsp::write_sidecar(sidecar_entries(wav_path, img, cfg, rate),
                             sidecar_path.string());
        }
        converted.fetch_add(1);
        if (flags.verbose) {
          std::lock_guard<std::mutex> lock(failures_mutex);
          log_line("converted " + wav_path);
        }
      } catch (const Error& e) {
        std::lock_guard<std::mutex> lock(failures_mutex);
        failures.push_back({wav_path, e.what()});
      }
    }
  };

  size_t n_threads = std::max<size_t>(1, jobs);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (size_t t = 0; t < n_threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) t.join();
  }

  std::sort(failures.begin(), failures.end(),
            [](const ConvertFailure& a, const ConvertFailure& b) {
              return a.path < b.path;
            });
  for (const auto& f : failures) {
    log_line("failed: " + f.path + ": " + f.message);
  }
  std::cout << "converted=" << converted.load()
            << " failed=" << failures.size() << '\n';
  return failures.empty() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// split

int cmd_split(const CommonFlags& flags, const std::string& manifest_path,
              const std::string& out_path, uint64_t seed,
              const std::vector<double>& ratio_override, bool group_mode) {
  PipelineConfig cfg = resolve_config(flags);
  std::array<double, 3> ratios = cfg.split_ratios;
  if (!ratio_override.empty()) {
    if (ratio_override.size() != 3) {
      throw data::BadRatios("--ratios needs exactly three values");
    }
    std::copy(ratio_override.begin(), ratio_override.end(), ratios.begin());
  }

  data::Manifest manifest = data::read_manifest(manifest_path);
  data::SplitAssignment split =
      (group_mode || cfg.group_split)
          ? data::group_split(manifest.entries, ratios, seed)
          : data::stratified_split(manifest.entries, ratios, seed);
  data::write_split(split, out_path);

  // Per-class counts, classes in index order.
  const auto& classes = manifest.classes;
  std::vector<std::array<size_t, 3>> counts(classes.size(), {0, 0, 0});
  auto count_part = [&](const std::vector<data::ManifestEntry>& part,
                        size_t slot) {
    for (const auto& e : part) {
      counts[classes.index_of(e.label)][slot]++;
    }
  };
  count_part(split.train, 0);
  count_part(split.validation, 1);
  count_part(split.test, 2);

  std::cout << "class,train,val,test\n";
  for (size_t c = 0; c < classes.size(); ++c) {
    std::cout << classes.name(c) << ',' << counts[c][0] << ',' << counts[c][1]
              << ',' << counts[c][2] << '\n';
  }
  log_line("wrote " + out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// train

data::NormalizationStats stats_over(
    const std::vector<data::ManifestEntry>& entries, size_t* height,
    size_t* width) {
  data::NormAccumulator acc;
  for (const auto& e : entries) {
    dsp::SpectrogramImage img = dsp::read_pgm(e.path);
    if (*height == 0) {
      *height = img.n_bins;
      *width = img.n_frames;
    } else if (img.n_bins != *height || img.n_frames != *width) {
      throw dsp::ShapeMismatch("image " + e.path + " is " +
                               std::to_string(img.n_bins) + "x" +
                               std::to_string(img.n_frames) +
                               " but the training set uses " +
                               std::to_string(*height) + "x" +
                               std::to_string(*width));
    }
    acc.add(img);
  }
  return acc.finalize();
}

int cmd_train(const CommonFlags& flags, const std::string& manifest_path,
              const std::string& split_path, const std::string& out_path,
              const nn::TrainConfig& overrides, uint32_t override_mask,
              bool augment_flag) {
  PipelineConfig cfg = resolve_config(flags);
  nn::TrainConfig train_cfg = cfg.train;
  if (override_mask & 1) train_cfg.learning_rate = overrides.learning_rate;
  if (override_mask & 2) train_cfg.batch_size = overrides.batch_size;
  if (override_mask & 4) train_cfg.max_epochs = overrides.max_epochs;
  if (override_mask & 8) train_cfg.patience = overrides.patience;
  train_cfg.seed = overrides.seed;
  train_cfg.validate();

  data::Manifest manifest = data::read_manifest(manifest_path);
  data::SplitAssignment split = data::read_split(split_path, manifest);
  if (split.train.empty()) throw Error("split has no training entries");
  if (split.validation.empty()) {
    throw Error("split has no validation entries");
  }

  size_t height = 0, width = 0;
  data::NormalizationStats stats = stats_over(split.train, &height, &width);
  log_line("normalization: mean=" + std::to_string(stats.mean) +
           " std=" + std::to_string(stats.std_dev));

  nn::NetworkSpec spec;
  spec.in_height = height;
  spec.in_width = width;
  spec.conv_channels = cfg.conv_channels;
  spec.fc1_units = cfg.fc1_units;
  spec.fc2_units = cfg.fc2_units;
  spec.n_classes = manifest.classes.size();
  spec.validate();

  std::vector<data::AugmentHook> hooks;
  if (augment_flag || cfg.augment_enabled) {
    augment::FreqMaskPolicy policy = cfg.freq_mask;
    hooks.push_back(
        [policy](dsp::SpectrogramImage& img, Rng64& rng) {
          img = augment::freq_mask(img, policy, rng);
        });
  }

  data::BatchStream train_stream(split.train, manifest.classes,
                                 train_cfg.batch_size, stats);
  data::BatchStream val_stream(split.validation, manifest.classes,
                               train_cfg.batch_size, stats);

  nn::TrainResult result = nn::train(
      spec, train_cfg, train_stream, val_stream, manifest.classes, stats,
      std::move(hooks), out_path, [](const nn::EpochLog& log) {
        std::ostringstream line;
        line << "epoch " << log.epoch << "  train_loss " << std::fixed
             << std::setprecision(6) << log.train_loss << "  val_accuracy "
             << std::setprecision(4) << log.val_accuracy
             << "  best_val_accuracy " << log.best_val_accuracy
             << "  patience_left " << log.patience_left;
        log_line(line.str());
      });

  std::ostringstream summary;
  summary << "best_epoch=" << result.best.epoch << " best_val_accuracy="
          << std::setprecision(17) << result.best.best_val_accuracy
          << " stopped_epoch=" << result.stopped_epoch << " early_stopped="
          << (result.early_stopped ? "true" : "false");

  if (!split.test.empty()) {
    data::BatchStream test_stream(split.test, manifest.classes,
                                  train_cfg.batch_size, stats);
    eval::EvalReport report =
        eval::evaluate(result.best, test_stream, manifest.classes);
    summary << " test_accuracy=" << report.overall_accuracy;
  }
  summary << " checkpoint=" << out_path;
  std::cout << summary.str() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const std::string& checkpoint_path,
             const std::string& manifest_path, const std::string& split_path,
             const std::string& format_name, const std::string& out_path,
             const std::string& probabilities_path,
             const std::string& part_name) {
  nn::Checkpoint ckpt = nn::load_checkpoint(checkpoint_path);
  data::Manifest manifest = data::read_manifest(manifest_path);
  data::SplitAssignment split = data::read_split(split_path, manifest);

  const std::vector<data::ManifestEntry>* part = &split.test;
  if (part_name == "val") {
    part = &split.validation;
  } else if (part_name == "train") {
    part = &split.train;
  } else if (part_name != "test") {
    throw Error("unknown split part: " + part_name);
  }
  if (part->empty()) {
    throw eval::EmptyTestSet("split part '" + part_name + "' is empty");
  }

  eval::ReportFormat format = eval::ReportFormat::kTextTable;
  if (format_name == "json") {
    format = eval::ReportFormat::kJson;
  } else if (format_name == "csv") {
    format = eval::ReportFormat::kCsv;
  } else if (format_name != "table") {
    throw Error("unknown report format: " + format_name);
  }

  data::BatchStream stream(*part, manifest.classes, 32, ckpt.stats);
  std::vector<eval::ProbabilityRow> prob_rows;
  eval::EvalReport report =
      eval::evaluate(ckpt, stream, manifest.classes,
                     probabilities_path.empty() ? nullptr : &prob_rows);

  std::string rendered = eval::export_report(report, format);
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot open report output: " + out_path);
    out << rendered;
  }
  if (!probabilities_path.empty()) {
    std::ofstream out(probabilities_path, std::ios::binary);
    if (!out) {
      throw Error("cannot open probability output: " + probabilities_path);
    }
    out << eval::format_probability_csv(manifest.classes, prob_rows);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// predict

int cmd_predict(const CommonFlags& flags, const std::string& checkpoint_path,
                const std::string& wav_path) {
  PipelineConfig cfg = resolve_config(flags);
  nn::Checkpoint ckpt = nn::load_checkpoint(checkpoint_path);

  dsp::SpectrogramImage img = wav_to_image(wav_path, cfg);
  if (img.n_bins != ckpt.spec.in_height ||
      img.n_frames != ckpt.spec.in_width) {
    throw nn::ShapeMismatch(
        "spectrogram is " + std::to_string(img.n_bins) + "x" +
        std::to_string(img.n_frames) + " but the checkpoint expects " +
        std::to_string(ckpt.spec.in_height) + "x" +
        std::to_string(ckpt.spec.in_width) +
        "; clip length or DSP settings differ from training");
  }

  std::vector<double> input;
  input.reserve(img.pixels.size());
  for (uint8_t p : img.pixels) {
    double v = static_cast<double>(p) / 255.0;
    input.push_back((v - ckpt.stats.mean) / ckpt.stats.std_dev);
  }

  nn::Network net(ckpt.spec);
  auto ranked = net.predict(ckpt.params, input.data());

  std::cout << "class,probability\n";
  std::cout << std::fixed << std::setprecision(6);
  for (const auto& [index, prob] : ranked) {
    std::cout << ckpt.classes.name(index) << ',' << prob << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Acoustic scene classification pipeline"};
  app.require_subcommand(1);

  // convert
  auto* convert = app.add_subcommand(
      "convert", "Convert a directory of WAV files to spectrogram images");
  CommonFlags convert_flags;
  std::string convert_in, convert_out;
  size_t convert_jobs = 1;
  std::vector<double> stretch_rates;
  convert->add_option("--in", convert_in, "Directory of WAV files")
      ->required();
  convert->add_option("--out", convert_out, "Output directory")->required();
  convert->add_option("--config", convert_flags.config_path, "Config file");
  convert->add_option("--jobs", convert_jobs, "Parallel workers")
      ->check(CLI::Range(size_t{1}, size_t{256}));
  convert->add_option("--stretch-rates", stretch_rates,
                      "Also emit time-stretched variants at these rates")
      ->delimiter(',');
  convert->add_flag("--verbose", convert_flags.verbose, "Per-file logging");

  // split
  auto* split = app.add_subcommand(
      "split", "Write a deterministic stratified train/val/test split");
  CommonFlags split_flags;
  std::string split_manifest, split_out;
  uint64_t split_seed = 0;
  std::vector<double> split_ratios;
  bool split_group = false;
  split->add_option("--manifest", split_manifest, "Manifest CSV")->required();
  split->add_option("--out", split_out, "Split file to write")->required();
  split->add_option("--seed", split_seed, "Shuffle seed")->required();
  split->add_option("--ratios", split_ratios, "train,val,test ratios")
      ->delimiter(',');
  split->add_flag("--group-split", split_group,
                  "Keep recording groups in a single part");
  split->add_option("--config", split_flags.config_path, "Config file");

  // train
  auto* train = app.add_subcommand("train", "Train the classifier");
  CommonFlags train_flags;
  std::string train_manifest, train_split, train_out;
  nn::TrainConfig train_overrides;
  bool train_augment = false;
  train->add_option("--manifest", train_manifest, "Manifest CSV")->required();
  train->add_option("--split", train_split, "Split file")->required();
  train->add_option("--out", train_out, "Checkpoint to write")->required();
  train->add_option("--seed", train_overrides.seed, "Training seed")
      ->required();
  auto* opt_lr = train->add_option("--learning-rate",
                                   train_overrides.learning_rate);
  auto* opt_bs = train->add_option("--batch-size", train_overrides.batch_size);
  auto* opt_me = train->add_option("--max-epochs", train_overrides.max_epochs);
  auto* opt_pa = train->add_option("--patience", train_overrides.patience);
  train->add_flag("--augment", train_augment,
                  "Apply frequency masking to training batches");
  train->add_option("--config", train_flags.config_path, "Config file");
  train->add_flag("--verbose", train_flags.verbose, "Extra logging");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint");
  std::string eval_ckpt, eval_manifest, eval_split, eval_out, eval_probs;
  std::string eval_format = "table";
  std::string eval_part = "test";
  eval_cmd->add_option("--checkpoint", eval_ckpt, "Checkpoint file")
      ->required();
  eval_cmd->add_option("--manifest", eval_manifest, "Manifest CSV")
      ->required();
  eval_cmd->add_option("--split", eval_split, "Split file")->required();
  eval_cmd->add_option("--format", eval_format, "json, csv, or table");
  eval_cmd->add_option("--part", eval_part, "Split part: train, val, test");
  eval_cmd->add_option("--out", eval_out, "Write the report here");
  eval_cmd->add_option("--probabilities", eval_probs,
                       "Write per-sample probability CSV here");

  // predict
  auto* predict = app.add_subcommand(
      "predict", "Classify a single WAV file");
  CommonFlags predict_flags;
  std::string predict_ckpt, predict_wav;
  predict->add_option("--checkpoint", predict_ckpt, "Checkpoint file")
      ->required();
  predict->add_option("--wav", predict_wav, "Audio file")->required();
  predict->add_option("--config", predict_flags.config_path, "Config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (convert->parsed()) {
      return cmd_convert(convert_flags, convert_in, convert_out, convert_jobs,
                         stretch_rates);
    }
    if (split->parsed()) {
      return cmd_split(split_flags, split_manifest, split_out, split_seed,
                       split_ratios, split_group);
    }
    if (train->parsed()) {
      uint32_t mask = 0;
      if (opt_lr->count() > 0) mask |= 1;
      if (opt_bs->count() > 0) mask |= 2;
      if (opt_me->count() > 0) mask |= 4;
      if (opt_pa->count() > 0) mask |= 8;
      return cmd_train(train_flags, train_manifest, train_split, train_out,
                       train_overrides, mask, train_augment);
    }
    if (eval_cmd->parsed()) {
      return cmd_eval(eval_ckpt, eval_manifest, eval_split, eval_format,
                      eval_out, eval_probs, eval_part);
    }
    if (predict->parsed()) {
      return cmd_predict(predict_flags, predict_ckpt, predict_wav);
    }
    std::cerr << "error: no subcommand given\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace cli
}  // namespace ascene
