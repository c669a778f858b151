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

#include "ascene/data/batch.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ascene/dsp/pgm.h"

namespace ascene {
namespace data {

void NormAccumulator::add(const dsp::SpectrogramImage& image) {
  for (uint8_t p : image.pixels) {
    double v = static_cast<double>(p) / 255.0;
    sum_ += v;
    sum_sq_ += v * v;
  }
  count_ += image.pixels.size();
}

NormalizationStats NormAccumulator::finalize() const {
  if (count_ == 0) {
    throw EmptyTrainingSet("normalization needs at least one training image");
  }
  double n = static_cast<double>(count_);
  double mean = sum_ / n;
  double var = sum_sq_ / n - mean * mean;
  if (var < 0.0) var = 0.0;  // catastrophic cancellation guard
  NormalizationStats stats;
  stats.mean = mean;
  stats.std_dev = std::max(std::sqrt(var), 1e-6);
  return stats;
}

NormalizationStats compute_normalization(
    const std::vector<dsp::SpectrogramImage>& images) {
  NormAccumulator acc;
  for (const auto& img : images) {
    acc.add(img);
  }
  return acc.finalize();
}

BatchStream::BatchStream(std::vector<ManifestEntry> entries,
                         const ClassIndexMap& classes, size_t batch_size,
                         NormalizationStats stats, ImageLoader loader)
    : entries_(std::move(entries)),
      classes_(classes),
      batch_size_(batch_size),
      stats_(stats),
      loader_(std::move(loader)) {
  if (batch_size_ == 0) {
    throw Error("batch size must be at least 1");
  }
  if (!loader_) {
    loader_ = [](const std::string& path) { return dsp::read_pgm(path); };
  }
  order_.resize(entries_.size());
  std::iota(order_.begin(), order_.end(), size_t{0});
  cursor_ = order_.size();  // no pass active until a start_* call
}

void BatchStream::start_train_epoch(Rng64& rng,
                                    std::vector<AugmentHook> hooks) {
  std::iota(order_.begin(), order_.end(), size_t{0});
  for (size_t i = order_.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng.uniform_index(i));
    std::swap(order_[i - 1], order_[j]);
  }
  epoch_rng_ = &rng;
  hooks_ = std::move(hooks);
  cursor_ = 0;
  pass_bins_ = 0;
  pass_frames_ = 0;
}

void BatchStream::start_eval_epoch() {
  std::iota(order_.begin(), order_.end(), size_t{0});
  epoch_rng_ = nullptr;
  hooks_.clear();
  cursor_ = 0;
  pass_bins_ = 0;
  pass_frames_ = 0;
}

bool BatchStream::next(Batch& out) {
  if (cursor_ >= order_.size()) {
    return false;
  }
  size_t take = std::min(batch_size_, order_.size() - cursor_);

  out.images.clear();
  out.labels.clear();
  out.paths.clear();
  out.batch = take;

  for (size_t i = 0; i < take; ++i) {
    const ManifestEntry& entry = entries_[order_[cursor_ + i]];
    dsp::SpectrogramImage img = loader_(entry.path);
    for (const auto& hook : hooks_) {
      hook(img, *epoch_rng_);
    }
    if (pass_bins_ == 0) {
      pass_bins_ = img.n_bins;
      pass_frames_ = img.n_frames;
    } else if (img.n_bins != pass_bins_ || img.n_frames != pass_frames_) {
      throw dsp::ShapeMismatch(
          "image " + entry.path + " is " + std::to_string(img.n_bins) + "x" +
          std::to_string(img.n_frames) + " but this pass expects " +
          std::to_string(pass_bins_) + "x" + std::to_string(pass_frames_));
    }
    if (i == 0) {
      out.n_bins = pass_bins_;
      out.n_frames = pass_frames_;
      out.images.reserve(take * pass_bins_ * pass_frames_);
    }
    for (uint8_t p : img.pixels) {
      double v = static_cast<double>(p) / 255.0;
      out.images.push_back((v - stats_.mean) / stats_.std_dev);
    }
    out.labels.push_back(classes_.index_of(entry.label));
    out.paths.push_back(entry.path);
  }
  cursor_ += take;
  return true;
}

}  // namespace data
}  // namespace ascene
