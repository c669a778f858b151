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

#ifndef ASCENE_DATA_BATCH_H_
#define ASCENE_DATA_BATCH_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ascene/data/manifest.h"
#include "ascene/dsp/spectrogram.h"
#include "ascene/error.h"
#include "ascene/rng.h"

namespace ascene {
namespace data {

class EmptyTrainingSet : public Error {
 public:
  using Error::Error;
};

// Single-channel pixel statistics over the training split, computed on
// values rescaled to [0,1].
struct NormalizationStats {
  double mean = 0.0;
  double std_dev = 1.0;
};

// Streaming accumulator so the training split never has to be resident all
// at once.
class NormAccumulator {
 public:
  void add(const dsp::SpectrogramImage& image);
  // Population statistics; std is floored at 1e-6 so constant inputs stay
  // usable as divisors.
  NormalizationStats finalize() const;

 private:
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
  uint64_t count_ = 0;
};

NormalizationStats compute_normalization(
    const std::vector<dsp::SpectrogramImage>& images);

// Images stacked as [batch x 1 x n_bins x n_frames], already normalized as
// (pixel/255 - mean)/std. Bin 0 is the lowest frequency.
struct Batch {
  std::vector<double> images;
  std::vector<size_t> labels;
  std::vector<std::string> paths;  // source image per item, for reporting
  size_t batch = 0;
  size_t n_bins = 0;
  size_t n_frames = 0;

  double& at(size_t b, size_t y, size_t x) {
    return images[(b * n_bins + y) * n_frames + x];
  }
  double at(size_t b, size_t y, size_t x) const {
    return images[(b * n_bins + y) * n_frames + x];
  }
};

using ImageLoader = std::function<dsp::SpectrogramImage(const std::string&)>;
using AugmentHook = std::function<void(dsp::SpectrogramImage&, Rng64&)>;

// One-pass batch producer over a split part. Training epochs reshuffle the
// entry order and run the augment hooks per item; evaluation epochs iterate
// in the given order with no augmentation. All images in a pass must share
// one shape (ShapeMismatch otherwise); loader failures surface as
// ImageLoadFailure carrying the offending path.
class BatchStream {
 public:
  BatchStream(std::vector<ManifestEntry> entries, const ClassIndexMap& classes,
              size_t batch_size, NormalizationStats stats,
              ImageLoader loader = {});

  // Begins a shuffled, augmented pass. The rng must outlive the epoch.
  void start_train_epoch(Rng64& rng, std::vector<AugmentHook> hooks);
  // Begins an in-order pass with no augmentation.
  void start_eval_epoch();

  // Fills the next batch; returns false when the pass is exhausted.
  bool next(Batch& out);

  size_t size() const { return entries_.size(); }
  size_t batch_size() const { return batch_size_; }

 private:
  std::vector<ManifestEntry> entries_;
  ClassIndexMap classes_;
  size_t batch_size_;
  NormalizationStats stats_;
  ImageLoader loader_;

  std::vector<size_t> order_;
  size_t cursor_ = 0;
  size_t pass_bins_ = 0;
  size_t pass_frames_ = 0;
  Rng64* epoch_rng_ = nullptr;
  std::vector<AugmentHook> hooks_;
};

}  // namespace data
}  // namespace ascene

#endif  // ASCENE_DATA_BATCH_H_
