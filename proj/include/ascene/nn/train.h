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

#ifndef ASCENE_NN_TRAIN_H_
#define ASCENE_NN_TRAIN_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ascene/data/batch.h"
#include "ascene/error.h"
#include "ascene/nn/checkpoint.h"
#include "ascene/nn/network.h"

namespace ascene {
namespace nn {

class NonFiniteLoss : public Error {
 public:
  using Error::Error;
};

enum class Optimizer {
  kSgd,
  kSgdMomentum,  // classic momentum, velocity decay 0.9
};

struct TrainConfig {
  double learning_rate = 0.01;
  size_t batch_size = 32;
  size_t max_epochs = 100;
  size_t patience = 10;
  uint64_t seed = 0;
  Optimizer optimizer = Optimizer::kSgdMomentum;
  double momentum = 0.9;

  void validate() const;
};

// Patience counter over a to-be-maximized metric. Improvement means
// strictly greater than the best seen so far.
class EarlyStopping {
 public:
  explicit EarlyStopping(size_t patience);

  // Feeds one epoch's metric; returns true when training should stop
  // (patience consecutive epochs without improvement).
  bool observe(size_t epoch, double metric);

  bool improved_last() const { return improved_last_; }
  double best_metric() const { return best_metric_; }
  size_t best_epoch() const { return best_epoch_; }
  size_t patience_left() const { return patience_ - stale_; }

 private:
  size_t patience_;
  size_t stale_ = 0;
  double best_metric_ = -1.0;
  size_t best_epoch_ = 0;
  bool improved_last_ = false;
};

struct EpochLog {
  size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_accuracy = 0.0;
  double best_val_accuracy = 0.0;
  size_t patience_left = 0;
};

using EpochCallback = std::function<void(const EpochLog&)>;

struct TrainResult {
  Checkpoint best;
  std::vector<EpochLog> log;
  size_t stopped_epoch = 0;
  bool early_stopped = false;
};

// Runs mini-batch gradient descent with per-epoch validation. Each epoch is
// one shuffled pass over train_data (with the augment hooks applied) and one
// ordered pass over val_data. The checkpoint that maximized validation
// accuracy is returned and, when checkpoint_path is non-empty, written to
// disk every time it improves. classes/stats are embedded so the checkpoint
// is usable for inference on its own.
//
// Throws NonFiniteLoss (naming epoch and batch) if the loss leaves the
// finite range.
TrainResult train(const NetworkSpec& spec, const TrainConfig& cfg,
                  data::BatchStream& train_data, data::BatchStream& val_data,
                  const data::ClassIndexMap& classes,
                  const data::NormalizationStats& stats,
                  std::vector<data::AugmentHook> hooks,
                  const std::string& checkpoint_path,
                  const EpochCallback& on_epoch = {});

// Fraction of samples whose argmax matches the label; ties go to the lowest
// class index. One ordered pass over the stream.
double compute_accuracy(const Network& net, const Parameters& params,
                        data::BatchStream& stream);

}  // namespace nn
}  // namespace ascene

#endif  // ASCENE_NN_TRAIN_H_
