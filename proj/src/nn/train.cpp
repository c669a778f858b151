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

#include "ascene/nn/train.h"

#include <cmath>

namespace ascene {
namespace nn {

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error("learning rate must be positive and finite");
  }
  if (batch_size == 0) {
    throw Error("batch size must be at least 1");
  }
  if (max_epochs == 0) {
    throw Error("max epochs must be at least 1");
  }
  if (patience == 0) {
    throw Error("patience must be at least 1");
  }
  if (patience > max_epochs) {
    throw Error("patience cannot exceed max epochs");
  }
  if (momentum < 0.0 || momentum >= 1.0) {
    throw Error("momentum must lie in [0, 1)");
  }
}

EarlyStopping::EarlyStopping(size_t patience) : patience_(patience) {
  if (patience == 0) {
    throw Error("patience must be at least 1");
  }
}

bool EarlyStopping::observe(size_t epoch, double metric) {
  if (metric > best_metric_) {
    best_metric_ = metric;
    best_epoch_ = epoch;
    stale_ = 0;
    improved_last_ = true;
  } else {
    ++stale_;
    improved_last_ = false;
  }
  return stale_ >= patience_;
}

double compute_accuracy(const Network& net, const Parameters& params,
                        data::BatchStream& stream) {
  stream.start_eval_epoch();
  data::Batch batch;
  size_t correct = 0;
  size_t total = 0;
  while (stream.next(batch)) {
    ForwardCache out = net.forward(params, batch.images.data(), batch.batch);
    size_t n_classes = net.spec().n_classes;
    for (size_t b = 0; b < batch.batch; ++b) {
      const double* row = &out.probabilities.data[b * n_classes];
      size_t arg = 0;
      for (size_t c = 1; c < n_classes; ++c) {
        if (row[c] > row[arg]) arg = c;
      }
      if (arg == batch.labels[b]) ++correct;
      ++total;
    }
  }
  if (total == 0) {
    throw Error("accuracy over an empty stream is undefined");
  }
  return static_cast<double>(correct) / static_cast<double>(total);
}

TrainResult train(const NetworkSpec& spec, const TrainConfig& cfg,
                  data::BatchStream& train_data, data::BatchStream& val_data,
                  const data::ClassIndexMap& classes,
                  const data::NormalizationStats& stats,
                  std::vector<data::AugmentHook> hooks,
                  const std::string& checkpoint_path,
                  const EpochCallback& on_epoch) {
  cfg.validate();
  if (train_data.size() == 0) {
    throw Error("training split is empty");
  }
  if (val_data.size() == 0) {
    throw Error("validation split is empty");
  }

  Network net(spec);
  Parameters params = net.init(cfg.seed);

  std::vector<Tensor> velocity;
  if (cfg.optimizer == Optimizer::kSgdMomentum) {
    velocity.reserve(params.tensors.size());
    for (const Tensor& t : params.tensors) {
      velocity.emplace_back(t.dims);
    }
  }

  // Shuffling and augmentation draw from one stream forked off the training
  // seed, so a fixed seed fixes the whole run.
  Rng64 epoch_rng = Rng64(cfg.seed).fork(1);

  TrainResult result;
  EarlyStopping stopper(cfg.patience);

  for (size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    train_data.start_train_epoch(epoch_rng, hooks);
    data::Batch batch;
    double loss_sum = 0.0;
    size_t sample_count = 0;
    size_t batch_index = 0;
    while (train_data.next(batch)) {
      ForwardCache cache =
          net.forward(params, batch.images.data(), batch.batch);
      double batch_loss = Network::loss(cache.probabilities, batch.labels);
      if (!std::isfinite(batch_loss)) {
        throw NonFiniteLoss("loss became non-finite at epoch " +
                            std::to_string(epoch) + ", batch " +
                            std::to_string(batch_index));
      }
      loss_sum += batch_loss * static_cast<double>(batch.batch);
      sample_count += batch.batch;

      Parameters grads = net.backward(params, cache, batch.labels);
      if (cfg.optimizer == Optimizer::kSgdMomentum) {
        for (size_t t = 0; t < params.tensors.size(); ++t) {
          double* v = velocity[t].data.data();
          double* p = params.tensors[t].data.data();
          const double* g = grads.tensors[t].data.data();
          for (size_t i = 0; i < params.tensors[t].size(); ++i) {
            v[i] = cfg.momentum * v[i] + g[i];
            p[i] -= cfg.learning_rate * v[i];
          }
        }
      } else {
        for (size_t t = 0; t < params.tensors.size(); ++t) {
          double* p = params.tensors[t].data.data();
          const double* g = grads.tensors[t].data.data();
          for (size_t i = 0; i < params.tensors[t].size(); ++i) {
            p[i] -= cfg.learning_rate * g[i];
          }
        }
      }
      ++batch_index;
    }

    double val_accuracy = compute_accuracy(net, params, val_data);
    bool stop = stopper.observe(epoch, val_accuracy);

    if (stopper.improved_last()) {
      result.best.spec = spec;
      result.best.classes = classes;
      result.best.stats = stats;
      result.best.params = params;
      result.best.best_val_accuracy = val_accuracy;
      result.best.epoch = epoch;
      result.best.optimizer_state = velocity;
      result.best.rng_state = epoch_rng.state();
      if (!checkpoint_path.empty()) {
        save_checkpoint(result.best, checkpoint_path);
      }
    }

    EpochLog log;
    log.epoch = epoch;
    log.train_loss = loss_sum / static_cast<double>(sample_count);
    log.val_accuracy = val_accuracy;
    log.best_val_accuracy = stopper.best_metric();
    log.patience_left = stopper.patience_left();
    result.log.push_back(log);
    if (on_epoch) {
      on_epoch(log);
    }

    result.stopped_epoch = epoch;
    if (stop) {
      result.early_stopped = true;
      break;
    }
  }
  return result;
}

}  // namespace nn
}  // namespace ascene
