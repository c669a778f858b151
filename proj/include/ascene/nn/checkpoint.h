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

#ifndef ASCENE_NN_CHECKPOINT_H_
#define ASCENE_NN_CHECKPOINT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ascene/data/batch.h"
#include "ascene/data/manifest.h"
#include "ascene/error.h"
#include "ascene/nn/network.h"

namespace ascene {
namespace nn {

class CorruptCheckpoint : public Error {
 public:
  using Error::Error;
};

class SpecMismatch : public Error {
 public:
  using Error::Error;
};

// Everything needed to resume training or run inference: the architecture,
// its parameters, the label vocabulary, the pixel normalization the
// parameters were trained under, and the optimizer/rng state at the best
// epoch.
struct Checkpoint {
  NetworkSpec spec;
  data::ClassIndexMap classes;
  data::NormalizationStats stats;
  Parameters params;
  double best_val_accuracy = 0.0;
  uint64_t epoch = 0;
  std::vector<Tensor> optimizer_state;
  uint64_t rng_state = 0;
};

// Binary layout (all integers and floats little-endian):
//   magic "ASCM", format version u16, spec fingerprint u64,
//   spec canonical string (u32 length + bytes),
//   class names (u32 count, each u32 length + bytes),
//   normalization mean f64, std f64,
//   epoch u64, best_val_accuracy f64, rng state u64,
//   parameter tensors (u32 count; per tensor u32 rank, u32 dims, f64 data),
//   optimizer tensors (same framing),
//   CRC32 of all preceding bytes (u32).
std::vector<uint8_t> encode_checkpoint(const Checkpoint& ckpt);
void save_checkpoint(const Checkpoint& ckpt, const std::string& path);

// Throws CorruptCheckpoint on framing or CRC failure, SpecMismatch when the
// stored fingerprint disagrees with the stored spec.
Checkpoint decode_checkpoint(const std::vector<uint8_t>& bytes);
Checkpoint load_checkpoint(const std::string& path);

// Additionally requires the checkpoint to match an expected architecture.
Checkpoint load_checkpoint(const std::string& path,
                           const NetworkSpec& expected_spec);

// IEEE CRC-32 (reflected 0xEDB88320), as used in the checkpoint trailer.
uint32_t crc32(const uint8_t* data, size_t len);

}  // namespace nn
}  // namespace ascene

#endif  // ASCENE_NN_CHECKPOINT_H_
