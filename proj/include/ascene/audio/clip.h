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

#ifndef ASCENE_AUDIO_CLIP_H_
#define ASCENE_AUDIO_CLIP_H_

#include <cstdint>
#include <string>
#include <vector>

namespace ascene {
namespace audio {

// Mono sample buffer at a known rate. Samples are dimensionless amplitudes,
// nominally in [-1, 1]; a decoded clip is never empty and never holds
// non-finite values.
struct AudioClip {
  std::vector<double> samples;
  uint32_t sample_rate = 0;
  std::string source_id;

  double duration_seconds() const {
    return sample_rate == 0
               ? 0.0
               : static_cast<double>(samples.size()) / sample_rate;
  }
};

}  // namespace audio
}  // namespace ascene

#endif  // ASCENE_AUDIO_CLIP_H_
