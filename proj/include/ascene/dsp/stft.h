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

#ifndef ASCENE_DSP_STFT_H_
#define ASCENE_DSP_STFT_H_

#include <cstddef>

#include "ascene/audio/clip.h"
#include "ascene/dsp/spectrogram.h"
#include "ascene/error.h"

namespace ascene {
namespace dsp {

class ClipTooShort : public Error {
 public:
  using Error::Error;
};

enum class Window {
  kHann,
  kRectangular,
};

struct StftConfig {
  size_t window_size = 2048;
  size_t hop = 512;
  Window window = Window::kHann;
};

// One-sided power spectrogram.
//
// Frame t covers samples [t*hop, t*hop + window_size); the frame count is
// floor((len - window_size) / hop) + 1 and the clip must hold at least one
// full window. Bin k carries |X_t[k]|^2 for k in [0, window_size/2], at
// frequency k * sample_rate / window_size. The Hann window is the periodic
// variant 0.5 * (1 - cos(2*pi*i / N)).
Spectrogram stft_power(const audio::AudioClip& clip, const StftConfig& cfg);

}  // namespace dsp
}  // namespace ascene

#endif  // ASCENE_DSP_STFT_H_
