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

#ifndef ASCENE_DSP_SPECTROGRAM_H_
#define ASCENE_DSP_SPECTROGRAM_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ascene/error.h"

namespace ascene {
namespace dsp {

enum class Scale {
  kLinearPower,
  kMelPower,
  kLogFreqPower,
  kDecibel,
};

// Frequency x time matrix plus axis metadata. data is stored row-major as
// bins x frames; entries are nonnegative unless scale is kDecibel, and always
// finite. bin_frequencies is strictly increasing; frame_times advances by a
// constant hop/sample_rate step.
struct Spectrogram {
  std::vector<double> data;  // n_bins * n_frames, row-major
  size_t n_bins = 0;
  size_t n_frames = 0;
  std::vector<double> bin_frequencies;
  std::vector<double> frame_times;
  Scale scale = Scale::kLinearPower;

  double& at(size_t bin, size_t frame) { return data[bin * n_frames + frame]; }
  double at(size_t bin, size_t frame) const {
    return data[bin * n_frames + frame];
  }
};

// 8-bit grayscale rendering of a decibel spectrogram, same orientation as the
// Spectrogram it came from. lo/hi record the dB range the pixels quantize.
struct SpectrogramImage {
  std::vector<uint8_t> pixels;  // n_bins * n_frames, row-major
  size_t n_bins = 0;
  size_t n_frames = 0;
  double db_lo = 0.0;
  double db_hi = 0.0;

  uint8_t& at(size_t bin, size_t frame) {
    return pixels[bin * n_frames + frame];
  }
  uint8_t at(size_t bin, size_t frame) const {
    return pixels[bin * n_frames + frame];
  }
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace dsp
}  // namespace ascene

#endif  // ASCENE_DSP_SPECTROGRAM_H_
