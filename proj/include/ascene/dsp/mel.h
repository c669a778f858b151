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

#ifndef ASCENE_DSP_MEL_H_
#define ASCENE_DSP_MEL_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ascene/dsp/spectrogram.h"
#include "ascene/dsp/stft.h"
#include "ascene/error.h"

namespace ascene {
namespace dsp {

class FilterCollapse : public Error {
 public:
  using Error::Error;
};

struct MelConfig {
  size_t n_mels = 128;
  double f_min = 0.0;
  double f_max = 0.0;  // 0 means sample_rate / 2
};

// HTK mel scale.
double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Triangle evaluated at a continuous frequency: 1 at center, 0 at and
// outside the feet.
double triangle_weight(double f, double f_left, double f_center,
                       double f_right);

// Triangular filterbank as a dense n_mels x n_fft_bins matrix, row-major.
//
// Centers are spaced uniformly on the mel axis between f_min and f_max
// (n_mels + 2 grid points; the inner n_mels are centers, so each filter's
// feet sit on its neighbours' centers). Rows are un-normalized: the FFT bin
// nearest each center carries weight exactly 1, weights fall linearly in bin
// index to 0 at the feet, and any bin at or inside a foot frequency still
// receives positive weight so the band [f_min, f_max] is covered without
// gaps. Throws FilterCollapse when the window is too small for n_mels, i.e.
// two adjacent centers round to the same FFT bin.
struct MelFilterbank {
  std::vector<double> weights;  // n_mels * n_fft_bins
  size_t n_mels = 0;
  size_t n_fft_bins = 0;
  std::vector<double> center_frequencies;

  double at(size_t mel, size_t bin) const {
    return weights[mel * n_fft_bins + bin];
  }
};

MelFilterbank mel_filterbank(const MelConfig& cfg, const StftConfig& stft_cfg,
                             uint32_t sample_rate);

// data_out = filterbank * data_in. The input must be a linear-power
// spectrogram whose bin count matches the filterbank.
Spectrogram mel_spectrogram(const Spectrogram& spec,
                            const MelFilterbank& filterbank);

}  // namespace dsp
}  // namespace ascene

#endif  // ASCENE_DSP_MEL_H_
