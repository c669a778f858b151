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

#ifndef ASCENE_DSP_LOG_FREQ_H_
#define ASCENE_DSP_LOG_FREQ_H_

#include <cstddef>

#include "ascene/dsp/spectrogram.h"
#include "ascene/error.h"

namespace ascene {
namespace dsp {

class ConfigOutOfRange : public Error {
 public:
  using Error::Error;
};

// Geometric frequency axis: bins_per_octave bins per doubling, starting at
// f_min. 32.70 Hz is C1.
struct LogFreqConfig {
  double f_min = 32.70;
  size_t bins_per_octave = 24;
  size_t n_octaves = 8;
};

// Pseudo constant-Q mapping of an STFT power spectrogram.
//
// Output bin b is centered at f_min * 2^(b / bpo); it sums the power of
// every FFT bin whose frequency falls in the geometric interval
// [center / 2^(1/(2*bpo)), center * 2^(1/(2*bpo))). Adjacent intervals tile
// the axis, so total power over the covered range is preserved as long as no
// interval is empty; an empty interval receives the power of the single
// nearest FFT bin instead. This is a fixed-window approximation, not a true
// multi-resolution constant-Q transform.
Spectrogram log_freq_spectrogram(const Spectrogram& spec,
                                 const LogFreqConfig& cfg);

}  // namespace dsp
}  // namespace ascene

#endif  // ASCENE_DSP_LOG_FREQ_H_
