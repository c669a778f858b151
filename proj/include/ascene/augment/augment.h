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

#ifndef ASCENE_AUGMENT_AUGMENT_H_
#define ASCENE_AUGMENT_AUGMENT_H_

#include <cstddef>

#include "ascene/audio/clip.h"
#include "ascene/audio/resample.h"
#include "ascene/dsp/spectrogram.h"
#include "ascene/error.h"
#include "ascene/rng.h"

namespace ascene {
namespace augment {

// One generator per caller; clone streams with Rng64::fork for parallel use.
using AugmentRng = Rng64;

class RateOutOfRange : public Error {
 public:
  using Error::Error;
};

class MaskTooWide : public Error {
 public:
  using Error::Error;
};

struct TimeStretchPolicy {
  double rate_min = 0.8;
  double rate_max = 1.2;
};

enum class MaskFill {
  kZero,     // masked rows become 0 (zero energy, for power spectrograms)
  kSpecMin,  // masked rows take the pre-mask matrix minimum (dB / grayscale)
};

struct FreqMaskPolicy {
  size_t max_width = 16;
  size_t n_masks = 2;
  MaskFill fill = MaskFill::kSpecMin;
};

// Resampling-based stretch: output length round(len / rate), sample n reads
// the input at position n * rate by linear interpolation. The sample rate is
// kept, so rate > 1 plays faster and pitch shifts by the same factor,
// a known fidelity gap versus a phase vocoder. rate must lie in
// [0.25, 4.0].
audio::AudioClip time_stretch(const audio::AudioClip& clip, double rate);

// Draws rate uniformly from [rate_min, rate_max]; consumes exactly one draw.
audio::AudioClip random_time_stretch(const audio::AudioClip& clip,
                                     const TimeStretchPolicy& policy,
                                     AugmentRng& rng);

// SpecAugment-style frequency masking: n_masks times, draw a width w uniform
// in [1, max_width] then a start row uniform in [0, n_bins - w], and set
// rows [f0, f0 + w) to the fill value. The SpecMin fill is the matrix
// minimum computed before any masking. Draw order per mask: width, then
// start. Requires max_width < n_bins.
dsp::Spectrogram freq_mask(const dsp::Spectrogram& spec,
                           const FreqMaskPolicy& policy, AugmentRng& rng);
dsp::SpectrogramImage freq_mask(const dsp::SpectrogramImage& img,
                                const FreqMaskPolicy& policy,
                                AugmentRng& rng);

}  // namespace augment
}  // namespace ascene

#endif  // ASCENE_AUGMENT_AUGMENT_H_
