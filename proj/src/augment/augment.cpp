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

#include "ascene/augment/augment.h"

#include <algorithm>
#include <cmath>

namespace ascene {
namespace augment {

audio::AudioClip time_stretch(const audio::AudioClip& clip, double rate) {
  if (!(rate >= 0.25 && rate <= 4.0)) {
    throw RateOutOfRange("stretch rate " + std::to_string(rate) +
                         " outside [0.25, 4.0]");
  }
  if (rate == 1.0) {
    return clip;
  }

  const size_t in_len = clip.samples.size();
  const auto out_len = static_cast<size_t>(
      std::llround(static_cast<double>(in_len) / rate));
  if (out_len == 0) {
    throw audio::DegenerateOutput("stretched clip would be empty: " +
                                  clip.source_id);
  }

  audio::AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.source_id = clip.source_id;
  out.samples.resize(out_len);
  for (size_t n = 0; n < out_len; ++n) {
    double pos = static_cast<double>(n) * rate;
    auto i = static_cast<size_t>(pos);
    if (i >= in_len - 1) {
      out.samples[n] = clip.samples[in_len - 1];
    } else {
      double frac = pos - static_cast<double>(i);
      out.samples[n] =
          clip.samples[i] + frac * (clip.samples[i + 1] - clip.samples[i]);
    }
  }
  return out;
}

audio::AudioClip random_time_stretch(const audio::AudioClip& clip,
                                     const TimeStretchPolicy& policy,
                                     AugmentRng& rng) {
  if (!(policy.rate_min > 0.0) || policy.rate_max < policy.rate_min) {
    throw Error("invalid time-stretch policy: need 0 < rate_min <= rate_max");
  }
  double rate = rng.uniform_real(policy.rate_min, policy.rate_max);
  return time_stretch(clip, rate);
}

namespace {

// Shared mask loop; T is double or uint8_t.
template <typename T>
void apply_masks(std::vector<T>& data, size_t n_bins, size_t n_frames,
                 const FreqMaskPolicy& policy, AugmentRng& rng) {
  if (policy.max_width == 0 || policy.n_masks == 0) {
    throw Error("invalid frequency-mask policy: widths and counts must be >= 1");
  }
  if (policy.max_width >= n_bins) {
    throw MaskTooWide("max_width " + std::to_string(policy.max_width) +
                      " must be smaller than n_bins " +
                      std::to_string(n_bins));
  }

  T fill{};
  if (policy.fill == MaskFill::kSpecMin) {
    fill = *std::min_element(data.begin(), data.end());
  }
  for (size_t m = 0; m < policy.n_masks; ++m) {
    auto w = static_cast<size_t>(
        rng.uniform_int(1, static_cast<int64_t>(policy.max_width)));
    auto f0 = static_cast<size_t>(
        rng.uniform_int(0, static_cast<int64_t>(n_bins - w)));
    for (size_t b = f0; b < f0 + w; ++b) {
      std::fill_n(data.begin() + b * n_frames, n_frames, fill);
    }
  }
}

}  // namespace

dsp::Spectrogram freq_mask(const dsp::Spectrogram& spec,
                           const FreqMaskPolicy& policy, AugmentRng& rng) {
  dsp::Spectrogram out = spec;
  apply_masks(out.data, out.n_bins, out.n_frames, policy, rng);
  return out;
}

dsp::SpectrogramImage freq_mask(const dsp::SpectrogramImage& img,
                                const FreqMaskPolicy& policy,
                                AugmentRng& rng) {
  dsp::SpectrogramImage out = img;
  apply_masks(out.pixels, out.n_bins, out.n_frames, policy, rng);
  return out;
}

}  // namespace augment
}  // namespace ascene
