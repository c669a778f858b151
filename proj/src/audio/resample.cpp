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

#include "ascene/audio/resample.h"

#include <cmath>
#include <cstddef>

namespace ascene {
namespace audio {

AudioClip resample(const AudioClip& clip, uint32_t target_rate) {
  if (target_rate == 0) {
    throw DegenerateOutput("target rate must be positive");
  }
  if (target_rate == clip.sample_rate) {
    return clip;
  }

  const size_t in_len = clip.samples.size();
  const auto out_len = static_cast<size_t>(
      std::llround(static_cast<double>(in_len) * target_rate /
                   clip.sample_rate));
  if (out_len == 0) {
    throw DegenerateOutput("resampled clip would be empty: " +
                           clip.source_id);
  }

  AudioClip out;
  out.sample_rate = target_rate;
  out.source_id = clip.source_id;
  out.samples.resize(out_len);

  const double step =
      static_cast<double>(clip.sample_rate) / target_rate;
  for (size_t n = 0; n < out_len; ++n) {
    double pos = static_cast<double>(n) * step;
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

}  // namespace audio
}  // namespace ascene
