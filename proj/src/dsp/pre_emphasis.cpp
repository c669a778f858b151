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

#include "ascene/dsp/pre_emphasis.h"

#include <cstddef>

namespace ascene {
namespace dsp {

audio::AudioClip pre_emphasis(const audio::AudioClip& clip,
                              const PreEmphasisConfig& cfg) {
  if (cfg.alpha < 0.0 || cfg.alpha >= 1.0) {
    throw Error("pre-emphasis alpha must lie in [0, 1)");
  }
  if (cfg.alpha == 0.0) {
    return clip;  // exact identity
  }

  audio::AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.source_id = clip.source_id;
  out.samples.resize(clip.samples.size());

  const double denom = 1.0 - cfg.alpha;
  double prev = 0.0;  // x[-1] = 0 boundary convention
  for (size_t n = 0; n < clip.samples.size(); ++n) {
    double x = clip.samples[n];
    out.samples[n] = (x - cfg.alpha * prev) / denom;
    prev = x;
  }
  return out;
}

}  // namespace dsp
}  // namespace ascene
