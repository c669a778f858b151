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

#ifndef ASCENE_DSP_PRE_EMPHASIS_H_
#define ASCENE_DSP_PRE_EMPHASIS_H_

#include "ascene/audio/clip.h"
#include "ascene/error.h"

namespace ascene {
namespace dsp {

// High-frequency emphasis filter, rescaled so a constant signal passes
// through unchanged in steady state:
//
//   y[n] = (x[n] - alpha * x[n-1]) / (1 - alpha),  x[-1] = 0
//
// alpha must lie in [0, 1); alpha = 0 is the identity. 0.97 is the
// conventional speech-processing constant.
struct PreEmphasisConfig {
  double alpha = 0.97;
};

audio::AudioClip pre_emphasis(const audio::AudioClip& clip,
                              const PreEmphasisConfig& cfg);

}  // namespace dsp
}  // namespace ascene

#endif  // ASCENE_DSP_PRE_EMPHASIS_H_
