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

#ifndef ASCENE_AUDIO_RESAMPLE_H_
#define ASCENE_AUDIO_RESAMPLE_H_

#include <cstdint>

#include "ascene/audio/clip.h"
#include "ascene/error.h"

namespace ascene {
namespace audio {

class DegenerateOutput : public Error {
 public:
  using Error::Error;
};

// Linear-interpolation resampling. Output length is
// round(len * target_rate / sample_rate); a matching target rate returns the
// clip unchanged. Not band-limited: aliasing above the target Nyquist is a
// known quality limitation of this resampler.
AudioClip resample(const AudioClip& clip, uint32_t target_rate);

}  // namespace audio
}  // namespace ascene

#endif  // ASCENE_AUDIO_RESAMPLE_H_
