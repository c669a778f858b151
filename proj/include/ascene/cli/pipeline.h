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

#ifndef ASCENE_CLI_PIPELINE_H_
#define ASCENE_CLI_PIPELINE_H_

#include <string>
#include <utility>
#include <vector>

#include "ascene/audio/clip.h"
#include "ascene/cli/config.h"
#include "ascene/dsp/spectrogram.h"

namespace ascene {
namespace cli {

// decode -> resample -> pre-emphasis, the audio half of the pipeline.
audio::AudioClip load_audio(const std::string& wav_path,
                            const PipelineConfig& cfg);

// STFT -> log-frequency mapping -> dB -> grayscale. The clip is expected to
// already be at the target rate and pre-emphasized.
dsp::SpectrogramImage clip_to_image(const audio::AudioClip& clip,
                                    const PipelineConfig& cfg);

// Full wav -> image path used by convert and predict.
dsp::SpectrogramImage wav_to_image(const std::string& wav_path,
                                   const PipelineConfig& cfg);

// Key=value metadata describing how an image was produced.
std::vector<std::pair<std::string, std::string>> sidecar_entries(
    const std::string& source, const dsp::SpectrogramImage& img,
    const PipelineConfig& cfg, double stretch_rate);

}  // namespace cli
}  // namespace ascene

#endif  // ASCENE_CLI_PIPELINE_H_
