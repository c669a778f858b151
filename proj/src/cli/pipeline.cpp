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

#include "ascene/cli/pipeline.h"

#include <sstream>

#include "ascene/audio/resample.h"
#include "ascene/audio/wav.h"
#include "ascene/dsp/decibel.h"
#include "ascene/dsp/log_freq.h"
#include "ascene/dsp/pre_emphasis.h"
#include "ascene/dsp/stft.h"

namespace ascene {
namespace cli {
namespace {

std::string format_number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

audio::AudioClip load_audio(const std::string& wav_path,
                            const PipelineConfig& cfg) {
  audio::AudioClip clip = audio::decode_wav_file(wav_path);
  clip = audio::resample(clip, cfg.target_sample_rate);
  return dsp::pre_emphasis(clip, cfg.pre_emphasis);
}

dsp::SpectrogramImage clip_to_image(const audio::AudioClip& clip,
                                    const PipelineConfig& cfg) {
  dsp::Spectrogram spec = dsp::stft_power(clip, cfg.stft);
  spec = dsp::log_freq_spectrogram(spec, cfg.log_freq);
  spec = dsp::power_to_db(spec);
  return dsp::to_grayscale(spec);
}

dsp::SpectrogramImage wav_to_image(const std::string& wav_path,
                                   const PipelineConfig& cfg) {
  return clip_to_image(load_audio(wav_path, cfg), cfg);
}

std::vector<std::pair<std::string, std::string>> sidecar_entries(
    const std::string& source, const dsp::SpectrogramImage& img,
    const PipelineConfig& cfg, double stretch_rate) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("source", source);
  kv.emplace_back("sample_rate", std::to_string(cfg.target_sample_rate));
  kv.emplace_back("pre_emphasis_alpha", format_number(cfg.pre_emphasis.alpha));
  kv.emplace_back("window_size", std::to_string(cfg.stft.window_size));
  kv.emplace_back("hop_length", std::to_string(cfg.stft.hop));
  kv.emplace_back("f_min", format_number(cfg.log_freq.f_min));
  kv.emplace_back("bins_per_octave",
                  std::to_string(cfg.log_freq.bins_per_octave));
  kv.emplace_back("n_octaves", std::to_string(cfg.log_freq.n_octaves));
  kv.emplace_back("n_bins", std::to_string(img.n_bins));
  kv.emplace_back("n_frames", std::to_string(img.n_frames));
  kv.emplace_back("db_lo", format_number(img.db_lo));
  kv.emplace_back("db_hi", format_number(img.db_hi));
  if (stretch_rate != 1.0) {
    kv.emplace_back("stretch_rate", format_number(stretch_rate));
  }
  return kv;
}

}  // namespace cli
}  // namespace ascene
