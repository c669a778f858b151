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

#include "ascene/dsp/log_freq.h"

#include <cmath>
#include <cstdint>
#include <vector>

namespace ascene {
namespace dsp {

Spectrogram log_freq_spectrogram(const Spectrogram& spec,
                                 const LogFreqConfig& cfg) {
  if (spec.scale != Scale::kLinearPower) {
    throw Error("log_freq_spectrogram expects a linear-power input");
  }
  if (cfg.f_min <= 0.0 || cfg.bins_per_octave == 0 || cfg.n_octaves == 0) {
    throw Error("invalid log-frequency config");
  }
  const double nyquist = spec.bin_frequencies.back();
  if (cfg.f_min * std::exp2(static_cast<double>(cfg.n_octaves)) > nyquist) {
    throw ConfigOutOfRange(
        "top of the log-frequency axis exceeds the spectrogram's range");
  }

  const size_t n_bins = cfg.n_octaves * cfg.bins_per_octave;
  const double bpo = static_cast<double>(cfg.bins_per_octave);

  Spectrogram out;
  out.n_bins = n_bins;
  out.n_frames = spec.n_frames;
  out.scale = Scale::kLogFreqPower;
  out.frame_times = spec.frame_times;
  out.bin_frequencies.resize(n_bins);
  for (size_t b = 0; b < n_bins; ++b) {
    out.bin_frequencies[b] =
        cfg.f_min * std::exp2(static_cast<double>(b) / bpo);
  }
  out.data.assign(n_bins * out.n_frames, 0.0);

  // FFT bin -> output bin. Interval b covers u in [b - 0.5, b + 0.5) where
  // u = bpo * log2(f / f_min); DC never maps anywhere.
  std::vector<int64_t> target(spec.n_bins, -1);
  std::vector<size_t> hit_count(n_bins, 0);
  for (size_t k = 0; k < spec.n_bins; ++k) {
    double f = spec.bin_frequencies[k];
    if (f <= 0.0) {
      continue;
    }
    double u = bpo * std::log2(f / cfg.f_min);
    auto b = static_cast<int64_t>(std::floor(u + 0.5));
    if (b >= 0 && b < static_cast<int64_t>(n_bins)) {
      target[k] = b;
      ++hit_count[static_cast<size_t>(b)];
    }
  }

  // Empty intervals fall back to the single FFT bin nearest their center.
  std::vector<int64_t> fallback(n_bins, -1);
  for (size_t b = 0; b < n_bins; ++b) {
    if (hit_count[b] > 0) {
      continue;
    }
    double center = out.bin_frequencies[b];
    size_t best = 0;
    double best_dist = std::abs(spec.bin_frequencies[0] - center);
    for (size_t k = 1; k < spec.n_bins; ++k) {
      double d = std::abs(spec.bin_frequencies[k] - center);
      if (d < best_dist) {
        best = k;
        best_dist = d;
      }
    }
    fallback[b] = static_cast<int64_t>(best);
  }

  for (size_t t = 0; t < spec.n_frames; ++t) {
    for (size_t k = 0; k < spec.n_bins; ++k) {
      if (target[k] >= 0) {
        out.at(static_cast<size_t>(target[k]), t) += spec.at(k, t);
      }
    }
    for (size_t b = 0; b < n_bins; ++b) {
      if (fallback[b] >= 0) {
        out.at(b, t) = spec.at(static_cast<size_t>(fallback[b]), t);
      }
    }
  }
  return out;
}

}  // namespace dsp
}  // namespace ascene
