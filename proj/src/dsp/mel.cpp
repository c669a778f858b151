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

#include "ascene/dsp/mel.h"

#include <algorithm>
#include <cmath>

namespace ascene {
namespace dsp {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

double triangle_weight(double f, double f_left, double f_center,
                       double f_right) {
  if (f <= f_left || f >= f_right) {
    return f == f_center ? 1.0 : 0.0;
  }
  if (f <= f_center) {
    return (f - f_left) / (f_center - f_left);
  }
  return (f_right - f) / (f_right - f_center);
}

MelFilterbank mel_filterbank(const MelConfig& cfg, const StftConfig& stft_cfg,
                             uint32_t sample_rate) {
  const double nyquist = sample_rate / 2.0;
  const double f_min = cfg.f_min;
  const double f_max = cfg.f_max > 0.0 ? cfg.f_max : nyquist;
  if (cfg.n_mels < 2 || f_min < 0.0 || f_min >= f_max || f_max > nyquist) {
    throw Error("invalid mel config: need n_mels >= 2 and 0 <= f_min < f_max <= nyquist");
  }

  const size_t n_fft_bins = stft_cfg.window_size / 2 + 1;
  const double df =
      static_cast<double>(sample_rate) / stft_cfg.window_size;

  // Uniform grid on the mel axis; points[0] and points[n_mels+1] are the
  // outermost feet, the inner n_mels points are centers.
  const double mel_lo = hz_to_mel(f_min);
  const double mel_hi = hz_to_mel(f_max);
  std::vector<double> grid_hz(cfg.n_mels + 2);
  for (size_t i = 0; i < grid_hz.size(); ++i) {
    double mel = mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                              static_cast<double>(cfg.n_mels + 1);
    grid_hz[i] = mel_to_hz(mel);
  }
  // The mel round trip can land an ulp off the band edges, which would
  // push a foot across an FFT bin that sits exactly on f_min or f_max.
  grid_hz.front() = f_min;
  grid_hz.back() = f_max;

  MelFilterbank fb;
  fb.n_mels = cfg.n_mels;
  fb.n_fft_bins = n_fft_bins;
  fb.weights.assign(cfg.n_mels * n_fft_bins, 0.0);
  fb.center_frequencies.resize(cfg.n_mels);

  // Snap each triangle to the FFT grid. The rising edge starts strictly
  // below the first bin at or above the left foot, so a bin exactly on a
  // foot still gets positive weight; the center bin gets exactly 1.
  auto center_bin = [df](double hz) {
    return static_cast<long>(std::lround(hz / df));
  };
  long prev_cb = -1;
  for (size_t m = 0; m < cfg.n_mels; ++m) {
    const double f_l = grid_hz[m];
    const double f_c = grid_hz[m + 1];
    const double f_r = grid_hz[m + 2];
    fb.center_frequencies[m] = f_c;

    const long cb = center_bin(f_c);
    if (cb == prev_cb) {
      throw FilterCollapse(
          "adjacent mel centers fall on FFT bin " + std::to_string(cb) +
          "; reduce n_mels or enlarge window_size");
    }
    prev_cb = cb;

    const long lb = static_cast<long>(std::ceil(f_l / df)) - 1;
    const long rb = static_cast<long>(std::floor(f_r / df)) + 1;
    if (cb <= lb || rb <= cb) {
      throw FilterCollapse(
          "mel filter " + std::to_string(m) +
          " collapses on the FFT grid; reduce n_mels or enlarge window_size");
    }

    const long k_hi = std::min<long>(rb - 1, static_cast<long>(n_fft_bins) - 1);
    for (long k = std::max<long>(lb + 1, 0); k <= k_hi; ++k) {
      double w = k <= cb
                     ? static_cast<double>(k - lb) / static_cast<double>(cb - lb)
                     : static_cast<double>(rb - k) / static_cast<double>(rb - cb);
      fb.weights[m * n_fft_bins + static_cast<size_t>(k)] = w;
    }
  }
  return fb;
}

Spectrogram mel_spectrogram(const Spectrogram& spec,
                            const MelFilterbank& filterbank) {
  if (spec.scale != Scale::kLinearPower) {
    throw Error("mel_spectrogram expects a linear-power input");
  }
  if (spec.n_bins != filterbank.n_fft_bins) {
    throw ShapeMismatch("filterbank has " +
                        std::to_string(filterbank.n_fft_bins) +
                        " columns but spectrogram has " +
                        std::to_string(spec.n_bins) + " bins");
  }

  Spectrogram out;
  out.n_bins = filterbank.n_mels;
  out.n_frames = spec.n_frames;
  out.scale = Scale::kMelPower;
  out.bin_frequencies = filterbank.center_frequencies;
  out.frame_times = spec.frame_times;
  out.data.assign(out.n_bins * out.n_frames, 0.0);
  for (size_t m = 0; m < filterbank.n_mels; ++m) {
    for (size_t k = 0; k < spec.n_bins; ++k) {
      double w = filterbank.at(m, k);
      if (w == 0.0) {
        continue;
      }
      for (size_t t = 0; t < spec.n_frames; ++t) {
        out.at(m, t) += w * spec.at(k, t);
      }
    }
  }
  return out;
}

}  // namespace dsp
}  // namespace ascene
