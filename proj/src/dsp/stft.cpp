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

#include "ascene/dsp/stft.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace ascene {
namespace dsp {

namespace {

using cd = std::complex<double>;

bool is_power_of_two(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 Cooley-Tukey.
void fft_radix2(std::vector<cd>& a) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) {
      j ^= bit;
    }
    j ^= bit;
    if (i < j) {
      std::swap(a[i], a[j]);
    }
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    cd wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      cd w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        cd u = a[i + k];
        cd v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// Direct-summation fallback for non power-of-two windows.
void dft_naive(const std::vector<cd>& in, std::vector<cd>& out) {
  const size_t n = in.size();
  out.assign(n, cd(0.0, 0.0));
  for (size_t k = 0; k <= n / 2; ++k) {
    cd acc(0.0, 0.0);
    for (size_t i = 0; i < n; ++i) {
      double ang = -2.0 * std::numbers::pi * static_cast<double>(k) *
                   static_cast<double>(i) / static_cast<double>(n);
      acc += in[i] * cd(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
}

}  // namespace

Spectrogram stft_power(const audio::AudioClip& clip, const StftConfig& cfg) {
  if (cfg.window_size < 2 || cfg.hop == 0 || cfg.hop > cfg.window_size) {
    throw Error("invalid STFT config: need window_size >= 2 and 0 < hop <= window_size");
  }
  const size_t len = clip.samples.size();
  const size_t ws = cfg.window_size;
  if (len < ws) {
    throw ClipTooShort("clip shorter than one window (" +
                       std::to_string(len) + " < " + std::to_string(ws) +
                       "): " + clip.source_id);
  }

  const size_t n_frames = (len - ws) / cfg.hop + 1;
  const size_t n_bins = ws / 2 + 1;

  std::vector<double> window(ws, 1.0);
  if (cfg.window == Window::kHann) {
    for (size_t i = 0; i < ws; ++i) {
      window[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                        static_cast<double>(i) /
                                        static_cast<double>(ws)));
    }
  }

  Spectrogram spec;
  spec.n_bins = n_bins;
  spec.n_frames = n_frames;
  spec.scale = Scale::kLinearPower;
  spec.data.resize(n_bins * n_frames);
  spec.bin_frequencies.resize(n_bins);
  for (size_t k = 0; k < n_bins; ++k) {
    spec.bin_frequencies[k] = static_cast<double>(k) * clip.sample_rate /
                              static_cast<double>(ws);
  }
  spec.frame_times.resize(n_frames);
  for (size_t t = 0; t < n_frames; ++t) {
    spec.frame_times[t] = static_cast<double>(t * cfg.hop) /
                          clip.sample_rate;
  }

  const bool pow2 = is_power_of_two(ws);
  std::vector<cd> buf(ws);
  std::vector<cd> out;
  for (size_t t = 0; t < n_frames; ++t) {
    const double* frame = clip.samples.data() + t * cfg.hop;
    for (size_t i = 0; i < ws; ++i) {
      buf[i] = cd(frame[i] * window[i], 0.0);
    }
    if (pow2) {
      fft_radix2(buf);
      for (size_t k = 0; k < n_bins; ++k) {
        spec.at(k, t) = std::norm(buf[k]);
      }
    } else {
      dft_naive(buf, out);
      for (size_t k = 0; k < n_bins; ++k) {
        spec.at(k, t) = std::norm(out[k]);
      }
    }
  }
  return spec;
}

}  // namespace dsp
}  // namespace ascene
