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

#include "ascene/dsp/decibel.h"

#include <algorithm>
#include <cmath>

namespace ascene {
namespace dsp {

Spectrogram power_to_db(const Spectrogram& spec) {
  if (spec.scale == Scale::kDecibel) {
    throw Error("power_to_db input is already in decibels");
  }

  double p_max = 0.0;
  for (double p : spec.data) {
    p_max = std::max(p_max, p);
  }
  const double ref = 10.0 * std::log10(std::max(p_max, kAmin));

  Spectrogram out = spec;
  out.scale = Scale::kDecibel;
  for (double& v : out.data) {
    double d = 10.0 * std::log10(std::max(v, kAmin)) - ref;
    v = std::clamp(d, kDbFloor, 0.0);
  }
  return out;
}

uint8_t db_to_pixel(double d) {
  double scaled = (d - kDbFloor) / -kDbFloor * 255.0;
  return static_cast<uint8_t>(std::floor(scaled + 0.5));  // round half up
}

SpectrogramImage to_grayscale(const Spectrogram& spec) {
  if (spec.scale != Scale::kDecibel) {
    throw Error("to_grayscale expects a decibel spectrogram");
  }

  SpectrogramImage img;
  img.n_bins = spec.n_bins;
  img.n_frames = spec.n_frames;
  img.db_lo = kDbFloor;
  img.db_hi = 0.0;
  img.pixels.resize(spec.data.size());
  for (size_t i = 0; i < spec.data.size(); ++i) {
    img.pixels[i] = db_to_pixel(spec.data[i]);
  }
  return img;
}

}  // namespace dsp
}  // namespace ascene
