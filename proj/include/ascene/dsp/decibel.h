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

#ifndef ASCENE_DSP_DECIBEL_H_
#define ASCENE_DSP_DECIBEL_H_

#include "ascene/dsp/spectrogram.h"

namespace ascene {
namespace dsp {

inline constexpr double kDbFloor = -80.0;
inline constexpr double kAmin = 1e-10;

// Converts power to decibels relative to the matrix maximum:
// d = 10*log10(max(p, amin)) - 10*log10(max(p_max, amin)), clamped to
// [-80, 0]. The maximum cell therefore maps to 0 dB.
Spectrogram power_to_db(const Spectrogram& spec);

// Quantizes a [-80, 0] dB spectrogram to 8-bit pixels:
// pixel = round_half_up((d + 80) / 80 * 255). Order-preserving in d.
SpectrogramImage to_grayscale(const Spectrogram& spec);

// The pixel mapping alone, exposed for direct checks.
uint8_t db_to_pixel(double d);

}  // namespace dsp
}  // namespace ascene

#endif  // ASCENE_DSP_DECIBEL_H_
