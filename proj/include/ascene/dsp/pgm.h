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

#ifndef ASCENE_DSP_PGM_H_
#define ASCENE_DSP_PGM_H_

#include <string>
#include <utility>
#include <vector>

#include "ascene/dsp/spectrogram.h"
#include "ascene/error.h"

namespace ascene {
namespace dsp {

class ImageLoadFailure : public Error {
 public:
  using Error::Error;
};

// Binary PGM ("P5", maxval 255). Frequency bin 0 is written as the bottom
// row of the image, so the file reads like the figures: low frequencies at
// the bottom.
std::vector<uint8_t> encode_pgm(const SpectrogramImage& img);
void write_pgm(const SpectrogramImage& img, const std::string& path);

// Reads a P5 file produced by write_pgm. The dB provenance range is restored
// as [-80, 0], the only quantization this pipeline writes.
SpectrogramImage read_pgm(const std::string& path);
SpectrogramImage decode_pgm(const std::vector<uint8_t>& bytes,
                            const std::string& source = "");

// Sidecar provenance header: one key=value per line, in the given order.
void write_sidecar(const std::vector<std::pair<std::string, std::string>>& kv,
                   const std::string& path);

}  // namespace dsp
}  // namespace ascene

#endif  // ASCENE_DSP_PGM_H_
