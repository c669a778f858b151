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

#include "ascene/dsp/pgm.h"

#include <cctype>
#include <fstream>

namespace ascene {
namespace dsp {

std::vector<uint8_t> encode_pgm(const SpectrogramImage& img) {
  std::string header = "P5\n" + std::to_string(img.n_frames) + " " +
                       std::to_string(img.n_bins) + "\n255\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + img.pixels.size());
  // File rows top to bottom = bins high to low.
  for (size_t row = 0; row < img.n_bins; ++row) {
    size_t bin = img.n_bins - 1 - row;
    const uint8_t* src = img.pixels.data() + bin * img.n_frames;
    out.insert(out.end(), src, src + img.n_frames);
  }
  return out;
}

void write_pgm(const SpectrogramImage& img, const std::string& path) {
  std::vector<uint8_t> bytes = encode_pgm(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write file: " + path);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

SpectrogramImage decode_pgm(const std::vector<uint8_t>& bytes,
                            const std::string& source) {
  size_t pos = 0;
  auto skip_ws = [&]() {
    while (pos < bytes.size()) {
      if (std::isspace(bytes[pos])) {
        ++pos;
      } else if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') {
          ++pos;
        }
      } else {
        break;
      }
    }
  };
  auto read_int = [&]() -> size_t {
    skip_ws();
    size_t v = 0;
    bool any = false;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      v = v * 10 + (bytes[pos] - '0');
      ++pos;
      any = true;
    }
    if (!any) {
      throw ImageLoadFailure("malformed PGM header: " + source);
    }
    return v;
  };

  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw ImageLoadFailure("not a binary PGM (P5): " + source);
  }
  pos = 2;
  size_t width = read_int();
  size_t height = read_int();
  size_t maxval = read_int();
  if (maxval != 255 || width == 0 || height == 0) {
    throw ImageLoadFailure("unsupported PGM (need maxval 255): " + source);
  }
  ++pos;  // single whitespace byte after maxval
  if (pos + width * height > bytes.size()) {
    throw ImageLoadFailure("truncated PGM data: " + source);
  }

  SpectrogramImage img;
  img.n_bins = height;
  img.n_frames = width;
  img.db_lo = -80.0;
  img.db_hi = 0.0;
  img.pixels.resize(width * height);
  for (size_t row = 0; row < height; ++row) {
    size_t bin = height - 1 - row;
    const uint8_t* src = bytes.data() + pos + row * width;
    std::copy(src, src + width, img.pixels.begin() + bin * width);
  }
  return img;
}

SpectrogramImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ImageLoadFailure("cannot open image: " + path);
  }
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return decode_pgm(bytes, path);
}

void write_sidecar(const std::vector<std::pair<std::string, std::string>>& kv,
                   const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write file: " + path);
  }
  for (const auto& [key, value] : kv) {
    out << key << "=" << value << "\n";
  }
}

}  // namespace dsp
}  // namespace ascene
