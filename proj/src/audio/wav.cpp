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

#include "ascene/audio/wav.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace ascene {
namespace audio {

namespace {

constexpr uint16_t kFormatPcm = 0x0001;
constexpr uint16_t kFormatIeeeFloat = 0x0003;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

bool fourcc(const uint8_t* p, const char* id) {
  return std::memcmp(p, id, 4) == 0;
}

double sample_s16(const uint8_t* p) {
  auto v = static_cast<int16_t>(read_u16(p));
  return static_cast<double>(v) / 32768.0;
}

double sample_s24(const uint8_t* p) {
  int32_t v = (static_cast<int32_t>(p[0]) << 8) |
              (static_cast<int32_t>(p[1]) << 16) |
              (static_cast<int32_t>(p[2]) << 24);
  v >>= 8;  // sign-extend from 24 bits
  return static_cast<double>(v) / 8388608.0;
}

double sample_f32(const uint8_t* p) {
  uint32_t bits = read_u32(p);
  float f;
  std::memcpy(&f, &bits, sizeof(f));
  return static_cast<double>(f);
}

struct FmtChunk {
  uint16_t format = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits_per_sample = 0;
};

}  // namespace

AudioClip decode_wav(const std::vector<uint8_t>& bytes,
                     const std::string& source_id) {
  if (bytes.size() < 12 || !fourcc(bytes.data(), "RIFF") ||
      !fourcc(bytes.data() + 8, "WAVE")) {
    throw MalformedContainer("not a RIFF/WAVE container: " + source_id);
  }

  FmtChunk fmt;
  bool have_fmt = false;
  const uint8_t* data = nullptr;
  size_t data_size = 0;

  // Walk the chunk list. Chunks are word-aligned; unknown ones are skipped.
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const uint8_t* hdr = bytes.data() + pos;
    uint32_t chunk_size = read_u32(hdr + 4);
    size_t body = pos + 8;
    if (body + chunk_size > bytes.size()) {
      throw MalformedContainer("chunk overruns file: " + source_id);
    }
    if (fourcc(hdr, "fmt ")) {
      if (chunk_size < 16) {
        throw MalformedContainer("fmt chunk too small: " + source_id);
      }
      fmt.format = read_u16(hdr + 8);
      fmt.channels = read_u16(hdr + 10);
      fmt.sample_rate = read_u32(hdr + 12);
      fmt.bits_per_sample = read_u16(hdr + 22);
      if (fmt.format == kFormatExtensible && chunk_size >= 40) {
        fmt.format = read_u16(hdr + 8 + 24);  // first two bytes of SubFormat
      }
      have_fmt = true;
    } else if (fourcc(hdr, "data")) {
      data = hdr + 8;
      data_size = chunk_size;
    }
    pos = body + chunk_size + (chunk_size & 1);
  }

  if (!have_fmt || data == nullptr) {
    throw MalformedContainer("missing fmt or data chunk: " + source_id);
  }
  if (fmt.channels < 1 || fmt.channels > 2) {
    throw UnsupportedEncoding("only 1 or 2 channels supported, got " +
                              std::to_string(fmt.channels));
  }
  if (fmt.sample_rate == 0) {
    throw MalformedContainer("sample rate is zero: " + source_id);
  }

  double (*convert)(const uint8_t*) = nullptr;
  size_t bytes_per_sample = 0;
  if (fmt.format == kFormatPcm && fmt.bits_per_sample == 16) {
    convert = sample_s16;
    bytes_per_sample = 2;
  } else if (fmt.format == kFormatPcm && fmt.bits_per_sample == 24) {
    convert = sample_s24;
    bytes_per_sample = 3;
  } else if (fmt.format == kFormatIeeeFloat && fmt.bits_per_sample == 32) {
    convert = sample_f32;
    bytes_per_sample = 4;
  } else {
    throw UnsupportedEncoding(
        "unsupported encoding (format tag " + std::to_string(fmt.format) +
        ", " + std::to_string(fmt.bits_per_sample) + " bits)");
  }

  size_t frame_bytes = bytes_per_sample * fmt.channels;
  size_t n_frames = data_size / frame_bytes;
  if (n_frames == 0) {
    throw EmptyAudio("no sample frames: " + source_id);
  }

  AudioClip clip;
  clip.sample_rate = fmt.sample_rate;
  clip.source_id = source_id;
  clip.samples.resize(n_frames);
  for (size_t i = 0; i < n_frames; ++i) {
    const uint8_t* frame = data + i * frame_bytes;
    if (fmt.channels == 1) {
      clip.samples[i] = convert(frame);
    } else {
      clip.samples[i] =
          0.5 * (convert(frame) + convert(frame + bytes_per_sample));
    }
  }
  return clip;
}

AudioClip decode_wav_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw MalformedContainer("cannot open file: " + path);
  }
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return decode_wav(bytes, path);
}

std::vector<uint8_t> encode_wav_pcm16(const AudioClip& clip) {
  const size_t n = clip.samples.size();
  const uint32_t data_size = static_cast<uint32_t>(n * 2);

  std::vector<uint8_t> out;
  out.reserve(44 + data_size);
  auto put_u16 = [&out](uint16_t v) {
    out.push_back(static_cast<uint8_t>(v & 0xFF));
    out.push_back(static_cast<uint8_t>(v >> 8));
  };
  auto put_u32 = [&out](uint32_t v) {
    out.push_back(static_cast<uint8_t>(v & 0xFF));
    out.push_back(static_cast<uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<uint8_t>((v >> 24) & 0xFF));
  };
  auto put_tag = [&out](const char* tag) {
    out.insert(out.end(), tag, tag + 4);
  };

  put_tag("RIFF");
  put_u32(36 + data_size);
  put_tag("WAVE");
  put_tag("fmt ");
  put_u32(16);
  put_u16(kFormatPcm);
  put_u16(1);  // mono
  put_u32(clip.sample_rate);
  put_u32(clip.sample_rate * 2);  // byte rate
  put_u16(2);                     // block align
  put_u16(16);
  put_tag("data");
  put_u32(data_size);
  for (double s : clip.samples) {
    long q = std::lround(s * 32768.0);
    q = std::clamp(q, -32768L, 32767L);
    put_u16(static_cast<uint16_t>(static_cast<int16_t>(q)));
  }
  return out;
}

void write_wav_pcm16(const AudioClip& clip, const std::string& path) {
  std::vector<uint8_t> bytes = encode_wav_pcm16(clip);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write file: " + path);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace audio
}  // namespace ascene
