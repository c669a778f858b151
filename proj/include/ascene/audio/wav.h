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

#ifndef ASCENE_AUDIO_WAV_H_
#define ASCENE_AUDIO_WAV_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ascene/audio/clip.h"
#include "ascene/error.h"

namespace ascene {
namespace audio {

class MalformedContainer : public Error {
 public:
  using Error::Error;
};

class UnsupportedEncoding : public Error {
 public:
  using Error::Error;
};

class EmptyAudio : public Error {
 public:
  using Error::Error;
};

// Decodes a RIFF/WAVE byte buffer into a mono clip.
//
// Accepted encodings: integer PCM at 16 or 24 bits, or IEEE float at 32 bits,
// with 1 or 2 channels, little-endian. Integer samples are scaled to [-1, 1]
// by 1 / 2^(bits-1); stereo is downmixed by the per-sample mean of the two
// channels.
AudioClip decode_wav(const std::vector<uint8_t>& bytes,
                     const std::string& source_id = "");

// Convenience wrapper: reads the file and decodes it. source_id is the path.
AudioClip decode_wav_file(const std::string& path);

// Encodes a clip as 16-bit PCM mono WAV. Samples are quantized by
// round(x * 32768) clamped to [-32768, 32767], so decode(encode(x)) stays
// within 1/32768 of x for x in [-1, 1].
std::vector<uint8_t> encode_wav_pcm16(const AudioClip& clip);
void write_wav_pcm16(const AudioClip& clip, const std::string& path);

}  // namespace audio
}  // namespace ascene

#endif  // ASCENE_AUDIO_WAV_H_
