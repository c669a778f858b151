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

#include "ascene/augment/augment.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "doctest.h"

namespace ascene {
namespace augment {
namespace {

audio::AudioClip ramp_clip(size_t n) {
  audio::AudioClip clip;
  clip.sample_rate = 22050;
  clip.source_id = "ramp";
  for (size_t i = 0; i < n; ++i) {
    clip.samples.push_back(static_cast<double>(i));
  }
  return clip;
}

dsp::Spectrogram filled_spec(size_t n_bins, size_t n_frames, double v) {
  dsp::Spectrogram spec;
  spec.n_bins = n_bins;
  spec.n_frames = n_frames;
  spec.scale = dsp::Scale::kDecibel;
  spec.data.assign(n_bins * n_frames, v);
  for (size_t b = 0; b < n_bins; ++b) {
    spec.bin_frequencies.push_back(static_cast<double>(b + 1));
  }
  for (size_t t = 0; t < n_frames; ++t) {
    spec.frame_times.push_back(static_cast<double>(t));
  }
  return spec;
}

TEST_CASE("time stretch halves and doubles lengths by resampling") {
  audio::AudioClip clip = ramp_clip(100);
  audio::AudioClip fast = time_stretch(clip, 2.0);
  CHECK(fast.samples.size() == 50);
  // Sample n reads position 2n, and the ramp makes interpolation exact.
  for (size_t n = 0; n < fast.samples.size(); ++n) {
    CHECK(fast.samples[n] == doctest::Approx(2.0 * static_cast<double>(n)));
  }

  audio::AudioClip slow = time_stretch(clip, 0.5);
  CHECK(slow.samples.size() == 200);
  for (size_t n = 0; n < slow.samples.size(); ++n) {
    double pos = 0.5 * static_cast<double>(n);
    double expect = std::min(pos, 99.0);
    CHECK(slow.samples[n] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("rate 1 returns the clip untouched") {
  audio::AudioClip clip = ramp_clip(17);
  audio::AudioClip out = time_stretch(clip, 1.0);
  CHECK(out.samples == clip.samples);
  CHECK(out.sample_rate == clip.sample_rate);
}

TEST_CASE("rates outside [0.25, 4] are rejected") {
  audio::AudioClip clip = ramp_clip(10);
  CHECK_THROWS_AS(time_stretch(clip, 0.2), RateOutOfRange);
  CHECK_THROWS_AS(time_stretch(clip, 4.5), RateOutOfRange);
  CHECK_THROWS_AS(time_stretch(clip, std::nan("")), RateOutOfRange);
  CHECK_NOTHROW(time_stretch(clip, 0.25));
  CHECK_NOTHROW(time_stretch(clip, 4.0));
}

TEST_CASE("random stretch consumes one draw and stays in policy range") {
  audio::AudioClip clip = ramp_clip(1000);
  TimeStretchPolicy policy;
  AugmentRng rng(70);
  AugmentRng replay(70);
  for (int i = 0; i < 20; ++i) {
    audio::AudioClip out = random_time_stretch(clip, policy, rng);
    double rate = replay.uniform_real(policy.rate_min, policy.rate_max);
    auto expect_len =
        rate == 1.0 ? size_t{1000}
                    : static_cast<size_t>(std::llround(1000.0 / rate));
    CHECK(out.samples.size() == expect_len);
    CHECK(rate >= policy.rate_min);
    CHECK(rate <= policy.rate_max);
  }
  // Both generators advanced in lockstep, one draw per call.
  CHECK(rng.state() == replay.state());
}

TEST_CASE("freq mask matches an RNG-replay oracle") {
  FreqMaskPolicy policy;
  policy.fill = MaskFill::kZero;
  AugmentRng rng(71);
  AugmentRng replay(71);

  dsp::Spectrogram spec = filled_spec(64, 5, 3.5);
  spec.scale = dsp::Scale::kLogFreqPower;
  dsp::Spectrogram out = freq_mask(spec, policy, rng);

  std::set<size_t> masked;
  for (size_t m = 0; m < policy.n_masks; ++m) {
    auto w = static_cast<size_t>(
        replay.uniform_int(1, static_cast<int64_t>(policy.max_width)));
    auto f0 = static_cast<size_t>(
        replay.uniform_int(0, static_cast<int64_t>(64 - w)));
    for (size_t b = f0; b < f0 + w; ++b) {
      masked.insert(b);
    }
  }
  for (size_t b = 0; b < 64; ++b) {
    for (size_t t = 0; t < 5; ++t) {
      double expect = masked.count(b) ? 0.0 : 3.5;
      CHECK(out.at(b, t) == expect);
    }
  }
  CHECK(rng.state() == replay.state());
}

TEST_CASE("masked rows never exceed the policy budget") {
  FreqMaskPolicy policy;
  policy.max_width = 12;
  policy.n_masks = 3;
  policy.fill = MaskFill::kZero;
  AugmentRng rng(72);
  for (int trial = 0; trial < 50; ++trial) {
    dsp::Spectrogram spec = filled_spec(96, 4, 1.0);
    spec.scale = dsp::Scale::kLogFreqPower;
    dsp::Spectrogram out = freq_mask(spec, policy, rng);
    size_t zeroed = 0;
    for (size_t b = 0; b < 96; ++b) {
      if (out.at(b, 0) == 0.0) ++zeroed;
    }
    CHECK(zeroed >= 1);
    CHECK(zeroed <= policy.max_width * policy.n_masks);
  }
}

TEST_CASE("SpecMin fill uses the pre-mask minimum") {
  dsp::Spectrogram spec = filled_spec(32, 2, -10.0);
  spec.at(7, 1) = -55.0;  // global minimum
  FreqMaskPolicy policy;
  policy.max_width = 4;
  policy.n_masks = 1;
  AugmentRng rng(73);
  dsp::Spectrogram out = freq_mask(spec, policy, rng);
  bool saw_fill = false;
  for (size_t b = 0; b < 32; ++b) {
    if (out.at(b, 0) == -55.0) saw_fill = true;
  }
  CHECK(saw_fill);
}

TEST_CASE("image masking fills whole rows with the pixel minimum") {
  dsp::SpectrogramImage img;
  img.n_bins = 48;
  img.n_frames = 6;
  img.pixels.assign(48 * 6, uint8_t{200});
  img.at(3, 2) = 17;
  FreqMaskPolicy policy;
  AugmentRng rng(74);
  AugmentRng replay(74);
  dsp::SpectrogramImage out = freq_mask(img, policy, rng);

  std::set<size_t> masked;
  for (size_t m = 0; m < policy.n_masks; ++m) {
    auto w = static_cast<size_t>(
        replay.uniform_int(1, static_cast<int64_t>(policy.max_width)));
    auto f0 = static_cast<size_t>(
        replay.uniform_int(0, static_cast<int64_t>(48 - w)));
    for (size_t b = f0; b < f0 + w; ++b) {
      masked.insert(b);
    }
  }
  for (size_t b = 0; b < 48; ++b) {
    for (size_t t = 0; t < 6; ++t) {
      uint8_t expect = masked.count(b) ? uint8_t{17}
                       : (b == 3 && t == 2) ? uint8_t{17}
                                            : uint8_t{200};
      CHECK(out.at(b, t) == expect);
    }
  }
}

TEST_CASE("same seed gives identical masks across runs") {
  dsp::Spectrogram spec = filled_spec(64, 3, 1.0);
  spec.scale = dsp::Scale::kLogFreqPower;
  FreqMaskPolicy policy;
  policy.fill = MaskFill::kZero;
  dsp::Spectrogram first;
  for (int run = 0; run < 3; ++run) {
    AugmentRng rng(75);
    dsp::Spectrogram out = freq_mask(spec, policy, rng);
    if (run == 0) {
      first = out;
    } else {
      CHECK(out.data == first.data);
    }
  }
}

TEST_CASE("masks wider than the axis are rejected") {
  dsp::Spectrogram spec = filled_spec(16, 2, 1.0);
  spec.scale = dsp::Scale::kLogFreqPower;
  FreqMaskPolicy policy;
  policy.max_width = 16;  // equal to n_bins is already too wide
  AugmentRng rng(76);
  CHECK_THROWS_AS(freq_mask(spec, policy, rng), MaskTooWide);
}

}  // namespace
}  // namespace augment
}  // namespace ascene
