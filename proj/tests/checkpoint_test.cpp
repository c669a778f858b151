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

#include "ascene/nn/checkpoint.h"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"

namespace ascene {
namespace nn {
namespace {

Checkpoint sample_checkpoint() {
  Checkpoint ckpt;
  ckpt.spec.in_height = 8;
  ckpt.spec.in_width = 8;
  ckpt.spec.conv_channels = {3};
  ckpt.spec.fc1_units = 6;
  ckpt.spec.fc2_units = 5;
  ckpt.spec.n_classes = 3;
  ckpt.classes = data::ClassIndexMap({"bus", "park", "tram"});
  ckpt.stats = {0.42, 0.17};
  Network net(ckpt.spec);
  ckpt.params = net.init(12345);
  ckpt.best_val_accuracy = 0.8125;
  ckpt.epoch = 17;
  ckpt.rng_state = 0xDEADBEEFCAFEF00DULL;
  for (const Tensor& t : ckpt.params.tensors) {
    Tensor v(t.dims);
    v.fill(0.25);
    ckpt.optimizer_state.push_back(std::move(v));
  }
  return ckpt;
}

TEST_CASE("encode and decode are exact inverses") {
  Checkpoint ckpt = sample_checkpoint();
  std::vector<uint8_t> bytes = encode_checkpoint(ckpt);
  Checkpoint back = decode_checkpoint(bytes);

  CHECK(back.spec.canonical_string() == ckpt.spec.canonical_string());
  CHECK(back.classes == ckpt.classes);
  CHECK(back.stats.mean == ckpt.stats.mean);
  CHECK(back.stats.std_dev == ckpt.stats.std_dev);
  CHECK(back.best_val_accuracy == ckpt.best_val_accuracy);
  CHECK(back.epoch == ckpt.epoch);
  CHECK(back.rng_state == ckpt.rng_state);
  REQUIRE(back.params.tensors.size() == ckpt.params.tensors.size());
  for (size_t i = 0; i < ckpt.params.tensors.size(); ++i) {
    CHECK(back.params.tensors[i].dims == ckpt.params.tensors[i].dims);
    CHECK(back.params.tensors[i].data == ckpt.params.tensors[i].data);
  }
  REQUIRE(back.optimizer_state.size() == ckpt.optimizer_state.size());
  for (size_t i = 0; i < ckpt.optimizer_state.size(); ++i) {
    CHECK(back.optimizer_state[i].data == ckpt.optimizer_state[i].data);
  }
}

TEST_CASE("encoding is deterministic and starts with the magic") {
  Checkpoint ckpt = sample_checkpoint();
  std::vector<uint8_t> a = encode_checkpoint(ckpt);
  std::vector<uint8_t> b = encode_checkpoint(ckpt);
  CHECK(a == b);
  REQUIRE(a.size() > 6);
  CHECK(std::memcmp(a.data(), "ASCM", 4) == 0);
  // Version word follows the magic, little-endian 1.
  CHECK(a[4] == 1);
  CHECK(a[5] == 0);
}

TEST_CASE("file round trip") {
  auto path = (std::filesystem::temp_directory_path() / "ascene_ckpt_rt.bin")
                  .string();
  Checkpoint ckpt = sample_checkpoint();
  save_checkpoint(ckpt, path);
  Checkpoint back = load_checkpoint(path);
  CHECK(back.epoch == ckpt.epoch);
  CHECK(back.params.tensors[0].data == ckpt.params.tensors[0].data);
  std::remove(path.c_str());
}

TEST_CASE("crc32 matches the published check value") {
  // The classic test vector: CRC-32 of "123456789".
  const char* s = "123456789";
  CHECK(crc32(reinterpret_cast<const uint8_t*>(s), 9) == 0xCBF43926u);
  CHECK(crc32(nullptr, 0) == 0x00000000u);
}

TEST_CASE("any flipped byte is caught by the trailer") {
  Checkpoint ckpt = sample_checkpoint();
  std::vector<uint8_t> bytes = encode_checkpoint(ckpt);
  // Probe positions spread over the whole stream, including the CRC itself.
  for (size_t pos = 4; pos < bytes.size(); pos += bytes.size() / 37 + 1) {
    std::vector<uint8_t> bad = bytes;
    bad[pos] ^= 0x01;
    CHECK_THROWS_AS(decode_checkpoint(bad), CorruptCheckpoint);
  }
}

TEST_CASE("truncation and wrong magic are rejected") {
  Checkpoint ckpt = sample_checkpoint();
  std::vector<uint8_t> bytes = encode_checkpoint(ckpt);

  std::vector<uint8_t> truncated(bytes.begin(), bytes.end() - 5);
  CHECK_THROWS_AS(decode_checkpoint(truncated), CorruptCheckpoint);

  std::vector<uint8_t> tiny(bytes.begin(), bytes.begin() + 3);
  CHECK_THROWS_AS(decode_checkpoint(tiny), CorruptCheckpoint);

  std::vector<uint8_t> wrong = bytes;
  wrong[0] = 'X';
  CHECK_THROWS_AS(decode_checkpoint(wrong), CorruptCheckpoint);

  CHECK_THROWS_AS(decode_checkpoint({}), CorruptCheckpoint);
  CHECK_THROWS_AS(load_checkpoint("/nonexistent/ascene.ckpt"), Error);
}

TEST_CASE("loading against a different architecture fails") {
  auto path = (std::filesystem::temp_directory_path() / "ascene_ckpt_arch.bin")
                  .string();
  Checkpoint ckpt = sample_checkpoint();
  save_checkpoint(ckpt, path);

  CHECK_NOTHROW(load_checkpoint(path, ckpt.spec));

  NetworkSpec other = ckpt.spec;
  other.fc1_units = 7;
  CHECK_THROWS_AS(load_checkpoint(path, other), SpecMismatch);
  std::remove(path.c_str());
}

TEST_CASE("empty optimizer state survives the round trip") {
  Checkpoint ckpt = sample_checkpoint();
  ckpt.optimizer_state.clear();
  Checkpoint back = decode_checkpoint(encode_checkpoint(ckpt));
  CHECK(back.optimizer_state.empty());
  CHECK(back.params.tensors.size() == ckpt.params.tensors.size());
}

}  // namespace
}  // namespace nn
}  // namespace ascene
