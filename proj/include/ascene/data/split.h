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

#ifndef ASCENE_DATA_SPLIT_H_
#define ASCENE_DATA_SPLIT_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ascene/data/manifest.h"
#include "ascene/error.h"
#include "ascene/rng.h"

namespace ascene {
namespace data {

class ClassTooSmall : public Error {
 public:
  using Error::Error;
};

class BadRatios : public Error {
 public:
  using Error::Error;
};

struct SplitAssignment {
  std::vector<ManifestEntry> train;
  std::vector<ManifestEntry> validation;
  std::vector<ManifestEntry> test;
  uint64_t seed = 0;
  std::array<double, 3> ratios = {0.70, 0.15, 0.15};
};

// Stratified three-way split. Entries are first sorted by path so the result
// does not depend on filesystem enumeration order, then each class is
// shuffled by a seeded Fisher-Yates pass and cut at round(n*r_train) and
// round(n*(r_train + r_val)).
//
// Requires positive ratios summing to 1 within 1e-9 and >= 3 entries per
// class. Throws BadRatios / ClassTooSmall.
SplitAssignment stratified_split(const std::vector<ManifestEntry>& entries,
                                 const std::array<double, 3>& ratios,
                                 uint64_t seed);

// Leakage-aware variant: every group (entries sharing group_key) lands in a
// single part. Groups are shuffled as units and parts are filled to the
// entry-count targets, so per-class ratios are only approximate. Entries
// with an empty group_key form singleton groups.
SplitAssignment group_split(const std::vector<ManifestEntry>& entries,
                            const std::array<double, 3>& ratios,
                            uint64_t seed);

// Split file: a header line `seed=<u64> ratios=<r1>,<r2>,<r3>` followed by
// [train] / [val] / [test] sections with one path per line.
std::string format_split(const SplitAssignment& split);
void write_split(const SplitAssignment& split, const std::string& path);

// Rebuilds the assignment from a split file, resolving each listed path back
// to its manifest entry. Throws Error on unknown paths or bad framing.
SplitAssignment parse_split(const std::string& text, const Manifest& manifest);
SplitAssignment read_split(const std::string& path, const Manifest& manifest);

}  // namespace data
}  // namespace ascene

#endif  // ASCENE_DATA_SPLIT_H_
