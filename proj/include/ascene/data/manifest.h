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

#ifndef ASCENE_DATA_MANIFEST_H_
#define ASCENE_DATA_MANIFEST_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ascene/error.h"

namespace ascene {
namespace data {

class MissingColumn : public Error {
 public:
  using Error::Error;
};

class UnknownLabelCharset : public Error {
 public:
  using Error::Error;
};

class DuplicatePath : public Error {
 public:
  using Error::Error;
};

struct ManifestEntry {
  std::string path;
  std::string label;
  std::string group_key;  // recording location/device; may be empty
};

// Class names in ascending lexicographic (byte) order; a class's index is its
// position. The fixed ordering rule keeps indices reproducible across runs
// and languages.
class ClassIndexMap {
 public:
  ClassIndexMap() = default;
  explicit ClassIndexMap(std::vector<std::string> sorted_names);

  size_t size() const { return names_.size(); }
  const std::string& name(size_t index) const { return names_[index]; }
  const std::vector<std::string>& names() const { return names_; }
  // Throws Error for a label outside the class set.
  size_t index_of(const std::string& name) const;

  // FNV-1a over the newline-joined names; used to detect train/eval
  // class-map drift.
  uint64_t fingerprint() const;

  bool operator==(const ClassIndexMap& other) const = default;

 private:
  std::vector<std::string> names_;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  ClassIndexMap classes;
};

// Parses the manifest CSV (header `path,label,group`; UTF-8; group may be
// empty). The class map is built from the distinct labels in the file.
Manifest parse_manifest(const std::string& csv_text);

Manifest read_manifest(const std::string& path);

}  // namespace data
}  // namespace ascene

#endif  // ASCENE_DATA_MANIFEST_H_
