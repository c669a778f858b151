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

#include "ascene/data/manifest.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace ascene {
namespace data {
namespace {

// Splits one CSV record on commas. Fields in this format never contain
// commas or quotes, so no quoting rules apply.
std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

bool is_valid_utf8(const std::string& s) {
  size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    size_t extra;
    if (c < 0x80) {
      extra = 0;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      if (c < 0xC2) return false;  // overlong
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      if (c > 0xF4) return false;  // above U+10FFFF
    } else {
      return false;
    }
    if (i + extra >= s.size()) return false;
    for (size_t k = 1; k <= extra; ++k) {
      unsigned char cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
    }
    if (extra == 2 && c == 0xE0 &&
        static_cast<unsigned char>(s[i + 1]) < 0xA0) {
      return false;  // overlong
    }
    if (extra == 2 && c == 0xED &&
        static_cast<unsigned char>(s[i + 1]) >= 0xA0) {
      return false;  // UTF-16 surrogate range
    }
    if (extra == 3 && c == 0xF0 &&
        static_cast<unsigned char>(s[i + 1]) < 0x90) {
      return false;  // overlong
    }
    if (extra == 3 && c == 0xF4 &&
        static_cast<unsigned char>(s[i + 1]) > 0x8F) {
      return false;  // above U+10FFFF
    }
    i += extra + 1;
  }
  return true;
}

}  // namespace

ClassIndexMap::ClassIndexMap(std::vector<std::string> sorted_names)
    : names_(std::move(sorted_names)) {
  if (!std::is_sorted(names_.begin(), names_.end())) {
    throw Error("class names must be in ascending lexicographic order");
  }
}

size_t ClassIndexMap::index_of(const std::string& name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) {
    throw Error("unknown class label: " + name);
  }
  return static_cast<size_t>(it - names_.begin());
}

uint64_t ClassIndexMap::fingerprint() const {
  uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](char c) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  };
  for (size_t i = 0; i < names_.size(); ++i) {
    if (i > 0) mix('\n');
    for (char c : names_[i]) mix(c);
  }
  return h;
}

Manifest parse_manifest(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) {
    throw MissingColumn("manifest is empty; expected header path,label,group");
  }
  auto header = split_fields(strip_cr(line));
  const std::vector<std::string> expected = {"path", "label", "group"};
  for (const auto& col : expected) {
    if (std::find(header.begin(), header.end(), col) == header.end()) {
      throw MissingColumn("manifest header missing required column: " + col);
    }
  }
  size_t path_col = 0, label_col = 0, group_col = 0;
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "path") path_col = i;
    if (header[i] == "label") label_col = i;
    if (header[i] == "group") group_col = i;
  }

  Manifest m;
  std::unordered_set<std::string> seen_paths;
  std::set<std::string> labels;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() <= std::max({path_col, label_col, group_col})) {
      throw MissingColumn("manifest line " + std::to_string(line_no) +
                          " has too few fields");
    }
    ManifestEntry e;
    e.path = fields[path_col];
    e.label = fields[label_col];
    e.group_key = fields[group_col];
    if (e.path.empty()) {
      throw MissingColumn("manifest line " + std::to_string(line_no) +
                          " has an empty path");
    }
    if (e.label.empty()) {
      throw MissingColumn("manifest line " + std::to_string(line_no) +
                          " has an empty label");
    }
    if (!is_valid_utf8(e.label)) {
      throw UnknownLabelCharset("manifest line " + std::to_string(line_no) +
                                " label is not valid UTF-8");
    }
    if (!seen_paths.insert(e.path).second) {
      throw DuplicatePath("duplicate manifest path: " + e.path);
    }
    labels.insert(e.label);
    m.entries.push_back(std::move(e));
  }
  m.classes =
      ClassIndexMap(std::vector<std::string>(labels.begin(), labels.end()));
  return m;
}

Manifest read_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open manifest: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

}  // namespace data
}  // namespace ascene
