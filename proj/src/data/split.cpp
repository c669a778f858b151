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

#include "ascene/data/split.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ascene {
namespace data {
namespace {

void validate_ratios(const std::array<double, 3>& ratios) {
  double sum = ratios[0] + ratios[1] + ratios[2];
  for (double r : ratios) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw BadRatios("split ratios must be nonnegative finite reals");
    }
  }
  if (ratios[0] <= 0.0) {
    throw BadRatios("train ratio must be positive");
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "split ratios must sum to 1, got " << sum;
    throw BadRatios(msg.str());
  }
}

template <typename T>
void fisher_yates(std::vector<T>& items, Rng64& rng) {
  for (size_t i = items.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng.uniform_index(i));
    std::swap(items[i - 1], items[j]);
  }
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

SplitAssignment stratified_split(const std::vector<ManifestEntry>& entries,
                                 const std::array<double, 3>& ratios,
                                 uint64_t seed) {
  validate_ratios(ratios);

  // Canonicalize before grouping so enumeration order cannot leak into the
  // shuffle.
  std::vector<ManifestEntry> sorted = entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) {
              return a.path < b.path;
            });

  std::map<std::string, std::vector<ManifestEntry>> by_class;
  for (const auto& e : sorted) {
    by_class[e.label].push_back(e);
  }

  SplitAssignment out;
  out.seed = seed;
  out.ratios = ratios;
  Rng64 base(seed);
  size_t class_index = 0;
  for (auto& [label, members] : by_class) {
    if (members.size() < 3) {
      throw ClassTooSmall("class '" + label + "' has " +
                          std::to_string(members.size()) +
                          " entries; need at least 3 to split");
    }
    Rng64 rng = base.fork(class_index++);
    fisher_yates(members, rng);
    auto n = static_cast<double>(members.size());
    size_t n_train = static_cast<size_t>(std::llround(n * ratios[0]));
    size_t n_train_val =
        static_cast<size_t>(std::llround(n * (ratios[0] + ratios[1])));
    n_train = std::min(n_train, members.size());
    n_train_val = std::clamp(n_train_val, n_train, members.size());
    for (size_t i = 0; i < members.size(); ++i) {
      if (i < n_train) {
        out.train.push_back(members[i]);
      } else if (i < n_train_val) {
        out.validation.push_back(members[i]);
      } else {
        out.test.push_back(members[i]);
      }
    }
  }
  return out;
}

SplitAssignment group_split(const std::vector<ManifestEntry>& entries,
                            const std::array<double, 3>& ratios,
                            uint64_t seed) {
  validate_ratios(ratios);

  std::vector<ManifestEntry> sorted = entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) {
              return a.path < b.path;
            });

  // Empty group keys would otherwise merge unrelated recordings into one
  // mega-group, so such entries stand alone.
  std::map<std::string, std::vector<ManifestEntry>> by_group;
  for (const auto& e : sorted) {
    std::string key = e.group_key.empty() ? "\x01path:" + e.path : e.group_key;
    by_group[key].push_back(e);
  }

  std::vector<std::vector<ManifestEntry>> groups;
  groups.reserve(by_group.size());
  for (auto& [key, members] : by_group) {
    groups.push_back(std::move(members));
  }

  Rng64 rng(seed);
  fisher_yates(groups, rng);

  auto total = static_cast<double>(sorted.size());
  auto target_train = static_cast<size_t>(std::llround(total * ratios[0]));
  auto target_train_val =
      static_cast<size_t>(std::llround(total * (ratios[0] + ratios[1])));

  SplitAssignment out;
  out.seed = seed;
  out.ratios = ratios;
  size_t assigned = 0;
  for (auto& g : groups) {
    auto* part = &out.train;
    if (assigned >= target_train_val) {
      part = &out.test;
    } else if (assigned >= target_train) {
      part = &out.validation;
    }
    assigned += g.size();
    for (auto& e : g) {
      part->push_back(std::move(e));
    }
  }
  return out;
}

std::string format_split(const SplitAssignment& split) {
  std::ostringstream out;
  out << "seed=" << split.seed << " ratios=" << format_double(split.ratios[0])
      << ',' << format_double(split.ratios[1]) << ','
      << format_double(split.ratios[2]) << '\n';
  auto section = [&out](const char* name,
                        const std::vector<ManifestEntry>& part) {
    out << '[' << name << "]\n";
    for (const auto& e : part) {
      out << e.path << '\n';
    }
  };
  section("train", split.train);
  section("val", split.validation);
  section("test", split.test);
  return out.str();
}

void write_split(const SplitAssignment& split, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot open split file for writing: " + path);
  }
  out << format_split(split);
  if (!out) {
    throw Error("failed writing split file: " + path);
  }
}

SplitAssignment parse_split(const std::string& text,
                            const Manifest& manifest) {
  std::unordered_map<std::string, const ManifestEntry*> by_path;
  for (const auto& e : manifest.entries) {
    by_path[e.path] = &e;
  }

  SplitAssignment out;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw Error("split file is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::istringstream header(line);
    std::string seed_kv, ratios_kv;
    header >> seed_kv >> ratios_kv;
    if (seed_kv.rfind("seed=", 0) != 0 || ratios_kv.rfind("ratios=", 0) != 0) {
      throw Error("split file header must be 'seed=<u64> ratios=<r1>,<r2>,<r3>'");
    }
    std::string seed_str = seed_kv.substr(5);
    auto res = std::from_chars(seed_str.data(),
                               seed_str.data() + seed_str.size(), out.seed);
    if (res.ec != std::errc() || res.ptr != seed_str.data() + seed_str.size()) {
      throw Error("split file header has a malformed seed: " + seed_str);
    }
    std::string ratios_str = ratios_kv.substr(7);
    std::istringstream rs(ratios_str);
    std::string tok;
    for (size_t i = 0; i < 3; ++i) {
      if (!std::getline(rs, tok, ',')) {
        throw Error("split file header needs three comma-separated ratios");
      }
      try {
        out.ratios[i] = std::stod(tok);
      } catch (const std::exception&) {
        throw Error("split file header has a malformed ratio: " + tok);
      }
    }
  }

  std::vector<ManifestEntry>* current = nullptr;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == "[train]") {
      current = &out.train;
    } else if (line == "[val]") {
      current = &out.validation;
    } else if (line == "[test]") {
      current = &out.test;
    } else if (line.front() == '[') {
      throw Error("split file has an unknown section: " + line);
    } else {
      if (current == nullptr) {
        throw Error("split file lists a path before any section: " + line);
      }
      auto it = by_path.find(line);
      if (it == by_path.end()) {
        throw Error("split file path not present in manifest: " + line);
      }
      current->push_back(*it->second);
    }
  }
  return out;
}

SplitAssignment read_split(const std::string& path, const Manifest& manifest) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open split file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_split(buf.str(), manifest);
}

}  // namespace data
}  // namespace ascene
