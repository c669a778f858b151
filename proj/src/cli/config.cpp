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

#include "ascene/cli/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ascene {
namespace cli {
namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& value, const std::string& where) {
  try {
    size_t consumed = 0;
    double v = std::stod(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw BadConfig(where + ": expected a number, got '" + value + "'");
  }
}

uint64_t parse_u64(const std::string& value, const std::string& where) {
  uint64_t v = 0;
  auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw BadConfig(where + ": expected an unsigned integer, got '" + value +
                    "'");
  }
  return v;
}

bool parse_bool(const std::string& value, const std::string& where) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw BadConfig(where + ": expected true/false, got '" + value + "'");
}

std::vector<size_t> parse_size_list(const std::string& value,
                                    const std::string& where) {
  std::vector<size_t> out;
  std::istringstream in(value);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    out.push_back(static_cast<size_t>(parse_u64(trim(tok), where)));
  }
  if (out.empty()) {
    throw BadConfig(where + ": expected a comma-separated list, got '" +
                    value + "'");
  }
  return out;
}

}  // namespace

ConfigDoc parse_config_doc(const std::string& text,
                           const std::string& source) {
  ConfigDoc doc;
  std::istringstream in(text);
  std::string line;
  std::string section;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string where = source + ":" + std::to_string(line_no);
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw BadConfig(where + ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw BadConfig(where + ": empty section name");
      }
      doc[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw BadConfig(where + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw BadConfig(where + ": empty key");
    }
    if (section.empty()) {
      throw BadConfig(where + ": key '" + key + "' appears before a section");
    }
    doc[section][key] = value;
  }
  return doc;
}

void PipelineConfig::apply(const ConfigDoc& doc, const std::string& source) {
  for (const auto& [section, kv] : doc) {
    for (const auto& [key, value] : kv) {
      std::string where = source + " [" + section + "] " + key;
      if (section == "audio") {
        if (key == "target_sample_rate") {
          target_sample_rate =
              static_cast<uint32_t>(parse_u64(value, where));
        } else {
          throw BadConfig(where + ": unknown key");
        }
      } else if (section == "pre_emphasis") {
        if (key == "alpha") {
          pre_emphasis.alpha = parse_double(value, where);
        } else {
          throw BadConfig(where + ": unknown key");
        }
      } else if (section == "stft") {
        if (key == "window_size") {
          stft.window_size = static_cast<size_t>(parse_u64(value, where));
        } else if (key == "hop_length") {
          stft.hop = static_cast<size_t>(parse_u64(value, where));
        } else if (key == "window") {
          if (value == "hann") {
            stft.window = dsp::Window::kHann;
          } else if (value == "rectangular") {
            stft.window = dsp::Window::kRectangular;
          } else {
            throw BadConfig(where + ": unknown window '" + value + "'");
          }
        } else {
          throw BadConfig(where + ": unknown key");
        }
      } else if (section == "log_freq") {
        if (key == "f_min") {
          log_freq.f_min = parse_double(value, where);
        } else if (key == "bins_per_octave") {
          log_freq.bins_per_octave =
              static_cast<size_t>(parse_u64(value, where));
        } else if (key == "n_octaves") {
          log_freq.n_octaves = static_cast<size_t>(parse_u64(value, where));
        } else {
          throw BadConfig(where + ": unknown key");
        }
      } else if (section == "augment") {
        if (key == "enabled") {
          augment_enabled = parse_bool(value, where);
        } else if (key == "rate_min") {
          stretch.rate_min = parse_double(value, where);
        } else if (key == "rate_max") {
          stretch.rate_max = parse_double(value, where);
        } else if (key == "max_width") {
          freq_mask.max_width = static_cast<size_t>(parse_u64(value, where));
        } else if (key == "n_masks") {
          freq_mask.n_masks = static_cast<size_t>(parse_u64(value, where));
        } else if (key == "fill") {
          if (value == "zero") {
            freq_mask.fill = augment::MaskFill::kZero;
          } else if (value == "spec_min") {
            freq_mask.fill = augment::MaskFill::kSpecMin;
          } else {
            throw BadConfig(where + ": unknown fill '" + value + "'");
          }
        } else {
          throw BadConfig(where + ": unknown key");
        }
      } else if (section == "split") {
        if (key == "ratios") {
          std::istringstream rs(value);
          std::string tok;
          for (size_t i = 0; i < 3; ++i) {
            if (!std::getline(rs, tok, ',')) {
              throw BadConfig(where + ": expected three ratios");
            }
            split_ratios[i] = parse_double(trim(tok), where);
          }
        } else if (key == "group_split") {
          group_split = parse_bool(value, where);
        } else {
          throw BadConfig(where + ": unknown key");
        }
      } else if (section == "model") {
        if (key == "conv_channels") {
          conv_channels = parse_size_list(value, where);
        } else if (key == "fc1_units") {
          fc1_units = static_cast<size_t>(parse_u64(value, where));
        } else if (key == "fc2_units") {
          fc2_units = static_cast<size_t>(parse_u64(value, where));
        } else {
          throw BadConfig(where + ": unknown key");
        }
      } else if (section == "train") {
        if (key == "learning_rate") {
          train.learning_rate = parse_double(value, where);
        } else if (key == "batch_size") {
          train.batch_size = static_cast<size_t>(parse_u64(value, where));
        } else if (key == "max_epochs") {
          train.max_epochs = static_cast<size_t>(parse_u64(value, where));
        } else if (key == "patience") {
          train.patience = static_cast<size_t>(parse_u64(value, where));
        } else if (key == "seed") {
          train.seed = parse_u64(value, where);
        } else if (key == "optimizer") {
          if (value == "sgd") {
            train.optimizer = nn::Optimizer::kSgd;
          } else if (value == "sgd_momentum") {
            train.optimizer = nn::Optimizer::kSgdMomentum;
          } else {
            throw BadConfig(where + ": unknown optimizer '" + value + "'");
          }
        } else if (key == "momentum") {
          train.momentum = parse_double(value, where);
        } else {
          throw BadConfig(where + ": unknown key");
        }
      } else {
        throw BadConfig(source + ": unknown section [" + section + "]");
      }
    }
  }
}

void PipelineConfig::validate() const {
  if (target_sample_rate == 0) {
    throw BadConfig("[audio] target_sample_rate must be positive");
  }
  if (!(pre_emphasis.alpha >= 0.0 && pre_emphasis.alpha < 1.0)) {
    throw BadConfig("[pre_emphasis] alpha must lie in [0, 1)");
  }
  if (stft.window_size < 2) {
    throw BadConfig("[stft] window_size must be at least 2");
  }
  if (stft.hop == 0 || stft.hop > stft.window_size) {
    throw BadConfig("[stft] hop_length must lie in [1, window_size]");
  }
  if (!(log_freq.f_min > 0.0)) {
    throw BadConfig("[log_freq] f_min must be positive");
  }
  if (log_freq.bins_per_octave == 0 || log_freq.n_octaves == 0) {
    throw BadConfig("[log_freq] bins_per_octave and n_octaves must be positive");
  }
  if (augment_enabled) {
    if (!(stretch.rate_min >= 0.25 && stretch.rate_max <= 4.0 &&
          stretch.rate_min <= stretch.rate_max)) {
      throw BadConfig("[augment] stretch rates must satisfy "
                      "0.25 <= rate_min <= rate_max <= 4.0");
    }
    if (freq_mask.max_width == 0) {
      throw BadConfig("[augment] max_width must be positive");
    }
  }
  double ratio_sum = split_ratios[0] + split_ratios[1] + split_ratios[2];
  if (std::fabs(ratio_sum - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "[split] ratios must sum to 1, got " << ratio_sum;
    throw BadConfig(msg.str());
  }
  if (conv_channels.empty()) {
    throw BadConfig("[model] conv_channels must name at least one block");
  }
  for (size_t c : conv_channels) {
    if (c == 0) throw BadConfig("[model] conv_channels must be positive");
  }
  if (fc1_units == 0 || fc2_units == 0) {
    throw BadConfig("[model] fc widths must be positive");
  }
  try {
    train.validate();
  } catch (const Error& e) {
    throw BadConfig(std::string("[train] ") + e.what());
  }
}

PipelineConfig load_pipeline_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw BadConfig("cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  PipelineConfig cfg;
  cfg.apply(parse_config_doc(buf.str(), path), path);
  cfg.validate();
  return cfg;
}

}  // namespace cli
}  // namespace ascene
