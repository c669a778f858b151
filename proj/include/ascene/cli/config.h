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

#ifndef ASCENE_CLI_CONFIG_H_
#define ASCENE_CLI_CONFIG_H_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ascene/augment/augment.h"
#include "ascene/dsp/log_freq.h"
#include "ascene/dsp/pre_emphasis.h"
#include "ascene/dsp/stft.h"
#include "ascene/error.h"
#include "ascene/nn/train.h"

namespace ascene {
namespace cli {

class BadConfig : public Error {
 public:
  using Error::Error;
};

// Raw sectioned key=value document: `[section]` headers, `key = value`
// lines, `#` comments. Later duplicates override earlier ones.
using ConfigDoc = std::map<std::string, std::map<std::string, std::string>>;

ConfigDoc parse_config_doc(const std::string& text, const std::string& source);

// Every knob of the pipeline in one place. Defaults reproduce the standard
// run; a config file and command-line flags override them in that order.
struct PipelineConfig {
  // [audio]
  uint32_t target_sample_rate = 22050;

  // [pre_emphasis]
  dsp::PreEmphasisConfig pre_emphasis;

  // [stft]
  dsp::StftConfig stft;

  // [log_freq]
  dsp::LogFreqConfig log_freq;

  // [augment]
  bool augment_enabled = false;
  augment::TimeStretchPolicy stretch;
  augment::FreqMaskPolicy freq_mask;

  // [split]
  std::array<double, 3> split_ratios = {0.70, 0.15, 0.15};
  bool group_split = false;

  // [model]
  std::vector<size_t> conv_channels = {8, 16, 32};
  size_t fc1_units = 256;
  size_t fc2_units = 128;

  // [train]
  nn::TrainConfig train;

  // Applies one parsed document on top of the current values. Unknown
  // sections or keys raise BadConfig naming the source and field.
  void apply(const ConfigDoc& doc, const std::string& source);

  // Cross-field checks; throws BadConfig naming the offending field.
  void validate() const;
};

PipelineConfig load_pipeline_config(const std::string& path);

}  // namespace cli
}  // namespace ascene

#endif  // ASCENE_CLI_CONFIG_H_
