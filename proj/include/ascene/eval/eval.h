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

#ifndef ASCENE_EVAL_EVAL_H_
#define ASCENE_EVAL_EVAL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ascene/data/batch.h"
#include "ascene/data/manifest.h"
#include "ascene/error.h"
#include "ascene/nn/checkpoint.h"

namespace ascene {
namespace eval {

class ClassMapMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyTestSet : public Error {
 public:
  using Error::Error;
};

// Rows are true classes, columns are predicted classes.
struct ConfusionMatrix {
  std::vector<uint64_t> counts;  // flat n x n
  data::ClassIndexMap class_map;

  size_t n_classes() const { return class_map.size(); }
  uint64_t at(size_t true_class, size_t predicted) const {
    return counts[true_class * n_classes() + predicted];
  }
  uint64_t& at(size_t true_class, size_t predicted) {
    return counts[true_class * n_classes() + predicted];
  }
  uint64_t row_sum(size_t true_class) const;
  uint64_t trace() const;
  uint64_t total() const;
};

struct EvalReport {
  double overall_accuracy = 0.0;  // trace/total
  // Row-normalized diagonal; nullopt for classes with no test samples.
  std::vector<std::optional<double>> per_class_accuracy;
  ConfusionMatrix confusion;
  uint64_t sample_count = 0;
};

enum class ReportFormat {
  kJson,
  kCsv,
  kTextTable,
};

// One probability vector per evaluated sample, in evaluation order.
struct ProbabilityRow {
  std::string path;
  std::string true_label;
  std::vector<double> probabilities;
};

ConfusionMatrix tally(const std::vector<size_t>& truths,
                      const std::vector<size_t>& predictions,
                      const data::ClassIndexMap& classes);

EvalReport report_from_confusion(ConfusionMatrix confusion);

// Single deterministic pass over the test stream. Argmax ties resolve to
// the lowest class index. The provided class map must fingerprint-match the
// one the checkpoint was trained with (ClassMapMismatch otherwise). When
// probability_rows is non-null it receives one row per sample.
EvalReport evaluate(const nn::Checkpoint& ckpt, data::BatchStream& test,
                    const data::ClassIndexMap& classes,
                    std::vector<ProbabilityRow>* probability_rows = nullptr);

// JSON: { "accuracy", "sample_count", "classes", "per_class_accuracy",
// "confusion" }. CSV: confusion matrix with a class-name header row and
// column. TextTable: aligned matrix plus summary lines.
std::string export_report(const EvalReport& report, ReportFormat format);

// Header `path,true_label,<class_0>,...`; one row per prediction.
std::string format_probability_csv(const data::ClassIndexMap& classes,
                                   const std::vector<ProbabilityRow>& rows);

}  // namespace eval
}  // namespace ascene

#endif  // ASCENE_EVAL_EVAL_H_
