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

#include "ascene/eval/eval.h"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace ascene {
namespace eval {

uint64_t ConfusionMatrix::row_sum(size_t true_class) const {
  uint64_t sum = 0;
  for (size_t j = 0; j < n_classes(); ++j) {
    sum += at(true_class, j);
  }
  return sum;
}

uint64_t ConfusionMatrix::trace() const {
  uint64_t sum = 0;
  for (size_t i = 0; i < n_classes(); ++i) {
    sum += at(i, i);
  }
  return sum;
}

uint64_t ConfusionMatrix::total() const {
  return std::accumulate(counts.begin(), counts.end(), uint64_t{0});
}

ConfusionMatrix tally(const std::vector<size_t>& truths,
                      const std::vector<size_t>& predictions,
                      const data::ClassIndexMap& classes) {
  if (truths.size() != predictions.size()) {
    throw Error("truth and prediction counts differ");
  }
  ConfusionMatrix cm;
  cm.class_map = classes;
  cm.counts.assign(classes.size() * classes.size(), 0);
  for (size_t i = 0; i < truths.size(); ++i) {
    if (truths[i] >= classes.size() || predictions[i] >= classes.size()) {
      throw Error("class index out of range in evaluation");
    }
    ++cm.at(truths[i], predictions[i]);
  }
  return cm;
}

EvalReport report_from_confusion(ConfusionMatrix confusion) {
  EvalReport report;
  report.sample_count = confusion.total();
  if (report.sample_count == 0) {
    throw EmptyTestSet("cannot evaluate on zero samples");
  }
  report.overall_accuracy = static_cast<double>(confusion.trace()) /
                            static_cast<double>(report.sample_count);
  report.per_class_accuracy.resize(confusion.n_classes());
  for (size_t i = 0; i < confusion.n_classes(); ++i) {
    uint64_t support = confusion.row_sum(i);
    if (support == 0) {
      report.per_class_accuracy[i] = std::nullopt;
    } else {
      report.per_class_accuracy[i] = static_cast<double>(confusion.at(i, i)) /
                                     static_cast<double>(support);
    }
  }
  report.confusion = std::move(confusion);
  return report;
}

EvalReport evaluate(const nn::Checkpoint& ckpt, data::BatchStream& test,
                    const data::ClassIndexMap& classes,
                    std::vector<ProbabilityRow>* probability_rows) {
  if (classes.fingerprint() != ckpt.classes.fingerprint()) {
    throw ClassMapMismatch(
        "evaluation class map does not match the checkpoint's");
  }
  if (test.size() == 0) {
    throw EmptyTestSet("test split is empty");
  }

  nn::Network net(ckpt.spec);
  std::vector<size_t> truths;
  std::vector<size_t> predictions;

  test.start_eval_epoch();
  data::Batch batch;
  size_t n_classes = classes.size();
  while (test.next(batch)) {
    nn::ForwardCache out =
        net.forward(ckpt.params, batch.images.data(), batch.batch);
    for (size_t b = 0; b < batch.batch; ++b) {
      const double* row = &out.probabilities.data[b * n_classes];
      size_t arg = 0;
      for (size_t c = 1; c < n_classes; ++c) {
        if (row[c] > row[arg]) arg = c;
      }
      truths.push_back(batch.labels[b]);
      predictions.push_back(arg);
      if (probability_rows != nullptr) {
        ProbabilityRow pr;
        pr.path = batch.paths[b];
        pr.true_label = classes.name(batch.labels[b]);
        pr.probabilities.assign(row, row + n_classes);
        probability_rows->push_back(std::move(pr));
      }
    }
  }
  return report_from_confusion(tally(truths, predictions, classes));
}

namespace {

std::string export_json(const EvalReport& report) {
  nlohmann::json j;
  j["accuracy"] = report.overall_accuracy;
  j["sample_count"] = report.sample_count;
  j["classes"] = report.confusion.class_map.names();
  nlohmann::json per_class = nlohmann::json::array();
  for (const auto& acc : report.per_class_accuracy) {
    if (acc.has_value()) {
      per_class.push_back(*acc);
    } else {
      per_class.push_back(nullptr);
    }
  }
  j["per_class_accuracy"] = per_class;
  nlohmann::json confusion = nlohmann::json::array();
  for (size_t i = 0; i < report.confusion.n_classes(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (size_t k = 0; k < report.confusion.n_classes(); ++k) {
      row.push_back(report.confusion.at(i, k));
    }
    confusion.push_back(row);
  }
  j["confusion"] = confusion;
  return j.dump(2) + "\n";
}

std::string export_csv(const EvalReport& report) {
  std::ostringstream out;
  const auto& cm = report.confusion;
  out << "true\\predicted";
  for (size_t j = 0; j < cm.n_classes(); ++j) {
    out << ',' << cm.class_map.name(j);
  }
  out << '\n';
  for (size_t i = 0; i < cm.n_classes(); ++i) {
    out << cm.class_map.name(i);
    for (size_t j = 0; j < cm.n_classes(); ++j) {
      out << ',' << cm.at(i, j);
    }
    out << '\n';
  }
  return out.str();
}

std::string export_text_table(const EvalReport& report) {
  const auto& cm = report.confusion;
  size_t n = cm.n_classes();

  size_t label_w = 4;  // "true"
  for (size_t i = 0; i < n; ++i) {
    label_w = std::max(label_w, cm.class_map.name(i).size());
  }
  std::vector<size_t> col_w(n);
  for (size_t j = 0; j < n; ++j) {
    col_w[j] = cm.class_map.name(j).size();
    for (size_t i = 0; i < n; ++i) {
      col_w[j] = std::max(col_w[j], std::to_string(cm.at(i, j)).size());
    }
  }

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(label_w)) << "true";
  for (size_t j = 0; j < n; ++j) {
    out << "  " << std::right << std::setw(static_cast<int>(col_w[j]))
        << cm.class_map.name(j);
  }
  out << '\n';
  for (size_t i = 0; i < n; ++i) {
    out << std::left << std::setw(static_cast<int>(label_w))
        << cm.class_map.name(i);
    for (size_t j = 0; j < n; ++j) {
      out << "  " << std::right << std::setw(static_cast<int>(col_w[j]))
          << cm.at(i, j);
    }
    out << '\n';
  }
  out << '\n';
  out << "samples:  " << report.sample_count << '\n';
  out << "accuracy: " << std::fixed << std::setprecision(4)
      << report.overall_accuracy << '\n';
  out.unsetf(std::ios::fixed);
  out << std::setprecision(4);
  for (size_t i = 0; i < n; ++i) {
    out << "  " << cm.class_map.name(i) << ": ";
    if (report.per_class_accuracy[i].has_value()) {
      out << std::fixed << std::setprecision(4)
          << *report.per_class_accuracy[i];
      out.unsetf(std::ios::fixed);
    } else {
      out << "n/a (no samples)";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string export_report(const EvalReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson:
      return export_json(report);
    case ReportFormat::kCsv:
      return export_csv(report);
    case ReportFormat::kTextTable:
      return export_text_table(report);
  }
  throw Error("unknown report format");
}

std::string format_probability_csv(const data::ClassIndexMap& classes,
                                   const std::vector<ProbabilityRow>& rows) {
  std::ostringstream out;
  out << "path,true_label";
  for (size_t c = 0; c < classes.size(); ++c) {
    out << ',' << classes.name(c);
  }
  out << '\n';
  out << std::setprecision(17);
  for (const auto& row : rows) {
    out << row.path << ',' << row.true_label;
    for (double p : row.probabilities) {
      out << ',' << p;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace eval
}  // namespace ascene
