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

#ifndef ASCENE_NN_TENSOR_H_
#define ASCENE_NN_TENSOR_H_

#include <cstddef>
#include <numeric>
#include <vector>

namespace ascene {
namespace nn {

// Dense row-major tensor of doubles. All training arithmetic is double
// precision so finite-difference checks are meaningful.
struct Tensor {
  std::vector<size_t> dims;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<size_t> shape)
      : dims(std::move(shape)),
        data(std::accumulate(dims.begin(), dims.end(), size_t{1},
                             [](size_t a, size_t b) { return a * b; }),
             0.0) {}

  size_t size() const { return data.size(); }
  double& operator[](size_t i) { return data[i]; }
  double operator[](size_t i) const { return data[i]; }

  bool same_shape(const Tensor& other) const { return dims == other.dims; }

  void fill(double v) { std::fill(data.begin(), data.end(), v); }
};

}  // namespace nn
}  // namespace ascene

#endif  // ASCENE_NN_TENSOR_H_
