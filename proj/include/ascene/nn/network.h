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

#ifndef ASCENE_NN_NETWORK_H_
#define ASCENE_NN_NETWORK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ascene/error.h"
#include "ascene/nn/tensor.h"
#include "ascene/rng.h"

namespace ascene {
namespace nn {

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class BadNetworkSpec : public Error {
 public:
  using Error::Error;
};

// Convolutional classifier: N blocks of {conv 3x3, stride 1, pad 1, ReLU,
// maxpool 2x2 stride 2} followed by fc1-ReLU, fc2-ReLU, fc_out-softmax.
// Pooling floors odd spatial sizes.
struct NetworkSpec {
  size_t in_height = 0;
  size_t in_width = 0;
  std::vector<size_t> conv_channels = {8, 16, 32};
  size_t fc1_units = 256;
  size_t fc2_units = 128;
  size_t n_classes = 0;

  // Throws BadNetworkSpec when any dimension is invalid or the spatial size
  // collapses to zero before the head.
  void validate() const;

  // Stable textual form hashed into the checkpoint fingerprint.
  std::string canonical_string() const;
  uint64_t fingerprint() const;

  size_t pooled_height() const;
  size_t pooled_width() const;
  size_t flat_features() const;
};

// Layer tensors in a fixed order: per conv block weight [oc,ic,3,3] then
// bias [oc]; then fc1/fc2/out weight [units,in] and bias [units].
struct Parameters {
  std::vector<Tensor> tensors;

  bool same_shapes(const Parameters& other) const;
};

// Activations retained by forward() so backward() can replay the stack.
struct ForwardCache {
  size_t batch = 0;
  std::vector<Tensor> conv_inputs;  // input to each conv block
  std::vector<Tensor> conv_pre;     // conv output before ReLU
  std::vector<std::vector<size_t>> pool_argmax;
  Tensor flat;                        // flattened features
  Tensor fc1_pre, fc1_act;
  Tensor fc2_pre, fc2_act;
  Tensor logits;
  Tensor probabilities;
};

class Network {
 public:
  explicit Network(NetworkSpec spec);

  const NetworkSpec& spec() const { return spec_; }

  // Uniform init in [-1/sqrt(fan_in), 1/sqrt(fan_in)] per layer, biases
  // zero. Deterministic given the seed.
  Parameters init(uint64_t seed) const;

  // images: contiguous [batch x 1 x in_height x in_width].
  // Softmax is stabilized by subtracting the row max.
  ForwardCache forward(const Parameters& params, const double* images,
                       size_t batch) const;

  // Mean cross-entropy, probabilities floored at 1e-12.
  static double loss(const Tensor& probabilities,
                     const std::vector<size_t>& labels);

  // Analytic gradients of the mean cross-entropy w.r.t. every parameter.
  Parameters backward(const Parameters& params, const ForwardCache& cache,
                      const std::vector<size_t>& labels) const;

  // Class probabilities sorted descending, ties broken by class index.
  std::vector<std::pair<size_t, double>> predict(const Parameters& params,
                                                 const double* image) const;

  size_t n_param_tensors() const;

 private:
  NetworkSpec spec_;
};

}  // namespace nn
}  // namespace ascene

#endif  // ASCENE_NN_NETWORK_H_
