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

#include "ascene/nn/network.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ascene {
namespace nn {
namespace {

constexpr size_t kKernel = 3;

inline size_t offset4(size_t b, size_t c, size_t y, size_t x, size_t channels,
                      size_t height, size_t width) {
  return ((b * channels + c) * height + y) * width + x;
}

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

void NetworkSpec::validate() const {
  if (in_height == 0 || in_width == 0) {
    throw BadNetworkSpec("input height and width must be positive");
  }
  if (conv_channels.empty()) {
    throw BadNetworkSpec("at least one conv block is required");
  }
  for (size_t c : conv_channels) {
    if (c == 0) throw BadNetworkSpec("conv channel counts must be positive");
  }
  if (fc1_units == 0 || fc2_units == 0) {
    throw BadNetworkSpec("fully connected widths must be positive");
  }
  if (n_classes < 2) {
    throw BadNetworkSpec("need at least 2 output classes");
  }
  if (pooled_height() == 0 || pooled_width() == 0) {
    throw BadNetworkSpec(
        "spatial size collapses to zero before the head; fewer conv blocks "
        "or a larger input is needed");
  }
}

std::string NetworkSpec::canonical_string() const {
  std::ostringstream out;
  out << "in=1x" << in_height << 'x' << in_width << ";conv=";
  for (size_t i = 0; i < conv_channels.size(); ++i) {
    if (i > 0) out << ',';
    out << conv_channels[i];
  }
  out << ";fc=" << fc1_units << ',' << fc2_units << ";out=" << n_classes;
  return out.str();
}

uint64_t NetworkSpec::fingerprint() const {
  return fnv1a64(canonical_string());
}

size_t NetworkSpec::pooled_height() const {
  size_t h = in_height;
  for (size_t i = 0; i < conv_channels.size(); ++i) h /= 2;
  return h;
}

size_t NetworkSpec::pooled_width() const {
  size_t w = in_width;
  for (size_t i = 0; i < conv_channels.size(); ++i) w /= 2;
  return w;
}

size_t NetworkSpec::flat_features() const {
  return conv_channels.back() * pooled_height() * pooled_width();
}

bool Parameters::same_shapes(const Parameters& other) const {
  if (tensors.size() != other.tensors.size()) return false;
  for (size_t i = 0; i < tensors.size(); ++i) {
    if (!tensors[i].same_shape(other.tensors[i])) return false;
  }
  return true;
}

Network::Network(NetworkSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
}

size_t Network::n_param_tensors() const {
  return 2 * spec_.conv_channels.size() + 6;
}

Parameters Network::init(uint64_t seed) const {
  Parameters params;
  Rng64 rng(seed);

  auto uniform_fill = [&rng](Tensor& t, size_t fan_in) {
    double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (double& v : t.data) {
      v = rng.uniform_real(-bound, bound);
    }
  };

  size_t in_c = 1;
  for (size_t oc : spec_.conv_channels) {
    Tensor w({oc, in_c, kKernel, kKernel});
    uniform_fill(w, in_c * kKernel * kKernel);
    params.tensors.push_back(std::move(w));
    params.tensors.emplace_back(std::vector<size_t>{oc});  // bias stays zero
    in_c = oc;
  }

  auto fc_layer = [&](size_t units, size_t in_features) {
    Tensor w({units, in_features});
    uniform_fill(w, in_features);
    params.tensors.push_back(std::move(w));
    params.tensors.emplace_back(std::vector<size_t>{units});
  };
  fc_layer(spec_.fc1_units, spec_.flat_features());
  fc_layer(spec_.fc2_units, spec_.fc1_units);
  fc_layer(spec_.n_classes, spec_.fc2_units);
  return params;
}

ForwardCache Network::forward(const Parameters& params, const double* images,
                              size_t batch) const {
  if (batch == 0) {
    throw ShapeMismatch("forward needs a non-empty batch");
  }
  if (params.tensors.size() != n_param_tensors()) {
    throw ShapeMismatch("parameter tensor count does not match the spec");
  }

  ForwardCache cache;
  cache.batch = batch;

  size_t n_blocks = spec_.conv_channels.size();
  size_t in_c = 1;
  size_t h = spec_.in_height;
  size_t w = spec_.in_width;

  Tensor cur({batch, in_c, h, w});
  std::copy(images, images + cur.size(), cur.data.begin());

  for (size_t blk = 0; blk < n_blocks; ++blk) {
    const Tensor& weight = params.tensors[2 * blk];
    const Tensor& bias = params.tensors[2 * blk + 1];
    size_t oc = spec_.conv_channels[blk];
    if (weight.dims != std::vector<size_t>{oc, in_c, kKernel, kKernel}) {
      throw ShapeMismatch("conv weight shape mismatch in block " +
                          std::to_string(blk));
    }

    cache.conv_inputs.push_back(cur);
    Tensor pre({batch, oc, h, w});
    for (size_t b = 0; b < batch; ++b) {
      for (size_t o = 0; o < oc; ++o) {
        double* out_plane = &pre.data[offset4(b, o, 0, 0, oc, h, w)];
        double bv = bias[o];
        for (size_t i = 0; i < h * w; ++i) out_plane[i] = bv;
        for (size_t ic = 0; ic < in_c; ++ic) {
          const double* in_plane = &cur.data[offset4(b, ic, 0, 0, in_c, h, w)];
          for (size_t ky = 0; ky < kKernel; ++ky) {
            ptrdiff_t dy = static_cast<ptrdiff_t>(ky) - 1;
            size_t y0 = dy < 0 ? 1 : 0;
            size_t y1 = dy > 0 ? h - 1 : h;
            for (size_t kx = 0; kx < kKernel; ++kx) {
              ptrdiff_t dx = static_cast<ptrdiff_t>(kx) - 1;
              size_t x0 = dx < 0 ? 1 : 0;
              size_t x1 = dx > 0 ? w - 1 : w;
              double wv =
                  weight.data[((o * in_c + ic) * kKernel + ky) * kKernel + kx];
              for (size_t y = y0; y < y1; ++y) {
                const double* in_row =
                    in_plane + (static_cast<ptrdiff_t>(y) + dy) * w + dx;
                double* out_row = out_plane + y * w;
                for (size_t x = x0; x < x1; ++x) {
                  out_row[x] += wv * in_row[x];
                }
              }
            }
          }
        }
      }
    }

    size_t ph = h / 2;
    size_t pw = w / 2;
    Tensor pooled({batch, oc, ph, pw});
    std::vector<size_t> argmax(pooled.size());
    for (size_t b = 0; b < batch; ++b) {
      for (size_t o = 0; o < oc; ++o) {
        for (size_t y = 0; y < ph; ++y) {
          for (size_t x = 0; x < pw; ++x) {
            size_t best = offset4(b, o, 2 * y, 2 * x, oc, h, w);
            double best_v = pre.data[best];
            const size_t cands[3] = {
                offset4(b, o, 2 * y, 2 * x + 1, oc, h, w),
                offset4(b, o, 2 * y + 1, 2 * x, oc, h, w),
                offset4(b, o, 2 * y + 1, 2 * x + 1, oc, h, w)};
            for (size_t idx : cands) {
              if (pre.data[idx] > best_v) {
                best_v = pre.data[idx];
                best = idx;
              }
            }
            size_t out_idx = offset4(b, o, y, x, oc, ph, pw);
            // ReLU commutes with max, so pooling the pre-activation and
            // clamping once is equivalent to pooling the ReLU output.
            pooled.data[out_idx] = best_v > 0.0 ? best_v : 0.0;
            argmax[out_idx] = best;
          }
        }
      }
    }
    cache.conv_pre.push_back(std::move(pre));
    cache.pool_argmax.push_back(std::move(argmax));

    cur = std::move(pooled);
    in_c = oc;
    h = ph;
    w = pw;
  }

  size_t flat_n = spec_.flat_features();
  if (cur.size() != batch * flat_n) {
    throw ShapeMismatch("flattened feature size mismatch");
  }
  cache.flat = Tensor({batch, flat_n});
  cache.flat.data = cur.data;

  auto fc_forward = [&](const Tensor& input, size_t layer_idx, size_t units,
                        size_t in_features) {
    const Tensor& weight = params.tensors[layer_idx];
    const Tensor& bias = params.tensors[layer_idx + 1];
    if (weight.dims != std::vector<size_t>{units, in_features}) {
      throw ShapeMismatch("fc weight shape mismatch");
    }
    Tensor out({batch, units});
    for (size_t b = 0; b < batch; ++b) {
      const double* in_row = &input.data[b * in_features];
      for (size_t u = 0; u < units; ++u) {
        const double* w_row = &weight.data[u * in_features];
        double acc = bias[u];
        for (size_t k = 0; k < in_features; ++k) {
          acc += w_row[k] * in_row[k];
        }
        out.data[b * units + u] = acc;
      }
    }
    return out;
  };

  size_t base = 2 * n_blocks;
  cache.fc1_pre = fc_forward(cache.flat, base, spec_.fc1_units, flat_n);
  cache.fc1_act = cache.fc1_pre;
  for (double& v : cache.fc1_act.data) v = v > 0.0 ? v : 0.0;

  cache.fc2_pre =
      fc_forward(cache.fc1_act, base + 2, spec_.fc2_units, spec_.fc1_units);
  cache.fc2_act = cache.fc2_pre;
  for (double& v : cache.fc2_act.data) v = v > 0.0 ? v : 0.0;

  cache.logits =
      fc_forward(cache.fc2_act, base + 4, spec_.n_classes, spec_.fc2_units);

  cache.probabilities = Tensor({batch, spec_.n_classes});
  for (size_t b = 0; b < batch; ++b) {
    const double* row = &cache.logits.data[b * spec_.n_classes];
    double mx = row[0];
    for (size_t c = 1; c < spec_.n_classes; ++c) mx = std::max(mx, row[c]);
    double sum = 0.0;
    double* prow = &cache.probabilities.data[b * spec_.n_classes];
    for (size_t c = 0; c < spec_.n_classes; ++c) {
      prow[c] = std::exp(row[c] - mx);
      sum += prow[c];
    }
    for (size_t c = 0; c < spec_.n_classes; ++c) prow[c] /= sum;
  }
  return cache;
}

double Network::loss(const Tensor& probabilities,
                     const std::vector<size_t>& labels) {
  size_t batch = labels.size();
  size_t n_classes = probabilities.dims.back();
  double total = 0.0;
  for (size_t b = 0; b < batch; ++b) {
    double p = probabilities.data[b * n_classes + labels[b]];
    total += -std::log(std::max(p, 1e-12));
  }
  return total / static_cast<double>(batch);
}

Parameters Network::backward(const Parameters& params,
                             const ForwardCache& cache,
                             const std::vector<size_t>& labels) const {
  size_t batch = cache.batch;
  if (labels.size() != batch) {
    throw ShapeMismatch("label count does not match the cached batch");
  }
  size_t n_blocks = spec_.conv_channels.size();
  size_t base = 2 * n_blocks;

  Parameters grads;
  grads.tensors.reserve(params.tensors.size());
  for (const Tensor& t : params.tensors) {
    grads.tensors.emplace_back(t.dims);
  }

  double inv_batch = 1.0 / static_cast<double>(batch);
  Tensor d_logits({batch, spec_.n_classes});
  for (size_t b = 0; b < batch; ++b) {
    for (size_t c = 0; c < spec_.n_classes; ++c) {
      double p = cache.probabilities.data[b * spec_.n_classes + c];
      double target = (c == labels[b]) ? 1.0 : 0.0;
      d_logits.data[b * spec_.n_classes + c] = (p - target) * inv_batch;
    }
  }

  auto fc_backward = [&](const Tensor& d_out, const Tensor& input,
                         size_t layer_idx, size_t units, size_t in_features) {
    const Tensor& weight = params.tensors[layer_idx];
    Tensor& d_weight = grads.tensors[layer_idx];
    Tensor& d_bias = grads.tensors[layer_idx + 1];
    Tensor d_in({batch, in_features});
    for (size_t b = 0; b < batch; ++b) {
      const double* in_row = &input.data[b * in_features];
      double* d_in_row = &d_in.data[b * in_features];
      for (size_t u = 0; u < units; ++u) {
        double g = d_out.data[b * units + u];
        if (g == 0.0) continue;
        d_bias[u] += g;
        const double* w_row = &weight.data[u * in_features];
        double* dw_row = &d_weight.data[u * in_features];
        for (size_t k = 0; k < in_features; ++k) {
          dw_row[k] += g * in_row[k];
          d_in_row[k] += g * w_row[k];
        }
      }
    }
    return d_in;
  };

  Tensor d_fc2_act = fc_backward(d_logits, cache.fc2_act, base + 4,
                                 spec_.n_classes, spec_.fc2_units);
  for (size_t i = 0; i < d_fc2_act.size(); ++i) {
    if (cache.fc2_pre.data[i] <= 0.0) d_fc2_act.data[i] = 0.0;
  }

  Tensor d_fc1_act = fc_backward(d_fc2_act, cache.fc1_act, base + 2,
                                 spec_.fc2_units, spec_.fc1_units);
  for (size_t i = 0; i < d_fc1_act.size(); ++i) {
    if (cache.fc1_pre.data[i] <= 0.0) d_fc1_act.data[i] = 0.0;
  }

  Tensor d_flat = fc_backward(d_fc1_act, cache.flat, base, spec_.fc1_units,
                              spec_.flat_features());

  // d_flat is the gradient at the last pool output; walk the blocks in
  // reverse, routing through argmax and the ReLU mask.
  Tensor d_pool = std::move(d_flat);
  for (size_t blk = n_blocks; blk-- > 0;) {
    const Tensor& pre = cache.conv_pre[blk];
    const Tensor& input = cache.conv_inputs[blk];
    const std::vector<size_t>& argmax = cache.pool_argmax[blk];
    size_t oc = spec_.conv_channels[blk];
    size_t in_c = input.dims[1];
    size_t h = pre.dims[2];
    size_t w = pre.dims[3];

    Tensor d_pre(pre.dims);
    for (size_t i = 0; i < argmax.size(); ++i) {
      size_t src = argmax[i];
      if (pre.data[src] > 0.0) {
        d_pre.data[src] += d_pool.data[i];
      }
    }

    const Tensor& weight = params.tensors[2 * blk];
    Tensor& d_weight = grads.tensors[2 * blk];
    Tensor& d_bias = grads.tensors[2 * blk + 1];
    Tensor d_in(input.dims);

    for (size_t b = 0; b < batch; ++b) {
      for (size_t o = 0; o < oc; ++o) {
        const double* dp_plane = &d_pre.data[offset4(b, o, 0, 0, oc, h, w)];
        double bias_acc = 0.0;
        for (size_t i = 0; i < h * w; ++i) bias_acc += dp_plane[i];
        d_bias[o] += bias_acc;
        for (size_t ic = 0; ic < in_c; ++ic) {
          const double* in_plane =
              &input.data[offset4(b, ic, 0, 0, in_c, h, w)];
          double* din_plane = &d_in.data[offset4(b, ic, 0, 0, in_c, h, w)];
          for (size_t ky = 0; ky < kKernel; ++ky) {
            ptrdiff_t dy = static_cast<ptrdiff_t>(ky) - 1;
            size_t y0 = dy < 0 ? 1 : 0;
            size_t y1 = dy > 0 ? h - 1 : h;
            for (size_t kx = 0; kx < kKernel; ++kx) {
              ptrdiff_t dx = static_cast<ptrdiff_t>(kx) - 1;
              size_t x0 = dx < 0 ? 1 : 0;
              size_t x1 = dx > 0 ? w - 1 : w;
              size_t w_idx =
                  ((o * in_c + ic) * kKernel + ky) * kKernel + kx;
              double wv = weight.data[w_idx];
              double dw_acc = 0.0;
              for (size_t y = y0; y < y1; ++y) {
                const double* in_row =
                    in_plane + (static_cast<ptrdiff_t>(y) + dy) * w + dx;
                double* din_row =
                    din_plane + (static_cast<ptrdiff_t>(y) + dy) * w + dx;
                const double* dp_row = dp_plane + y * w;
                for (size_t x = x0; x < x1; ++x) {
                  dw_acc += dp_row[x] * in_row[x];
                  din_row[x] += wv * dp_row[x];
                }
              }
              d_weight.data[w_idx] += dw_acc;
            }
          }
        }
      }
    }
    d_pool = std::move(d_in);
  }
  return grads;
}

std::vector<std::pair<size_t, double>> Network::predict(
    const Parameters& params, const double* image) const {
  ForwardCache cache = forward(params, image, 1);
  std::vector<std::pair<size_t, double>> ranked;
  ranked.reserve(spec_.n_classes);
  for (size_t c = 0; c < spec_.n_classes; ++c) {
    ranked.emplace_back(c, cache.probabilities.data[c]);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });
  return ranked;
}

}  // namespace nn
}  // namespace ascene
