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
#include <vector>

#include "ascene/rng.h"
#include "doctest.h"

namespace ascene {
namespace nn {
namespace {

// Plain reference forward pass, written with none of the production loop
// structure: per-tap bounds checks instead of range hoisting, ReLU applied
// before pooling instead of folded into it.
struct Reference {
  const NetworkSpec& spec;
  const Parameters& params;

  std::vector<double> conv_block(const std::vector<double>& in, size_t in_c,
                                 size_t h, size_t w, size_t blk) const {
    const Tensor& weight = params.tensors[2 * blk];
    const Tensor& bias = params.tensors[2 * blk + 1];
    size_t oc = spec.conv_channels[blk];

    std::vector<double> act(oc * h * w);
    for (size_t o = 0; o < oc; ++o) {
      for (size_t y = 0; y < h; ++y) {
        for (size_t x = 0; x < w; ++x) {
          double acc = bias[o];
          for (size_t ic = 0; ic < in_c; ++ic) {
            for (size_t ky = 0; ky < 3; ++ky) {
              for (size_t kx = 0; kx < 3; ++kx) {
                ptrdiff_t sy = static_cast<ptrdiff_t>(y + ky) - 1;
                ptrdiff_t sx = static_cast<ptrdiff_t>(x + kx) - 1;
                if (sy < 0 || sy >= static_cast<ptrdiff_t>(h) || sx < 0 ||
                    sx >= static_cast<ptrdiff_t>(w)) {
                  continue;
                }
                acc += weight.data[((o * in_c + ic) * 3 + ky) * 3 + kx] *
                       in[(ic * h + static_cast<size_t>(sy)) * w +
                          static_cast<size_t>(sx)];
              }
            }
          }
          act[(o * h + y) * w + x] = std::max(acc, 0.0);
        }
      }
    }

    size_t ph = h / 2, pw = w / 2;
    std::vector<double> pooled(oc * ph * pw);
    for (size_t o = 0; o < oc; ++o) {
      for (size_t y = 0; y < ph; ++y) {
        for (size_t x = 0; x < pw; ++x) {
          double m = act[(o * h + 2 * y) * w + 2 * x];
          m = std::max(m, act[(o * h + 2 * y) * w + 2 * x + 1]);
          m = std::max(m, act[(o * h + 2 * y + 1) * w + 2 * x]);
          m = std::max(m, act[(o * h + 2 * y + 1) * w + 2 * x + 1]);
          pooled[(o * ph + y) * pw + x] = m;
        }
      }
    }
    return pooled;
  }

  std::vector<double> fc(const std::vector<double>& in, size_t layer_idx,
                         bool relu) const {
    const Tensor& weight = params.tensors[layer_idx];
    const Tensor& bias = params.tensors[layer_idx + 1];
    size_t units = weight.dims[0];
    size_t in_features = weight.dims[1];
    std::vector<double> out(units);
    for (size_t u = 0; u < units; ++u) {
      double acc = bias[u];
      for (size_t k = 0; k < in_features; ++k) {
        acc += weight.data[u * in_features + k] * in[k];
      }
      out[u] = relu ? std::max(acc, 0.0) : acc;
    }
    return out;
  }

  // One image in, one probability row out.
  std::vector<double> probabilities(const double* image) const {
    std::vector<double> cur(image, image + spec.in_height * spec.in_width);
    size_t in_c = 1, h = spec.in_height, w = spec.in_width;
    for (size_t blk = 0; blk < spec.conv_channels.size(); ++blk) {
      cur = conv_block(cur, in_c, h, w, blk);
      in_c = spec.conv_channels[blk];
      h /= 2;
      w /= 2;
    }
    size_t base = 2 * spec.conv_channels.size();
    cur = fc(cur, base, true);
    cur = fc(cur, base + 2, true);
    cur = fc(cur, base + 4, false);

    double mx = *std::max_element(cur.begin(), cur.end());
    double sum = 0.0;
    for (double& v : cur) {
      v = std::exp(v - mx);
      sum += v;
    }
    for (double& v : cur) v /= sum;
    return cur;
  }
};

NetworkSpec tiny_spec() {
  NetworkSpec spec;
  spec.in_height = 6;
  spec.in_width = 6;
  spec.conv_channels = {2, 3};
  spec.fc1_units = 5;
  spec.fc2_units = 4;
  spec.n_classes = 3;
  return spec;
}

std::vector<double> random_images(size_t count, size_t pixels, uint64_t seed) {
  Rng64 rng(seed);
  std::vector<double> images(count * pixels);
  for (double& v : images) v = rng.uniform_real(-1.0, 1.0);
  return images;
}

TEST_CASE("spec metadata: canonical string, pooled sizes, flat features") {
  NetworkSpec spec;
  spec.in_height = 192;
  spec.in_width = 40;
  spec.n_classes = 10;
  CHECK(spec.canonical_string() == "in=1x192x40;conv=8,16,32;fc=256,128;out=10");
  CHECK(spec.pooled_height() == 24);
  CHECK(spec.pooled_width() == 5);
  CHECK(spec.flat_features() == 32 * 24 * 5);
  CHECK_NOTHROW(spec.validate());

  CHECK(spec.fingerprint() != tiny_spec().fingerprint());
  NetworkSpec same = spec;
  CHECK(spec.fingerprint() == same.fingerprint());
}

TEST_CASE("invalid specs are rejected") {
  NetworkSpec spec = tiny_spec();
  spec.n_classes = 1;
  CHECK_THROWS_AS(spec.validate(), BadNetworkSpec);

  spec = tiny_spec();
  spec.in_height = 0;
  CHECK_THROWS_AS(spec.validate(), BadNetworkSpec);

  spec = tiny_spec();
  spec.conv_channels = {2, 2, 2, 2};  // 6 -> 3 -> 1 -> 0 collapses
  CHECK_THROWS_AS(spec.validate(), BadNetworkSpec);

  spec = tiny_spec();
  spec.conv_channels.clear();
  CHECK_THROWS_AS(spec.validate(), BadNetworkSpec);
}

TEST_CASE("init obeys the fan-in bounds, zero biases, and the seed") {
  NetworkSpec spec;
  spec.in_height = 32;
  spec.in_width = 32;
  spec.n_classes = 10;
  Network net(spec);
  Parameters params = net.init(7);
  REQUIRE(params.tensors.size() == net.n_param_tensors());

  // Conv biases sit at odd indices below 2*n_blocks, fc biases after each fc
  // weight; all must be exactly zero.
  for (size_t i : {size_t{1}, size_t{3}, size_t{5}, size_t{7}, size_t{9},
                   size_t{11}}) {
    for (double v : params.tensors[i].data) {
      CHECK(v == 0.0);
    }
  }

  auto check_bounds = [](const Tensor& t, size_t fan_in) {
    double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (double v : t.data) {
      CHECK(std::abs(v) <= bound);
    }
  };
  check_bounds(params.tensors[0], 9);        // conv1: 1*3*3
  check_bounds(params.tensors[2], 8 * 9);    // conv2: 8*3*3
  check_bounds(params.tensors[4], 16 * 9);   // conv3: 16*3*3
  size_t flat = spec.flat_features();
  check_bounds(params.tensors[6], flat);     // fc1
  check_bounds(params.tensors[8], 256);      // fc2
  check_bounds(params.tensors[10], 128);     // out

  // Uniform on [-b, b] has mean 0 and standard deviation b/sqrt(3); the fc1
  // weight is large enough for tight sample estimates.
  const Tensor& fc1 = params.tensors[6];
  double mean = 0.0;
  for (double v : fc1.data) mean += v;
  mean /= static_cast<double>(fc1.size());
  double var = 0.0;
  for (double v : fc1.data) var += (v - mean) * (v - mean);
  var /= static_cast<double>(fc1.size());
  double bound = 1.0 / std::sqrt(static_cast<double>(flat));
  double mean_sigma = bound / std::sqrt(3.0 * static_cast<double>(fc1.size()));
  CHECK(std::abs(mean) < 4.0 * mean_sigma);
  CHECK(std::sqrt(var) ==
        doctest::Approx(bound / std::sqrt(3.0)).epsilon(0.02));

  Parameters again = net.init(7);
  for (size_t i = 0; i < params.tensors.size(); ++i) {
    CHECK(params.tensors[i].data == again.tensors[i].data);
  }
  Parameters other = net.init(8);
  CHECK(params.tensors[0].data != other.tensors[0].data);
}

TEST_CASE("forward agrees with the naive reference network") {
  NetworkSpec spec = tiny_spec();
  Network net(spec);
  Parameters params = net.init(100);
  size_t pixels = spec.in_height * spec.in_width;
  std::vector<double> images = random_images(2, pixels, 101);

  ForwardCache cache = net.forward(params, images.data(), 2);
  REQUIRE(cache.probabilities.dims == std::vector<size_t>{2, 3});

  Reference ref{spec, params};
  for (size_t b = 0; b < 2; ++b) {
    std::vector<double> expect = ref.probabilities(&images[b * pixels]);
    double row_sum = 0.0;
    for (size_t c = 0; c < 3; ++c) {
      double got = cache.probabilities.data[b * 3 + c];
      CHECK(got == doctest::Approx(expect[c]).epsilon(1e-9));
      CHECK(got > 0.0);
      row_sum += got;
    }
    CHECK(row_sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("items in a batch do not influence each other") {
  NetworkSpec spec = tiny_spec();
  Network net(spec);
  Parameters params = net.init(200);
  size_t pixels = spec.in_height * spec.in_width;
  std::vector<double> images = random_images(3, pixels, 201);

  ForwardCache batched = net.forward(params, images.data(), 3);
  for (size_t b = 0; b < 3; ++b) {
    ForwardCache single = net.forward(params, &images[b * pixels], 1);
    for (size_t c = 0; c < 3; ++c) {
      CHECK(batched.probabilities.data[b * 3 + c] ==
            single.probabilities.data[c]);
    }
  }
}

TEST_CASE("mean cross-entropy matches the hand-computed example") {
  Tensor probs({2, 2});
  probs.data = {0.5, 0.5, 0.75, 0.25};
  double expect = (std::log(2.0) + std::log(4.0)) / 2.0;
  CHECK(Network::loss(probs, {0, 1}) ==
        doctest::Approx(expect).epsilon(1e-12));
  CHECK(Network::loss(probs, {0, 1}) == doctest::Approx(1.0397).epsilon(1e-4));
}

TEST_CASE("loss floors vanishing probabilities") {
  Tensor probs({1, 2});
  probs.data = {1.0, 0.0};
  CHECK(Network::loss(probs, {1}) ==
        doctest::Approx(-std::log(1e-12)).epsilon(1e-12));
}

TEST_CASE("analytic gradients pass a full finite-difference sweep") {
  NetworkSpec spec;
  spec.in_height = 8;
  spec.in_width = 8;
  spec.conv_channels = {3};
  spec.fc1_units = 6;
  spec.fc2_units = 5;
  spec.n_classes = 3;
  Network net(spec);
  Parameters params = net.init(300);
  std::vector<double> images = random_images(2, 64, 301);
  std::vector<size_t> labels = {0, 2};

  ForwardCache cache = net.forward(params, images.data(), 2);
  Parameters grads = net.backward(params, cache, labels);

  const double eps = 1e-4;
  double worst = 0.0;
  for (size_t t = 0; t < params.tensors.size(); ++t) {
    for (size_t i = 0; i < params.tensors[t].size(); ++i) {
      Parameters probe = params;
      probe.tensors[t].data[i] += eps;
      double up = Network::loss(
          net.forward(probe, images.data(), 2).probabilities, labels);
      probe.tensors[t].data[i] -= 2.0 * eps;
      double down = Network::loss(
          net.forward(probe, images.data(), 2).probabilities, labels);
      double numeric = (up - down) / (2.0 * eps);
      double analytic = grads.tensors[t].data[i];
      double rel = std::abs(numeric - analytic) /
                   std::max(1e-6, std::abs(numeric) + std::abs(analytic));
      worst = std::max(worst, rel);
    }
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("gradient of an uninvolved class pushes probabilities down") {
  // Sanity direction check: one SGD step against the analytic gradient must
  // reduce the loss.
  NetworkSpec spec = tiny_spec();
  Network net(spec);
  Parameters params = net.init(400);
  std::vector<double> images = random_images(4, 36, 401);
  std::vector<size_t> labels = {0, 1, 2, 0};

  ForwardCache cache = net.forward(params, images.data(), 4);
  double before = Network::loss(cache.probabilities, labels);
  Parameters grads = net.backward(params, cache, labels);
  for (size_t t = 0; t < params.tensors.size(); ++t) {
    for (size_t i = 0; i < params.tensors[t].size(); ++i) {
      params.tensors[t].data[i] -= 0.05 * grads.tensors[t].data[i];
    }
  }
  double after = Network::loss(
      net.forward(params, images.data(), 4).probabilities, labels);
  CHECK(after < before);
}

TEST_CASE("predict ranks descending and breaks ties by class index") {
  NetworkSpec spec = tiny_spec();
  Network net(spec);
  Parameters params = net.init(500);
  std::vector<double> image = random_images(1, 36, 501);

  auto ranked = net.predict(params, image.data());
  REQUIRE(ranked.size() == 3);
  double sum = 0.0;
  for (size_t i = 1; i < ranked.size(); ++i) {
    CHECK(ranked[i - 1].second >= ranked[i].second);
  }
  for (const auto& [c, p] : ranked) sum += p;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  // All-zero parameters give exactly tied probabilities, so the ranking
  // must fall back to ascending class indices.
  Parameters zeros = params;
  for (Tensor& t : zeros.tensors) t.fill(0.0);
  auto tied = net.predict(zeros, image.data());
  for (size_t i = 0; i < tied.size(); ++i) {
    CHECK(tied[i].first == i);
    CHECK(tied[i].second == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("forward rejects wrong tensor counts and empty batches") {
  NetworkSpec spec = tiny_spec();
  Network net(spec);
  Parameters params = net.init(600);
  std::vector<double> image = random_images(1, 36, 601);

  CHECK_THROWS_AS(net.forward(params, image.data(), 0), ShapeMismatch);

  Parameters short_params = params;
  short_params.tensors.pop_back();
  CHECK_THROWS_AS(net.forward(short_params, image.data(), 1), ShapeMismatch);

  Parameters wrong = params;
  wrong.tensors[0] = Tensor({2, 2, 3, 3});
  CHECK_THROWS_AS(net.forward(wrong, image.data(), 1), ShapeMismatch);
}

TEST_CASE("backward validates the label count") {
  NetworkSpec spec = tiny_spec();
  Network net(spec);
  Parameters params = net.init(700);
  std::vector<double> images = random_images(2, 36, 701);
  ForwardCache cache = net.forward(params, images.data(), 2);
  CHECK_THROWS_AS(net.backward(params, cache, {0}), ShapeMismatch);
}

}  // namespace
}  // namespace nn
}  // namespace ascene
