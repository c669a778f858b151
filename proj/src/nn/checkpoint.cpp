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

#include "ascene/nn/checkpoint.h"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ascene {
namespace nn {
namespace {

constexpr char kMagic[4] = {'A', 'S', 'C', 'M'};
constexpr uint16_t kFormatVersion = 1;

std::array<uint32_t, 256> make_crc_table() {
  std::array<uint32_t, 256> table{};
  for (uint32_t i = 0; i < 256; ++i) {
    uint32_t c = i;
    for (int k = 0; k < 8; ++k) {
      c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
    }
    table[i] = c;
  }
  return table;
}

class Writer {
 public:
  void u16(uint16_t v) { put_le(v, 2); }
  void u32(uint32_t v) { put_le(v, 4); }
  void u64(uint64_t v) { put_le(v, 8); }
  void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }
  void raw(const void* p, size_t n) {
    const auto* bytes = static_cast<const uint8_t*>(p);
    buf_.insert(buf_.end(), bytes, bytes + n);
  }
  void str(const std::string& s) {
    u32(static_cast<uint32_t>(s.size()));
    raw(s.data(), s.size());
  }
  void tensor(const Tensor& t) {
    u32(static_cast<uint32_t>(t.dims.size()));
    for (size_t d : t.dims) u32(static_cast<uint32_t>(d));
    for (double v : t.data) f64(v);
  }
  std::vector<uint8_t>& bytes() { return buf_; }

 private:
  void put_le(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) {
      buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
  }
  std::vector<uint8_t> buf_;
};

class Reader {
 public:
  Reader(const uint8_t* data, size_t len) : data_(data), len_(len) {}

  uint16_t u16() { return static_cast<uint16_t>(get_le(2)); }
  uint32_t u32() { return static_cast<uint32_t>(get_le(4)); }
  uint64_t u64() { return get_le(8); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    uint32_t n = u32();
    need(n);
    std::string s(reinterpret_cast<const char*>(data_ + pos_), n);
    pos_ += n;
    return s;
  }
  Tensor tensor() {
    uint32_t rank = u32();
    if (rank > 8) {
      throw CorruptCheckpoint("tensor rank " + std::to_string(rank) +
                              " is implausible");
    }
    std::vector<size_t> dims(rank);
    size_t total = 1;
    for (auto& d : dims) {
      d = u32();
      if (d == 0 || total > (size_t{1} << 32) / d) {
        throw CorruptCheckpoint("tensor dimensions overflow");
      }
      total *= d;
    }
    Tensor t;
    t.dims = std::move(dims);
    t.data.resize(total);
    for (double& v : t.data) v = f64();
    return t;
  }
  size_t pos() const { return pos_; }

 private:
  void need(size_t n) {
    if (len_ - pos_ < n) {
      throw CorruptCheckpoint("checkpoint is truncated");
    }
  }
  uint64_t get_le(int n) {
    need(static_cast<size_t>(n));
    uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<uint64_t>(data_[pos_ + i]) << (8 * i);
    }
    pos_ += n;
    return v;
  }
  const uint8_t* data_;
  size_t len_;
  size_t pos_ = 0;
};

// Rebuilds a NetworkSpec from its canonical string so the file is
// self-describing. Format: in=1xHxW;conv=c1,c2;fc=f1,f2;out=n
NetworkSpec parse_canonical_spec(const std::string& s) {
  NetworkSpec spec;
  spec.conv_channels.clear();
  std::istringstream in(s);
  std::string field;
  bool saw_in = false, saw_conv = false, saw_fc = false, saw_out = false;
  while (std::getline(in, field, ';')) {
    auto eq = field.find('=');
    if (eq == std::string::npos) {
      throw CorruptCheckpoint("malformed spec string: " + s);
    }
    std::string key = field.substr(0, eq);
    std::string value = field.substr(eq + 1);
    std::istringstream vs(value);
    if (key == "in") {
      char x1 = 0, x2 = 0;
      size_t ch = 0;
      if (!(vs >> ch >> x1 >> spec.in_height >> x2 >> spec.in_width) ||
          ch != 1 || x1 != 'x' || x2 != 'x') {
        throw CorruptCheckpoint("malformed input shape in spec: " + value);
      }
      saw_in = true;
    } else if (key == "conv") {
      std::string tok;
      while (std::getline(vs, tok, ',')) {
        spec.conv_channels.push_back(std::stoul(tok));
      }
      saw_conv = true;
    } else if (key == "fc") {
      char comma = 0;
      if (!(vs >> spec.fc1_units >> comma >> spec.fc2_units) || comma != ',') {
        throw CorruptCheckpoint("malformed fc widths in spec: " + value);
      }
      saw_fc = true;
    } else if (key == "out") {
      if (!(vs >> spec.n_classes)) {
        throw CorruptCheckpoint("malformed class count in spec: " + value);
      }
      saw_out = true;
    }
  }
  if (!saw_in || !saw_conv || !saw_fc || !saw_out) {
    throw CorruptCheckpoint("spec string missing fields: " + s);
  }
  return spec;
}

}  // namespace

uint32_t crc32(const uint8_t* data, size_t len) {
  static const std::array<uint32_t, 256> table = make_crc_table();
  uint32_t c = 0xFFFFFFFFu;
  for (size_t i = 0; i < len; ++i) {
    c = table[(c ^ data[i]) & 0xFF] ^ (c >> 8);
  }
  return c ^ 0xFFFFFFFFu;
}

std::vector<uint8_t> encode_checkpoint(const Checkpoint& ckpt) {
  Writer w;
  w.raw(kMagic, 4);
  w.u16(kFormatVersion);
  w.u64(ckpt.spec.fingerprint());
  w.str(ckpt.spec.canonical_string());
  w.u32(static_cast<uint32_t>(ckpt.classes.size()));
  for (size_t i = 0; i < ckpt.classes.size(); ++i) {
    w.str(ckpt.classes.name(i));
  }
  w.f64(ckpt.stats.mean);
  w.f64(ckpt.stats.std_dev);
  w.u64(ckpt.epoch);
  w.f64(ckpt.best_val_accuracy);
  w.u64(ckpt.rng_state);
  w.u32(static_cast<uint32_t>(ckpt.params.tensors.size()));
  for (const Tensor& t : ckpt.params.tensors) w.tensor(t);
  w.u32(static_cast<uint32_t>(ckpt.optimizer_state.size()));
  for (const Tensor& t : ckpt.optimizer_state) w.tensor(t);
  uint32_t crc = crc32(w.bytes().data(), w.bytes().size());
  w.u32(crc);
  return std::move(w.bytes());
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  std::vector<uint8_t> bytes = encode_checkpoint(ckpt);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot open checkpoint for writing: " + path);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error("failed writing checkpoint: " + path);
  }
}

Checkpoint decode_checkpoint(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < 4 + 2 + 8 + 4) {
    throw CorruptCheckpoint("checkpoint is too short");
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw CorruptCheckpoint("bad magic; not a checkpoint file");
  }
  uint32_t stored_crc = 0;
  std::memcpy(&stored_crc, bytes.data() + bytes.size() - 4, 4);
  if constexpr (std::endian::native == std::endian::big) {
    stored_crc = __builtin_bswap32(stored_crc);
  }
  uint32_t computed = crc32(bytes.data(), bytes.size() - 4);
  if (stored_crc != computed) {
    throw CorruptCheckpoint("CRC mismatch; checkpoint is corrupt");
  }

  Reader body(bytes.data() + 4, bytes.size() - 8);

  Checkpoint ckpt;
  uint16_t version = body.u16();
  if (version != kFormatVersion) {
    throw CorruptCheckpoint("unsupported checkpoint format version " +
                            std::to_string(version));
  }
  uint64_t fingerprint = body.u64();
  std::string spec_string = body.str();
  ckpt.spec = parse_canonical_spec(spec_string);
  if (ckpt.spec.fingerprint() != fingerprint) {
    throw SpecMismatch(
        "stored fingerprint disagrees with the stored architecture");
  }
  uint32_t n_classes = body.u32();
  std::vector<std::string> names;
  names.reserve(n_classes);
  for (uint32_t i = 0; i < n_classes; ++i) {
    names.push_back(body.str());
  }
  ckpt.classes = data::ClassIndexMap(std::move(names));
  ckpt.stats.mean = body.f64();
  ckpt.stats.std_dev = body.f64();
  ckpt.epoch = body.u64();
  ckpt.best_val_accuracy = body.f64();
  ckpt.rng_state = body.u64();
  uint32_t n_params = body.u32();
  ckpt.params.tensors.reserve(n_params);
  for (uint32_t i = 0; i < n_params; ++i) {
    ckpt.params.tensors.push_back(body.tensor());
  }
  uint32_t n_opt = body.u32();
  ckpt.optimizer_state.reserve(n_opt);
  for (uint32_t i = 0; i < n_opt; ++i) {
    ckpt.optimizer_state.push_back(body.tensor());
  }
  return ckpt;
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open checkpoint: " + path);
  }
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

Checkpoint load_checkpoint(const std::string& path,
                           const NetworkSpec& expected_spec) {
  Checkpoint ckpt = load_checkpoint(path);
  if (ckpt.spec.fingerprint() != expected_spec.fingerprint()) {
    throw SpecMismatch("checkpoint was trained with architecture '" +
                       ckpt.spec.canonical_string() + "' but '" +
                       expected_spec.canonical_string() + "' was expected");
  }
  return ckpt;
}

}  // namespace nn
}  // namespace ascene
