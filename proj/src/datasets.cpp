#include "tsetlin/datasets.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "tsetlin/errors.hpp"
#include "tsetlin/rng.hpp"

namespace tsetlin {

BinaryDataset::BinaryDataset(std::size_t inputs, std::size_t classes)
    : inputs_(inputs), classes_(classes) {
  if (inputs == 0) throw ConfigError("dataset needs at least one input");
  if (classes < 2) throw ConfigError("dataset needs at least two classes");
}

void BinaryDataset::add_row(std::span<const std::uint8_t> x, std::uint32_t label) {
  if (x.size() != inputs_) {
    throw ContractError("row width " + std::to_string(x.size()) + " does not match " +
                        std::to_string(inputs_));
  }
  if (label >= classes_) throw ContractError("label " + std::to_string(label) + " out of range");
  for (auto b : x) {
    if (b > 1) throw ContractError("row bits must be 0 or 1");
  }
  bits_.insert(bits_.end(), x.begin(), x.end());
  labels_.push_back(label);
}

BinaryDataset BinaryDataset::subset(std::span<const std::size_t> indices) const {
  BinaryDataset out(inputs_, classes_);
  out.bits_.reserve(indices.size() * inputs_);
  out.labels_.reserve(indices.size());
  for (auto i : indices) {
    const auto r = row(i);
    out.bits_.insert(out.bits_.end(), r.begin(), r.end());
    out.labels_.push_back(labels_.at(i));
  }
  return out;
}

RealMatrix RealMatrix::select_rows(std::span<const std::size_t> indices) const {
  RealMatrix out{indices.size(), cols, {}};
  out.values.reserve(indices.size() * cols);
  for (auto r : indices) {
    out.values.insert(out.values.end(), values.begin() + static_cast<std::ptrdiff_t>(r * cols),
                      values.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
  }
  return out;
}

BinaryDataset gen_noisy_xor(std::size_t count, std::uint64_t seed, const NoisyXorOptions& options) {
  const auto [a, b] = options.informative;
  if (a == b || a >= options.inputs || b >= options.inputs) {
    throw ConfigError("informative XOR inputs must be distinct and inside the input width");
  }
  if (!(options.noise >= 0.0 && options.noise < 0.5)) {
    throw ConfigError("noise must lie in [0, 0.5)");
  }
  const Rng rng = Rng(seed).split(0x584F52);  // "XOR"
  BinaryDataset data(options.inputs, 2);
  std::vector<std::uint8_t> x(options.inputs);
  const std::uint64_t stride = options.inputs + 1;
  for (std::size_t r = 0; r < count; ++r) {
    for (std::size_t k = 0; k < options.inputs; ++k) {
      x[k] = rng.uniform(r * stride + k) < 0.5 ? 1 : 0;
    }
    std::uint32_t y = x[a] ^ x[b];
    if (rng.fires(r * stride + options.inputs, options.noise)) y ^= 1U;
    data.add_row(x, y);
  }
  return data;
}

BitMatrix binarize_threshold(const RealMatrix& values, double threshold) {
  BitMatrix out{values.rows, values.cols, {}};
  out.bits.reserve(values.values.size());
  for (double v : values.values) out.bits.push_back(v > threshold ? 1 : 0);
  return out;
}

Quantizer Quantizer::fit(const RealMatrix& train, unsigned bits_per_feature) {
  if (bits_per_feature < 1 || bits_per_feature > 16) {
    throw ConfigError("bits per feature must be in [1, 16]");
  }
  if (train.rows == 0) throw ConfigError("cannot fit a quantizer on zero rows");
  Quantizer q;
  q.bits_ = bits_per_feature;
  q.lo_.assign(train.cols, 0.0);
  q.hi_.assign(train.cols, 0.0);
  for (std::size_t c = 0; c < train.cols; ++c) {
    double lo = train.at(0, c);
    double hi = lo;
    for (std::size_t r = 1; r < train.rows; ++r) {
      lo = std::min(lo, train.at(r, c));
      hi = std::max(hi, train.at(r, c));
    }
    q.lo_[c] = lo;
    q.hi_[c] = hi;
  }
  return q;
}

std::uint32_t Quantizer::level(std::size_t feature, double value) const {
  const std::uint32_t levels = 1U << bits_;
  const double range = hi_[feature] - lo_[feature];
  if (!(range > 0.0)) return 0;
  const double scaled = std::floor((value - lo_[feature]) / range * levels);
  if (scaled <= 0.0) return 0;
  return std::min<std::uint32_t>(static_cast<std::uint32_t>(scaled), levels - 1);
}

BitMatrix Quantizer::encode(const RealMatrix& values) const {
  if (values.cols != lo_.size()) throw ContractError("feature count differs from fitted data");
  BitMatrix out{values.rows, output_width(), {}};
  out.bits.reserve(values.rows * out.cols);
  for (std::size_t r = 0; r < values.rows; ++r) {
    for (std::size_t c = 0; c < values.cols; ++c) {
      const std::uint32_t lv = level(c, values.at(r, c));
      for (unsigned b = bits_; b-- > 0;) out.bits.push_back((lv >> b) & 1U);
    }
  }
  return out;
}

BitMatrix quantize_bits(const RealMatrix& values, unsigned bits_per_feature) {
  return Quantizer::fit(values, bits_per_feature).encode(values);
}

BinaryDataset make_dataset(const BitMatrix& x, std::span<const std::uint32_t> labels,
                           std::size_t classes) {
  if (labels.size() != x.rows) throw ContractError("label count differs from row count");
  BinaryDataset data(x.cols, classes);
  for (std::size_t r = 0; r < x.rows; ++r) data.add_row(x.row(r), labels[r]);
  return data;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(std::size_t n,
                                                                            double train_fraction,
                                                                            std::uint64_t seed) {
  if (!(train_fraction >= 0.0 && train_fraction <= 1.0)) {
    throw ConfigError("train fraction must lie in [0, 1]");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const Rng rng = Rng(seed).split(0x53504C4954);  // "SPLIT"
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i, i)]);
  }
  const auto cut = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(cut), order.end());
  order.resize(cut);
  return {std::move(order), std::move(test)};
}

std::pair<BinaryDataset, BinaryDataset> split(const BinaryDataset& data, double train_fraction,
                                              std::uint64_t seed) {
  const auto [train, test] = split_indices(data.size(), train_fraction, seed);
  return {data.subset(train), data.subset(test)};
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_number(std::string_view token, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    parse_fail(line, std::string("bad ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i <= line.size()) {
    if (sep == ' ') {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size()) break;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != sep && !(sep == ' ' && line[j] == '\t')) ++j;
    auto f = line.substr(i, j - i);
    while (!f.empty() && (f.front() == ' ' || f.front() == '\r')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\r')) f.remove_suffix(1);
    out.push_back(f);
    i = j + 1;
  }
  return out;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

}  // namespace

BinaryDataset read_dataset(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!blank(line)) break;
  }
  if (blank(line)) throw ParseError("dataset is empty: missing header");
  const auto header = fields(line, ' ');
  if (header.size() != 3) parse_fail(lineno, "header must be 'inputs classes count'");
  const auto inputs = parse_number<std::size_t>(header[0], lineno, "input width");
  const auto classes = parse_number<std::size_t>(header[1], lineno, "class count");
  const auto count = parse_number<std::size_t>(header[2], lineno, "row count");
  if (inputs == 0) parse_fail(lineno, "input width must be positive");
  if (classes < 2) parse_fail(lineno, "need at least two classes");

  BinaryDataset data(inputs, classes);
  std::vector<std::uint8_t> x(inputs);
  while (data.size() < count && std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    const auto tok = fields(line, ' ');
    if (tok.size() != inputs + 1) {
      parse_fail(lineno, "expected " + std::to_string(inputs + 1) + " fields, got " +
                             std::to_string(tok.size()));
    }
    for (std::size_t k = 0; k < inputs; ++k) {
      if (tok[k] == "0") {
        x[k] = 0;
      } else if (tok[k] == "1") {
        x[k] = 1;
      } else {
        parse_fail(lineno, "bit must be 0 or 1, got '" + std::string(tok[k]) + "'");
      }
    }
    const auto label = parse_number<std::uint32_t>(tok[inputs], lineno, "label");
    if (label >= classes) parse_fail(lineno, "label " + std::to_string(label) + " out of range");
    data.add_row(x, label);
  }
  if (data.size() != count) {
    throw ParseError("header promises " + std::to_string(count) + " rows, found " +
                     std::to_string(data.size()));
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!blank(line)) parse_fail(lineno, "trailing data after the last row");
  }
  return data;
}

void write_dataset(const BinaryDataset& data, std::ostream& out) {
  out << data.inputs() << ' ' << data.classes() << ' ' << data.size() << '\n';
  std::string line;
  for (std::size_t r = 0; r < data.size(); ++r) {
    line.clear();
    for (auto b : data.row(r)) {
      line.push_back(static_cast<char>('0' + b));
      line.push_back(' ');
    }
    line += std::to_string(data.label(r));
    line.push_back('\n');
    out << line;
  }
}

BinaryDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset " + path.string());
  try {
    return read_dataset(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_dataset(const BinaryDataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset " + path.string());
  write_dataset(data, out);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

RealDataset read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> raw_labels;
  std::string line;
  std::size_t lineno = 0;
  std::size_t cols = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    const auto tok = fields(line, ',');
    if (tok.size() < 2) parse_fail(lineno, "need at least one feature and a label");
    if (first) {
      first = false;
      double probe{};
      const auto f0 = tok[0];
      const auto [ptr, ec] = std::from_chars(f0.data(), f0.data() + f0.size(), probe);
      if (ec != std::errc() || ptr != f0.data() + f0.size()) continue;  // header
    }
    if (cols == 0) cols = tok.size() - 1;
    if (tok.size() - 1 != cols) {
      parse_fail(lineno, "expected " + std::to_string(cols) + " features, got " +
                             std::to_string(tok.size() - 1));
    }
    std::vector<double> r(cols);
    for (std::size_t c = 0; c < cols; ++c) r[c] = parse_number<double>(tok[c], lineno, "value");
    rows.push_back(std::move(r));
    raw_labels.emplace_back(tok.back());
  }
  if (rows.empty()) throw ParseError("csv has no data rows");

  RealDataset out;
  out.features.rows = rows.size();
  out.features.cols = cols;
  out.features.values.reserve(rows.size() * cols);
  for (const auto& r : rows) out.features.values.insert(out.features.values.end(), r.begin(), r.end());

  const bool numeric = std::all_of(raw_labels.begin(), raw_labels.end(), [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  });
  if (numeric) {
    std::uint32_t top = 0;
    for (const auto& s : raw_labels) {
      const auto v = static_cast<std::uint32_t>(std::stoul(s));
      out.labels.push_back(v);
      top = std::max(top, v);
    }
    out.classes = std::max<std::size_t>(2, top + 1);
  } else {
    std::map<std::string, std::uint32_t> index;
    for (const auto& s : raw_labels) index.emplace(s, 0);
    std::uint32_t next = 0;
    for (auto& [name, id] : index) {
      id = next++;
      out.label_names.push_back(name);
    }
    for (const auto& s : raw_labels) out.labels.push_back(index.at(s));
    out.classes = std::max<std::size_t>(2, index.size());
  }
  return out;
}

RealDataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open csv " + path.string());
  try {
    return read_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

namespace {

std::uint32_t read_be32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  if (!in) throw ParseError("truncated IDX header");
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) |
         std::uint32_t{b[3]};
}

}  // namespace

RealDataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels) {
  std::ifstream img(images, std::ios::binary);
  std::ifstream lab(labels, std::ios::binary);
  if (!img) throw std::runtime_error("cannot open " + images.string());
  if (!lab) throw std::runtime_error("cannot open " + labels.string());
  if (read_be32(img) != 0x00000803) throw ParseError(images.string() + ": not an IDX image file");
  if (read_be32(lab) != 0x00000801) throw ParseError(labels.string() + ": not an IDX label file");
  const std::size_t count = read_be32(img);
  const std::size_t rows = read_be32(img);
  const std::size_t cols = read_be32(img);
  if (read_be32(lab) != count) throw ParseError("IDX image and label counts differ");

  RealDataset out;
  out.features.rows = count;
  out.features.cols = rows * cols;
  std::vector<unsigned char> pixels(count * rows * cols);
  img.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (!img) throw ParseError(images.string() + ": truncated pixel data");
  out.features.values.reserve(pixels.size());
  for (auto p : pixels) out.features.values.push_back(static_cast<double>(p) / 255.0);

  std::vector<unsigned char> ys(count);
  lab.read(reinterpret_cast<char*>(ys.data()), static_cast<std::streamsize>(count));
  if (!lab) throw ParseError(labels.string() + ": truncated label data");
  std::uint32_t top = 0;
  for (auto y : ys) {
    out.labels.push_back(y);
    top = std::max<std::uint32_t>(top, y);
  }
  out.classes = std::max<std::size_t>(2, top + 1);
  return out;
}

}  // namespace tsetlin
