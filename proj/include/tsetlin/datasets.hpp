#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tsetlin {

/// Rows of o bits with a class label.
class BinaryDataset {
 public:
  BinaryDataset(std::size_t inputs, std::size_t classes);

  [[nodiscard]] std::size_t inputs() const noexcept { return inputs_; }
  [[nodiscard]] std::size_t classes() const noexcept { return classes_; }
  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] bool empty() const noexcept { return labels_.empty(); }

  [[nodiscard]] std::span<const std::uint8_t> row(std::size_t i) const noexcept {
    return std::span<const std::uint8_t>(bits_).subspan(i * inputs_, inputs_);
  }
  [[nodiscard]] std::uint32_t label(std::size_t i) const noexcept { return labels_[i]; }
  [[nodiscard]] std::span<const std::uint32_t> labels() const noexcept { return labels_; }

  // Throws ContractError on width, bit, or label violations.
  void add_row(std::span<const std::uint8_t> x, std::uint32_t label);

  [[nodiscard]] BinaryDataset subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const BinaryDataset&, const BinaryDataset&) = default;

 private:
  std::size_t inputs_;
  std::size_t classes_;
  std::vector<std::uint8_t> bits_;
  std::vector<std::uint32_t> labels_;
};

/// Row-major real matrix.
struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  [[nodiscard]] double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  [[nodiscard]] RealMatrix select_rows(std::span<const std::size_t> indices) const;
};

/// Row-major bit matrix.
struct BitMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> bits;

  [[nodiscard]] std::span<const std::uint8_t> row(std::size_t r) const {
    return std::span<const std::uint8_t>(bits).subspan(r * cols, cols);
  }
};

/// Real-valued features with labels, as read from CSV or IDX files.
struct RealDataset {
  RealMatrix features;
  std::vector<std::uint32_t> labels;
  std::size_t classes = 0;
  std::vector<std::string> label_names;  // empty when labels were numeric
};

struct NoisyXorOptions {
  std::size_t inputs = 12;
  double noise = 0.4;
  std::pair<std::size_t, std::size_t> informative{0, 1};  // 0-based
};

// Uniform random bits; label = XOR of the informative bits, flipped with
// probability `noise`. Deterministic in `seed`.
[[nodiscard]] BinaryDataset gen_noisy_xor(std::size_t count, std::uint64_t seed,
                                          const NoisyXorOptions& options = {});

// value > threshold -> 1, otherwise 0.
[[nodiscard]] BitMatrix binarize_threshold(const RealMatrix& values, double threshold = 0.3);

/// Per-feature min-max scaling into 2^b levels, emitted as b-bit big-endian
/// codes concatenated feature by feature. Ranges come from the data passed
/// to `fit` (the training split); values outside clamp to the end levels.
class Quantizer {
 public:
  static Quantizer fit(const RealMatrix& train, unsigned bits_per_feature);

  [[nodiscard]] BitMatrix encode(const RealMatrix& values) const;
  [[nodiscard]] std::uint32_t level(std::size_t feature, double value) const;
  [[nodiscard]] std::size_t output_width() const noexcept { return lo_.size() * bits_; }

 private:
  unsigned bits_ = 1;
  std::vector<double> lo_;
  std::vector<double> hi_;
};

[[nodiscard]] BitMatrix quantize_bits(const RealMatrix& values, unsigned bits_per_feature);

[[nodiscard]] BinaryDataset make_dataset(const BitMatrix& x, std::span<const std::uint32_t> labels,
                                         std::size_t classes);

// Seeded shuffle of 0..n-1 split into a prefix of round(fraction * n) rows
// and the rest.
[[nodiscard]] std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, double train_fraction, std::uint64_t seed);

[[nodiscard]] std::pair<BinaryDataset, BinaryDataset> split(const BinaryDataset& data,
                                                            double train_fraction,
                                                            std::uint64_t seed);

// ASCII format: header "o n_classes count", then one row per line with o
// space-separated bits followed by the label.
[[nodiscard]] BinaryDataset read_dataset(std::istream& in);
void write_dataset(const BinaryDataset& data, std::ostream& out);
[[nodiscard]] BinaryDataset load_dataset(const std::filesystem::path& path);
void save_dataset(const BinaryDataset& data, const std::filesystem::path& path);

// Comma-separated reals, last column the label (integer or name). A leading
// non-numeric header line is skipped. Names map to indices in sorted order.
[[nodiscard]] RealDataset read_csv(std::istream& in);
[[nodiscard]] RealDataset load_csv(const std::filesystem::path& path);

// MNIST IDX files: unsigned-byte images scaled to [0, 1], and labels.
[[nodiscard]] RealDataset load_idx(const std::filesystem::path& images,
                                   const std::filesystem::path& labels);

}  // namespace tsetlin
