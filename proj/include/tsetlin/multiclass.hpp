#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tsetlin/datasets.hpp"
#include "tsetlin/machine.hpp"

namespace tsetlin {

// Index of the largest value; ties go to the lowest index.
[[nodiscard]] std::size_t argmax_lowest(std::span<const long> values);

// Uniform draw from the classes other than `target`.
[[nodiscard]] std::size_t negative_class(std::size_t target, std::size_t classes, const Rng& rng);

/// One clause bank per class with an argmax decision. Bank c is trained
/// toward output 1 on examples of class c and toward 0 on examples of a
/// randomly chosen other class.
class MultiClassMachine {
 public:
  // Bank c is seeded with config.seed mixed with c.
  MultiClassMachine(std::size_t classes, const MachineConfig& config);
  explicit MultiClassMachine(std::vector<TsetlinMachine> banks);

  [[nodiscard]] std::size_t classes() const noexcept { return banks_.size(); }
  [[nodiscard]] const MachineConfig& config() const noexcept { return banks_.front().config(); }
  [[nodiscard]] const TsetlinMachine& bank(std::size_t c) const { return banks_.at(c); }
  [[nodiscard]] TsetlinMachine& bank(std::size_t c) { return banks_.at(c); }

  [[nodiscard]] std::vector<long> class_sums(const LiteralVector& literals) const;
  [[nodiscard]] std::size_t predict(const LiteralVector& literals) const;
  [[nodiscard]] std::size_t predict(std::span<const std::uint8_t> x) const;

  // Trains bank y with target 1 and one other bank with target 0; returns
  // the negative class chosen.
  std::size_t train_example(const LiteralVector& literals, std::size_t y, const Rng& rng);

  TrainReport fit(const BinaryDataset& train, const Rng& rng, const FitOptions& options = {});

  [[nodiscard]] double accuracy(const BinaryDataset& data) const;

  friend bool operator==(const MultiClassMachine&, const MultiClassMachine&) = default;

 private:
  std::vector<TsetlinMachine> banks_;
};

}  // namespace tsetlin
