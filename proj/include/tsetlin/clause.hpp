#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tsetlin/automaton.hpp"

namespace tsetlin {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

[[nodiscard]] constexpr std::size_t words_for(std::size_t bits) noexcept {
  return (bits + kWordBits - 1) / kWordBits;
}

enum class Polarity : std::int8_t { Negative = -1, Positive = 1 };

// Clause j (0-based) votes positive iff j is even, i.e. odd 1-based position.
[[nodiscard]] constexpr Polarity polarity_for(std::size_t clause_index) noexcept {
  return clause_index % 2 == 0 ? Polarity::Positive : Polarity::Negative;
}

// Training follows the conjunction with a leading true term, so a clause with
// nothing included outputs 1. Inference reports such a clause as 0, matching
// the model after all-exclude clauses are pruned.
enum class EvalMode : std::uint8_t { Training, Inference };

// Automaton index layout. Teams are interleaved (x1, ~x1, x2, ~x2, ...);
// literal vectors and bit planes are planar (x1..xo, ~x1..~xo).
[[nodiscard]] constexpr std::size_t planar_position(std::size_t automaton, std::size_t inputs) noexcept {
  return automaton % 2 == 0 ? automaton / 2 : inputs + automaton / 2;
}
[[nodiscard]] constexpr std::size_t interleaved_index(std::size_t position, std::size_t inputs) noexcept {
  return position < inputs ? 2 * position : 2 * (position - inputs) + 1;
}

/// The 2o literals of an input: X followed by NOT X, packed into words.
/// Padding bits past 2o are zero.
class LiteralVector {
 public:
  LiteralVector() = default;
  // Each entry must be 0 or 1.
  static LiteralVector from_bits(std::span<const std::uint8_t> x);

  [[nodiscard]] std::size_t inputs() const noexcept { return inputs_; }
  [[nodiscard]] std::size_t size() const noexcept { return 2 * inputs_; }
  [[nodiscard]] bool literal(std::size_t position) const noexcept {
    return (words_[position / kWordBits] >> (position % kWordBits)) & 1U;
  }
  [[nodiscard]] std::span<const Word> words() const noexcept { return words_; }

 private:
  std::size_t inputs_ = 0;
  std::vector<Word> words_;
};

/// The 2o automata that decide one clause, in interleaved order, plus its
/// fixed vote polarity. Scalar reference representation.
class ClauseTeam {
 public:
  ClauseTeam(std::size_t inputs, std::uint32_t half_range, Polarity polarity);
  ClauseTeam(std::size_t inputs, std::uint32_t half_range, Polarity polarity,
             std::vector<std::uint32_t> values);

  [[nodiscard]] std::size_t inputs() const noexcept { return inputs_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::uint32_t half_range() const noexcept { return half_range_; }
  [[nodiscard]] Polarity polarity() const noexcept { return polarity_; }

  [[nodiscard]] TAState state(std::size_t automaton) const {
    return TAState(values_.at(automaton), half_range_);
  }
  [[nodiscard]] Action action(std::size_t automaton) const noexcept {
    return action_of(values_[automaton], half_range_);
  }
  [[nodiscard]] std::span<const std::uint32_t> values() const noexcept { return values_; }

  void set_value(std::size_t automaton, std::uint32_t value);
  void apply(std::size_t automaton, Event event) noexcept {
    values_[automaton] = step(values_[automaton], half_range_, event);
  }

  friend bool operator==(const ClauseTeam&, const ClauseTeam&) = default;

 private:
  std::size_t inputs_;
  std::uint32_t half_range_;
  Polarity polarity_;
  std::vector<std::uint32_t> values_;
};

// Throws ContractError on width mismatch.
[[nodiscard]] bool clause_evaluate(const ClauseTeam& team, const LiteralVector& literals,
                                   EvalMode mode);

}  // namespace tsetlin
