#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tsetlin/clause.hpp"

namespace tsetlin {

// Number of bits b with 2N = 2^b; throws ConfigError when 2N is not a power
// of two.
[[nodiscard]] unsigned state_bits_for(std::uint32_t half_range);

/// Bit-plane transposition of one clause team.
///
/// Plane p holds bit p of every automaton's state value; plane b-1 is the
/// action plane. Positions are planar (x1..xo then ~x1..~xo) so the action
/// plane lines up with a LiteralVector word for word.
class PlaneBlock {
 public:
  PlaneBlock(std::size_t inputs, unsigned bits);

  [[nodiscard]] std::size_t inputs() const noexcept { return inputs_; }
  [[nodiscard]] std::size_t size() const noexcept { return 2 * inputs_; }
  [[nodiscard]] unsigned bits() const noexcept { return bits_; }
  [[nodiscard]] std::uint32_t half_range() const noexcept { return 1U << (bits_ - 1); }
  [[nodiscard]] std::size_t words_per_plane() const noexcept { return words_; }

  [[nodiscard]] std::span<Word> planes() noexcept { return data_; }
  [[nodiscard]] std::span<const Word> planes() const noexcept { return data_; }
  [[nodiscard]] std::span<const Word> plane(unsigned p) const noexcept {
    return std::span<const Word>(data_).subspan(p * words_, words_);
  }
  [[nodiscard]] std::span<const Word> action_plane() const noexcept { return plane(bits_ - 1); }
  // Mask of the 2o real positions in the last word(s).
  [[nodiscard]] std::span<const Word> valid_mask() const noexcept { return valid_; }

  // Value at a planar position.
  [[nodiscard]] std::uint32_t value(std::size_t position) const noexcept;
  void set_value(std::size_t position, std::uint32_t value);

  friend bool operator==(const PlaneBlock&, const PlaneBlock&) = default;

 private:
  std::size_t inputs_;
  unsigned bits_;
  std::size_t words_;
  std::vector<Word> data_;
  std::vector<Word> valid_;
};

[[nodiscard]] PlaneBlock pack_team(const ClauseTeam& team);
[[nodiscard]] ClauseTeam unpack_block(const PlaneBlock& block,
                                      Polarity polarity = Polarity::Positive);

// Saturating +1 / -1 on every masked position. `mask` has words_per_plane()
// words in planar order; padding bits are ignored.
void block_increment(PlaneBlock& block, std::span<const Word> mask);
void block_decrement(PlaneBlock& block, std::span<const Word> mask);

// Bit-identical to clause_evaluate(unpack_block(block), literals, mode).
[[nodiscard]] bool clause_evaluate_packed(const PlaneBlock& block, const LiteralVector& literals,
                                          EvalMode mode);

}  // namespace tsetlin
