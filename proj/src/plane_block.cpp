#include "tsetlin/plane_block.hpp"

#include <bit>
#include <string>

#include "tsetlin/errors.hpp"
#include "tsetlin/kernels.hpp"

namespace tsetlin {

unsigned state_bits_for(std::uint32_t half_range) {
  if (half_range == 0 || !std::has_single_bit(half_range)) {
    throw ConfigError("bit-plane engine needs 2N to be a power of two, got N=" +
                      std::to_string(half_range));
  }
  return static_cast<unsigned>(std::countr_zero(half_range)) + 1;
}

PlaneBlock::PlaneBlock(std::size_t inputs, unsigned bits)
    : inputs_(inputs), bits_(bits), words_(words_for(2 * inputs)) {
  if (bits < 1 || bits > 31) throw ConfigError("state bits must be in [1, 31]");
  data_.assign(bits_ * words_, 0);
  valid_.assign(words_, ~Word{0});
  if (const std::size_t tail = (2 * inputs) % kWordBits; tail != 0) {
    valid_.back() = (Word{1} << tail) - 1;
  }
}

std::uint32_t PlaneBlock::value(std::size_t position) const noexcept {
  const std::size_t w = position / kWordBits;
  const unsigned shift = position % kWordBits;
  std::uint32_t v = 0;
  for (unsigned p = 0; p < bits_; ++p) {
    v |= static_cast<std::uint32_t>((data_[p * words_ + w] >> shift) & 1U) << p;
  }
  return v;
}

void PlaneBlock::set_value(std::size_t position, std::uint32_t value) {
  if (position >= size()) throw ContractError("plane position out of range");
  if (value >> bits_ != 0) throw ConfigError("state value does not fit in the plane block");
  const std::size_t w = position / kWordBits;
  const Word bit = Word{1} << (position % kWordBits);
  for (unsigned p = 0; p < bits_; ++p) {
    Word& word = data_[p * words_ + w];
    word = ((value >> p) & 1U) ? (word | bit) : (word & ~bit);
  }
}

PlaneBlock pack_team(const ClauseTeam& team) {
  PlaneBlock block(team.inputs(), state_bits_for(team.half_range()));
  for (std::size_t i = 0; i < team.size(); ++i) {
    block.set_value(planar_position(i, team.inputs()), team.values()[i]);
  }
  return block;
}

ClauseTeam unpack_block(const PlaneBlock& block, Polarity polarity) {
  std::vector<std::uint32_t> values(block.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = block.value(planar_position(i, block.inputs()));
  }
  return ClauseTeam(block.inputs(), block.half_range(), polarity, std::move(values));
}

namespace {

std::vector<Word> clipped(const PlaneBlock& block, std::span<const Word> mask) {
  if (mask.size() != block.words_per_plane()) throw ContractError("mask width mismatch");
  std::vector<Word> m(mask.begin(), mask.end());
  const auto valid = block.valid_mask();
  for (std::size_t w = 0; w < m.size(); ++w) m[w] &= valid[w];
  return m;
}

}  // namespace

void block_increment(PlaneBlock& block, std::span<const Word> mask) {
  const auto m = clipped(block, mask);
  kernels::ripple_increment(block.planes(), block.words_per_plane(), block.bits(), m);
}

void block_decrement(PlaneBlock& block, std::span<const Word> mask) {
  const auto m = clipped(block, mask);
  kernels::ripple_decrement(block.planes(), block.words_per_plane(), block.bits(), m);
}

bool clause_evaluate_packed(const PlaneBlock& block, const LiteralVector& literals, EvalMode mode) {
  if (block.inputs() != literals.inputs()) {
    throw ContractError("clause width " + std::to_string(block.inputs()) +
                        " does not match input width " + std::to_string(literals.inputs()));
  }
  const auto action = block.action_plane();
  if (kernels::any_included_false(action, literals.words(), block.valid_mask())) return false;
  return mode == EvalMode::Training || !kernels::all_zero(action);
}

}  // namespace tsetlin
