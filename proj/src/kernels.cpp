#include "tsetlin/kernels.hpp"

namespace tsetlin::kernels {

void ripple_increment(std::span<Word> planes, std::size_t words, unsigned bits,
                      std::span<const Word> mask) noexcept {
  for (std::size_t w = 0; w < words; ++w) {
    Word carry = mask[w];
    if (carry == 0) continue;
    for (unsigned p = 0; p < bits && carry != 0; ++p) {
      Word& plane = planes[p * words + w];
      const Word next_carry = plane & carry;
      plane ^= carry;
      carry = next_carry;
    }
    // Carry out of the top plane means the value wrapped from max to 0.
    if (carry != 0) {
      for (unsigned p = 0; p < bits; ++p) planes[p * words + w] |= carry;
    }
  }
}

void ripple_decrement(std::span<Word> planes, std::size_t words, unsigned bits,
                      std::span<const Word> mask) noexcept {
  for (std::size_t w = 0; w < words; ++w) {
    Word borrow = mask[w];
    if (borrow == 0) continue;
    for (unsigned p = 0; p < bits && borrow != 0; ++p) {
      Word& plane = planes[p * words + w];
      const Word next_borrow = ~plane & borrow;
      plane ^= borrow;
      borrow = next_borrow;
    }
    if (borrow != 0) {
      for (unsigned p = 0; p < bits; ++p) planes[p * words + w] &= ~borrow;
    }
  }
}

void zero_positions(std::span<const Word> planes, std::size_t words, unsigned bits,
                    std::span<Word> out) noexcept {
  for (std::size_t w = 0; w < words; ++w) {
    Word any = 0;
    for (unsigned p = 0; p < bits; ++p) any |= planes[p * words + w];
    out[w] = ~any;
  }
}

void max_positions(std::span<const Word> planes, std::size_t words, unsigned bits,
                   std::span<Word> out) noexcept {
  for (std::size_t w = 0; w < words; ++w) {
    Word all = ~Word{0};
    for (unsigned p = 0; p < bits; ++p) all &= planes[p * words + w];
    out[w] = all;
  }
}

bool any_included_false(std::span<const Word> action, std::span<const Word> literals,
                        std::span<const Word> valid) noexcept {
  for (std::size_t w = 0; w < action.size(); ++w) {
    if ((action[w] & ~literals[w] & valid[w]) != 0) return true;
  }
  return false;
}

bool all_zero(std::span<const Word> words) noexcept {
  for (Word w : words) {
    if (w != 0) return false;
  }
  return true;
}

}  // namespace tsetlin::kernels
