#pragma once

#include <cstddef>
#include <span>

#include "tsetlin/clause.hpp"

// Word-parallel primitives over bit planes. A block of `bits` planes, each
// `words` long, is stored plane-major: plane p occupies
// [p * words, (p + 1) * words).
namespace tsetlin::kernels {

// Adds one to every masked b-bit value, saturating at 2^b - 1.
void ripple_increment(std::span<Word> planes, std::size_t words, unsigned bits,
                      std::span<const Word> mask) noexcept;

// Subtracts one from every masked b-bit value, saturating at 0.
void ripple_decrement(std::span<Word> planes, std::size_t words, unsigned bits,
                      std::span<const Word> mask) noexcept;

// Positions whose value is 0 (all planes clear) and 2^b - 1 (all planes set).
void zero_positions(std::span<const Word> planes, std::size_t words, unsigned bits,
                    std::span<Word> out) noexcept;
void max_positions(std::span<const Word> planes, std::size_t words, unsigned bits,
                   std::span<Word> out) noexcept;

// True iff some included literal is false: (action AND NOT literal) != 0.
// `valid` masks off padding.
[[nodiscard]] bool any_included_false(std::span<const Word> action, std::span<const Word> literals,
                                      std::span<const Word> valid) noexcept;

[[nodiscard]] bool all_zero(std::span<const Word> words) noexcept;

}  // namespace tsetlin::kernels
