#pragma once

#include <cstddef>
#include <cstdint>

#include "tsetlin/automaton.hpp"
#include "tsetlin/clause.hpp"
#include "tsetlin/plane_block.hpp"
#include "tsetlin/rng.hpp"

namespace tsetlin {

struct FeedbackParams {
  double s = 3.0;
  bool boost = false;  // true-positive boosting of Include rewards

  // Throws ConfigError unless s > 1.
  void validate() const;
};

struct FeedbackTriple {
  double reward = 0.0;
  double inaction = 1.0;
  double penalty = 0.0;

  friend bool operator==(const FeedbackTriple&, const FeedbackTriple&) = default;
};

enum class FeedbackType : std::uint8_t { TypeI, TypeII };

// Type I table (combats false negatives). The unreachable cell
// (Include, literal 0, clause 1) returns pure inaction.
[[nodiscard]] FeedbackTriple type_i_probs(Action action, bool literal, bool clause,
                                          const FeedbackParams& params) noexcept;

// Type II table (combats false positives): a full penalty for Exclude
// automata whose literal is 0 in a clause that output 1, inaction elsewhere.
[[nodiscard]] FeedbackTriple type_ii_probs(Action action, bool literal, bool clause) noexcept;

// Draw slots within one clause's random stream. Counter 0 decides whether the
// clause is activated; each automaton (interleaved index i) owns a reward
// slot and a penalty slot.
inline constexpr std::uint64_t kActivationSlot = 0;
[[nodiscard]] constexpr std::uint64_t reward_slot(std::size_t automaton) noexcept {
  return 1 + 2 * static_cast<std::uint64_t>(automaton);
}
[[nodiscard]] constexpr std::uint64_t penalty_slot(std::size_t automaton) noexcept {
  return 2 + 2 * static_cast<std::uint64_t>(automaton);
}

// Reward test first; only if it fails, an independent penalty test at
// penalty / (1 - reward), so the event frequencies match the triple.
[[nodiscard]] Event sample_event(const FeedbackTriple& triple, const Rng& rng,
                                 std::size_t automaton) noexcept;

// `clause_out` must be the Training-mode output of this team on `literals`
// before any update in the current round.
void apply_type_i(ClauseTeam& team, const LiteralVector& literals, bool clause_out,
                  const FeedbackParams& params, const Rng& rng);
void apply_type_ii(ClauseTeam& team, const LiteralVector& literals, bool clause_out,
                   const Rng& rng);

// Word-parallel counterparts; same results as the scalar versions for the
// same rng.
void apply_type_i(PlaneBlock& block, const LiteralVector& literals, bool clause_out,
                  const FeedbackParams& params, const Rng& rng);
void apply_type_ii(PlaneBlock& block, const LiteralVector& literals, bool clause_out,
                   const Rng& rng);

}  // namespace tsetlin
