#include "tsetlin/feedback.hpp"

#include <bit>
#include <vector>

#include "tsetlin/errors.hpp"
#include "tsetlin/kernels.hpp"

namespace tsetlin {

void FeedbackParams::validate() const {
  if (!(s > 1.0)) throw ConfigError("s must be greater than 1");
}

FeedbackTriple type_i_probs(Action action, bool literal, bool clause,
                            const FeedbackParams& params) noexcept {
  const double lo = 1.0 / params.s;
  const double hi = (params.s - 1.0) / params.s;
  if (clause && literal) {
    // Column 1, the only one boosting touches.
    const double strong = params.boost ? 1.0 : hi;
    const double weak = params.boost ? 0.0 : lo;
    if (action == Action::Include) return {strong, weak, 0.0};
    return {0.0, weak, strong};
  }
  if (clause) {
    if (action == Action::Include) return {0.0, 1.0, 0.0};  // NA
    return {lo, hi, 0.0};
  }
  if (action == Action::Include) return {0.0, hi, lo};
  return {lo, hi, 0.0};
}

FeedbackTriple type_ii_probs(Action action, bool literal, bool clause) noexcept {
  if (clause && !literal && action == Action::Exclude) return {0.0, 0.0, 1.0};
  return {0.0, 1.0, 0.0};
}

Event sample_event(const FeedbackTriple& triple, const Rng& rng, std::size_t automaton) noexcept {
  if (rng.fires(reward_slot(automaton), triple.reward)) return Event::Reward;
  // Conditional on no reward. Table cells never mix reward and penalty, so
  // there this is just triple.penalty.
  const double rest = 1.0 - triple.reward;
  const double p = triple.reward == 0.0 ? triple.penalty : rest > 0.0 ? triple.penalty / rest : 0.0;
  if (rng.fires(penalty_slot(automaton), p)) return Event::Penalty;
  return Event::Inaction;
}

namespace {

void check_width(std::size_t team_inputs, const LiteralVector& literals) {
  if (team_inputs != literals.inputs()) throw ContractError("literal width mismatch");
}

template <typename Table>
void apply_scalar(ClauseTeam& team, const LiteralVector& literals, const Rng& rng, Table table) {
  check_width(team.inputs(), literals);
  for (std::size_t i = 0; i < team.size(); ++i) {
    const bool lit = literals.literal(planar_position(i, team.inputs()));
    team.apply(i, sample_event(table(team.action(i), lit), rng, i));
  }
}

struct Scratch {
  std::vector<Word> zero, max, inc, dec;

  void resize(std::size_t words) {
    zero.assign(words, 0);
    max.assign(words, 0);
    inc.assign(words, 0);
    dec.assign(words, 0);
  }
};

Scratch& scratch(std::size_t words) {
  thread_local Scratch s;
  s.resize(words);
  return s;
}

// Visits each set bit of `candidates` in word `w`; sets it in `out` when the
// automaton's draw in `slot` fires with probability p.
template <typename Slot>
void draw_bits(Word candidates, std::size_t w, std::size_t inputs, const Rng& rng, Slot slot,
               double p, Word& out) {
  while (candidates != 0) {
    const unsigned b = static_cast<unsigned>(std::countr_zero(candidates));
    candidates &= candidates - 1;
    const std::size_t automaton = interleaved_index(w * kWordBits + b, inputs);
    if (rng.fires(slot(automaton), p)) out |= Word{1} << b;
  }
}

}  // namespace

void apply_type_i(ClauseTeam& team, const LiteralVector& literals, bool clause_out,
                  const FeedbackParams& params, const Rng& rng) {
  apply_scalar(team, literals, rng, [&](Action a, bool lit) {
    return type_i_probs(a, lit, clause_out, params);
  });
}

void apply_type_ii(ClauseTeam& team, const LiteralVector& literals, bool clause_out,
                   const Rng& rng) {
  apply_scalar(team, literals, rng,
               [&](Action a, bool lit) { return type_ii_probs(a, lit, clause_out); });
}

// Each Type I cell has a single non-inaction outcome, and every outcome is a
// +1 or -1 on the state. Positions where that step would saturate are not
// drawn at all; with counter-based draws this leaves every other draw as is.
void apply_type_i(PlaneBlock& block, const LiteralVector& literals, bool clause_out,
                  const FeedbackParams& params, const Rng& rng) {
  check_width(block.inputs(), literals);
  const std::size_t words = block.words_per_plane();
  const std::size_t inputs = block.inputs();
  auto& s = scratch(words);
  kernels::zero_positions(block.planes(), words, block.bits(), s.zero);
  kernels::max_positions(block.planes(), words, block.bits(), s.max);

  const double lo = 1.0 / params.s;
  const double hi = params.boost ? 1.0 : (params.s - 1.0) / params.s;
  const auto action = block.action_plane();
  const auto valid = block.valid_mask();
  const auto lits = literals.words();

  for (std::size_t w = 0; w < words; ++w) {
    const Word include = action[w];
    const Word exclude = ~action[w] & valid[w];
    if (clause_out) {
      // Include, literal 1: reward (increment).
      draw_bits(include & lits[w] & ~s.max[w], w, inputs, rng, reward_slot, hi, s.inc[w]);
      // Exclude, literal 1: penalty (increment).
      draw_bits(exclude & lits[w], w, inputs, rng, penalty_slot, hi, s.inc[w]);
      // Exclude, literal 0: reward (decrement).
      draw_bits(exclude & ~lits[w] & ~s.zero[w], w, inputs, rng, reward_slot, lo, s.dec[w]);
    } else {
      // Include: penalty; Exclude: reward. Both decrement.
      draw_bits(include, w, inputs, rng, penalty_slot, lo, s.dec[w]);
      draw_bits(exclude & ~s.zero[w], w, inputs, rng, reward_slot, lo, s.dec[w]);
    }
  }
  kernels::ripple_increment(block.planes(), words, block.bits(), s.inc);
  kernels::ripple_decrement(block.planes(), words, block.bits(), s.dec);
}

void apply_type_ii(PlaneBlock& block, const LiteralVector& literals, bool clause_out,
                   const Rng& rng) {
  check_width(block.inputs(), literals);
  if (!clause_out) return;
  const std::size_t words = block.words_per_plane();
  auto& s = scratch(words);
  const auto action = block.action_plane();
  const auto valid = block.valid_mask();
  const auto lits = literals.words();
  for (std::size_t w = 0; w < words; ++w) {
    draw_bits(~action[w] & ~lits[w] & valid[w], w, block.inputs(), rng, penalty_slot, 1.0,
              s.inc[w]);
  }
  kernels::ripple_increment(block.planes(), words, block.bits(), s.inc);
}

}  // namespace tsetlin
