#include "tsetlin/automaton.hpp"

#include <string>

#include "tsetlin/errors.hpp"

namespace tsetlin {

TAState::TAState(std::uint32_t value, std::uint32_t half_range)
    : value_(value), half_range_(half_range) {
  if (half_range == 0) throw ConfigError("automaton needs at least one state per action");
  if (value > max_value()) {
    throw ConfigError("automaton state " + std::to_string(value) + " outside [0, " +
                      std::to_string(max_value()) + "]");
  }
}

Action ta_action(TAState state) noexcept { return action_of(state.value(), state.half_range()); }

TAState ta_apply(TAState state, Event event) noexcept {
  return TAState(step(state.value(), state.half_range(), event), state.half_range());
}

}  // namespace tsetlin
