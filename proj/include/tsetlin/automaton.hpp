#pragma once

#include <cstdint>

namespace tsetlin {

enum class Action : std::uint8_t { Exclude, Include };
enum class Event : std::uint8_t { Reward, Penalty, Inaction };

/// State of one two-action Tsetlin Automaton.
///
/// Values run 0..2N-1 where N is the number of states per action. The lower
/// half selects Exclude, the upper half Include, so with 2N = 2^b the action
/// is the most significant bit of the b-bit value.
class TAState {
 public:
  // Throws ConfigError if half_range == 0 or value >= 2 * half_range.
  TAState(std::uint32_t value, std::uint32_t half_range);

  [[nodiscard]] std::uint32_t value() const noexcept { return value_; }
  [[nodiscard]] std::uint32_t half_range() const noexcept { return half_range_; }
  [[nodiscard]] std::uint32_t max_value() const noexcept { return 2 * half_range_ - 1; }

  friend bool operator==(const TAState&, const TAState&) = default;

 private:
  std::uint32_t value_;
  std::uint32_t half_range_;
};

[[nodiscard]] Action ta_action(TAState state) noexcept;

// Reward deepens the current action (saturating), Penalty steps toward and
// across the action boundary, Inaction leaves the state alone.
[[nodiscard]] TAState ta_apply(TAState state, Event event) noexcept;

// Raw-value forms of the above used by the scalar engine's inner loops.
[[nodiscard]] constexpr Action action_of(std::uint32_t value, std::uint32_t half_range) noexcept {
  return value >= half_range ? Action::Include : Action::Exclude;
}

[[nodiscard]] constexpr std::uint32_t step(std::uint32_t value, std::uint32_t half_range,
                                           Event event) noexcept {
  const bool include = value >= half_range;
  const std::uint32_t top = 2 * half_range - 1;
  switch (event) {
    case Event::Reward:
      if (include) return value < top ? value + 1 : value;
      return value > 0 ? value - 1 : value;
    case Event::Penalty:
      return include ? value - 1 : value + 1;
    case Event::Inaction:
      break;
  }
  return value;
}

}  // namespace tsetlin
