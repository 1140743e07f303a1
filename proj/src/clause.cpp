#include "tsetlin/clause.hpp"

#include <string>

#include "tsetlin/errors.hpp"

namespace tsetlin {

LiteralVector LiteralVector::from_bits(std::span<const std::uint8_t> x) {
  LiteralVector lv;
  lv.inputs_ = x.size();
  lv.words_.assign(words_for(2 * x.size()), 0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] > 1) throw ContractError("literal value must be 0 or 1");
    const std::size_t pos = x[k] ? k : x.size() + k;
    lv.words_[pos / kWordBits] |= Word{1} << (pos % kWordBits);
  }
  return lv;
}

ClauseTeam::ClauseTeam(std::size_t inputs, std::uint32_t half_range, Polarity polarity)
    : ClauseTeam(inputs, half_range, polarity,
                 std::vector<std::uint32_t>(2 * inputs, half_range == 0 ? 0 : half_range - 1)) {}

ClauseTeam::ClauseTeam(std::size_t inputs, std::uint32_t half_range, Polarity polarity,
                       std::vector<std::uint32_t> values)
    : inputs_(inputs), half_range_(half_range), polarity_(polarity), values_(std::move(values)) {
  if (half_range == 0) throw ConfigError("automaton needs at least one state per action");
  if (values_.size() != 2 * inputs) {
    throw ContractError("clause team needs " + std::to_string(2 * inputs) + " automata, got " +
                        std::to_string(values_.size()));
  }
  for (auto v : values_) {
    if (v > 2 * half_range - 1) throw ConfigError("automaton state out of range");
  }
}

void ClauseTeam::set_value(std::size_t automaton, std::uint32_t value) {
  if (value > 2 * half_range_ - 1) throw ConfigError("automaton state out of range");
  values_.at(automaton) = value;
}

bool clause_evaluate(const ClauseTeam& team, const LiteralVector& literals, EvalMode mode) {
  if (team.inputs() != literals.inputs()) {
    throw ContractError("clause width " + std::to_string(team.inputs()) +
                        " does not match input width " + std::to_string(literals.inputs()));
  }
  bool any_included = false;
  for (std::size_t i = 0; i < team.size(); ++i) {
    if (team.action(i) != Action::Include) continue;
    any_included = true;
    if (!literals.literal(planar_position(i, team.inputs()))) return false;
  }
  return any_included || mode == EvalMode::Training;
}

}  // namespace tsetlin
