#include "tsetlin/machine.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "tsetlin/errors.hpp"

namespace tsetlin {

void MachineConfig::validate() const {
  if (inputs == 0) throw ConfigError("input width must be positive");
  if (clauses == 0 || clauses % 2 != 0) {
    throw ConfigError("clause count must be even and positive, got " + std::to_string(clauses));
  }
  if (threshold < 1) throw ConfigError("threshold T must be at least 1");
  if (!(s > 1.0)) throw ConfigError("s must be greater than 1");
  if (state_bits < 1 || state_bits > 31) throw ConfigError("state bits must be in [1, 31]");
}

double activation_probability(long f, int threshold, FeedbackType type) {
  const long t = threshold;
  const long clipped = std::clamp(f, -t, t);
  const double num = type == FeedbackType::TypeI ? static_cast<double>(t - clipped)
                                                 : static_cast<double>(t + clipped);
  return num / (2.0 * static_cast<double>(t));
}

bool ClauseExpression::contradictory() const {
  return std::any_of(positive.begin(), positive.end(), [&](std::size_t k) {
    return std::find(negated.begin(), negated.end(), k) != negated.end();
  });
}

bool ClauseExpression::evaluate(std::span<const std::uint8_t> x) const {
  for (auto k : positive) {
    if (!x[k]) return false;
  }
  for (auto k : negated) {
    if (x[k]) return false;
  }
  return !positive.empty() || !negated.empty();
}

std::vector<std::size_t> shuffled_order(std::size_t n, const Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i, i)]);
  return order;
}

std::vector<LiteralVector> literal_rows(const BinaryDataset& data) {
  std::vector<LiteralVector> rows;
  rows.reserve(data.size());
  for (std::size_t r = 0; r < data.size(); ++r) rows.push_back(LiteralVector::from_bits(data.row(r)));
  return rows;
}

namespace {

bool evaluate(const ClauseTeam& c, const LiteralVector& l, EvalMode m) { return clause_evaluate(c, l, m); }
bool evaluate(const PlaneBlock& c, const LiteralVector& l, EvalMode m) {
  return clause_evaluate_packed(c, l, m);
}

void check_width(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw ContractError("input width " + std::to_string(got) + " does not match machine width " +
                        std::to_string(expected));
  }
}

// Algorithm skeleton shared by both engines; only the clause kernels differ.
template <typename Clause>
void train_bank(std::vector<Clause>& bank, const MachineConfig& config,
                const LiteralVector& literals, bool y, const Rng& rng) {
  thread_local std::vector<std::uint8_t> outputs;
  outputs.resize(bank.size());
  long f = 0;
  for (std::size_t j = 0; j < bank.size(); ++j) {
    outputs[j] = evaluate(bank[j], literals, EvalMode::Training) ? 1 : 0;
    if (outputs[j]) f += polarity_for(j) == Polarity::Positive ? 1 : -1;
  }
  const double p = activation_probability(
      f, config.threshold, y ? FeedbackType::TypeI : FeedbackType::TypeII);
  const FeedbackParams params = config.feedback();

  for (std::size_t j = 0; j < bank.size(); ++j) {
    const Rng clause_rng = rng.split(j);
    if (!clause_rng.fires(kActivationSlot, p)) continue;
    // Positive clauses: y=1 -> Type I, y=0 -> Type II. Negative: swapped.
    const bool type_i = (polarity_for(j) == Polarity::Positive) == y;
    if (type_i) {
      apply_type_i(bank[j], literals, outputs[j] != 0, params, clause_rng);
    } else {
      apply_type_ii(bank[j], literals, outputs[j] != 0, clause_rng);
    }
  }
}

}  // namespace

TsetlinMachine::TsetlinMachine(const MachineConfig& config, std::nullptr_t) : config_(config) {
  config_.validate();
  const auto n = config_.half_range();
  if (config_.engine == Engine::Scalar) {
    std::vector<ClauseTeam> teams;
    teams.reserve(config_.clauses);
    for (std::size_t j = 0; j < config_.clauses; ++j) {
      teams.emplace_back(config_.inputs, n, polarity_for(j));
    }
    bank_ = std::move(teams);
  } else {
    bank_ = std::vector<PlaneBlock>(config_.clauses, PlaneBlock(config_.inputs, config_.state_bits));
  }
}

TsetlinMachine::TsetlinMachine(const MachineConfig& config) : TsetlinMachine(config, nullptr) {
  const Rng init = Rng(config_.seed).split(rng_tags::kInit);
  const std::size_t width = 2 * config_.inputs;
  const auto n = config_.half_range();
  for (std::size_t j = 0; j < config_.clauses; ++j) {
    for (std::size_t i = 0; i < width; ++i) {
      set_state(j, i, init.uniform(j * width + i) < 0.5 ? n - 1 : n);
    }
  }
}

TsetlinMachine TsetlinMachine::from_states(const MachineConfig& config,
                                           const std::vector<std::vector<std::uint32_t>>& states) {
  TsetlinMachine tm(config, nullptr);
  if (states.size() != config.clauses) {
    throw ContractError("expected " + std::to_string(config.clauses) + " clause rows, got " +
                        std::to_string(states.size()));
  }
  for (std::size_t j = 0; j < states.size(); ++j) {
    if (states[j].size() != 2 * config.inputs) {
      throw ContractError("clause " + std::to_string(j + 1) + " has " +
                          std::to_string(states[j].size()) + " automata, expected " +
                          std::to_string(2 * config.inputs));
    }
    for (std::size_t i = 0; i < states[j].size(); ++i) tm.set_state(j, i, states[j][i]);
  }
  return tm;
}

TsetlinMachine TsetlinMachine::with_engine(Engine engine) const {
  MachineConfig c = config_;
  c.engine = engine;
  return from_states(c, states());
}

std::uint32_t TsetlinMachine::state(std::size_t clause, std::size_t automaton) const {
  if (clause >= config_.clauses || automaton >= 2 * config_.inputs) {
    throw ContractError("automaton index out of range");
  }
  if (const auto* teams = std::get_if<std::vector<ClauseTeam>>(&bank_)) {
    return (*teams)[clause].values()[automaton];
  }
  return std::get<std::vector<PlaneBlock>>(bank_)[clause].value(
      planar_position(automaton, config_.inputs));
}

void TsetlinMachine::set_state(std::size_t clause, std::size_t automaton, std::uint32_t value) {
  if (clause >= config_.clauses || automaton >= 2 * config_.inputs) {
    throw ContractError("automaton index out of range");
  }
  if (auto* teams = std::get_if<std::vector<ClauseTeam>>(&bank_)) {
    (*teams)[clause].set_value(automaton, value);
  } else {
    std::get<std::vector<PlaneBlock>>(bank_)[clause].set_value(
        planar_position(automaton, config_.inputs), value);
  }
}

std::vector<std::vector<std::uint32_t>> TsetlinMachine::states() const {
  std::vector<std::vector<std::uint32_t>> out(config_.clauses);
  for (std::size_t j = 0; j < config_.clauses; ++j) {
    out[j].resize(2 * config_.inputs);
    for (std::size_t i = 0; i < out[j].size(); ++i) out[j][i] = state(j, i);
  }
  return out;
}

ClauseTeam TsetlinMachine::team(std::size_t clause) const {
  if (clause >= config_.clauses) throw ContractError("clause index out of range");
  if (const auto* teams = std::get_if<std::vector<ClauseTeam>>(&bank_)) return (*teams)[clause];
  return unpack_block(std::get<std::vector<PlaneBlock>>(bank_)[clause], polarity_for(clause));
}

bool TsetlinMachine::clause_output(std::size_t clause, const LiteralVector& literals,
                                   EvalMode mode) const {
  check_width(config_.inputs, literals.inputs());
  return std::visit([&](const auto& bank) { return evaluate(bank.at(clause), literals, mode); },
                    bank_);
}

long TsetlinMachine::clause_sum(const LiteralVector& literals, EvalMode mode) const {
  check_width(config_.inputs, literals.inputs());
  return std::visit(
      [&](const auto& bank) {
        long f = 0;
        for (std::size_t j = 0; j < bank.size(); ++j) {
          if (evaluate(bank[j], literals, mode)) f += polarity_for(j) == Polarity::Positive ? 1 : -1;
        }
        return f;
      },
      bank_);
}

long TsetlinMachine::clause_sum(std::span<const std::uint8_t> x, EvalMode mode) const {
  check_width(config_.inputs, x.size());
  return clause_sum(LiteralVector::from_bits(x), mode);
}

bool TsetlinMachine::predict(const LiteralVector& literals) const {
  return clause_sum(literals, EvalMode::Inference) >= 0;
}

bool TsetlinMachine::predict(std::span<const std::uint8_t> x) const {
  return clause_sum(x, EvalMode::Inference) >= 0;
}

void TsetlinMachine::train_example(const LiteralVector& literals, bool y, const Rng& rng) {
  check_width(config_.inputs, literals.inputs());
  std::visit([&](auto& bank) { train_bank(bank, config_, literals, y, rng); }, bank_);
}

double TsetlinMachine::accuracy(const BinaryDataset& data) const {
  if (data.empty()) throw ContractError("accuracy of an empty dataset");
  check_width(config_.inputs, data.inputs());
  std::size_t correct = 0;
  for (std::size_t r = 0; r < data.size(); ++r) {
    if (static_cast<std::uint32_t>(predict(data.row(r))) == data.label(r)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

TrainReport TsetlinMachine::fit(const BinaryDataset& train, const Rng& rng,
                                const FitOptions& options) {
  if (train.empty()) throw ContractError("cannot fit on an empty dataset");
  check_width(config_.inputs, train.inputs());
  if (train.classes() != 2) throw ContractError("binary machine needs a two-class dataset");
  if (options.eval != nullptr) check_width(config_.inputs, options.eval->inputs());

  const auto rows = literal_rows(train);
  TrainReport report;
  for (unsigned e = 0; e < config_.epochs; ++e) {
    const Rng epoch_rng = rng.split(e);
    const auto order = shuffled_order(rows.size(), epoch_rng.split(rng_tags::kShuffle));
    const Rng example_rng = epoch_rng.split(rng_tags::kExample);
    for (std::size_t t = 0; t < order.size(); ++t) {
      train_example(rows[order[t]], train.label(order[t]) == 1, example_rng.split(t));
    }
    EpochRecord rec;
    rec.epoch = e + 1;
    if (options.track_train_accuracy) rec.train_accuracy = accuracy(train);
    if (options.eval != nullptr && !options.eval->empty()) rec.test_accuracy = accuracy(*options.eval);
    if (options.on_epoch) options.on_epoch(rec);
    report.epochs.push_back(rec);
  }
  return report;
}

std::vector<ClauseExpression> TsetlinMachine::prune() const {
  std::vector<ClauseExpression> out;
  for (std::size_t j = 0; j < config_.clauses; ++j) {
    ClauseExpression expr;
    expr.clause = j;
    expr.polarity = polarity_for(j);
    for (std::size_t k = 0; k < config_.inputs; ++k) {
      if (action_of(state(j, 2 * k), config_.half_range()) == Action::Include) {
        expr.positive.push_back(k);
      }
      if (action_of(state(j, 2 * k + 1), config_.half_range()) == Action::Include) {
        expr.negated.push_back(k);
      }
    }
    if (!expr.positive.empty() || !expr.negated.empty()) out.push_back(std::move(expr));
  }
  return out;
}

bool predict_expressions(std::span<const ClauseExpression> clauses,
                         std::span<const std::uint8_t> x) {
  long f = 0;
  for (const auto& c : clauses) {
    if (c.evaluate(x)) f += c.polarity == Polarity::Positive ? 1 : -1;
  }
  return f >= 0;
}

}  // namespace tsetlin
