#include "tsetlin/multiclass.hpp"

#include <string>

#include "tsetlin/errors.hpp"

namespace tsetlin {

std::size_t argmax_lowest(std::span<const long> values) {
  if (values.empty()) throw ContractError("argmax of an empty list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

std::size_t negative_class(std::size_t target, std::size_t classes, const Rng& rng) {
  if (classes < 2) throw ConfigError("multi-class training needs at least two classes");
  const auto q = static_cast<std::size_t>(rng.below(0, classes - 1));
  return q >= target ? q + 1 : q;
}

MultiClassMachine::MultiClassMachine(std::size_t classes, const MachineConfig& config) {
  if (classes < 2) throw ConfigError("multi-class machine needs at least two classes");
  banks_.reserve(classes);
  for (std::size_t c = 0; c < classes; ++c) {
    MachineConfig bank_config = config;
    bank_config.seed = mix64(config.seed + 0x9E3779B97F4A7C15ULL * (c + 1));
    banks_.emplace_back(bank_config);
  }
}

MultiClassMachine::MultiClassMachine(std::vector<TsetlinMachine> banks) : banks_(std::move(banks)) {
  if (banks_.size() < 2) throw ConfigError("multi-class machine needs at least two classes");
  const auto& c0 = banks_.front().config();
  for (const auto& b : banks_) {
    const auto& c = b.config();
    if (c.inputs != c0.inputs || c.clauses != c0.clauses || c.threshold != c0.threshold ||
        c.s != c0.s || c.state_bits != c0.state_bits || c.boost != c0.boost) {
      throw ConfigError("all class banks must share one configuration");
    }
  }
}

std::vector<long> MultiClassMachine::class_sums(const LiteralVector& literals) const {
  std::vector<long> sums;
  sums.reserve(banks_.size());
  for (const auto& b : banks_) sums.push_back(b.clause_sum(literals, EvalMode::Inference));
  return sums;
}

std::size_t MultiClassMachine::predict(const LiteralVector& literals) const {
  const auto sums = class_sums(literals);
  return argmax_lowest(sums);
}

std::size_t MultiClassMachine::predict(std::span<const std::uint8_t> x) const {
  if (x.size() != config().inputs) {
    throw ContractError("input width " + std::to_string(x.size()) + " does not match machine width " +
                        std::to_string(config().inputs));
  }
  return predict(LiteralVector::from_bits(x));
}

std::size_t MultiClassMachine::train_example(const LiteralVector& literals, std::size_t y,
                                             const Rng& rng) {
  if (y >= banks_.size()) throw ContractError("class label " + std::to_string(y) + " out of range");
  const std::size_t q = negative_class(y, banks_.size(), rng.split(rng_tags::kNegative));
  banks_[y].train_example(literals, true, rng.split(rng_tags::kTargetBank));
  banks_[q].train_example(literals, false, rng.split(rng_tags::kNegativeBank));
  return q;
}

double MultiClassMachine::accuracy(const BinaryDataset& data) const {
  if (data.empty()) throw ContractError("accuracy of an empty dataset");
  std::size_t correct = 0;
  for (std::size_t r = 0; r < data.size(); ++r) {
    if (predict(data.row(r)) == data.label(r)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

TrainReport MultiClassMachine::fit(const BinaryDataset& train, const Rng& rng,
                                   const FitOptions& options) {
  if (train.empty()) throw ContractError("cannot fit on an empty dataset");
  if (train.inputs() != config().inputs) {
    throw ContractError("dataset width " + std::to_string(train.inputs()) +
                        " does not match machine width " + std::to_string(config().inputs));
  }
  if (train.classes() > banks_.size()) throw ContractError("dataset has more classes than banks");

  const auto rows = literal_rows(train);
  TrainReport report;
  for (unsigned e = 0; e < config().epochs; ++e) {
    const Rng epoch_rng = rng.split(e);
    const auto order = shuffled_order(rows.size(), epoch_rng.split(rng_tags::kShuffle));
    const Rng example_rng = epoch_rng.split(rng_tags::kExample);
    for (std::size_t t = 0; t < order.size(); ++t) {
      train_example(rows[order[t]], train.label(order[t]), example_rng.split(t));
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

}  // namespace tsetlin
