#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "tsetlin/clause.hpp"
#include "tsetlin/datasets.hpp"
#include "tsetlin/feedback.hpp"
#include "tsetlin/plane_block.hpp"
#include "tsetlin/rng.hpp"

namespace tsetlin {

// Scalar is the per-automaton reference; Packed is the bit-plane engine.
// Both consume the same random draws and produce identical states.
enum class Engine : std::uint8_t { Scalar, Packed };

struct MachineConfig {
  std::size_t inputs = 0;   // o
  std::size_t clauses = 0;  // m, even
  int threshold = 1;        // T
  double s = 3.0;
  unsigned state_bits = 8;  // b, 2N = 2^b
  bool boost = false;
  unsigned epochs = 1;
  std::uint64_t seed = 1;
  Engine engine = Engine::Packed;

  // Throws ConfigError on any violated invariant.
  void validate() const;
  [[nodiscard]] std::uint32_t half_range() const noexcept { return 1U << (state_bits - 1); }
  [[nodiscard]] FeedbackParams feedback() const noexcept { return {s, boost}; }
};

// Probability that a clause receives feedback of `type` given the clause
// sum f, with f clipped to [-T, T].
[[nodiscard]] double activation_probability(long f, int threshold, FeedbackType type);

/// An exported clause. Variable indices are 0-based.
struct ClauseExpression {
  std::size_t clause = 0;  // 0-based position in the bank
  Polarity polarity = Polarity::Positive;
  std::vector<std::size_t> positive;  // x_k included
  std::vector<std::size_t> negated;   // ~x_k included

  [[nodiscard]] bool contradictory() const;
  [[nodiscard]] bool evaluate(std::span<const std::uint8_t> x) const;

  friend bool operator==(const ClauseExpression&, const ClauseExpression&) = default;
};

struct EpochRecord {
  unsigned epoch = 0;  // 1-based
  double train_accuracy = 0.0;
  std::optional<double> test_accuracy;
};

struct TrainReport {
  std::vector<EpochRecord> epochs;
};

struct FitOptions {
  const BinaryDataset* eval = nullptr;
  bool track_train_accuracy = true;
  std::function<void(const EpochRecord&)> on_epoch;
};

/// Tsetlin Machine for one binary output.
class TsetlinMachine {
 public:
  // Every automaton starts uniformly at random in {N-1, N}, drawn from
  // config.seed.
  explicit TsetlinMachine(const MachineConfig& config);

  // Rebuilds a machine from raw states (m rows of 2o interleaved values).
  static TsetlinMachine from_states(const MachineConfig& config,
                                    const std::vector<std::vector<std::uint32_t>>& states);

  [[nodiscard]] const MachineConfig& config() const noexcept { return config_; }
  [[nodiscard]] std::size_t inputs() const noexcept { return config_.inputs; }
  [[nodiscard]] std::size_t clause_count() const noexcept { return config_.clauses; }
  [[nodiscard]] Engine engine() const noexcept { return config_.engine; }
  [[nodiscard]] TsetlinMachine with_engine(Engine engine) const;

  // Interleaved automaton index i in [0, 2o).
  [[nodiscard]] std::uint32_t state(std::size_t clause, std::size_t automaton) const;
  void set_state(std::size_t clause, std::size_t automaton, std::uint32_t value);
  [[nodiscard]] std::vector<std::vector<std::uint32_t>> states() const;
  [[nodiscard]] ClauseTeam team(std::size_t clause) const;

  [[nodiscard]] bool clause_output(std::size_t clause, const LiteralVector& literals,
                                   EvalMode mode) const;
  // Sum of positive-polarity outputs minus negative-polarity outputs.
  [[nodiscard]] long clause_sum(const LiteralVector& literals, EvalMode mode) const;
  [[nodiscard]] long clause_sum(std::span<const std::uint8_t> x, EvalMode mode) const;

  [[nodiscard]] bool predict(const LiteralVector& literals) const;
  [[nodiscard]] bool predict(std::span<const std::uint8_t> x) const;

  // One round of feedback for (literals, y). Clause outputs and the sum are
  // snapshotted before any automaton moves; clause j draws from
  // rng.split(j).
  void train_example(const LiteralVector& literals, bool y, const Rng& rng);

  // config().epochs passes over `train` (labels 0/1) in a freshly shuffled
  // order each epoch.
  TrainReport fit(const BinaryDataset& train, const Rng& rng, const FitOptions& options = {});

  [[nodiscard]] double accuracy(const BinaryDataset& data) const;

  // Clauses with at least one included literal; states are untouched.
  [[nodiscard]] std::vector<ClauseExpression> prune() const;

  friend bool operator==(const TsetlinMachine& a, const TsetlinMachine& b) {
    return a.config_.inputs == b.config_.inputs && a.config_.clauses == b.config_.clauses &&
           a.states() == b.states();
  }

 private:
  TsetlinMachine(const MachineConfig& config, std::nullptr_t);

  MachineConfig config_;
  std::variant<std::vector<ClauseTeam>, std::vector<PlaneBlock>> bank_;
};

// Thresholded vote of a pruned clause list; equals TsetlinMachine::predict
// on the machine it was exported from.
[[nodiscard]] bool predict_expressions(std::span<const ClauseExpression> clauses,
                                       std::span<const std::uint8_t> x);

[[nodiscard]] std::vector<LiteralVector> literal_rows(const BinaryDataset& data);

// Stream tags for Rng::split shared by the training loops.
namespace rng_tags {
inline constexpr std::uint64_t kInit = 0x494E4954;
inline constexpr std::uint64_t kShuffle = 0x53485546;
inline constexpr std::uint64_t kExample = 0x4558414D;
inline constexpr std::uint64_t kNegative = 0x4E454741;
inline constexpr std::uint64_t kTargetBank = 0x54415247;
inline constexpr std::uint64_t kNegativeBank = 0x4E42414E;
inline constexpr std::uint64_t kFit = 0x545241494E;
}  // namespace rng_tags

// Fisher-Yates permutation of 0..n-1 from counter draws.
[[nodiscard]] std::vector<std::size_t> shuffled_order(std::size_t n, const Rng& rng);

}  // namespace tsetlin
