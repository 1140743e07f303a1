#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "tsetlin/automaton.hpp"
#include "tsetlin/rng.hpp"

// Expected payoffs of one automaton's Include/Exclude choice inside a clause
// that is part of a solution, with Monte-Carlo cross-checks against the
// feedback tables. Payoff scores Reward +1, Penalty -1, Inaction 0.
namespace tsetlin::analysis {

/// Set masses and conditional label probabilities for one automaton
/// controlling literal l in clause C, relative to a solution formula F:
///
///   dagger      F(X)=1, C(X)=1, l=1         mass theta
///   clause_rest F(X)=1, C(X)=1, l=0         mass p_clause_rest
///   rest        F(X)=1 minus dagger         mass p_rest (contains clause_rest)
///   complement  F(X)=0 (C(X)=0 there)       mass p_complement
///
/// Any mass left over is outside all sets and produces no feedback.
struct FineEnvironment {
  double p_rest = 0.0;
  double p_complement = 0.0;
  double p_clause_rest = 0.0;
  double y1_given_dagger = 0.0;
  double y1_given_rest = 0.0;
  double y1_given_complement = 0.0;
  double y0_given_clause_rest = 0.0;
};

struct PayoffEnvironment {
  double theta = 0.0;
  double delta = 0.0;
  double s = 2.0;
  std::optional<FineEnvironment> fine;  // absent: the balanced regime

  // The self-balancing regime: F(X)=1 on half the mass, C=1 on all of it,
  // labels flipped with probability delta.
  static PayoffEnvironment balanced(double theta, double delta, double s);
  static PayoffEnvironment full(double theta, double s, const FineEnvironment& fine);

  // Fine-grained view; derived from (theta, delta) in the balanced regime.
  [[nodiscard]] FineEnvironment resolved() const;
  // Throws ConfigError on out-of-range or inconsistent probabilities.
  void validate() const;
};

[[nodiscard]] double payoff_exclude_full(const PayoffEnvironment& env);
[[nodiscard]] double payoff_include_full(const PayoffEnvironment& env);
// The false-positive (Type II) penalty that only Exclude pays.
[[nodiscard]] double type_ii_term(const PayoffEnvironment& env);

[[nodiscard]] double payoff_exclude_balanced(double theta, double delta, double s);
[[nodiscard]] double payoff_include_balanced(double theta, double delta, double s);

enum class NashVerdict : std::uint8_t { IncludeEquilibrium, ExcludeEquilibrium, Boundary };
[[nodiscard]] std::string_view to_string(NashVerdict v) noexcept;

// Sign of the balanced Exclude payoff: negative favours Include. With
// delta = 0 the flip sits exactly at theta = 1/(2s).
[[nodiscard]] NashVerdict nash_check(double theta, double delta, double s);

// The s at which the balanced Exclude payoff changes sign; Exclude pays
// positively for s below it. Infinity when theta = delta = 0.
[[nodiscard]] double exclude_sign_boundary_s(double theta, double delta);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

// Simulates (set membership, label, literal, clause) draws from env, samples
// feedback events from the Type I (y=1) / Type II (y=0) tables, and averages
// the scores. Throws ConfigError if trials == 0.
[[nodiscard]] MonteCarloEstimate monte_carlo_payoff(const PayoffEnvironment& env, Action action,
                                                    std::size_t trials, const Rng& rng);

struct GridPoint {
  double theta;
  double delta;
  double s;
};

struct PayoffRow {
  GridPoint point;
  double exclude = 0.0;
  double include = 0.0;
  NashVerdict verdict = NashVerdict::Boundary;
  double boundary_s = 0.0;
  std::optional<MonteCarloEstimate> mc_exclude;
  std::optional<MonteCarloEstimate> mc_include;
};

[[nodiscard]] PayoffRow payoff_row(const GridPoint& p, std::size_t mc_trials, const Rng& rng);
void write_payoff_csv(const std::vector<PayoffRow>& rows, std::ostream& out);

}  // namespace tsetlin::analysis
