#include <doctest.h>

#include <array>
#include <cmath>

#include "support.hpp"
#include "tsetlin/errors.hpp"
#include "tsetlin/feedback.hpp"
#include "tsetlin/plane_block.hpp"

using namespace tsetlin;

namespace {

bool same(const FeedbackTriple& a, const FeedbackTriple& b) {
  return std::abs(a.reward - b.reward) < 1e-12 && std::abs(a.inaction - b.inaction) < 1e-12 &&
         std::abs(a.penalty - b.penalty) < 1e-12;
}

const FeedbackParams kS4{4.0, false};
const FeedbackParams kS4Boost{4.0, true};

}  // namespace

TEST_CASE("Type I table examples") {
  CHECK(same(type_i_probs(Action::Include, true, true, kS4), {0.75, 0.25, 0.0}));
  CHECK(same(type_i_probs(Action::Exclude, true, true, kS4), {0.0, 0.25, 0.75}));
  CHECK(same(type_i_probs(Action::Include, true, true, kS4Boost), {1.0, 0.0, 0.0}));
  CHECK(same(type_i_probs(Action::Exclude, false, false, kS4), {0.25, 0.75, 0.0}));
  // Remaining cells.
  CHECK(same(type_i_probs(Action::Include, false, true, kS4), {0.0, 1.0, 0.0}));
  CHECK(same(type_i_probs(Action::Exclude, false, true, kS4), {0.25, 0.75, 0.0}));
  CHECK(same(type_i_probs(Action::Include, true, false, kS4), {0.0, 0.75, 0.25}));
  CHECK(same(type_i_probs(Action::Include, false, false, kS4), {0.0, 0.75, 0.25}));
  CHECK(same(type_i_probs(Action::Exclude, true, false, kS4), {0.25, 0.75, 0.0}));
  CHECK(same(type_i_probs(Action::Exclude, true, true, kS4Boost), {0.0, 0.0, 1.0}));
}

TEST_CASE("Type II table examples") {
  CHECK(same(type_ii_probs(Action::Exclude, false, true), {0.0, 0.0, 1.0}));
  CHECK(same(type_ii_probs(Action::Include, true, true), {0.0, 1.0, 0.0}));
  CHECK(same(type_ii_probs(Action::Exclude, true, false), {0.0, 1.0, 0.0}));
  CHECK(same(type_ii_probs(Action::Exclude, true, true), {0.0, 1.0, 0.0}));
  CHECK(same(type_ii_probs(Action::Include, false, false), {0.0, 1.0, 0.0}));
}

TEST_CASE("table invariants over all cells and random s") {
  testing::Gen g(31);
  for (int i = 0; i < 1000; ++i) {
    const double s = std::uniform_real_distribution<double>(1.001, 50.0)(g);
    for (auto a : {Action::Include, Action::Exclude}) {
      for (bool lit : {false, true}) {
        for (bool cl : {false, true}) {
          const auto off = type_i_probs(a, lit, cl, {s, false});
          const auto on = type_i_probs(a, lit, cl, {s, true});
          const auto t2 = type_ii_probs(a, lit, cl);
          for (const auto& t : {off, on, t2}) REQUIRE(std::abs(t.reward + t.inaction + t.penalty - 1.0) < 1e-12);
          REQUIRE(t2.reward == 0.0);
          if (a == Action::Include) REQUIRE(t2.penalty == 0.0);
          if (cl && lit && a == Action::Include) REQUIRE(off.penalty == 0.0);
          if (!(cl && lit)) REQUIRE(same(off, on));
        }
      }
    }
  }
}

TEST_CASE("feedback params validation") {
  CHECK_THROWS_AS(FeedbackParams({1.0, false}).validate(), ConfigError);
  CHECK_NOTHROW(FeedbackParams({1.5, false}).validate());
}

TEST_CASE("forced rng: always fire, boost on, Include on true literals") {
  // X = 1 1 1 makes every x_k true; the ~x_k half sits on Exclude.
  const auto x = LiteralVector::from_bits(std::vector<std::uint8_t>{1, 1, 1});
  ClauseTeam team(3, 4, Polarity::Positive, {4, 2, 5, 0, 7, 3});
  auto packed = pack_team(team);
  apply_type_i(team, x, true, {3.0, true}, Rng::constant(0.0));
  apply_type_i(packed, x, true, {3.0, true}, Rng::constant(0.0));
  // Include: +1, saturating at 7. Exclude on a false literal: reward toward 0.
  const std::vector<std::uint32_t> want{5, 1, 6, 0, 7, 2};
  CHECK(std::vector<std::uint32_t>(team.values().begin(), team.values().end()) == want);
  CHECK(unpack_block(packed) == team);
}

TEST_CASE("forced rng: never fire leaves the team unchanged") {
  testing::Gen g(32);
  for (int i = 0; i < 200; ++i) {
    const std::size_t o = testing::pick(g, 1, 40);
    const unsigned bits = static_cast<unsigned>(testing::pick(g, 1, 8));
    auto team = testing::random_team(g, o, bits);
    const auto before = team;
    auto block = pack_team(team);
    const auto x = LiteralVector::from_bits(testing::random_bits(g, o));
    const bool out = clause_evaluate(team, x, EvalMode::Training);
    apply_type_i(team, x, out, {3.0, false}, Rng::constant(1.0));
    apply_type_i(block, x, out, {3.0, false}, Rng::constant(1.0));
    REQUIRE(team == before);
    REQUIRE(unpack_block(block, team.polarity()) == before);
  }
}

TEST_CASE("Type II examples") {
  const auto x = LiteralVector::from_bits(std::vector<std::uint8_t>{1, 0});
  // N = 2, all Exclude at N-1 = 1.
  ClauseTeam team(2, 2, Polarity::Positive, {1, 1, 1, 1});
  auto block = pack_team(team);
  const auto before = team;
  apply_type_ii(team, x, false, Rng(5));
  CHECK(team == before);
  apply_type_ii(team, x, true, Rng(5));
  apply_type_ii(block, x, true, Rng(5));
  // Interleaved x1, ~x1, x2, ~x2: ~x1 and x2 are the false literals.
  const std::vector<std::uint32_t> want{1, 2, 2, 1};
  CHECK(std::vector<std::uint32_t>(team.values().begin(), team.values().end()) == want);
  CHECK(team.action(1) == Action::Include);
  CHECK(unpack_block(block) == team);

  // No Exclude automaton on a false literal: nothing to penalize.
  ClauseTeam full(2, 2, Polarity::Positive, {3, 3, 3, 3});
  const auto keep = full;
  apply_type_ii(full, x, true, Rng(5));
  CHECK(full == keep);
  ClauseTeam tight(2, 2, Polarity::Positive, {3, 2, 2, 3});
  const auto tight_before = tight;
  apply_type_ii(tight, x, true, Rng(5));
  CHECK(tight == tight_before);
}

TEST_CASE("scalar and packed feedback agree under shared streams") {
  testing::Gen g(33);
  for (int i = 0; i < 3000; ++i) {
    const std::size_t o = testing::pick(g, 1, 80);
    const unsigned bits = static_cast<unsigned>(testing::pick(g, 1, 6));
    auto team = testing::random_team(g, o, bits);
    auto block = pack_team(team);
    const auto x = LiteralVector::from_bits(testing::random_bits(g, o));
    const bool out = clause_evaluate(team, x, EvalMode::Training);
    const Rng rng(g());
    const FeedbackParams params{std::uniform_real_distribution<double>(1.1, 20.0)(g), bool(g() & 1U)};
    if (g() & 1U) {
      apply_type_i(team, x, out, params, rng);
      apply_type_i(block, x, out, params, rng);
    } else {
      apply_type_ii(team, x, out, rng);
      apply_type_ii(block, x, out, rng);
    }
    REQUIRE(unpack_block(block, team.polarity()) == team);
  }
}

TEST_CASE("sample_event frequencies within 3 sigma, 10^5 trials") {
  const FeedbackTriple t{0.3, 0.45, 0.25};
  const Rng base(34);
  const int n = 100000;
  std::array<int, 3> counts{};
  for (int k = 0; k < n; ++k) counts[static_cast<int>(sample_event(t, base.split(k), 3))]++;
  auto within = [&](int count, double p) {
    return std::abs(count - n * p) <= 3.0 * std::sqrt(n * p * (1 - p));
  };
  CHECK(within(counts[0], t.reward));
  CHECK(within(counts[1], t.penalty));
  CHECK(within(counts[2], t.inaction));
}

TEST_CASE("forced draws follow the u < p rule") {
  const FeedbackTriple t{0.5, 0.5, 0.0};
  CHECK(sample_event(t, Rng::constant(0.0), 0) == Event::Reward);
  CHECK(sample_event(t, Rng::constant(0.7), 0) == Event::Inaction);
  CHECK(sample_event({0.0, 0.0, 1.0}, Rng::constant(0.7), 0) == Event::Penalty);
  CHECK(sample_event({0.0, 0.0, 1.0}, Rng::constant(1.0), 0) == Event::Inaction);
}
