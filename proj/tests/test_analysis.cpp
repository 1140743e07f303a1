#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "support.hpp"
#include "tsetlin/analysis.hpp"
#include "tsetlin/errors.hpp"
#include "tsetlin/feedback.hpp"

using namespace tsetlin;
using namespace tsetlin::analysis;

namespace {

// Two variables; the automaton controls l = x1 and the rest of the clause is
// x2. Solution F = x2 | (x1 & ~x2), so F = 0 only at (0,0), where C = 0.
struct TwoVarWorld {
  double p[4];   // P(X) indexed by 2*x1 + x2
  double q[4];   // P(y = 1 | X)
  double s;
};

double brute_force(const TwoVarWorld& w, Action action) {
  const FeedbackParams params{w.s, false};
  double total = 0.0;
  for (int x1 = 0; x1 < 2; ++x1) {
    for (int x2 = 0; x2 < 2; ++x2) {
      const int k = 2 * x1 + x2;
      const bool literal = x1 == 1;
      const bool clause = action == Action::Include ? (x2 == 1 && literal) : x2 == 1;
      for (int y = 0; y < 2; ++y) {
        const double py = y == 1 ? w.q[k] : 1.0 - w.q[k];
        const auto t = y == 1 ? type_i_probs(action, literal, clause, params) : type_ii_probs(action, literal, clause);
        total += w.p[k] * py * (t.reward - t.penalty);
      }
    }
  }
  return total;
}

PayoffEnvironment environment(const TwoVarWorld& w) {
  FineEnvironment f;
  // dagger (1,1); clause_rest (0,1); rest = {(0,1), (1,0)}; complement (0,0).
  f.p_clause_rest = w.p[1];
  f.p_rest = w.p[1] + w.p[2];
  f.p_complement = w.p[0];
  f.y1_given_dagger = w.q[3];
  f.y1_given_rest = f.p_rest > 0 ? (w.p[1] * w.q[1] + w.p[2] * w.q[2]) / f.p_rest : 0.0;
  f.y1_given_complement = w.q[0];
  f.y0_given_clause_rest = 1.0 - w.q[1];
  return PayoffEnvironment::full(w.p[3], w.s, f);
}

bool near(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("balanced payoff examples") {
  CHECK(near(payoff_exclude_balanced(0.125, 0.0, 4.0), 0.0));
  CHECK(near(payoff_exclude_balanced(0.2, 0.0, 4.0), -0.075));
  CHECK(near(payoff_exclude_balanced(0.05, 0.0, 4.0), 0.075));
  CHECK(near(payoff_include_balanced(0.2, 0.0, 4.0), 0.075));
}

TEST_CASE("nash_check examples") {
  CHECK(nash_check(0.2, 0.0, 4.0) == NashVerdict::IncludeEquilibrium);
  CHECK(nash_check(0.05, 0.0, 4.0) == NashVerdict::ExcludeEquilibrium);
  CHECK(nash_check(0.125, 0.0, 4.0) == NashVerdict::Boundary);
  CHECK(to_string(NashVerdict::Boundary) == "Boundary");
}

TEST_CASE("nash_check flips exactly at 1/(2s)") {
  for (double s : {1.5, 2.0, 3.0, 3.9, 4.0, 8.0, 10.0, 100.0}) {
    const double b = 1.0 / (2.0 * s);
    CHECK(nash_check(b, 0.0, s) == NashVerdict::Boundary);
    CHECK(nash_check(std::nextafter(b, 1.0) + 1e-9, 0.0, s) == NashVerdict::IncludeEquilibrium);
    CHECK(nash_check(b - 1e-9, 0.0, s) == NashVerdict::ExcludeEquilibrium);
  }
}

TEST_CASE("verdict agrees with the sign of the balanced payoff") {
  testing::Gen g(71);
  for (int i = 0; i < 5000; ++i) {
    const double t = std::uniform_real_distribution<double>(0.0, 0.5)(g);
    const double d = std::uniform_real_distribution<double>(0.0, 0.49)(g);
    const double s = std::uniform_real_distribution<double>(1.01, 30.0)(g);
    const double e = payoff_exclude_balanced(t, d, s);
    const auto v = nash_check(t, d, s);
    if (std::abs(e) > 1e-9) REQUIRE(v == (e < 0 ? NashVerdict::IncludeEquilibrium : NashVerdict::ExcludeEquilibrium));
    // The boundary s separates the two signs.
    const double sb = exclude_sign_boundary_s(t, d);
    if (std::isfinite(sb) && std::abs(s - sb) > 1e-6) {
      REQUIRE((e > 0) == (s < sb));
    }
  }
}

TEST_CASE("balanced exclude payoff decreases in theta") {
  testing::Gen g(72);
  for (int i = 0; i < 2000; ++i) {
    const double d = std::uniform_real_distribution<double>(0.0, 0.49)(g);
    const double s = std::uniform_real_distribution<double>(1.01, 30.0)(g);
    const double a = std::uniform_real_distribution<double>(0.0, 0.49)(g);
    const double b = a + std::uniform_real_distribution<double>(0.001, 0.5 - a)(g);
    REQUIRE(payoff_exclude_balanced(a, d, s) > payoff_exclude_balanced(b, d, s));
  }
}

TEST_CASE("full forms reduce to the balanced forms") {
  testing::Gen g(73);
  for (int i = 0; i < 1000; ++i) {
    const double t = std::uniform_real_distribution<double>(0.0, 0.5)(g);
    const double d = std::uniform_real_distribution<double>(0.0, 0.49)(g);
    const double s = std::uniform_real_distribution<double>(1.01, 30.0)(g);
    const auto env = PayoffEnvironment::balanced(t, d, s);
    REQUIRE(near(payoff_exclude_full(env), payoff_exclude_balanced(t, d, s), 1e-12));
    REQUIRE(near(payoff_include_full(env), payoff_include_balanced(t, d, s), 1e-12));
  }
}

TEST_CASE("full payoff examples") {
  const auto empty = PayoffEnvironment::full(0.0, 4.0, FineEnvironment{});
  CHECK(payoff_exclude_full(empty) == 0.0);
  CHECK(payoff_include_full(empty) == 0.0);
  FineEnvironment f;
  f.p_rest = 0.3;
  f.p_clause_rest = 0.3;
  f.y0_given_clause_rest = 1.0;
  const auto only_ii = PayoffEnvironment::full(0.0, 4.0, f);
  CHECK(near(payoff_exclude_full(only_ii), -0.3));
  CHECK(near(payoff_include_full(only_ii), 0.0));
}

TEST_CASE("full payoffs match exhaustive two-variable enumeration") {
  testing::Gen g(74);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    TwoVarWorld w{};
    double total = 0.0;
    for (double& p : w.p) total += (p = u(g));
    for (double& p : w.p) p /= total;
    for (double& q : w.q) q = u(g);
    w.s = 1.0 + 20.0 * u(g) + 1e-3;
    const auto env = environment(w);
    const double ex = payoff_exclude_full(env);
    const double in = payoff_include_full(env);
    REQUIRE(near(ex, brute_force(w, Action::Exclude), 1e-12));
    REQUIRE(near(in, brute_force(w, Action::Include), 1e-12));
    // Symmetry: the sum is minus the Type II term.
    REQUIRE(near(in + ex, -type_ii_term(env), 1e-12));
  }
}

TEST_CASE("environment validation") {
  CHECK_THROWS_AS(PayoffEnvironment::balanced(0.6, 0.0, 4.0), ConfigError);
  CHECK_THROWS_AS(PayoffEnvironment::balanced(0.2, 0.5, 4.0), ConfigError);
  CHECK_THROWS_AS(PayoffEnvironment::balanced(0.2, 0.0, 1.0), ConfigError);
  FineEnvironment f;
  f.p_rest = 0.2;
  f.p_clause_rest = 0.3;
  CHECK_THROWS_AS(PayoffEnvironment::full(0.1, 4.0, f), ConfigError);
  f.p_clause_rest = 0.1;
  f.p_complement = 0.8;
  CHECK_THROWS_AS(PayoffEnvironment::full(0.1, 4.0, f), ConfigError);
}

TEST_CASE("monte carlo examples") {
  const auto env = PayoffEnvironment::balanced(0.2, 0.0, 4.0);
  CHECK_THROWS_AS((void)monte_carlo_payoff(env, Action::Exclude, 0, Rng(1)), ConfigError);
  const auto est = monte_carlo_payoff(env, Action::Exclude, 1000000, Rng(2));
  CHECK(std::abs(est.mean + 0.075) <= 4 * est.std_error);
  const auto inc = monte_carlo_payoff(env, Action::Include, 200000, Rng(3));
  CHECK(std::abs(inc.mean - 0.075) <= 4 * inc.std_error);

  const auto quiet = PayoffEnvironment::full(0.0, 4.0, FineEnvironment{});
  const auto zero = monte_carlo_payoff(quiet, Action::Exclude, 1000, Rng(4));
  CHECK(zero.mean == 0.0);
  CHECK(zero.std_error == 0.0);
}

TEST_CASE("monte carlo agrees with full payoffs on random environments") {
  testing::Gen g(75);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    TwoVarWorld w{};
    double total = 0.0;
    for (double& p : w.p) total += (p = u(g));
    for (double& p : w.p) p /= total;
    for (double& q : w.q) q = u(g);
    w.s = 1.5 + 8.0 * u(g);
    const auto env = environment(w);
    for (auto a : {Action::Exclude, Action::Include}) {
      const auto est = monte_carlo_payoff(env, a, 100000, Rng(g()));
      const double want = a == Action::Exclude ? payoff_exclude_full(env) : payoff_include_full(env);
      CHECK(std::abs(est.mean - want) <= 4 * est.std_error + 1e-12);
    }
  }
}

TEST_CASE("payoff CSV") {
  std::vector<PayoffRow> rows{payoff_row({0.2, 0.0, 4.0}, 0, Rng(1)), payoff_row({0.05, 0.1, 4.0}, 100, Rng(1))};
  std::ostringstream out;
  write_payoff_csv(rows, out);
  const auto text = out.str();
  CHECK(text.find("theta,delta,s,exclude_payoff") == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(text.find("0.2,0,4,-0.075,0.075,IncludeEquilibrium,2.5,,,,") != std::string::npos);
}
