#include "tsetlin/analysis.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "tsetlin/errors.hpp"
#include "tsetlin/feedback.hpp"

namespace tsetlin::analysis {
namespace {

constexpr double kSlack = 1e-12;

bool probability(double p) { return p >= 0.0 && p <= 1.0; }

// Label probability inside rest \ clause_rest implied by the two conditionals.
double y1_given_outside_clause(const FineEnvironment& f) {
  const double mass = f.p_rest - f.p_clause_rest;
  if (mass <= kSlack) return 0.0;
  return (f.y1_given_rest * f.p_rest - (1.0 - f.y0_given_clause_rest) * f.p_clause_rest) / mass;
}

}  // namespace

PayoffEnvironment PayoffEnvironment::balanced(double theta, double delta, double s) {
  PayoffEnvironment env{theta, delta, s, std::nullopt};
  env.validate();
  return env;
}

PayoffEnvironment PayoffEnvironment::full(double theta, double s, const FineEnvironment& fine) {
  PayoffEnvironment env{theta, 0.0, s, fine};
  env.validate();
  return env;
}

FineEnvironment PayoffEnvironment::resolved() const {
  if (fine) return *fine;
  FineEnvironment f;
  f.p_rest = 0.5 - theta;
  f.p_complement = 0.5;
  f.p_clause_rest = 0.5 - theta;
  f.y1_given_dagger = 1.0 - delta;
  f.y1_given_rest = 1.0 - delta;
  f.y1_given_complement = delta;
  f.y0_given_clause_rest = delta;
  return f;
}

void PayoffEnvironment::validate() const {
  if (!(s > 1.0)) throw ConfigError("s must be greater than 1");
  if (!fine) {
    if (!(theta >= 0.0 && theta <= 0.5)) throw ConfigError("theta must lie in [0, 0.5]");
    if (!(delta >= 0.0 && delta < 0.5)) throw ConfigError("delta must lie in [0, 0.5)");
    return;
  }
  const auto& f = *fine;
  for (double p : {theta, f.p_rest, f.p_complement, f.p_clause_rest, f.y1_given_dagger,
                   f.y1_given_rest, f.y1_given_complement, f.y0_given_clause_rest}) {
    if (!probability(p)) throw ConfigError("environment probabilities must lie in [0, 1]");
  }
  if (theta + f.p_rest + f.p_complement > 1.0 + kSlack) {
    throw ConfigError("set masses sum to more than 1");
  }
  if (f.p_clause_rest > f.p_rest + kSlack) {
    throw ConfigError("clause_rest must be a subset of rest");
  }
  const double implied = y1_given_outside_clause(f);
  if (implied < -1e-9 || implied > 1.0 + 1e-9) {
    throw ConfigError("label probabilities for rest and clause_rest are inconsistent");
  }
}

double type_ii_term(const PayoffEnvironment& env) {
  const auto f = env.resolved();
  return f.y0_given_clause_rest * f.p_clause_rest;
}

double payoff_exclude_full(const PayoffEnvironment& env) {
  const auto f = env.resolved();
  const double s = env.s;
  return f.y1_given_rest * f.p_rest / s + f.y1_given_complement * f.p_complement / s -
         f.y1_given_dagger * env.theta * (s - 1.0) / s - type_ii_term(env);
}

// Include mirrors the Type I part of Exclude and never sees Type II feedback.
double payoff_include_full(const PayoffEnvironment& env) {
  const auto f = env.resolved();
  const double s = env.s;
  return f.y1_given_dagger * env.theta * (s - 1.0) / s - f.y1_given_rest * f.p_rest / s -
         f.y1_given_complement * f.p_complement / s;
}

double payoff_exclude_balanced(double theta, double delta, double s) {
  return (1.0 - delta) * (0.5 - theta) * (1.0 / s) + delta * (1.0 / (2.0 * s)) -
         (1.0 - delta) * theta * ((s - 1.0) / s) - delta * (0.5 - theta);
}

double payoff_include_balanced(double theta, double delta, double s) {
  return (1.0 - delta) * theta * ((s - 1.0) / s) - (1.0 - delta) * (0.5 - theta) * (1.0 / s) -
         delta * (1.0 / (2.0 * s));
}

std::string_view to_string(NashVerdict v) noexcept {
  switch (v) {
    case NashVerdict::IncludeEquilibrium: return "IncludeEquilibrium";
    case NashVerdict::ExcludeEquilibrium: return "ExcludeEquilibrium";
    case NashVerdict::Boundary: return "Boundary";
  }
  return "?";
}

NashVerdict nash_check(double theta, double delta, double s) {
  PayoffEnvironment::balanced(theta, delta, s);
  // 2s times the Exclude payoff, collected so the delta = 0 case is 1 - 2*theta*s.
  const double g = (1.0 - delta) * (1.0 - 2.0 * theta * s) + delta * (1.0 - s + 2.0 * theta * s);
  if (std::abs(g) <= 1e-12 * (1.0 + s)) return NashVerdict::Boundary;
  return g < 0.0 ? NashVerdict::IncludeEquilibrium : NashVerdict::ExcludeEquilibrium;
}

double exclude_sign_boundary_s(double theta, double delta) {
  const double rate = 2.0 * theta * (1.0 - delta) + delta * (1.0 - 2.0 * theta);
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / rate;
}

MonteCarloEstimate monte_carlo_payoff(const PayoffEnvironment& env, Action action,
                                      std::size_t trials, const Rng& rng) {
  if (trials == 0) throw ConfigError("Monte-Carlo estimate needs at least one trial");
  env.validate();
  const auto f = env.resolved();
  const FeedbackParams params{env.s, false};
  const double outside_y1 = y1_given_outside_clause(f);
  const double c1 = env.theta;
  const double c2 = c1 + f.p_clause_rest;
  const double c3 = c1 + f.p_rest;
  const double c4 = c3 + f.p_complement;

  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const Rng trial = rng.split(t);
    const double u = trial.uniform(100);
    bool literal = false;
    bool clause_without = false;  // clause output with this literal excluded
    double y1 = 0.0;
    if (u < c1) {
      literal = true;
      clause_without = true;
      y1 = f.y1_given_dagger;
    } else if (u < c2) {
      clause_without = true;
      y1 = 1.0 - f.y0_given_clause_rest;
    } else if (u < c3) {
      y1 = outside_y1;
    } else if (u < c4) {
      y1 = f.y1_given_complement;
    } else {
      continue;  // no feedback
    }
    const bool y = trial.fires(101, y1);
    const bool clause = action == Action::Include ? clause_without && literal : clause_without;
    const FeedbackTriple triple =
        y ? type_i_probs(action, literal, clause, params) : type_ii_probs(action, literal, clause);
    const Event e = sample_event(triple, trial, 0);
    const double score = e == Event::Reward ? 1.0 : e == Event::Penalty ? -1.0 : 0.0;
    sum += score;
    sum_sq += score * score;
  }
  const double n = static_cast<double>(trials);
  MonteCarloEstimate est;
  est.trials = trials;
  est.mean = sum / n;
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - n * est.mean * est.mean) / (n - 1.0));
    est.std_error = std::sqrt(var / n);
  }
  return est;
}

PayoffRow payoff_row(const GridPoint& p, std::size_t mc_trials, const Rng& rng) {
  const auto env = PayoffEnvironment::balanced(p.theta, p.delta, p.s);
  PayoffRow row;
  row.point = p;
  row.exclude = payoff_exclude_balanced(p.theta, p.delta, p.s);
  row.include = payoff_include_balanced(p.theta, p.delta, p.s);
  row.verdict = nash_check(p.theta, p.delta, p.s);
  row.boundary_s = exclude_sign_boundary_s(p.theta, p.delta);
  if (mc_trials > 0) {
    row.mc_exclude = monte_carlo_payoff(env, Action::Exclude, mc_trials, rng.split(0));
    row.mc_include = monte_carlo_payoff(env, Action::Include, mc_trials, rng.split(1));
  }
  return row;
}

void write_payoff_csv(const std::vector<PayoffRow>& rows, std::ostream& out) {
  out << "theta,delta,s,exclude_payoff,include_payoff,verdict,exclude_positive_below_s,"
         "mc_exclude,mc_exclude_se,mc_include,mc_include_se\n";
  for (const auto& r : rows) {
    out << r.point.theta << ',' << r.point.delta << ',' << r.point.s << ',' << r.exclude << ','
        << r.include << ',' << to_string(r.verdict) << ',' << r.boundary_s;
    if (r.mc_exclude && r.mc_include) {
      out << ',' << r.mc_exclude->mean << ',' << r.mc_exclude->std_error << ','
          << r.mc_include->mean << ',' << r.mc_include->std_error;
    } else {
      out << ",,,,";
    }
    out << '\n';
  }
}

}  // namespace tsetlin::analysis
