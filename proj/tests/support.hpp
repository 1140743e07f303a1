#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tsetlin/clause.hpp"
#include "tsetlin/datasets.hpp"
#include "tsetlin/machine.hpp"

namespace tsetlin::testing {

using Gen = std::mt19937_64;

inline std::size_t pick(Gen& g, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(g);
}

inline std::vector<std::uint8_t> random_bits(Gen& g, std::size_t n) {
  std::vector<std::uint8_t> x(n);
  for (auto& b : x) b = static_cast<std::uint8_t>(g() & 1U);
  return x;
}

// Values biased toward Exclude so clauses fire often enough to matter.
inline std::vector<std::uint32_t> random_values(Gen& g, std::size_t n, unsigned bits) {
  const std::uint32_t half = 1U << (bits - 1);
  const double include_rate = std::uniform_real_distribution<double>(0.0, 0.5)(g);
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) {
    const bool inc = std::bernoulli_distribution(include_rate)(g);
    x = static_cast<std::uint32_t>(inc ? half + pick(g, 0, half - 1) : pick(g, 0, half - 1));
  }
  return v;
}

inline ClauseTeam random_team(Gen& g, std::size_t inputs, unsigned bits) {
  return ClauseTeam(inputs, 1U << (bits - 1), g() & 1U ? Polarity::Positive : Polarity::Negative,
                    random_values(g, 2 * inputs, bits));
}

inline MachineConfig random_config(Gen& g, std::size_t max_inputs, std::size_t max_clause_pairs,
                                   unsigned max_bits) {
  MachineConfig c;
  c.inputs = pick(g, 1, max_inputs);
  c.clauses = 2 * pick(g, 1, max_clause_pairs);
  c.threshold = static_cast<int>(pick(g, 1, 10));
  c.s = std::uniform_real_distribution<double>(1.05, 10.0)(g);
  c.state_bits = static_cast<unsigned>(pick(g, 1, max_bits));
  c.boost = g() & 1U;
  c.epochs = 1;
  c.seed = g();
  c.engine = g() & 1U ? Engine::Packed : Engine::Scalar;
  return c;
}

inline TsetlinMachine random_machine(Gen& g, const MachineConfig& c) {
  std::vector<std::vector<std::uint32_t>> states;
  for (std::size_t j = 0; j < c.clauses; ++j) states.push_back(random_values(g, 2 * c.inputs, c.state_bits));
  return TsetlinMachine::from_states(c, states);
}

inline BinaryDataset random_dataset(Gen& g, std::size_t inputs, std::size_t rows, std::size_t classes = 2) {
  BinaryDataset d(inputs, classes);
  for (std::size_t r = 0; r < rows; ++r) {
    d.add_row(random_bits(g, inputs), static_cast<std::uint32_t>(pick(g, 0, classes - 1)));
  }
  return d;
}

// The four clauses of the XOR solution over two inputs with b = 2:
// +(~x1 & x2), -(~x1 & ~x2), +(x1 & ~x2), -(x1 & x2).
inline TsetlinMachine xor_fixture() {
  MachineConfig c{2, 4, 1, 3.9, 2, false, 0, 1, Engine::Packed};
  return TsetlinMachine::from_states(c, {{0, 3, 3, 0}, {0, 3, 0, 3}, {3, 0, 0, 3}, {3, 0, 3, 0}});
}

}  // namespace tsetlin::testing
