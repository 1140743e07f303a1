#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>

#include "tsetlin/machine.hpp"
#include "tsetlin/multiclass.hpp"

namespace tsetlin {

// Model files are canonical text:
//
//   tsetlin-model 1
//   inputs <o> clauses <m> threshold <T> s <s> state_bits <b> boost <0|1>
//   <2o raw state values of clause 1, interleaved x1 ~x1 x2 ~x2 ...>
//   ...
//
// A multi-class file is "tsetlin-multiclass 1", "classes <n>", then n
// single-output payloads. Output is byte-identical for identical machines.
inline constexpr int kModelFormatVersion = 1;

void write_model(const TsetlinMachine& machine, std::ostream& out);
[[nodiscard]] TsetlinMachine read_model(std::istream& in);
void write_model(const MultiClassMachine& machine, std::ostream& out);
[[nodiscard]] MultiClassMachine read_multiclass_model(std::istream& in);

using AnyModel = std::variant<TsetlinMachine, MultiClassMachine>;
void save_model(const AnyModel& model, const std::filesystem::path& path);
[[nodiscard]] AnyModel load_model(const std::filesystem::path& path);

// "+ ~x1 & x2" (1-based variables, literals ordered by variable).
[[nodiscard]] std::string to_dnf(const ClauseExpression& clause);
// Per variable: 1 (x_k included), 0 (~x_k included), * (neither),
// ! (both, contradictory). Space separated.
[[nodiscard]] std::string to_mask(const ClauseExpression& clause, std::size_t inputs);

}  // namespace tsetlin
