#include "tsetlin/model_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tsetlin/errors.hpp"

namespace tsetlin {
namespace {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string next_token(std::istream& in, const char* what) {
  std::string tok;
  if (!(in >> tok)) throw ParseError(std::string("model file truncated: expected ") + what);
  return tok;
}

void expect(std::istream& in, const std::string& keyword) {
  const auto tok = next_token(in, keyword.c_str());
  if (tok != keyword) throw ParseError("model file: expected '" + keyword + "', got '" + tok + "'");
}

template <typename T>
T read_value(std::istream& in, const char* what) {
  const auto tok = next_token(in, what);
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(std::string("model file: bad ") + what + " '" + tok + "'");
  }
  return value;
}

void write_payload(const TsetlinMachine& m, std::ostream& out) {
  const auto& c = m.config();
  out << "tsetlin-model " << kModelFormatVersion << '\n'
      << "inputs " << c.inputs << " clauses " << c.clauses << " threshold " << c.threshold
      << " s " << format_double(c.s) << " state_bits " << c.state_bits << " boost "
      << (c.boost ? 1 : 0) << '\n';
  std::string line;
  for (const auto& row : m.states()) {
    line.clear();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i != 0) line.push_back(' ');
      line += std::to_string(row[i]);
    }
    line.push_back('\n');
    out << line;
  }
}

TsetlinMachine read_payload(std::istream& in) {
  expect(in, "tsetlin-model");
  const int version = read_value<int>(in, "format version");
  if (version != kModelFormatVersion) {
    throw ParseError("unsupported model format version " + std::to_string(version));
  }
  MachineConfig c;
  expect(in, "inputs");
  c.inputs = read_value<std::size_t>(in, "inputs");
  expect(in, "clauses");
  c.clauses = read_value<std::size_t>(in, "clauses");
  expect(in, "threshold");
  c.threshold = read_value<int>(in, "threshold");
  expect(in, "s");
  c.s = read_value<double>(in, "s");
  expect(in, "state_bits");
  c.state_bits = read_value<unsigned>(in, "state_bits");
  expect(in, "boost");
  const int boost = read_value<int>(in, "boost");
  if (boost != 0 && boost != 1) throw ParseError("model file: boost must be 0 or 1");
  c.boost = boost == 1;
  c.epochs = 0;
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
  const std::uint32_t top = (1U << c.state_bits) - 1;
  std::vector<std::vector<std::uint32_t>> states(c.clauses, std::vector<std::uint32_t>(2 * c.inputs));
  for (std::size_t j = 0; j < c.clauses; ++j) {
    for (auto& v : states[j]) {
      v = read_value<std::uint32_t>(in, "state value");
      if (v > top) throw ParseError("model file: state " + std::to_string(v) + " exceeds " + std::to_string(top));
    }
  }
  return TsetlinMachine::from_states(c, states);
}

}  // namespace

void write_model(const TsetlinMachine& machine, std::ostream& out) { write_payload(machine, out); }

TsetlinMachine read_model(std::istream& in) { return read_payload(in); }

void write_model(const MultiClassMachine& machine, std::ostream& out) {
  out << "tsetlin-multiclass " << kModelFormatVersion << '\n'
      << "classes " << machine.classes() << '\n';
  for (std::size_t c = 0; c < machine.classes(); ++c) write_payload(machine.bank(c), out);
}

MultiClassMachine read_multiclass_model(std::istream& in) {
  expect(in, "tsetlin-multiclass");
  const int version = read_value<int>(in, "format version");
  if (version != kModelFormatVersion) {
    throw ParseError("unsupported model format version " + std::to_string(version));
  }
  expect(in, "classes");
  const auto n = read_value<std::size_t>(in, "class count");
  if (n < 2) throw ParseError("model file: need at least two classes");
  std::vector<TsetlinMachine> banks;
  banks.reserve(n);
  for (std::size_t c = 0; c < n; ++c) banks.push_back(read_payload(in));
  return MultiClassMachine(std::move(banks));
}

void save_model(const AnyModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model " + path.string());
  std::visit([&](const auto& m) { write_model(m, out); }, model);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

AnyModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model " + path.string());
  std::string magic;
  in >> magic;
  in.seekg(0);
  try {
    if (magic == "tsetlin-model") return read_model(in);
    if (magic == "tsetlin-multiclass") return read_multiclass_model(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  throw ParseError(path.string() + ": not a model file");
}

std::string to_dnf(const ClauseExpression& clause) {
  std::vector<std::pair<std::size_t, bool>> lits;
  for (auto k : clause.positive) lits.emplace_back(k, false);
  for (auto k : clause.negated) lits.emplace_back(k, true);
  std::sort(lits.begin(), lits.end());
  std::string out = clause.polarity == Polarity::Positive ? "+" : "-";
  for (std::size_t i = 0; i < lits.size(); ++i) {
    out += i == 0 ? " " : " & ";
    if (lits[i].second) out.push_back('~');
    out += "x" + std::to_string(lits[i].first + 1);
  }
  return out;
}

std::string to_mask(const ClauseExpression& clause, std::size_t inputs) {
  std::string out;
  for (std::size_t k = 0; k < inputs; ++k) {
    const bool pos = std::find(clause.positive.begin(), clause.positive.end(), k) != clause.positive.end();
    const bool neg = std::find(clause.negated.begin(), clause.negated.end(), k) != clause.negated.end();
    if (k != 0) out.push_back(' ');
    out.push_back(pos && neg ? '!' : pos ? '1' : neg ? '0' : '*');
  }
  return out;
}

}  // namespace tsetlin
