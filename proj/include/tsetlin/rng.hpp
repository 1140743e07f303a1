#pragma once

#include <cstdint>
#include <optional>

namespace tsetlin {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Splittable counter-based random source.
///
/// A value is a key; `uniform(c)` is a pure function of (key, c), so draws
/// are random-access and skipping a draw never shifts any other draw. This
/// is what lets the scalar and bit-plane engines consume identical
/// randomness while visiting automata in different orders.
///
/// `Rng::constant(v)` makes every draw return `v` and propagates through
/// `split`; tests use 0.0 ("always fires") and 1.0 ("never fires").
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : key_(mix64(seed ^ 0x5DEECE66DULL)) {}

  static Rng constant(double value) noexcept {
    Rng r(0);
    r.forced_ = value;
    return r;
  }

  [[nodiscard]] Rng split(std::uint64_t tag) const noexcept {
    Rng child = *this;
    child.key_ = mix64(key_ ^ mix64(tag + 0x632BE59BD9B4E019ULL));
    return child;
  }

  [[nodiscard]] std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix64(key_ + mix64(counter));
  }

  // Uniform in [0, 1), or the forced constant.
  [[nodiscard]] double uniform(std::uint64_t counter) const noexcept {
    if (forced_) return *forced_;
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  // True iff uniform(counter) < p. Probabilities 0 and 1 skip the hash; for a
  // real stream the outcome is the same as drawing.
  [[nodiscard]] bool fires(std::uint64_t counter, double p) const noexcept {
    if (forced_) return *forced_ < p;
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform(counter) < p;
  }

  // Uniform integer in [0, n); n must be positive.
  [[nodiscard]] std::uint64_t below(std::uint64_t counter, std::uint64_t n) const noexcept {
    const auto v = static_cast<std::uint64_t>(uniform(counter) * static_cast<double>(n));
    return v < n ? v : n - 1;
  }

  [[nodiscard]] bool is_constant() const noexcept { return forced_.has_value(); }

 private:
  std::uint64_t key_;
  std::optional<double> forced_;
};

}  // namespace tsetlin
