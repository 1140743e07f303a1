#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tsetlin/errors.hpp"
#include "tsetlin/experiments.hpp"

using namespace tsetlin;

TEST_CASE("summary statistics") {
  const auto s = summarize({0.9, 0.8, 1.0, 0.7, 0.6});
  CHECK(s.count == 5);
  CHECK(s.mean == doctest::Approx(0.8));
  // sd = sqrt(0.025) = 0.1581; ci = 1.96 * sd / sqrt(5).
  CHECK(s.ci95 == doctest::Approx(1.96 * std::sqrt(0.025) / std::sqrt(5.0)));
  CHECK(s.min == 0.6);
  CHECK(s.max == 1.0);
  CHECK(s.p5 == doctest::Approx(0.62));
  CHECK(s.p95 == doctest::Approx(0.98));
  CHECK_THROWS_AS((void)summarize({}), ContractError);
}

TEST_CASE("summary formatting") {
  const auto one = summarize({0.95});
  CHECK(one.ci95 == 0.0);
  CHECK(format_summary(one) == "95.0 (single run)");
  const auto many = summarize({0.9, 1.0});
  CHECK(format_summary(many).find("mean 95.0 ±") == 0);
  std::ostringstream out;
  write_summary_csv("xor", one, out);
  CHECK(out.str() == "experiment,replications,mean,ci95,p5,p95,min,max\nxor,1,95,,95,95,95,95\n");
}

TEST_CASE("replicate is deterministic regardless of threads") {
  auto f = [](std::uint64_t seed) { return static_cast<double>(mix64(seed) % 1000); };
  const auto a = replicate(17, 1, 100, f);
  const auto b = replicate(17, 4, 100, f);
  CHECK(a == b);
  CHECK(a[3] == f(103));
  CHECK_THROWS_AS((void)replicate(3, 2, 0, [](std::uint64_t s) -> double {
                    if (s == 1) throw ConfigError("boom");
                    return 0.0;
                  }),
                  ConfigError);
}

TEST_CASE("small XOR experiment runs") {
  experiments::NoisyXorSetup setup;
  setup.train_rows = 500;
  setup.test_rows = 500;
  setup.config.epochs = 5;
  int epochs = 0;
  const double acc = experiments::run_noisy_xor(1, setup, [&](const EpochRecord& r) {
    ++epochs;
    CHECK(r.test_accuracy.has_value());
  });
  CHECK(epochs == 5);
  CHECK(acc >= 0.0);
  CHECK(acc <= 1.0);
  CHECK(experiments::run_noisy_xor(1, setup) == acc);
}
