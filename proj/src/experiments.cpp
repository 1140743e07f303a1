#include "tsetlin/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "tsetlin/errors.hpp"
#include "tsetlin/multiclass.hpp"

namespace tsetlin {
namespace {

double percentile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

Summary summarize(std::vector<double> values) {
  if (values.empty()) throw ContractError("cannot summarize zero replications");
  std::sort(values.begin(), values.end());
  Summary s;
  s.count = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double sd = std::sqrt(ss / static_cast<double>(s.count - 1));
    s.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(s.count));
  }
  s.p5 = percentile(values, 0.05);
  s.p95 = percentile(values, 0.95);
  s.min = values.front();
  s.max = values.back();
  return s;
}

std::string format_summary(const Summary& s) {
  char buf[160];
  if (s.count == 1) {
    std::snprintf(buf, sizeof buf, "%.1f (single run)", 100.0 * s.mean);
  } else {
    std::snprintf(buf, sizeof buf, "mean %.1f ± %.1f  5%%ile %.1f  95%%ile %.1f  min %.1f  max %.1f",
                  100.0 * s.mean, 100.0 * s.ci95, 100.0 * s.p5, 100.0 * s.p95, 100.0 * s.min,
                  100.0 * s.max);
  }
  return buf;
}

void write_summary_csv(const std::string& name, const Summary& s, std::ostream& out) {
  out << "experiment,replications,mean,ci95,p5,p95,min,max\n" << name << ',' << s.count << ','
      << 100.0 * s.mean << ',';
  if (s.count > 1) out << 100.0 * s.ci95;
  out << ',' << 100.0 * s.p5 << ',' << 100.0 * s.p95 << ',' << 100.0 * s.min << ','
      << 100.0 * s.max << '\n';
}

std::size_t default_threads() {
  if (const char* env = std::getenv("TSETLIN_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<std::size_t>(n);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<double> replicate(std::size_t count, std::size_t threads, std::uint64_t base_seed,
                              const std::function<double(std::uint64_t)>& run) {
  std::vector<double> results(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t r = next++; r < count; r = next++) {
      try {
        results[r] = run(base_seed + r);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

namespace experiments {

double run_noisy_xor(std::uint64_t seed, const NoisyXorSetup& setup, const EpochCallback& on_epoch) {
  NoisyXorOptions train_opts;
  train_opts.inputs = setup.config.inputs;
  train_opts.noise = setup.noise;
  NoisyXorOptions test_opts = train_opts;
  test_opts.noise = 0.0;
  const auto train = gen_noisy_xor(setup.train_rows, mix64(seed * 2 + 1), train_opts);
  const auto test = gen_noisy_xor(setup.test_rows, mix64(seed * 2 + 2), test_opts);

  MachineConfig config = setup.config;
  config.seed = seed;
  MultiClassMachine mc(2, config);
  FitOptions opts;
  opts.track_train_accuracy = false;
  if (on_epoch) {
    opts.eval = &test;
    opts.on_epoch = on_epoch;
  }
  mc.fit(train, Rng(seed).split(rng_tags::kFit), opts);
  return mc.accuracy(test);
}

double run_quantized(const RealDataset& data, std::uint64_t seed, const QuantizedSetup& setup,
                     const EpochCallback& on_epoch) {
  const auto [train_idx, test_idx] =
      split_indices(data.features.rows, setup.train_fraction, seed);
  const auto train_x = data.features.select_rows(train_idx);
  const auto test_x = data.features.select_rows(test_idx);
  const auto q = Quantizer::fit(train_x, setup.bits_per_feature);
  std::vector<std::uint32_t> train_y, test_y;
  for (auto i : train_idx) train_y.push_back(data.labels[i]);
  for (auto i : test_idx) test_y.push_back(data.labels[i]);
  const auto train = make_dataset(q.encode(train_x), train_y, data.classes);
  const auto test = make_dataset(q.encode(test_x), test_y, data.classes);

  MachineConfig config = setup.config;
  config.inputs = train.inputs();
  config.seed = seed;
  MultiClassMachine mc(data.classes, config);
  FitOptions opts;
  opts.track_train_accuracy = false;
  if (on_epoch) {
    opts.eval = &test;
    opts.on_epoch = on_epoch;
  }
  mc.fit(train, Rng(seed).split(rng_tags::kFit), opts);
  return mc.accuracy(test);
}

double run_thresholded(const RealDataset& train_raw, const RealDataset& test_raw,
                       std::uint64_t seed, const ThresholdSetup& setup,
                       const EpochCallback& on_epoch) {
  const std::size_t classes = std::max(train_raw.classes, test_raw.classes);
  const auto train =
      make_dataset(binarize_threshold(train_raw.features, setup.threshold), train_raw.labels, classes);
  const auto test =
      make_dataset(binarize_threshold(test_raw.features, setup.threshold), test_raw.labels, classes);
  MachineConfig config = setup.config;
  config.inputs = train.inputs();
  config.seed = seed;
  MultiClassMachine mc(classes, config);
  FitOptions opts;
  opts.track_train_accuracy = false;
  opts.eval = &test;
  opts.on_epoch = on_epoch;
  mc.fit(train, Rng(seed).split(rng_tags::kFit), opts);
  return mc.accuracy(test);
}

QuantizedSetup iris_setup() { return QuantizedSetup{}; }

QuantizedSetup digits_setup() {
  QuantizedSetup s;
  s.bits_per_feature = 3;
  s.config.clauses = 1000;
  s.config.state_bits = 10;
  s.config.epochs = 300;
  return s;
}

}  // namespace experiments
}  // namespace tsetlin
