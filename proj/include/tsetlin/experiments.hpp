#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "tsetlin/datasets.hpp"
#include "tsetlin/machine.hpp"

namespace tsetlin {

/// Replication statistics in the column scheme of the benchmark tables:
/// mean with a 95% confidence half-width, 5th/95th percentiles, min, max.
struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double ci95 = 0.0;  // 1.96 * sample sd / sqrt(n); 0 when count == 1
  double p5 = 0.0;
  double p95 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// Percentiles interpolate linearly between order statistics.
[[nodiscard]] Summary summarize(std::vector<double> values);
// "Mean ± CI, 5%ile, 95%ile, Min., Max." in percent; CI omitted for one run.
[[nodiscard]] std::string format_summary(const Summary& s);
void write_summary_csv(const std::string& name, const Summary& s, std::ostream& out);

// Runs replications 0..count-1 on `threads` workers; result r is
// run(base_seed + r). Output order does not depend on scheduling.
[[nodiscard]] std::vector<double> replicate(std::size_t count, std::size_t threads,
                                            std::uint64_t base_seed,
                                            const std::function<double(std::uint64_t)>& run);

// Worker count from TSETLIN_THREADS, else hardware concurrency.
[[nodiscard]] std::size_t default_threads();

namespace experiments {

// Per-epoch test accuracy series; evaluation runs only when set.
using EpochCallback = std::function<void(const EpochRecord&)>;

// Noisy training labels, noise-free test labels. Two-class machine,
// config.clauses per class.
struct NoisyXorSetup {
  std::size_t train_rows = 5000;
  std::size_t test_rows = 5000;
  double noise = 0.4;
  MachineConfig config{12, 10, 15, 3.9, 7, false, 200, 0, Engine::Packed};
};

struct QuantizedSetup {
  unsigned bits_per_feature = 4;
  double train_fraction = 0.8;
  MachineConfig config{0, 300, 10, 3.0, 7, true, 500, 0, Engine::Packed};
};

struct ThresholdSetup {
  double threshold = 0.3;
  MachineConfig config{0, 2000, 50, 10.0, 8, true, 20, 0, Engine::Packed};
};

// Each returns test accuracy in [0, 1] for one seeded replication.
[[nodiscard]] double run_noisy_xor(std::uint64_t seed, const NoisyXorSetup& setup = {},
                                   const EpochCallback& on_epoch = {});

// Random split, quantizer fitted on the training rows, multi-class machine.
[[nodiscard]] double run_quantized(const RealDataset& data, std::uint64_t seed,
                                   const QuantizedSetup& setup,
                                   const EpochCallback& on_epoch = {});

// Fixed train/test files binarized at a threshold, multi-class machine.
[[nodiscard]] double run_thresholded(const RealDataset& train, const RealDataset& test,
                                     std::uint64_t seed, const ThresholdSetup& setup,
                                     const EpochCallback& on_epoch = {});

[[nodiscard]] QuantizedSetup iris_setup();
[[nodiscard]] QuantizedSetup digits_setup();

}  // namespace experiments
}  // namespace tsetlin
