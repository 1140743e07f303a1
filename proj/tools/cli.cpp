#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tsetlin/analysis.hpp"
#include "tsetlin/datasets.hpp"
#include "tsetlin/errors.hpp"
#include "tsetlin/experiments.hpp"
#include "tsetlin/machine.hpp"
#include "tsetlin/model_io.hpp"
#include "tsetlin/multiclass.hpp"

#ifndef TSETLIN_DATA_DIR
#define TSETLIN_DATA_DIR "data"
#endif

namespace tsetlin::cli {
namespace {

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

// ---- gen ----

struct GenArgs {
  std::string kind;
  std::string out;
  std::size_t count = 10000;
  std::size_t inputs = 12;
  double noise = 0.4;
  std::uint64_t seed = 1;
  std::string input;
  unsigned bits = 4;
  double threshold = 0.3;
  bool use_threshold = false;
  std::string images;
  std::string labels;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  BinaryDataset data(1, 2);
  if (a.kind == "xor") {
    NoisyXorOptions opts;
    opts.inputs = a.inputs;
    opts.noise = a.noise;
    data = gen_noisy_xor(a.count, a.seed, opts);
  } else if (a.kind == "csv") {
    if (a.input.empty()) throw ConfigError("gen csv needs --input");
    const auto raw = load_csv(a.input);
    const auto bits =
        a.use_threshold ? binarize_threshold(raw.features, a.threshold) : quantize_bits(raw.features, a.bits);
    data = make_dataset(bits, raw.labels, raw.classes);
  } else {
    if (a.images.empty() || a.labels.empty()) throw ConfigError("gen mnist needs --images and --labels");
    const auto raw = load_idx(a.images, a.labels);
    data = make_dataset(binarize_threshold(raw.features, a.threshold), raw.labels, raw.classes);
  }
  save_dataset(data, a.out);
  out << "wrote " << data.size() << " rows of width " << data.inputs() << " to " << a.out << '\n';
  return kExitOk;
}

// ---- train ----

struct TrainArgs {
  std::string train;
  std::string test;
  std::string model;
  std::string report;
  MachineConfig config{0, 20, 15, 3.9, 7, false, 200, 1, Engine::Packed};
  bool multiclass = false;
  bool quiet = false;
};

int cmd_train(TrainArgs a, std::ostream& out) {
  // Flags are checked before any file is touched.
  a.config.inputs = 1;
  a.config.validate();
  const auto train = load_dataset(a.train);
  std::optional<BinaryDataset> test;
  if (!a.test.empty()) {
    test = load_dataset(a.test);
    if (test->inputs() != train.inputs()) {
      throw std::runtime_error("test width " + std::to_string(test->inputs()) +
                               " differs from train width " + std::to_string(train.inputs()));
    }
  }
  a.config.inputs = train.inputs();

  FitOptions opts;
  opts.eval = test ? &*test : nullptr;
  opts.on_epoch = [&](const EpochRecord& r) {
    if (a.quiet) return;
    out << "epoch " << r.epoch << " train " << fixed(r.train_accuracy);
    if (r.test_accuracy) out << " test " << fixed(*r.test_accuracy);
    out << '\n';
  };
  const Rng rng = Rng(a.config.seed).split(rng_tags::kFit);

  TrainReport report;
  const bool multi = a.multiclass || train.classes() > 2;
  if (multi) {
    MultiClassMachine m(train.classes(), a.config);
    report = m.fit(train, rng, opts);
    save_model(m, a.model);
  } else {
    TsetlinMachine m(a.config);
    report = m.fit(train, rng, opts);
    save_model(m, a.model);
  }
  if (!a.report.empty()) {
    auto f = open_out(a.report);
    f << "epoch,train_accuracy,test_accuracy\n";
    for (const auto& r : report.epochs) {
      f << r.epoch << ',' << r.train_accuracy << ',';
      if (r.test_accuracy) f << *r.test_accuracy;
      f << '\n';
    }
  }
  out << "trained " << (multi ? "multi-class" : "binary") << " machine on " << train.size()
      << " rows for " << a.config.epochs << " epochs; model written to " << a.model << '\n';
  return kExitOk;
}

// ---- eval ----

std::size_t model_inputs(const AnyModel& m) {
  return std::visit([](const auto& x) { return x.config().inputs; }, m);
}

int cmd_eval(const std::string& model_path, const std::string& data_path, const std::string& csv,
             std::ostream& out) {
  const auto model = load_model(model_path);
  const auto data = load_dataset(data_path);
  if (data.empty()) throw std::runtime_error(data_path + ": no rows to evaluate");
  if (data.inputs() != model_inputs(model)) {
    throw std::runtime_error("dataset width " + std::to_string(data.inputs()) +
                             " does not match model width " + std::to_string(model_inputs(model)));
  }
  const double acc = std::visit([&](const auto& m) { return m.accuracy(data); }, model);
  out << "accuracy " << fixed(acc) << " on " << data.size() << " rows\n";
  if (!csv.empty()) {
    auto f = open_out(csv);
    f << "model,data,rows,accuracy\n" << model_path << ',' << data_path << ',' << data.size() << ','
      << acc << '\n';
  }
  return kExitOk;
}

// ---- inspect ----

void dump_bank(const TsetlinMachine& m, std::ostream& out) {
  const auto clauses = m.prune();
  if (clauses.empty()) {
    out << "no clauses\n";
    return;
  }
  for (const auto& c : clauses) {
    out << "clause " << c.clause + 1 << ": " << to_dnf(c) << "    [" << to_mask(c, m.inputs()) << ']';
    if (c.contradictory()) out << " CONTRADICTION";
    out << '\n';
  }
}

int cmd_inspect(const std::string& model_path, std::ostream& out) {
  const auto model = load_model(model_path);
  if (const auto* m = std::get_if<TsetlinMachine>(&model)) {
    dump_bank(*m, out);
  } else {
    const auto& mc = std::get<MultiClassMachine>(model);
    for (std::size_t c = 0; c < mc.classes(); ++c) {
      out << "class " << c << ":\n";
      dump_bank(mc.bank(c), out);
    }
  }
  return kExitOk;
}

// ---- payoff ----

struct PayoffArgs {
  double theta = 0.0;
  double delta = 0.0;
  double s = 4.0;
  std::size_t mc = 0;
  std::uint64_t seed = 1;
  bool grid = false;
  std::vector<double> thetas{0.0, 0.05, 0.1, 0.125, 0.15, 0.2, 0.25};
  std::vector<double> deltas{0.0, 0.1, 0.2};
  std::vector<double> ss{2.0, 4.0, 8.0};
  std::string out;
};

int cmd_payoff(const PayoffArgs& a, std::ostream& out) {
  using namespace analysis;
  const Rng rng(a.seed);
  if (a.grid) {
    std::vector<GridPoint> points;
    for (double t : a.thetas)
      for (double d : a.deltas)
        for (double s : a.ss) points.push_back({t, d, s});
    for (const auto& p : points) PayoffEnvironment::balanced(p.theta, p.delta, p.s);
    std::vector<PayoffRow> rows;
    for (std::size_t i = 0; i < points.size(); ++i) rows.push_back(payoff_row(points[i], a.mc, rng.split(i)));
    if (a.out.empty()) {
      write_payoff_csv(rows, out);
    } else {
      auto f = open_out(a.out);
      write_payoff_csv(rows, f);
      out << "wrote " << rows.size() << " grid rows to " << a.out << '\n';
    }
    return kExitOk;
  }
  const auto row = payoff_row({a.theta, a.delta, a.s}, a.mc, rng);
  out << "theta " << a.theta << " delta " << a.delta << " s " << a.s << '\n'
      << "exclude payoff " << row.exclude << '\n'
      << "include payoff " << row.include << '\n'
      << "verdict " << to_string(row.verdict) << '\n'
      << "exclude pays positively for s < " << row.boundary_s << '\n';
  if (row.mc_exclude) {
    out << "monte-carlo exclude " << row.mc_exclude->mean << " (se " << row.mc_exclude->std_error
        << ")\nmonte-carlo include " << row.mc_include->mean << " (se " << row.mc_include->std_error
        << ")\n";
  }
  if (!a.out.empty()) {
    auto f = open_out(a.out);
    write_payoff_csv({row}, f);
  }
  return kExitOk;
}

// ---- bench ----

struct BenchArgs {
  std::string name;
  std::size_t replications = 10;
  std::size_t threads = 0;
  std::uint64_t seed = 1;
  std::string data;
  std::string csv;
  std::string series;
  int epochs = -1;
  long clauses = -1;
};

template <typename Setup>
void apply_overrides(Setup& setup, const BenchArgs& a) {
  if (a.epochs >= 0) setup.config.epochs = static_cast<unsigned>(a.epochs);
  if (a.clauses > 0) setup.config.clauses = static_cast<std::size_t>(a.clauses);
  MachineConfig probe = setup.config;
  probe.inputs = 1;
  probe.validate();
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.replications == 0) throw ConfigError("need at least one replication");
  const std::size_t threads = a.threads == 0 ? default_threads() : a.threads;
  std::vector<std::vector<EpochRecord>> series(a.replications);
  auto recorder = [&](std::uint64_t seed) -> experiments::EpochCallback {
    if (a.series.empty()) return {};
    auto* slot = &series[seed - a.seed];
    return [slot](const EpochRecord& r) { slot->push_back(r); };
  };

  std::function<double(std::uint64_t)> run;
  if (a.name == "xor") {
    experiments::NoisyXorSetup setup;
    apply_overrides(setup, a);
    run = [=](std::uint64_t seed) { return experiments::run_noisy_xor(seed, setup, recorder(seed)); };
  } else if (a.name == "iris" || a.name == "digits") {
    auto setup = a.name == "iris" ? experiments::iris_setup() : experiments::digits_setup();
    apply_overrides(setup, a);
    const std::string path =
        a.data.empty() ? std::string(TSETLIN_DATA_DIR) + "/" + a.name + ".csv" : a.data;
    auto data = std::make_shared<RealDataset>(load_csv(path));
    run = [=](std::uint64_t seed) { return experiments::run_quantized(*data, seed, setup, recorder(seed)); };
  } else {
    experiments::ThresholdSetup setup;
    apply_overrides(setup, a);
    if (a.data.empty()) throw ConfigError("bench mnist needs --data <directory with IDX files>");
    const std::filesystem::path dir(a.data);
    auto train = std::make_shared<RealDataset>(
        load_idx(dir / "train-images-idx3-ubyte", dir / "train-labels-idx1-ubyte"));
    auto test = std::make_shared<RealDataset>(
        load_idx(dir / "t10k-images-idx3-ubyte", dir / "t10k-labels-idx1-ubyte"));
    run = [=](std::uint64_t seed) {
      return experiments::run_thresholded(*train, *test, seed, setup, recorder(seed));
    };
  }

  const auto results = replicate(a.replications, threads, a.seed, run);
  for (std::size_t r = 0; r < results.size(); ++r) {
    out << "replication " << r + 1 << " seed " << a.seed + r << " accuracy " << fixed(results[r]) << '\n';
  }
  const auto summary = summarize(results);
  out << a.name << ": " << format_summary(summary) << '\n';
  if (!a.csv.empty()) {
    auto f = open_out(a.csv);
    write_summary_csv(a.name, summary, f);
  }
  if (!a.series.empty()) {
    auto f = open_out(a.series);
    f << "replication,epoch,test_accuracy\n";
    for (std::size_t r = 0; r < series.size(); ++r) {
      for (const auto& e : series[r]) f << r + 1 << ',' << e.epoch << ',' << e.test_accuracy.value_or(0.0) << '\n';
    }
  }
  return kExitOk;
}

void add_machine_flags(CLI::App* sub, MachineConfig& c) {
  sub->add_option("--clauses,-m", c.clauses, "clauses per output (even)")->capture_default_str();
  sub->add_option("-T,--T,--threshold", c.threshold, "vote threshold T")->capture_default_str();
  sub->add_option("--s,-s", c.s, "precision s > 1")->capture_default_str();
  sub->add_option("--state-bits,-b", c.state_bits, "b, with 2^b automaton states")->capture_default_str();
  sub->add_option("--epochs", c.epochs)->capture_default_str();
  sub->add_option("--seed", c.seed)->capture_default_str();
  sub->add_flag("--boost", c.boost, "boost true-positive Include rewards");
  const std::map<std::string, Engine> engines{{"scalar", Engine::Scalar}, {"packed", Engine::Packed}};
  sub->add_option("--engine", c.engine, "scalar | packed")
      ->transform(CLI::CheckedTransformer(engines, CLI::ignore_case))
      ->default_str("packed");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tsetlin Machine trainer and analysis tool", "tsetlin"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "write a binary dataset file");
  g->add_option("kind", gen.kind, "xor | csv | mnist")->required()->check(CLI::IsMember({"xor", "csv", "mnist"}));
  g->add_option("--out,-o", gen.out)->required();
  g->add_option("--count", gen.count)->capture_default_str();
  g->add_option("--inputs", gen.inputs)->capture_default_str();
  g->add_option("--noise", gen.noise)->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--input", gen.input, "csv source");
  g->add_option("--bits", gen.bits, "quantization bits per feature")->capture_default_str();
  auto* thr = g->add_option("--threshold", gen.threshold, "binarize at value > threshold");
  g->add_option("--images", gen.images);
  g->add_option("--labels", gen.labels);

  TrainArgs train;
  auto* t = app.add_subcommand("train", "train a machine and write a model file");
  t->add_option("--train", train.train)->required();
  t->add_option("--test", train.test);
  t->add_option("--model,-o", train.model)->required();
  t->add_option("--report", train.report, "per-epoch CSV");
  t->add_flag("--multiclass", train.multiclass, "use class banks even for two classes");
  t->add_flag("--quiet,-q", train.quiet);
  add_machine_flags(t, train.config);

  std::string eval_model, eval_data, eval_csv;
  auto* e = app.add_subcommand("eval", "accuracy of a model on a dataset");
  e->add_option("--model", eval_model)->required();
  e->add_option("--data", eval_data)->required();
  e->add_option("--csv", eval_csv);

  std::string inspect_model;
  auto* in = app.add_subcommand("inspect", "print the surviving clauses of a model");
  in->add_option("--model", inspect_model)->required();

  PayoffArgs pay;
  auto* p = app.add_subcommand("payoff", "expected Include/Exclude payoffs");
  p->add_option("--theta", pay.theta);
  p->add_option("--delta", pay.delta);
  p->add_option("--s", pay.s);
  p->add_option("--mc", pay.mc, "Monte-Carlo trials (0 = off)");
  p->add_option("--seed", pay.seed);
  p->add_flag("--grid", pay.grid, "evaluate the cross product of --thetas, --deltas, --ss");
  p->add_option("--thetas", pay.thetas)->delimiter(',');
  p->add_option("--deltas", pay.deltas)->delimiter(',');
  p->add_option("--ss", pay.ss)->delimiter(',');
  p->add_option("--out,-o", pay.out, "CSV output");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "replicate a named experiment");
  b->add_option("experiment", bench.name, "xor | iris | digits | mnist")
      ->required()
      ->check(CLI::IsMember({"xor", "iris", "digits", "mnist"}));
  b->add_option("--replications,-r", bench.replications)->capture_default_str();
  b->add_option("--threads", bench.threads, "worker count (default TSETLIN_THREADS or all cores)");
  b->add_option("--seed", bench.seed)->capture_default_str();
  b->add_option("--data", bench.data, "csv file, or IDX directory for mnist");
  b->add_option("--csv", bench.csv, "summary CSV");
  b->add_option("--series", bench.series, "per-epoch test accuracy CSV");
  b->add_option("--epochs", bench.epochs, "override the recipe's epoch count");
  b->add_option("--clauses", bench.clauses, "override the recipe's clause count");

  std::vector<std::string> argv_store{"tsetlin"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (g->parsed()) {
      gen.use_threshold = thr->count() > 0 || gen.kind == "mnist";
      return cmd_gen(gen, out);
    }
    if (t->parsed()) return cmd_train(train, out);
    if (e->parsed()) return cmd_eval(eval_model, eval_data, eval_csv, out);
    if (in->parsed()) return cmd_inspect(inspect_model, out);
    if (p->parsed()) return cmd_payoff(pay, out);
    return cmd_bench(bench, out);
  } catch (const ConfigError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace tsetlin::cli
