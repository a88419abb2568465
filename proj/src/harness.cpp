#include "gmsel/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gmsel/decoders.hpp"
#include "gmsel/ensembles.hpp"
#include "gmsel/rng.hpp"

namespace gmsel {

using nlohmann::json;

namespace {

std::string decoder_name(DecoderKind d) {
  return d == DecoderKind::MaxLikelihood ? "ml" : "projection";
}

DecoderKind decoder_from_name(const std::string& s) {
  if (s == "ml") return DecoderKind::MaxLikelihood;
  if (s == "projection") return DecoderKind::MeanProjection;
  throw IoError("unknown decoder name: " + s);
}

std::string policy_name(WeightPolicy w) {
  return w == WeightPolicy::UniformPlus ? "uniform" : "random_sign";
}

WeightPolicy policy_from_name(const std::string& s) {
  if (s == "uniform") return WeightPolicy::UniformPlus;
  if (s == "random_sign") return WeightPolicy::RandomSign;
  throw IoError("unknown weight policy: " + s);
}

json class_to_json(const GraphClassSpec& spec) {
  return json{{"kind", spec.kind == ClassKind::DegreeBounded ? "degree" : "edge"},
              {"p", spec.p},
              {"bound", spec.bound},
              {"lambda", spec.lambda},
              {"omega", spec.omega}};
}

GraphClassSpec class_from_json(const json& j) {
  GraphClassSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "degree") {
    spec.kind = ClassKind::DegreeBounded;
  } else if (kind == "edge") {
    spec.kind = ClassKind::EdgeBounded;
  } else {
    throw IoError("unknown class kind: " + kind);
  }
  spec.p = j.at("p").get<int>();
  spec.bound = j.at("bound").get<int>();
  spec.lambda = j.at("lambda").get<double>();
  spec.omega = j.at("omega").get<double>();
  return spec;
}

json config_to_json(const ExperimentConfig& cfg) {
  return json{{"class", class_to_json(cfg.spec)}, {"n_grid", cfg.n_grid},
              {"trials", cfg.trials},             {"decoder", decoder_name(cfg.decoder)},
              {"weights", policy_name(cfg.weights)}, {"seed", cfg.seed},
              {"delta", cfg.delta},               {"worst_case", cfg.worst_case}};
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.spec = class_from_json(j.at("class"));
  cfg.n_grid = j.at("n_grid").get<std::vector<int64_t>>();
  cfg.trials = j.at("trials").get<int64_t>();
  cfg.decoder = decoder_from_name(j.at("decoder").get<std::string>());
  cfg.weights = policy_from_name(j.at("weights").get<std::string>());
  cfg.seed = j.at("seed").get<uint64_t>();
  cfg.delta = j.value("delta", 0.1);
  cfg.worst_case = j.value("worst_case", false);
  return cfg;
}

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Fixed numeric formatting for byte-stable CSV.
std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct TrialContext {
  std::vector<Graph> graphs;
  // ML candidates under the uniform policy never change across trials.
  std::vector<IsingParams> uniform_models;
  std::vector<FeasibleSet> feasible;
};

TrialContext build_context(const ExperimentConfig& cfg) {
  TrialContext ctx;
  ctx.graphs = enumerate_class(cfg.spec);
  if (ctx.graphs.empty()) throw EmptyClass("class has no member graphs");
  if (cfg.decoder == DecoderKind::MaxLikelihood) {
    if (cfg.weights == WeightPolicy::UniformPlus) {
      ctx.uniform_models.reserve(ctx.graphs.size());
      for (const auto& g : ctx.graphs)
        ctx.uniform_models.push_back(IsingParams::uniform(g, cfg.spec.lambda));
    }
  } else {
    ctx.feasible.reserve(ctx.graphs.size());
    for (const auto& g : ctx.graphs)
      ctx.feasible.push_back(FeasibleSet{g, cfg.spec.lambda, cfg.spec.omega});
  }
  return ctx;
}

// Key for all randomness of one (n, trial) cell; stable under any schedule.
uint64_t trial_key(uint64_t seed, int64_t n, int64_t trial_index) {
  return CounterRng::derive(CounterRng::derive(seed, uint64_t(n)), uint64_t(trial_index));
}

bool run_trial_impl(const ExperimentConfig& cfg, const TrialContext& ctx, int64_t n,
                    int64_t trial_index, int truth_override) {
  CounterRng rng(trial_key(cfg.seed, n, trial_index));
  const size_t truth_idx = truth_override >= 0
                               ? size_t(truth_override)
                               : size_t(rng.next_u64() % ctx.graphs.size());
  const Graph& truth = ctx.graphs[truth_idx];

  // Per-trial sign vector: nature fixes one sign per canonical pair; the
  // truth and every ML candidate read their edge signs from it, so known
  // weights stay well-defined under the random-sign policy.
  std::vector<int> sign;
  if (cfg.weights == WeightPolicy::RandomSign) {
    sign.resize(pair_count(cfg.spec.p));
    for (int& s : sign) s = (rng.next_u64() & 1u) ? 1 : -1;
  }

  const IsingParams truth_model =
      cfg.weights == WeightPolicy::UniformPlus
          ? IsingParams::uniform(truth, cfg.spec.lambda)
          : IsingParams::signed_uniform(truth, cfg.spec.lambda, sign);

  const SampleSet samples = sample_exact(truth_model, n, rng.next_u64());

  DecodeResult res;
  if (cfg.decoder == DecoderKind::MaxLikelihood) {
    if (cfg.weights == WeightPolicy::UniformPlus) {
      res = ml_decode(ctx.uniform_models, samples);
    } else {
      std::vector<IsingParams> cands;
      cands.reserve(ctx.graphs.size());
      for (const auto& g : ctx.graphs)
        cands.push_back(IsingParams::signed_uniform(g, cfg.spec.lambda, sign));
      res = ml_decode(cands, samples);
    }
  } else {
    res = mean_decode(ctx.feasible, samples);
  }
  return res.ties == 0 && res.chosen == truth;
}

}  // namespace

void ExperimentConfig::validate() const {
  spec.validate();
  if (n_grid.empty()) throw PreconditionViolated("n_grid must be nonempty");
  int64_t prev = 0;
  for (int64_t n : n_grid) {
    if (n <= prev) throw PreconditionViolated("n_grid must be strictly increasing and positive");
    prev = n;
  }
  if (trials < 1) throw PreconditionViolated("trials must be >= 1");
  if (!(delta > 0 && delta < 1)) throw PreconditionViolated("delta must lie in (0,1)");
}

std::string ExperimentConfig::canonical_json() const {
  // nlohmann objects iterate in sorted key order, so dump() is canonical.
  return config_to_json(*this).dump();
}

uint64_t ExperimentConfig::config_hash() const { return fnv1a64(canonical_json()); }

std::string ExperimentConfig::to_json_pretty() const { return config_to_json(*this).dump(2); }

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("config parse error: ") + e.what());
  }
  try {
    return config_from_json(j);
  } catch (const json::exception& e) {
    throw IoError(std::string("config field error: ") + e.what());
  }
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return from_json_text(ss.str());
}

bool run_trial(const ExperimentConfig& cfg, int64_t n, int64_t trial_index) {
  cfg.validate();
  const TrialContext ctx = build_context(cfg);
  return run_trial_impl(cfg, ctx, n, trial_index, -1);
}

int worker_count() {
  if (const char* env = std::getenv("GMSEL_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? int(hc) : 1;
}

namespace {

// Runs `total` cells through `fn` on a pool; fn must be pure per cell.
void parallel_for(int64_t total, const std::function<void(int64_t)>& fn) {
  const int workers = std::min<int64_t>(worker_count(), std::max<int64_t>(total, 1));
  if (workers <= 1) {
    for (int64_t i = 0; i < total; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<bool> failed{false};
  std::exception_ptr err;
  std::mutex err_mu;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int64_t i = next.fetch_add(1);
        if (i >= total || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!failed.exchange(true)) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed.load()) std::rethrow_exception(err);
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const TrialContext ctx = build_context(cfg);

  SweepResult out;
  out.config = cfg;
  out.config_hash_hex = hex64(cfg.config_hash());
  try {
    out.necessary_n = necessary_threshold(cfg.spec).n;
  } catch (const HypothesisViolated&) {
    out.necessary_n = -1.0;  // class parameters outside the threshold hypotheses
  }
  out.sufficient_n = sufficient_threshold(cfg.spec, cfg.delta,
                                          cfg.decoder == DecoderKind::MaxLikelihood
                                              ? WeightVariant::KnownWeights
                                              : WeightVariant::UnknownWeights);

  const int64_t num_graphs = cfg.worst_case ? int64_t(ctx.graphs.size()) : 1;
  for (int64_t n : cfg.n_grid) {
    SweepPoint best_point;
    bool have = false;
    for (int64_t g = 0; g < num_graphs; ++g) {
      std::vector<uint8_t> ok(size_t(cfg.trials), 0);
      parallel_for(cfg.trials, [&](int64_t t) {
        // Worst-case mode folds the truth index into the trial stream.
        const int64_t stream = cfg.worst_case ? g * cfg.trials + t : t;
        ok[size_t(t)] =
            run_trial_impl(cfg, ctx, n, stream, cfg.worst_case ? int(g) : -1) ? 1 : 0;
      });
      int64_t successes = 0;
      for (uint8_t v : ok) successes += v;
      SweepPoint pt;
      pt.n = n;
      pt.successes = successes;
      pt.trials = cfg.trials;
      pt.success_rate = double(successes) / double(cfg.trials);
      const auto [lo, hi] = wilson_interval(successes, cfg.trials);
      pt.wilson_lo = lo;
      pt.wilson_hi = hi;
      if (!have || pt.success_rate < best_point.success_rate) {
        best_point = pt;
        have = true;
      }
    }
    out.points.push_back(best_point);
  }
  return out;
}

void write_csv(const SweepResult& r, std::ostream& os) {
  os << "n,successes,trials,success_rate,wilson_lo,wilson_hi,necessary_n,sufficient_n,seed,"
        "config_hash\n";
  for (const auto& pt : r.points) {
    os << pt.n << ',' << pt.successes << ',' << pt.trials << ',' << fmt6(pt.success_rate) << ','
       << fmt6(pt.wilson_lo) << ',' << fmt6(pt.wilson_hi) << ',' << fmt6(r.necessary_n) << ','
       << fmt6(r.sufficient_n) << ',' << r.config.seed << ',' << r.config_hash_hex << '\n';
  }
}

std::string to_csv(const SweepResult& r) {
  std::ostringstream os;
  write_csv(r, os);
  return os.str();
}

std::string to_json(const SweepResult& r) {
  json pts = json::array();
  for (const auto& pt : r.points) {
    pts.push_back(json{{"n", pt.n},
                       {"successes", pt.successes},
                       {"trials", pt.trials},
                       {"success_rate", pt.success_rate},
                       {"wilson_lo", pt.wilson_lo},
                       {"wilson_hi", pt.wilson_hi}});
  }
  const json j{{"config", config_to_json(r.config)},
               {"points", pts},
               {"necessary_n", r.necessary_n},
               {"sufficient_n", r.sufficient_n},
               {"config_hash", r.config_hash_hex}};
  return j.dump(2);
}

SweepResult sweep_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("sweep parse error: ") + e.what());
  }
  try {
    SweepResult r;
    r.config = config_from_json(j.at("config"));
    for (const auto& pj : j.at("points")) {
      SweepPoint pt;
      pt.n = pj.at("n").get<int64_t>();
      pt.successes = pj.at("successes").get<int64_t>();
      pt.trials = pj.at("trials").get<int64_t>();
      pt.success_rate = pj.at("success_rate").get<double>();
      pt.wilson_lo = pj.at("wilson_lo").get<double>();
      pt.wilson_hi = pj.at("wilson_hi").get<double>();
      r.points.push_back(pt);
    }
    r.necessary_n = j.at("necessary_n").get<double>();
    r.sufficient_n = j.at("sufficient_n").get<double>();
    r.config_hash_hex = j.at("config_hash").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw IoError(std::string("sweep field error: ") + e.what());
  }
}

}  // namespace gmsel
