#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gmsel/bounds.hpp"
#include "gmsel/graph_class.hpp"

namespace gmsel {

enum class DecoderKind { MaxLikelihood, MeanProjection };
enum class WeightPolicy { UniformPlus, RandomSign };

// One success-probability sweep: for each n in n_grid, `trials` independent
// recovery attempts against the full class. Every random draw is keyed by
// (seed, n, trial_index) through CounterRng::derive, so results do not
// depend on execution order or worker count.
struct ExperimentConfig {
  GraphClassSpec spec;
  std::vector<int64_t> n_grid;
  int64_t trials = 100;
  DecoderKind decoder = DecoderKind::MaxLikelihood;
  WeightPolicy weights = WeightPolicy::UniformPlus;
  uint64_t seed = 1;
  double delta = 0.1;       // target error for the sufficient-threshold overlay
  bool worst_case = false;  // min success over all truth graphs instead of uniform draw

  void validate() const;

  // Canonical single-line JSON (sorted keys); config_hash is FNV-1a 64 of it.
  std::string canonical_json() const;
  uint64_t config_hash() const;

  std::string to_json_pretty() const;
  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
};

struct SweepPoint {
  int64_t n = 0;
  int64_t successes = 0;
  int64_t trials = 0;
  double success_rate = 0;
  double wilson_lo = 0;
  double wilson_hi = 0;
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<SweepPoint> points;
  // Class necessary threshold (max over its terms); -1 when the class
  // parameters fall outside the stated hypotheses (omega < 1).
  double necessary_n = 0;
  double sufficient_n = 0;  // sufficient threshold for the configured decoder
  std::string config_hash_hex;
};

// One recovery attempt: draw a truth graph uniformly from the class, assign
// weights per policy, draw n exact samples, decode against every class
// member. Success = decoder picked the truth with no score tie. Fully
// determined by (config.seed, n, trial_index).
bool run_trial(const ExperimentConfig& cfg, int64_t n, int64_t trial_index);

// Whole sweep; trials run on a worker pool (size from the GMSEL_WORKERS
// environment variable when set, hardware concurrency otherwise) with
// results identical to sequential execution.
SweepResult run_sweep(const ExperimentConfig& cfg);

// CSV with exactly the columns
// n,successes,trials,success_rate,wilson_lo,wilson_hi,necessary_n,sufficient_n,seed,config_hash
// in fixed formatting; reruns of the same config are byte-identical.
void write_csv(const SweepResult& r, std::ostream& os);
std::string to_csv(const SweepResult& r);

// JSON serialization; from_json(to_json(r)) reproduces r exactly.
std::string to_json(const SweepResult& r);
SweepResult sweep_from_json(const std::string& text);

int worker_count();

}  // namespace gmsel
