// Command-line front end: class enumeration, threshold tables, divergences,
// statement verification, decoding, Monte Carlo sweeps, and result
// re-emission. Exit codes: 0 success, 1 failed verification, 2 invalid
// input, 3 infeasible scale.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gmsel/bounds.hpp"
#include "gmsel/decoders.hpp"
#include "gmsel/divergence.hpp"
#include "gmsel/ensembles.hpp"
#include "gmsel/errors.hpp"
#include "gmsel/graph_class.hpp"
#include "gmsel/harness.hpp"
#include "gmsel/ising.hpp"
#include "gmsel/verify.hpp"

namespace {

using nlohmann::json;

// Shared --class/--p/--d/--k/--lambda/--omega block.
struct ClassFlags {
  std::string kind;
  int p = 0;
  int d = -1;
  int k = -1;
  double lambda = 1.0;
  double omega = 0.0;  // 0 = derive from the class (lambda*d, resp. lambda*k)

  void attach(CLI::App* cmd, bool need_weights) {
    cmd->add_option("--class", kind, "graph class kind: deg | edge")
        ->required()
        ->check(CLI::IsMember({"deg", "edge"}));
    cmd->add_option("--p", p, "vertex count")->required();
    cmd->add_option("--d", d, "max degree (deg class)");
    cmd->add_option("--k", k, "max edge count (edge class)");
    auto* l = cmd->add_option("--lambda", lambda, "minimum edge weight magnitude");
    auto* w = cmd->add_option("--omega", omega,
                              "max per-vertex weight sum (default: lambda * bound)");
    if (need_weights) l->required();
    (void)w;
  }

  gmsel::GraphClassSpec spec() const {
    gmsel::GraphClassSpec s;
    if (kind == "deg") {
      if (d < 0) throw gmsel::ValidationError("--class deg requires --d");
      if (k >= 0) throw gmsel::ValidationError("--k does not apply to the deg class");
      s.kind = gmsel::ClassKind::DegreeBounded;
      s.bound = d;
    } else {
      if (k < 0) throw gmsel::ValidationError("--class edge requires --k");
      if (d >= 0) throw gmsel::ValidationError("--d does not apply to the edge class");
      s.kind = gmsel::ClassKind::EdgeBounded;
      s.bound = k;
    }
    s.p = p;
    s.lambda = lambda;
    s.omega = omega > 0 ? omega : lambda * s.bound;
    s.validate();
    return s;
  }
};

// Weighted model text: "s-t:w,s-t:w" (canonical s<t), or "" / "none" for the
// empty model.
gmsel::IsingParams parse_model(int p, const std::string& text) {
  std::vector<double> theta(gmsel::pair_count(p), 0.0);
  if (!text.empty() && text != "none") {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      int s = -1, t = -1;
      double w = 0;
      char colon = 0, dash = 0;
      std::stringstream es(item);
      if (!(es >> s >> dash >> t >> colon >> w) || dash != '-' || colon != ':')
        throw gmsel::ValidationError("bad edge term '" + item + "' (want s-t:w)");
      if (s < 0 || t < 0 || s >= p || t >= p || s >= t)
        throw gmsel::ValidationError("bad edge endpoints in '" + item + "'");
      int idx = gmsel::pair_index(p, s, t);
      if (theta[idx] != 0) throw gmsel::ValidationError("duplicate edge in '" + item + "'");
      if (w == 0) throw gmsel::ValidationError("zero weight in '" + item + "'");
      theta[idx] = w;
    }
  }
  return gmsel::IsingParams::from_theta(p, std::move(theta));
}

void write_output(const std::string& payload, const std::string& path) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw gmsel::IoError("cannot open output file: " + path);
  os << payload;
  if (!os) throw gmsel::IoError("short write: " + path);
}

json decode_json(const gmsel::DecodeResult& r, const std::string& variant) {
  return json{{"variant", variant},
              {"chosen", r.chosen.to_text()},
              {"score", r.score},
              {"runner_up_gap", r.runner_up_gap},
              {"ties", r.ties}};
}

json threshold_json(const gmsel::ThresholdReport& rep) {
  json terms = json::object();
  for (const auto& [name, value] : rep.necessary.terms) terms[name] = value;
  return json{{"class",
               {{"kind", rep.spec.kind_name()},
                {"p", rep.spec.p},
                {"bound", rep.spec.bound},
                {"lambda", rep.spec.lambda},
                {"omega", rep.spec.omega}}},
              {"delta", rep.delta},
              {"necessary", {{"terms", terms}, {"n", rep.necessary.n}}},
              {"sufficient",
               {{"known_weights", rep.sufficient_known},
                {"unknown_weights", rep.sufficient_unknown},
                {"unknown_weights_alt", rep.sufficient_unknown_alt}}}};
}

std::string threshold_table(const gmsel::ThresholdReport& rep) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "class %s  p=%d bound=%d lambda=%g omega=%g delta=%g\n",
                rep.spec.kind_name().c_str(), rep.spec.p, rep.spec.bound, rep.spec.lambda,
                rep.spec.omega, rep.delta);
  os << buf;
  os << "  necessary sample size (recovery unreliable below):\n";
  for (const auto& [name, value] : rep.necessary.terms) {
    std::snprintf(buf, sizeof buf, "    %-24s %.6g\n", name.c_str(), value);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "    %-24s %.6g\n", "max", rep.necessary.n);
  os << buf;
  os << "  sufficient sample size (error <= delta above):\n";
  std::snprintf(buf, sizeof buf, "    %-24s %.6g\n", "known weights", rep.sufficient_known);
  os << buf;
  std::snprintf(buf, sizeof buf, "    %-24s %.6g\n", "unknown weights", rep.sufficient_unknown);
  os << buf;
  std::snprintf(buf, sizeof buf, "    %-24s %.6g\n", "unknown (alt parse)",
                rep.sufficient_unknown_alt);
  os << buf;
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{"exact small-instance toolkit for binary graphical model selection"};
  app.require_subcommand(1);

  // ---- enumerate ----
  auto* enum_cmd = app.add_subcommand("enumerate", "list every graph in a class");
  ClassFlags enum_flags;
  enum_flags.attach(enum_cmd, false);
  bool count_only = false;
  bool show_bounds = false;
  enum_cmd->add_flag("--count-only", count_only, "print only the class size");
  enum_cmd->add_flag("--cardinality-bounds", show_bounds,
                     "also print the closed-form size bracket");

  // ---- bounds ----
  auto* bounds_cmd = app.add_subcommand("bounds", "necessary/sufficient sample-size thresholds");
  ClassFlags bounds_flags;
  bounds_flags.attach(bounds_cmd, true);
  double bounds_delta = 0.1;
  bool bounds_json = false;
  bounds_cmd->add_option("--delta", bounds_delta, "target failure probability");
  bounds_cmd->add_flag("--json", bounds_json, "emit JSON instead of the text table");

  // ---- divergence ----
  auto* div_cmd = app.add_subcommand("divergence", "D, S, J between two models, both paths");
  int div_p = 0;
  std::string model_a, model_b;
  div_cmd->add_option("--p", div_p, "vertex count")->required();
  div_cmd->add_option("--a", model_a, "first model, 's-t:w,...' ('' = empty)")->required();
  div_cmd->add_option("--b", model_b, "second model")->required();

  // ---- verify-lemma ----
  auto* ver_cmd = app.add_subcommand("verify-lemma", "check a numbered statement numerically");
  std::vector<int> ver_ids;
  ver_cmd->add_option("--id", ver_ids, "statement id(s): 4 5 6 8 11 12")
      ->required()
      ->delimiter(',');

  // ---- decode ----
  auto* dec_cmd = app.add_subcommand("decode", "recover a graph from a sample file");
  ClassFlags dec_flags;
  dec_flags.attach(dec_cmd, true);
  std::string dec_samples, dec_variant = "known";
  dec_cmd->add_option("--samples", dec_samples, "sample file (binary format)")->required();
  dec_cmd->add_option("--variant", dec_variant, "known | unknown weights")
      ->check(CLI::IsMember({"known", "unknown"}));

  // ---- sample ----
  auto* smp_cmd = app.add_subcommand("sample", "draw samples from one model into a file");
  int smp_p = 0;
  std::string smp_model, smp_out, smp_format = "binary", smp_sampler = "exact";
  int64_t smp_n = 0, smp_burn = -1, smp_thin = -1;
  uint64_t smp_seed = 1;
  smp_cmd->add_option("--p", smp_p, "vertex count")->required();
  smp_cmd->add_option("--model", smp_model, "model, 's-t:w,...'")->required();
  smp_cmd->add_option("--n", smp_n, "number of samples")->required();
  smp_cmd->add_option("--seed", smp_seed, "sampler seed");
  smp_cmd->add_option("--out", smp_out, "output path")->required();
  smp_cmd->add_option("--format", smp_format, "binary | csv")
      ->check(CLI::IsMember({"binary", "csv"}));
  smp_cmd->add_option("--sampler", smp_sampler, "exact | gibbs")
      ->check(CLI::IsMember({"exact", "gibbs"}));
  smp_cmd->add_option("--burn-in", smp_burn, "gibbs burn-in sweeps (default 100p)");
  smp_cmd->add_option("--thin", smp_thin, "gibbs sweeps between kept samples (default p)");

  // ---- sweep ----
  auto* swp_cmd = app.add_subcommand("sweep", "success-rate curve over a sample-size grid");
  std::string swp_config;
  ClassFlags swp_flags;
  swp_cmd->add_option("--config", swp_config, "experiment config JSON file");
  swp_flags.attach(swp_cmd, false);
  swp_cmd->get_option("--class")->required(false);
  swp_cmd->get_option("--p")->required(false);
  std::vector<int64_t> swp_grid;
  int64_t swp_trials = 100;
  std::string swp_decoder = "ml", swp_weights = "uniform", swp_out, swp_json_out;
  uint64_t swp_seed = 1;
  double swp_delta = 0.1;
  bool swp_worst = false;
  swp_cmd->add_option("--n-grid", swp_grid, "sample sizes, strictly increasing")->delimiter(',');
  swp_cmd->add_option("--trials", swp_trials, "trials per grid point");
  swp_cmd->add_option("--decoder", swp_decoder, "ml | projection")
      ->check(CLI::IsMember({"ml", "projection"}));
  swp_cmd->add_option("--weights", swp_weights, "uniform | random_sign")
      ->check(CLI::IsMember({"uniform", "random_sign"}));
  swp_cmd->add_option("--seed", swp_seed, "sweep seed");
  swp_cmd->add_option("--delta", swp_delta, "target failure probability for the overlay");
  swp_cmd->add_flag("--worst-case", swp_worst,
                    "minimum success rate over every truth graph in the class");
  swp_cmd->add_option("--out", swp_out, "CSV output path (default stdout)");
  swp_cmd->add_option("--json-out", swp_json_out, "also write the full result as JSON");

  // ---- emit ----
  auto* emit_cmd = app.add_subcommand("emit", "re-emit a stored sweep result");
  std::string emit_in, emit_format = "csv", emit_out;
  emit_cmd->add_option("--in", emit_in, "sweep result JSON file")->required();
  emit_cmd->add_option("--format", emit_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  emit_cmd->add_option("--out", emit_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 2;
  }

  if (enum_cmd->parsed()) {
    gmsel::GraphClassSpec spec = enum_flags.spec();
    if (count_only || show_bounds) {
      size_t count = 0;
      gmsel::for_each_in_class(spec, [&](const gmsel::Graph&) {
        ++count;
        return true;
      });
      std::cout << count << "\n";
      if (show_bounds) {
        gmsel::CardinalityBounds cb = gmsel::cardinality_bounds(spec);
        std::printf("bracket: [%.8g, %.8g]\n", cb.lower, cb.upper);
      }
    } else {
      gmsel::for_each_in_class(spec, [](const gmsel::Graph& g) {
        std::cout << g.to_text() << "\n";
        return true;
      });
    }
    return 0;
  }

  if (bounds_cmd->parsed()) {
    gmsel::ThresholdReport rep = gmsel::threshold_report(bounds_flags.spec(), bounds_delta);
    if (bounds_json)
      std::cout << threshold_json(rep).dump(2) << "\n";
    else
      std::cout << threshold_table(rep);
    return 0;
  }

  if (div_cmd->parsed()) {
    gmsel::check_vertex_count(div_p);
    gmsel::IsingParams a = parse_model(div_p, model_a);
    gmsel::IsingParams b = parse_model(div_p, model_b);
    json out{{"kl_ab", gmsel::kl(a, b)},
             {"kl_ba", gmsel::kl(b, a)},
             {"sym_kl", gmsel::sym_kl(a, b)},
             {"sym_kl_mean_form", gmsel::sym_kl_mean_form(a, b)},
             {"j", gmsel::j_divergence(a, b)},
             {"j_cumulant", gmsel::j_divergence_cumulant(a, b)}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (ver_cmd->parsed()) {
    bool all_pass = true;
    for (int id : ver_ids) {
      gmsel::LemmaReport rep = gmsel::run_lemma_check(id);
      std::cout << gmsel::format_report(rep);
      all_pass = all_pass && rep.pass;
    }
    return all_pass ? 0 : 1;
  }

  if (dec_cmd->parsed()) {
    gmsel::GraphClassSpec spec = dec_flags.spec();
    gmsel::SampleSet samples = gmsel::SampleSet::load_binary_file(dec_samples);
    if (samples.p != spec.p)
      throw gmsel::DimensionMismatch("sample file has p=" + std::to_string(samples.p) +
                                     ", class has p=" + std::to_string(spec.p));
    std::vector<gmsel::Graph> graphs = gmsel::enumerate_class(spec);
    gmsel::DecodeResult res;
    if (dec_variant == "known") {
      std::vector<gmsel::IsingParams> cands;
      cands.reserve(graphs.size());
      for (const gmsel::Graph& g : graphs)
        cands.push_back(gmsel::IsingParams::uniform(g, spec.lambda));
      res = gmsel::ml_decode(cands, samples);
    } else {
      std::vector<gmsel::FeasibleSet> cands;
      cands.reserve(graphs.size());
      for (const gmsel::Graph& g : graphs)
        cands.push_back(gmsel::FeasibleSet{g, spec.lambda, spec.omega});
      res = gmsel::mean_decode(cands, samples);
    }
    std::cout << decode_json(res, dec_variant).dump(2) << "\n";
    return 0;
  }

  if (smp_cmd->parsed()) {
    gmsel::check_vertex_count(smp_p);
    gmsel::IsingParams model = parse_model(smp_p, smp_model);
    gmsel::SampleSet set = smp_sampler == "exact"
                               ? gmsel::sample_exact(model, smp_n, smp_seed)
                               : gmsel::sample_gibbs(model, smp_n, smp_seed, smp_burn, smp_thin);
    if (smp_format == "binary") {
      set.save_binary_file(smp_out);
    } else {
      std::ofstream os(smp_out, std::ios::binary);
      if (!os) throw gmsel::IoError("cannot open output file: " + smp_out);
      set.write_csv(os);
    }
    return 0;
  }

  if (swp_cmd->parsed()) {
    gmsel::ExperimentConfig cfg;
    if (!swp_config.empty()) {
      for (const char* flag : {"--class", "--p", "--d", "--k", "--lambda", "--omega",
                               "--n-grid", "--trials", "--decoder", "--weights", "--seed",
                               "--delta", "--worst-case"})
        if (swp_cmd->get_option(flag)->count())
          throw gmsel::ValidationError(std::string("--config excludes inline flag ") + flag);
      cfg = gmsel::ExperimentConfig::from_json_file(swp_config);
    } else {
      if (!swp_cmd->get_option("--class")->count() || !swp_cmd->get_option("--p")->count())
        throw gmsel::ValidationError("sweep needs --config or --class/--p/... flags");
      cfg.spec = swp_flags.spec();
      cfg.n_grid = swp_grid;
      cfg.trials = swp_trials;
      cfg.decoder = swp_decoder == "ml" ? gmsel::DecoderKind::MaxLikelihood
                                        : gmsel::DecoderKind::MeanProjection;
      cfg.weights = swp_weights == "uniform" ? gmsel::WeightPolicy::UniformPlus
                                             : gmsel::WeightPolicy::RandomSign;
      cfg.seed = swp_seed;
      cfg.delta = swp_delta;
      cfg.worst_case = swp_worst;
      cfg.validate();
    }
    gmsel::SweepResult result = gmsel::run_sweep(cfg);
    write_output(gmsel::to_csv(result), swp_out);
    if (!swp_json_out.empty()) write_output(gmsel::to_json(result), swp_json_out);
    return 0;
  }

  if (emit_cmd->parsed()) {
    std::ifstream is(emit_in, std::ios::binary);
    if (!is) throw gmsel::IoError("cannot open input file: " + emit_in);
    std::stringstream buffer;
    buffer << is.rdbuf();
    gmsel::SweepResult result = gmsel::sweep_from_json(buffer.str());
    write_output(emit_format == "csv" ? gmsel::to_csv(result) : gmsel::to_json(result), emit_out);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gmsel::ScaleError& e) {
    std::cerr << "error (scale): " << e.what() << "\n";
    return 3;
  } catch (const gmsel::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
