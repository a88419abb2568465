// Python face of the library: graphs and classes, exact Ising inference,
// divergences, ensembles, thresholds, decoders, sweeps, and the numbered
// statement checks.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gmsel/bounds.hpp"
#include "gmsel/decoders.hpp"
#include "gmsel/divergence.hpp"
#include "gmsel/ensembles.hpp"
#include "gmsel/errors.hpp"
#include "gmsel/graph_class.hpp"
#include "gmsel/harness.hpp"
#include "gmsel/ising.hpp"
#include "gmsel/verify.hpp"

namespace py = pybind11;
using namespace gmsel;

namespace {

GraphClassSpec make_spec(const std::string& kind, int p, int bound, double lambda, double omega) {
  GraphClassSpec s;
  if (kind == "degree" || kind == "deg")
    s.kind = ClassKind::DegreeBounded;
  else if (kind == "edge")
    s.kind = ClassKind::EdgeBounded;
  else
    throw ValidationError("class kind must be 'degree' or 'edge'");
  s.p = p;
  s.bound = bound;
  s.lambda = lambda;
  s.omega = omega;
  s.validate();
  return s;
}

std::vector<std::vector<int>> sample_rows(const SampleSet& s) {
  std::vector<std::vector<int>> rows(size_t(s.n), std::vector<int>(s.p));
  for (int64_t r = 0; r < s.n; ++r)
    for (int v = 0; v < s.p; ++v) rows[size_t(r)][size_t(v)] = s.at(r, v);
  return rows;
}

}  // namespace

PYBIND11_MODULE(_gmsel, m) {
  m.doc() = "exact small-instance toolkit for binary graphical model selection";

  py::register_exception<ScaleError>(m, "ScaleError", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init<int>(), py::arg("p"))
      .def(py::init<int, const std::vector<std::pair<int, int>>&>(), py::arg("p"),
           py::arg("edges"))
      .def_readonly("p", &Graph::p)
      .def("has_edge", &Graph::has_edge)
      .def("add_edge", &Graph::add_edge)
      .def("remove_edge", &Graph::remove_edge)
      .def("edge_count", &Graph::edge_count)
      .def("degree", &Graph::degree)
      .def("max_degree", &Graph::max_degree)
      .def("edge_list", &Graph::edge_list)
      .def("to_text", &Graph::to_text)
      .def_static("parse_text", &Graph::parse_text)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) { return "Graph('" + g.to_text() + "')"; });

  m.def("symmetric_difference", &symmetric_difference);
  m.def("matching_number", &matching_number);

  py::class_<GraphClassSpec>(m, "GraphClassSpec")
      .def(py::init(&make_spec), py::arg("kind"), py::arg("p"), py::arg("bound"),
           py::arg("lam"), py::arg("omega"))
      .def_readonly("p", &GraphClassSpec::p)
      .def_readonly("bound", &GraphClassSpec::bound)
      .def_readonly("lam", &GraphClassSpec::lambda)
      .def_readonly("omega", &GraphClassSpec::omega)
      .def_property_readonly("kind", &GraphClassSpec::kind_name);

  m.def("enumerate_class", &enumerate_class);
  m.def("cardinality_bounds", [](const GraphClassSpec& s) {
    CardinalityBounds b = cardinality_bounds(s);
    return std::make_pair(b.lower, b.upper);
  });

  py::class_<IsingParams>(m, "IsingParams")
      .def_static("from_theta", &IsingParams::from_theta, py::arg("p"), py::arg("theta"))
      .def_static("uniform", &IsingParams::uniform, py::arg("graph"), py::arg("lam"))
      .def_static("signed_uniform", &IsingParams::signed_uniform, py::arg("graph"),
                  py::arg("lam"), py::arg("signs"))
      .def_readonly("p", &IsingParams::p)
      .def_readonly("theta", &IsingParams::theta)
      .def_readonly("support", &IsingParams::support)
      .def("weight", &IsingParams::weight)
      .def("min_edge_magnitude", &IsingParams::min_edge_magnitude)
      .def("max_neighborhood_weight", &IsingParams::max_neighborhood_weight);

  m.def("average_params", &average_params);
  m.def("log_partition", &log_partition);
  m.def("partition_function", &partition_function);
  m.def("probability", &probability);
  m.def("mean_params_exact", [](const IsingParams& mdl) { return mean_params_exact(mdl).mu; });

  py::class_<SampleSet>(m, "SampleSet")
      .def_readonly("p", &SampleSet::p)
      .def_readonly("n", &SampleSet::n)
      .def_readonly("seed", &SampleSet::seed)
      .def("rows", &sample_rows)
      .def("save", &SampleSet::save_binary_file, py::arg("path"))
      .def_static("load", &SampleSet::load_binary_file, py::arg("path"));

  m.def("sample_exact", &sample_exact, py::arg("model"), py::arg("n"), py::arg("seed"));
  m.def("sample_gibbs", &sample_gibbs, py::arg("model"), py::arg("n"), py::arg("seed"),
        py::arg("burn_in") = -1, py::arg("thin") = -1);

  m.def("kl", &kl);
  m.def("sym_kl", &sym_kl);
  m.def("sym_kl_mean_form", &sym_kl_mean_form);
  m.def("j_divergence", &j_divergence);
  m.def("j_divergence_cumulant", &j_divergence_cumulant);
  m.def("conditional_j", &conditional_j, py::arg("a"), py::arg("b"), py::arg("edge"),
        py::arg("cond"));
  m.def("flip_delta", &flip_delta);

  py::class_<Ensemble>(m, "Ensemble")
      .def_readonly("models", &Ensemble::models)
      .def_readonly("spec", &Ensemble::spec)
      .def_property_readonly("label",
                             [](const Ensemble& e) { return ensemble_label_name(e.label); })
      .def("__len__", [](const Ensemble& e) { return e.size(); });

  m.def("ensemble_a", &ensemble_a, py::arg("p"), py::arg("lam"));
  m.def("ensemble_b_degree", &ensemble_b_degree, py::arg("p"), py::arg("d"), py::arg("lam"));
  m.def("ensemble_b_edge", &ensemble_b_edge, py::arg("p"), py::arg("k"), py::arg("lam"));
  m.def("ensemble_c", &ensemble_c, py::arg("spec"), py::arg("lam"));
  m.def("b_edge_clique_size", &b_edge_clique_size);
  m.def("key_separation_ratio", [](int mm, double lam) {
    KeySeparation ks = key_separation_ratio(mm, lam);
    return std::make_pair(ks.ratio, ks.bound);
  });
  m.def("key_mean_separation", [](int mm, double lam) {
    MeanSeparation ms = key_mean_separation(mm, lam);
    return std::make_pair(ms.mean, ms.bound);
  });
  m.def("fkg_ratio_check", &fkg_ratio_check);

  m.def("fano_pairwise", &fano_pairwise);
  m.def("fano_denominator", &fano_denominator);
  m.def("ensemble_fano_threshold", &ensemble_fano_threshold);
  m.def("ensemble_a_threshold", &ensemble_a_threshold);
  m.def("fano_trivial_entropy", &fano_trivial_entropy);
  m.def("degree_entropy_term", &degree_entropy_term);
  m.def("necessary_threshold", [](const GraphClassSpec& s) {
    NecessaryReport r = necessary_threshold(s);
    return py::make_tuple(r.n, r.terms);
  });
  m.def(
      "sufficient_threshold",
      [](const GraphClassSpec& s, double delta, const std::string& variant, bool alt_parse) {
        WeightVariant v = variant == "known" ? WeightVariant::KnownWeights
                                             : WeightVariant::UnknownWeights;
        UnknownConstantParse parse = alt_parse ? UnknownConstantParse::ExponentShift
                                               : UnknownConstantParse::BracketPlusOne;
        return sufficient_threshold(s, delta, v, parse);
      },
      py::arg("spec"), py::arg("delta"), py::arg("variant") = "known",
      py::arg("alt_parse") = false);
  m.def("wilson_interval", &wilson_interval);

  py::class_<FeasibleSet>(m, "FeasibleSet")
      .def(py::init([](Graph g, double lam, double omega) {
             FeasibleSet fs{std::move(g), lam, omega};
             fs.validate();
             return fs;
           }),
           py::arg("graph"), py::arg("lam"), py::arg("omega"))
      .def_readonly("graph", &FeasibleSet::graph)
      .def_readonly("lam", &FeasibleSet::lambda)
      .def_readonly("omega", &FeasibleSet::omega);

  py::class_<DecodeResult>(m, "DecodeResult")
      .def_readonly("chosen", &DecodeResult::chosen)
      .def_readonly("score", &DecodeResult::score)
      .def_readonly("runner_up_gap", &DecodeResult::runner_up_gap)
      .def_readonly("ties", &DecodeResult::ties);

  m.def("log_likelihood", &log_likelihood);
  m.def("ml_decode", &ml_decode);
  m.def("pairwise_error_bound", &pairwise_error_bound);
  m.def("empirical_mean_params",
        [](const SampleSet& s) { return empirical_mean_params(s).mu; });
  m.def(
      "projection_distance",
      [](const FeasibleSet& fs, const std::vector<double>& mu, double resolution) {
        Projection pr = projection_distance(fs, MeanParams{fs.graph.p, mu}, resolution);
        return std::make_pair(pr.distance, pr.argmin);
      },
      py::arg("feasible"), py::arg("mu"), py::arg("resolution") = -1.0);
  m.def("mean_decode", &mean_decode);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_static("from_json", &ExperimentConfig::from_json_text)
      .def("to_json", &ExperimentConfig::to_json_pretty)
      .def("canonical_json", &ExperimentConfig::canonical_json)
      .def("config_hash", &ExperimentConfig::config_hash);

  py::class_<SweepPoint>(m, "SweepPoint")
      .def_readonly("n", &SweepPoint::n)
      .def_readonly("successes", &SweepPoint::successes)
      .def_readonly("trials", &SweepPoint::trials)
      .def_readonly("success_rate", &SweepPoint::success_rate)
      .def_readonly("wilson_lo", &SweepPoint::wilson_lo)
      .def_readonly("wilson_hi", &SweepPoint::wilson_hi);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("points", &SweepResult::points)
      .def_readonly("necessary_n", &SweepResult::necessary_n)
      .def_readonly("sufficient_n", &SweepResult::sufficient_n)
      .def_readonly("config_hash_hex", &SweepResult::config_hash_hex)
      .def("to_csv", [](const SweepResult& r) { return to_csv(r); })
      .def("to_json", [](const SweepResult& r) { return to_json(r); });

  m.def("run_trial", &run_trial);
  m.def("run_sweep", &run_sweep, py::call_guard<py::gil_scoped_release>());
  m.def("sweep_from_json", &sweep_from_json);

  py::class_<CheckRow>(m, "CheckRow")
      .def_readonly("label", &CheckRow::label)
      .def_readonly("lhs", &CheckRow::lhs)
      .def_readonly("rhs", &CheckRow::rhs)
      .def_readonly("margin", &CheckRow::margin)
      .def_readonly("passed", &CheckRow::pass);

  py::class_<LemmaReport>(m, "LemmaReport")
      .def_readonly("id", &LemmaReport::id)
      .def_readonly("title", &LemmaReport::title)
      .def_readonly("passed", &LemmaReport::pass)
      .def_readonly("cases", &LemmaReport::cases)
      .def_readonly("rows", &LemmaReport::rows)
      .def("__str__", [](const LemmaReport& r) { return format_report(r); });

  m.def("run_lemma_check", &run_lemma_check, py::call_guard<py::gil_scoped_release>());
}
