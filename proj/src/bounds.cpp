#include "gmsel/bounds.hpp"

#include <cmath>
#include <limits>

#include "gmsel/divergence.hpp"

namespace gmsel {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log with nonpositive arguments mapped to -inf (term never binds).
double guarded_log(double x) { return x > 0 ? std::log(x) : kNegInf; }

}  // namespace

double fano_pairwise(int64_t m_models, double avg_sym_kl) {
  if (m_models < 5) throw PreconditionViolated("pairwise threshold needs at least 5 models");
  if (!(avg_sym_kl > 0)) throw PreconditionViolated("averaged divergence must be positive");
  return std::log(double(m_models) / 4.0) / avg_sym_kl;
}

double fano_denominator(const Ensemble& e) {
  const size_t m = e.models.size();
  double acc = 0.0;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) acc += sym_kl(e.models[i], e.models[j]);
  // Half the mean pairwise symmetrized divergence: sum over C(m,2) pairs
  // divided by m(m-1). A flat family with S = 2*lambda*tanh(lambda) thus
  // yields exactly lambda*tanh(lambda).
  return acc / (double(m) * double(m - 1));
}

double ensemble_fano_threshold(const Ensemble& e) {
  return fano_pairwise(int64_t(e.models.size()), fano_denominator(e));
}

double ensemble_a_threshold(int p, double lambda) {
  if (p < 4) throw PreconditionViolated("single-edge closed form needs C(p,2) >= 5");
  if (!(lambda > 0)) throw PreconditionViolated("lambda must be positive");
  return std::log(binom(p, 2) / 4.0) / (lambda * std::tanh(lambda));
}

double fano_trivial_entropy(int p, double log_class_size) {
  if (p < 1) throw PreconditionViolated("vertex count must be positive");
  if (log_class_size < 0) throw PreconditionViolated("log class size must be nonnegative");
  return log_class_size / (2.0 * p);
}

double degree_entropy_term(int p, int d) {
  if (d < 1 || p < 1) throw PreconditionViolated("degree form needs p, d >= 1");
  return (double(d) / 8.0) * guarded_log(double(p) / (8.0 * d));
}

NecessaryReport necessary_threshold(const GraphClassSpec& spec) {
  spec.validate();
  if (!(spec.omega >= 1.0))
    throw HypothesisViolated("necessary thresholds are stated for omega >= 1");
  const double p = spec.p;
  const double lam = spec.lambda;
  const double w = spec.omega;

  NecessaryReport rep;
  rep.terms.emplace_back("pairwise", std::log(p) / (2.0 * lam * std::tanh(lam)));
  if (spec.kind == ClassKind::DegreeBounded) {
    const double d = spec.bound;
    rep.terms.emplace_back("clique_group", std::exp(w / 4.0) * d * lam *
                                               guarded_log(p * d / 4.0 - 1.0) /
                                               (128.0 * std::exp(1.5 * lam)));
    rep.terms.emplace_back("counting", (d / 8.0) * guarded_log(p / (8.0 * d)));
  } else {
    const double k = spec.bound;
    rep.terms.emplace_back("clique_minus_edge", std::exp(w / 2.0) * guarded_log(k / 8.0) /
                                                    (64.0 * w * std::exp(2.5 * lam) *
                                                     std::sinh(lam)));
  }
  rep.n = kNegInf;
  for (const auto& [name, v] : rep.terms)
    if (std::isfinite(v) && v > rep.n) rep.n = v;
  if (!std::isfinite(rep.n)) rep.n = 0.0;
  return rep;
}

double sufficient_threshold(const GraphClassSpec& spec, double delta, WeightVariant variant,
                            UnknownConstantParse parse) {
  spec.validate();
  if (!(delta > 0 && delta < 1)) throw PreconditionViolated("delta must lie in (0,1)");
  const double p = spec.p;
  const double lam = spec.lambda;
  const double w = spec.omega;

  if (variant == WeightVariant::KnownWeights) {
    if (spec.kind == ClassKind::DegreeBounded) {
      const double d = spec.bound;
      const double s = std::sinh(0.5 * lam);
      return 3.0 * (3.0 * std::exp(2.0 * w) + 1.0) / (s * s) * d *
             (3.0 * std::log(p) + std::log(2.0 * d) + std::log(1.0 / delta));
    }
    const double k = spec.bound;
    const double s = std::sinh(0.25 * lam);
    return (3.0 * std::exp(2.0 * w) + 1.0) / (s * s) *
           ((k + 1.0) * std::log(p) + std::log(1.0 / delta));
  }

  const double c = parse == UnknownConstantParse::BracketPlusOne
                       ? 3.0 * std::exp(2.0 * w) + 1.0
                       : 3.0 * std::exp(2.0 * w + 1.0);
  const double s = std::sinh(0.25 * lam);
  const double front = w * c / (s * s);
  return front * front * (16.0 * std::log(p) + 4.0 * std::log(2.0 / delta));
}

ScalingReport corollary_scalings(const GraphClassSpec& spec, ScalingRegime regime) {
  spec.validate();
  ScalingReport rep;
  const double p = spec.p;
  const double lam = spec.lambda;
  const double inv2 = 1.0 / (lam * lam);
  if (spec.kind == ClassKind::DegreeBounded) {
    const double d = spec.bound;
    rep.lambda_regime_ok = lam <= 1.0 / d;
    if (regime == ScalingRegime::Necessary) {
      rep.expression = "max{d^2, lambda^-2} * log p";
      rep.value = std::max(d * d, inv2) * std::log(p);
    } else {
      rep.expression = "max{d^2, lambda^-2} * d * log p";
      rep.value = std::max(d * d, inv2) * d * std::log(p);
    }
  } else {
    const double k = spec.bound;
    rep.lambda_regime_ok = lam <= 1.0 / std::sqrt(k);
    if (regime == ScalingRegime::Necessary) {
      rep.expression = "max{k, lambda^-2} * log p";
      rep.value = std::max(k, inv2) * std::log(p);
    } else {
      rep.expression = "k^2 * log p";
      rep.value = k * k * std::log(p);
    }
  }
  return rep;
}

ThresholdReport threshold_report(const GraphClassSpec& spec, double delta) {
  ThresholdReport rep;
  rep.spec = spec;
  rep.delta = delta;
  rep.necessary = necessary_threshold(spec);
  rep.sufficient_known = sufficient_threshold(spec, delta, WeightVariant::KnownWeights);
  rep.sufficient_unknown = sufficient_threshold(spec, delta, WeightVariant::UnknownWeights,
                                                UnknownConstantParse::BracketPlusOne);
  rep.sufficient_unknown_alt = sufficient_threshold(spec, delta, WeightVariant::UnknownWeights,
                                                    UnknownConstantParse::ExponentShift);
  return rep;
}

std::pair<double, double> wilson_interval(int64_t successes, int64_t trials) {
  if (trials <= 0 || successes < 0 || successes > trials)
    throw PreconditionViolated("interval needs 0 <= successes <= trials, trials > 0");
  const double z = 1.959963984540054;  // 97.5% normal quantile
  const double n = double(trials);
  const double ph = double(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (ph + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace gmsel
