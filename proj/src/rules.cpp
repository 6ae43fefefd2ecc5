#include <algorithm>
#include <cmath>
#include <set>

#include "salience/error.hpp"
#include "salience/learners.hpp"

namespace salience {

std::string_view to_string(Label label) {
  return label == Label::Summary ? "summary" : "non-summary";
}

std::optional<Label> parse_label(std::string_view text) {
  if (text == "summary") return Label::Summary;
  if (text == "non-summary") return Label::NonSummary;
  return std::nullopt;
}

std::string_view to_string(Condition::Test test) {
  switch (test) {
    case Condition::Test::Equals: return "equals";
    case Condition::Test::In: return "in";
    case Condition::Test::AtMost: return "le";
    case Condition::Test::AtLeast: return "ge";
    case Condition::Test::Between: return "between";
  }
  return "equals";
}

std::optional<Condition::Test> parse_test(std::string_view text) {
  if (text == "equals") return Condition::Test::Equals;
  if (text == "in") return Condition::Test::In;
  if (text == "le") return Condition::Test::AtMost;
  if (text == "ge") return Condition::Test::AtLeast;
  if (text == "between") return Condition::Test::Between;
  return std::nullopt;
}

std::string_view to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::Linear: return "linear";
    case LearnerKind::Tree: return "tree";
    case LearnerKind::Covering: return "covering";
  }
  return "tree";
}

std::optional<LearnerKind> parse_learner(std::string_view text) {
  if (text == "linear") return LearnerKind::Linear;
  if (text == "tree") return LearnerKind::Tree;
  if (text == "covering") return LearnerKind::Covering;
  return std::nullopt;
}

bool Condition::holds_value(double x) const {
  switch (test) {
    case Test::Equals: return x == args[0];
    case Test::In: return std::find(args.begin(), args.end(), x) != args.end();
    case Test::AtMost: return x <= args[0];
    case Test::AtLeast: return x >= args[0];
    case Test::Between: return x >= args[0] && x <= args[1];
  }
  return false;
}

bool Condition::holds(const FeatureVector& v) const { return holds_value(v.value(feature)); }

bool Rule::covers(const FeatureVector& v) const {
  return std::all_of(conditions.begin(), conditions.end(), [&](const Condition& c) { return c.holds(v); });
}

void RuleSet::sort_by_quality() {
  std::stable_sort(rules.begin(), rules.end(),
                   [](const Rule& a, const Rule& b) { return a.quality > b.quality; });
}

std::vector<Feature> usable_features(std::span<const FeatureVector> vectors) {
  std::vector<Feature> features;
  for (const auto& info : feature_table()) {
    const bool everywhere = std::all_of(vectors.begin(), vectors.end(),
                                        [&](const FeatureVector& v) { return v.has(info.id); });
    if (everywhere) features.push_back(info.id);
  }
  return features;
}

std::vector<Feature> referenced_features(const Model& model) {
  std::set<Feature> used;
  if (const auto* rules = std::get_if<RuleSet>(&model)) {
    for (const auto& r : rules->rules) {
      for (const auto& c : r.conditions) used.insert(c.feature);
    }
  } else {
    const auto& linear = std::get<LinearModel>(model);
    used.insert(linear.features.begin(), linear.features.end());
  }
  return {used.begin(), used.end()};
}

bool requires_keywords(const Model& model) {
  for (const auto f : referenced_features(model)) {
    if (feature_info(f).user_focused) return true;
  }
  return false;
}

namespace {

void check_features(const Model& model, const FeatureVector& v) {
  for (const auto f : referenced_features(model)) {
    if (!v.has(f)) {
      throw DataError("cannot classify " + v.doc_id + "#" + std::to_string(v.sent_index) +
                      ": model references missing feature " + std::string(feature_name(f)));
    }
  }
}

}  // namespace

double LinearModel::project(const FeatureVector& v) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    sum += weights[i] * (v.value(features[i]) - means[i]) / stds[i];
  }
  return sum;
}

Label classify(const RuleSet& rules, const FeatureVector& v) {
  check_features(Model(rules), v);
  for (const auto& rule : rules.rules) {
    if (rule.covers(v)) return rule.label;
  }
  return rules.default_class;
}

Label classify(const LinearModel& model, const FeatureVector& v) {
  check_features(Model(model), v);
  return model.project(v) >= model.threshold ? Label::Summary : Label::NonSummary;
}

Label classify(const Model& model, const FeatureVector& v) {
  return std::visit([&](const auto& m) { return classify(m, v); }, model);
}

double summary_score(const Model& model, const FeatureVector& v) {
  check_features(model, v);
  if (const auto* linear = std::get_if<LinearModel>(&model)) return linear->project(v) - linear->threshold;
  double best = 0.0;
  for (const auto& rule : std::get<RuleSet>(model).rules) {
    if (rule.label == Label::Summary && rule.covers(v)) best = std::max(best, rule.quality);
  }
  return best;
}

double laplace_quality(std::size_t correct, std::size_t covered) {
  return (static_cast<double>(correct) + 1.0) / (static_cast<double>(covered) + 2.0);
}

namespace {

// P(X <= errors) for X ~ Binomial(covered, p).
double binomial_cdf(std::size_t errors, std::size_t covered, double p) {
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return errors >= covered ? 1.0 : 0.0;
  const double n = static_cast<double>(covered);
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  double total = 0.0;
  for (std::size_t i = 0; i <= errors; ++i) {
    const double k = static_cast<double>(i);
    const double log_term =
        std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * lp + (n - k) * lq;
    total += std::exp(log_term);
  }
  return std::min(1.0, total);
}

}  // namespace

double pessimistic_error_rate(std::size_t errors, std::size_t covered, double cf) {
  if (covered == 0) return 1.0;
  if (errors >= covered) return 1.0;
  if (errors == 0) return 1.0 - std::pow(cf, 1.0 / static_cast<double>(covered));
  double lo = static_cast<double>(errors) / static_cast<double>(covered);
  double hi = 1.0;
  for (int iter = 0; iter < 100; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (binomial_cdf(errors, covered, mid) > cf) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

struct Coverage {
  std::size_t covered = 0;
  std::size_t errors = 0;
};

Coverage coverage_of(const std::vector<Condition>& conditions, Label label,
                     std::span<const FeatureVector> data) {
  Coverage c;
  for (const auto& v : data) {
    const bool fires = std::all_of(conditions.begin(), conditions.end(),
                                   [&](const Condition& cond) { return cond.holds(v); });
    if (!fires) continue;
    ++c.covered;
    if (to_label(v.label.value_or(false)) != label) ++c.errors;
  }
  return c;
}

}  // namespace

Rule prune_rule(const Rule& rule, std::span<const FeatureVector> data, double cf) {
  Rule pruned = rule;
  auto cov = coverage_of(pruned.conditions, pruned.label, data);
  double current = pessimistic_error_rate(cov.errors, cov.covered, cf);
  while (pruned.conditions.size() > 1) {
    std::size_t best_index = pruned.conditions.size();
    double best_error = current;
    for (std::size_t i = 0; i < pruned.conditions.size(); ++i) {
      auto trial = pruned.conditions;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      const auto c = coverage_of(trial, pruned.label, data);
      const double err = pessimistic_error_rate(c.errors, c.covered, cf);
      if (err <= best_error) {
        // Ties prefer the later condition (deeper in the tree).
        best_error = err;
        best_index = i;
      }
    }
    if (best_index == pruned.conditions.size()) break;
    pruned.conditions.erase(pruned.conditions.begin() + static_cast<std::ptrdiff_t>(best_index));
    current = best_error;
  }
  cov = coverage_of(pruned.conditions, pruned.label, data);
  pruned.quality = laplace_quality(cov.covered - cov.errors, cov.covered);
  return pruned;
}

namespace {

std::pair<Label, std::vector<Condition>> rule_key(const Rule& r) {
  auto conditions = r.conditions;
  std::sort(conditions.begin(), conditions.end());
  return {r.label, std::move(conditions)};
}

}  // namespace

double rule_overlap(const RuleSet& a, const RuleSet& b) {
  const RuleSet& smaller = a.rules.size() <= b.rules.size() ? a : b;
  const RuleSet& larger = a.rules.size() <= b.rules.size() ? b : a;
  if (smaller.rules.empty()) return 1.0;
  std::set<std::pair<Label, std::vector<Condition>>> keys;
  for (const auto& r : larger.rules) keys.insert(rule_key(r));
  std::size_t shared = 0;
  for (const auto& r : smaller.rules) shared += keys.count(rule_key(r));
  return static_cast<double>(shared) / static_cast<double>(smaller.rules.size());
}

double mean_conditions_per_rule(const RuleSet& rules) {
  if (rules.rules.empty()) return 0.0;
  std::size_t total = 0;
  for (const auto& r : rules.rules) total += r.conditions.size();
  return static_cast<double>(total) / static_cast<double>(rules.rules.size());
}

Model train_model(LearnerKind kind, const LabeledSet& train, const LearnerParams& params) {
  switch (kind) {
    case LearnerKind::Linear: return train_linear_discriminant(train, params.ridge);
    case LearnerKind::Tree: return train_tree_rules(train, params.min_leaf, params.cf);
    case LearnerKind::Covering: return train_covering_rules(train, params.beam, params.max_fp_rate);
  }
  throw ConfigError("unknown learner");
}

}  // namespace salience
