#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "salience/features.hpp"
#include "salience/labeling.hpp"

namespace salience {

enum class Label { NonSummary = 0, Summary = 1 };

std::string_view to_string(Label label);
std::optional<Label> parse_label(std::string_view text);
inline Label to_label(bool positive) { return positive ? Label::Summary : Label::NonSummary; }

struct Condition {
  enum class Test { Equals, In, AtMost, AtLeast, Between };

  Feature feature = Feature::SentLocPara;
  Test test = Test::Equals;
  // Equals: {v}; In: {v...} ascending; AtMost/AtLeast: {v}; Between: {lo, hi}.
  std::vector<double> args;

  // The vector must carry the feature.
  bool holds(const FeatureVector& v) const;
  bool holds_value(double x) const;

  bool operator==(const Condition&) const = default;
  auto operator<=>(const Condition&) const = default;
};

std::string_view to_string(Condition::Test test);
std::optional<Condition::Test> parse_test(std::string_view text);

struct Rule {
  std::vector<Condition> conditions;  // conjunction, never empty
  Label label = Label::Summary;
  double quality = 0.5;  // Laplace accuracy on training data

  bool covers(const FeatureVector& v) const;
  bool operator==(const Rule&) const = default;
};

// Ordered rules (descending quality) with a fallback class.
struct RuleSet {
  std::vector<Rule> rules;
  Label default_class = Label::NonSummary;

  // Stable: equal-quality rules keep their relative order.
  void sort_by_quality();
  bool operator==(const RuleSet&) const = default;
};

struct LinearModel {
  std::vector<Feature> features;  // used features; zero-variance ones dropped
  std::vector<double> means;
  std::vector<double> stds;
  std::vector<double> weights;
  double threshold = 0.0;

  // w . z(x) over standardized features.
  double project(const FeatureVector& v) const;
  bool operator==(const LinearModel&) const = default;
};

using Model = std::variant<LinearModel, RuleSet>;

enum class LearnerKind { Linear, Tree, Covering };

std::string_view to_string(LearnerKind kind);
std::optional<LearnerKind> parse_learner(std::string_view text);

struct LearnerParams {
  double ridge = 1e-6;        // linear
  std::size_t min_leaf = 5;   // tree
  double cf = 0.25;           // tree pruning confidence
  std::size_t beam = 5;       // covering
  double max_fp_rate = 0.0;   // covering
};

// Features present on every vector of the set, in canonical order.
std::vector<Feature> usable_features(std::span<const FeatureVector> vectors);

LinearModel train_linear_discriminant(const LabeledSet& train, double ridge = 1e-6);
RuleSet train_tree_rules(const LabeledSet& train, std::size_t min_leaf = 5, double cf = 0.25);
// Positives no consistent rule could cover are appended to `residue` (as
// indices into train.vectors) when it is non-null.
RuleSet train_covering_rules(const LabeledSet& train, std::size_t beam = 5, double max_fp_rate = 0.0,
                             std::vector<std::size_t>* residue = nullptr);

Model train_model(LearnerKind kind, const LabeledSet& train, const LearnerParams& params = {});

// Throws DataError naming the first referenced feature missing from `v`.
Label classify(const Model& model, const FeatureVector& v);
Label classify(const RuleSet& rules, const FeatureVector& v);
Label classify(const LinearModel& model, const FeatureVector& v);

// Ranking score for length-controlled extraction: the projection minus the
// threshold for linear models; for rule sets, the quality of the best fired
// summary rule, 0 when none fires.
double summary_score(const Model& model, const FeatureVector& v);

std::vector<Feature> referenced_features(const Model& model);
bool requires_keywords(const Model& model);

// Upper limit of the one-sided binomial confidence interval for `errors`
// misclassifications among `covered` cases at confidence `cf`.
double pessimistic_error_rate(std::size_t errors, std::size_t covered, double cf);

// Greedily drops conditions while the pessimistic error does not rise; keeps
// at least one condition.
Rule prune_rule(const Rule& rule, std::span<const FeatureVector> data, double cf);

double laplace_quality(std::size_t correct, std::size_t covered);

// Fraction of rules in the smaller set whose (class, condition set) also
// appears in the larger set. 1.0 when the smaller set is empty.
double rule_overlap(const RuleSet& a, const RuleSet& b);
double mean_conditions_per_rule(const RuleSet& rules);

// JSON model files (the editable source of truth) and English-like rendering.
std::string model_to_json(const Model& model);
Model model_from_json(std::string_view text);
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);
std::string describe_condition(const Condition& c);
std::string pretty_print(const RuleSet& rules);
std::string pretty_print(const LinearModel& model);

}  // namespace salience
