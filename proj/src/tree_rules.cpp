#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <set>

#include "salience/error.hpp"
#include "salience/learners.hpp"

namespace salience {

namespace {

double entropy(std::size_t pos, std::size_t total) {
  if (total == 0 || pos == 0 || pos == total) return 0.0;
  const double p = static_cast<double>(pos) / static_cast<double>(total);
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double split_information(std::size_t left, std::size_t total) {
  return entropy(left, total);
}

struct Split {
  Feature feature;
  bool categorical;
  double value;  // equality value or numeric threshold
  double gain;
  double ratio;
};

// Binary test; the "left" side is x == value (categorical) or x <= value.
bool goes_left(const Split& s, double x) { return s.categorical ? x == s.value : x <= s.value; }

struct Node {
  bool leaf = true;
  Label label = Label::NonSummary;
  Split split{};
  std::unique_ptr<Node> left;
  std::unique_ptr<Node> right;
};

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<FeatureVector>& data, std::vector<Feature> features, std::size_t min_leaf)
      : data_(data), features_(std::move(features)), min_leaf_(min_leaf) {}

  std::unique_ptr<Node> grow(const std::vector<std::size_t>& rows) {
    auto node = std::make_unique<Node>();
    const std::size_t pos = count_positive(rows);
    node->label = 2 * pos > rows.size() ? Label::Summary : Label::NonSummary;
    if (pos == 0 || pos == rows.size() || rows.size() < 2 * min_leaf_) return node;

    const auto split = best_split(rows, pos);
    if (!split) return node;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (const auto r : rows) {
      (goes_left(*split, data_[r].value(split->feature)) ? left : right).push_back(r);
    }
    node->leaf = false;
    node->split = *split;
    node->left = grow(left);
    node->right = grow(right);
    return node;
  }

 private:
  std::size_t count_positive(const std::vector<std::size_t>& rows) const {
    std::size_t pos = 0;
    for (const auto r : rows) pos += data_[r].label.value_or(false) ? 1 : 0;
    return pos;
  }

  std::optional<Split> best_split(const std::vector<std::size_t>& rows, std::size_t pos) const {
    const std::size_t total = rows.size();
    const double base = entropy(pos, total);
    std::vector<Split> candidates;

    for (const auto f : features_) {
      const bool categorical = feature_info(f).categorical;
      // value -> (count, positives)
      std::map<double, std::pair<std::size_t, std::size_t>> by_value;
      for (const auto r : rows) {
        auto& slot = by_value[data_[r].value(f)];
        ++slot.first;
        slot.second += data_[r].label.value_or(false) ? 1 : 0;
      }
      if (by_value.size() < 2) continue;

      auto consider = [&](double value, std::size_t n_left, std::size_t pos_left) {
        const std::size_t n_right = total - n_left;
        if (n_left < min_leaf_ || n_right < min_leaf_) return;
        const double cond = (static_cast<double>(n_left) * entropy(pos_left, n_left) +
                             static_cast<double>(n_right) * entropy(pos - pos_left, n_right)) /
                            static_cast<double>(total);
        const double gain = base - cond;
        if (gain <= 1e-12) return;
        const double info = split_information(n_left, total);
        if (info <= 0.0) return;
        candidates.push_back({f, categorical, value, gain, gain / info});
      };

      if (categorical) {
        for (const auto& [value, slot] : by_value) consider(value, slot.first, slot.second);
      } else {
        std::size_t n_left = 0;
        std::size_t pos_left = 0;
        for (auto it = by_value.begin(); std::next(it) != by_value.end(); ++it) {
          n_left += it->second.first;
          pos_left += it->second.second;
          const double threshold = 0.5 * (it->first + std::next(it)->first);
          consider(threshold, n_left, pos_left);
        }
      }
    }
    if (candidates.empty()) return std::nullopt;

    // Gain ratio among splits with at least average gain.
    double mean_gain = 0.0;
    for (const auto& c : candidates) mean_gain += c.gain;
    mean_gain /= static_cast<double>(candidates.size());
    const Split* best = nullptr;
    for (const auto& c : candidates) {
      if (c.gain + 1e-12 < mean_gain) continue;
      if (best == nullptr || c.ratio > best->ratio + 1e-12) best = &c;
    }
    return *best;
  }

  const std::vector<FeatureVector>& data_;
  std::vector<Feature> features_;
  std::size_t min_leaf_;
};

// Accumulated constraints on one feature along a tree path.
struct PathConstraint {
  std::set<double> allowed;  // categorical
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

std::vector<Condition> to_conditions(const std::map<Feature, PathConstraint>& path) {
  std::vector<Condition> conditions;
  for (const auto& [feature, constraint] : path) {
    Condition c;
    c.feature = feature;
    if (feature_info(feature).categorical) {
      if (constraint.allowed.size() == feature_domain(feature).size()) continue;
      if (constraint.allowed.size() == 1) {
        c.test = Condition::Test::Equals;
        c.args = {*constraint.allowed.begin()};
      } else {
        c.test = Condition::Test::In;
        c.args.assign(constraint.allowed.begin(), constraint.allowed.end());
      }
    } else {
      const bool has_lo = std::isfinite(constraint.lo);
      const bool has_hi = std::isfinite(constraint.hi);
      if (has_lo && has_hi) {
        c.test = Condition::Test::Between;
        c.args = {constraint.lo, constraint.hi};
      } else if (has_hi) {
        c.test = Condition::Test::AtMost;
        c.args = {constraint.hi};
      } else if (has_lo) {
        c.test = Condition::Test::AtLeast;
        c.args = {constraint.lo};
      } else {
        continue;
      }
    }
    conditions.push_back(std::move(c));
  }
  return conditions;
}

void collect_rules(const Node& node, std::map<Feature, PathConstraint> path, std::vector<Rule>& out) {
  if (node.leaf) {
    Rule rule;
    rule.conditions = to_conditions(path);
    rule.label = node.label;
    if (!rule.conditions.empty()) out.push_back(std::move(rule));
    return;
  }
  const Split& s = node.split;
  auto constraint_of = [&](std::map<Feature, PathConstraint>& p) -> PathConstraint& {
    auto it = p.find(s.feature);
    if (it == p.end()) {
      PathConstraint fresh;
      for (const double v : feature_domain(s.feature)) fresh.allowed.insert(v);
      it = p.emplace(s.feature, std::move(fresh)).first;
    }
    return it->second;
  };

  auto left_path = path;
  auto right_path = std::move(path);
  if (s.categorical) {
    auto& l = constraint_of(left_path);
    l.allowed = l.allowed.count(s.value) ? std::set<double>{s.value} : std::set<double>{};
    constraint_of(right_path).allowed.erase(s.value);
  } else {
    auto& l = constraint_of(left_path);
    l.hi = std::min(l.hi, s.value);
    auto& r = constraint_of(right_path);
    r.lo = std::max(r.lo, s.value);
  }
  collect_rules(*node.left, std::move(left_path), out);
  collect_rules(*node.right, std::move(right_path), out);
}

}  // namespace

RuleSet train_tree_rules(const LabeledSet& train, std::size_t min_leaf, double cf) {
  const auto& data = train.vectors;
  if (data.empty()) throw NumericError("empty training set");
  if (min_leaf == 0) throw ConfigError("min_leaf must be at least 1");
  if (!(cf > 0.0 && cf < 1.0)) throw ConfigError("pruning confidence must be in (0,1)");

  std::vector<std::size_t> rows(data.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  TreeBuilder builder(data, usable_features(data), min_leaf);
  const auto root = builder.grow(rows);

  std::vector<Rule> raw;
  collect_rules(*root, {}, raw);

  RuleSet result;
  std::set<std::pair<Label, std::vector<Condition>>> seen;
  for (const auto& rule : raw) {
    auto pruned = prune_rule(rule, data, cf);
    auto key = pruned.conditions;
    std::sort(key.begin(), key.end());
    if (!seen.emplace(pruned.label, std::move(key)).second) continue;
    result.rules.push_back(std::move(pruned));
  }
  result.sort_by_quality();

  std::size_t uncovered = 0;
  std::size_t uncovered_pos = 0;
  std::size_t pos = 0;
  for (const auto& v : data) {
    const bool positive = v.label.value_or(false);
    pos += positive ? 1 : 0;
    const bool covered = std::any_of(result.rules.begin(), result.rules.end(),
                                     [&](const Rule& r) { return r.covers(v); });
    if (!covered) {
      ++uncovered;
      uncovered_pos += positive ? 1 : 0;
    }
  }
  if (uncovered > 0) {
    result.default_class = 2 * uncovered_pos > uncovered ? Label::Summary : Label::NonSummary;
  } else {
    result.default_class = 2 * pos > data.size() ? Label::Summary : Label::NonSummary;
  }
  return result;
}

}  // namespace salience
