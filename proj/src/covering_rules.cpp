#include <algorithm>
#include <map>
#include <set>

#include "salience/error.hpp"
#include "salience/learners.hpp"

namespace salience {

namespace {

using Bits = std::vector<bool>;

struct Candidate {
  std::vector<Condition> conditions;  // at most one per feature
  Bits covered;
  std::size_t tp_new = 0;  // still-uncovered positives
  std::size_t tp = 0;
  std::size_t fp = 0;
};

class CoveringSearch {
 public:
  CoveringSearch(const std::vector<FeatureVector>& data, std::size_t beam, double max_fp_rate)
      : data_(data), features_(usable_features(data)), beam_(beam), max_fp_rate_(max_fp_rate) {
    for (const auto f : features_) {
      double lo = data_.front().value(f);
      double hi = lo;
      for (const auto& v : data_) {
        lo = std::min(lo, v.value(f));
        hi = std::max(hi, v.value(f));
      }
      range_[f] = {lo, hi};
    }
  }

  std::optional<Candidate> search(std::size_t seed, const Bits& uncovered) const {
    Candidate root;
    root.covered.assign(data_.size(), true);
    std::vector<Candidate> beam{root};
    std::optional<Candidate> best;

    for (std::size_t depth = 0; depth < features_.size() && !beam.empty(); ++depth) {
      std::vector<Candidate> open;
      std::set<std::vector<Condition>> seen;
      for (const auto& parent : beam) {
        for (const auto f : features_) {
          if (uses(parent, f)) continue;
          auto condition = seed_condition(f, seed, parent.covered);
          if (!condition) continue;
          Candidate child = extend(parent, *condition, uncovered);
          if (child.covered == parent.covered) continue;
          auto key = child.conditions;
          std::sort(key.begin(), key.end());
          if (!seen.insert(std::move(key)).second) continue;

          if (consistent(child)) {
            if (!best || better(child, *best)) best = child;
          } else if (!best || child.tp_new > best->tp_new) {
            open.push_back(std::move(child));
          }
        }
      }
      std::stable_sort(open.begin(), open.end(), [](const Candidate& a, const Candidate& b) {
        // Laplace estimate on the positives still to be covered, then coverage.
        const double qa = (a.tp_new + 1.0) / (a.tp_new + a.fp + 2.0);
        const double qb = (b.tp_new + 1.0) / (b.tp_new + b.fp + 2.0);
        if (qa != qb) return qa > qb;
        return a.tp_new > b.tp_new;
      });
      if (open.size() > beam_) open.resize(beam_);
      beam = std::move(open);
    }
    if (best) simplify(*best, uncovered);
    return best;
  }

 private:
  static bool uses(const Candidate& c, Feature f) {
    return std::any_of(c.conditions.begin(), c.conditions.end(),
                       [&](const Condition& cond) { return cond.feature == f; });
  }

  bool consistent(const Candidate& c) const {
    const std::size_t covered = c.tp + c.fp;
    return covered > 0 && static_cast<double>(c.fp) <= max_fp_rate_ * static_cast<double>(covered) + 1e-12;
  }

  static bool better(const Candidate& a, const Candidate& b) {
    if (a.tp_new != b.tp_new) return a.tp_new > b.tp_new;
    if (a.tp != b.tp) return a.tp > b.tp;
    if (a.fp != b.fp) return a.fp < b.fp;
    return a.conditions.size() < b.conditions.size();
  }

  // Equality on the seed's value for categorical features. For numeric ones,
  // an interval grown outward from the seed's value over the values seen in
  // the current cover, as far as the false-positive budget allows.
  std::optional<Condition> seed_condition(Feature f, std::size_t seed, const Bits& covered) const {
    const double s = data_[seed].value(f);
    Condition c;
    c.feature = f;
    if (feature_info(f).categorical) {
      c.test = Condition::Test::Equals;
      c.args = {s};
      return c;
    }
    std::map<double, std::pair<std::size_t, std::size_t>> by_value;  // value -> (pos, neg)
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (!covered[i]) continue;
      auto& slot = by_value[data_[i].value(f)];
      (data_[i].label.value_or(false) ? slot.first : slot.second) += 1;
    }
    auto it = by_value.find(s);
    std::size_t tp = it->second.first;
    std::size_t fp = it->second.second;
    auto fits = [&](std::size_t extra_tp, std::size_t extra_fp) {
      const double total = static_cast<double>(tp + fp + extra_tp + extra_fp);
      return static_cast<double>(fp + extra_fp) <= max_fp_rate_ * total + 1e-12;
    };
    auto lo_it = it;
    while (lo_it != by_value.begin()) {
      const auto prev = std::prev(lo_it);
      if (!fits(prev->second.first, prev->second.second)) break;
      tp += prev->second.first;
      fp += prev->second.second;
      lo_it = prev;
    }
    auto hi_it = it;
    for (auto next = std::next(hi_it); next != by_value.end(); ++next) {
      if (!fits(next->second.first, next->second.second)) break;
      tp += next->second.first;
      fp += next->second.second;
      hi_it = next;
    }
    const auto [min_value, max_value] = range_.at(f);
    const bool open_lo = lo_it->first <= min_value;
    const bool open_hi = hi_it->first >= max_value;
    if (open_lo && open_hi) return std::nullopt;
    if (open_lo) {
      c.test = Condition::Test::AtMost;
      c.args = {hi_it->first};
    } else if (open_hi) {
      c.test = Condition::Test::AtLeast;
      c.args = {lo_it->first};
    } else {
      c.test = Condition::Test::Between;
      c.args = {lo_it->first, hi_it->first};
    }
    return c;
  }

  Candidate extend(const Candidate& parent, const Condition& condition, const Bits& uncovered) const {
    Candidate child;
    child.conditions = parent.conditions;
    child.conditions.push_back(condition);
    child.covered = parent.covered;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (child.covered[i] && !condition.holds(data_[i])) child.covered[i] = false;
    }
    score(child, uncovered);
    return child;
  }

  void score(Candidate& c, const Bits& uncovered) const {
    c.tp = c.fp = c.tp_new = 0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (!c.covered[i]) continue;
      if (data_[i].label.value_or(false)) {
        ++c.tp;
        if (uncovered[i]) ++c.tp_new;
      } else {
        ++c.fp;
      }
    }
  }

  // Drops conditions that are not needed for consistency.
  void simplify(Candidate& c, const Bits& uncovered) const {
    bool changed = true;
    while (changed && c.conditions.size() > 1) {
      changed = false;
      for (std::size_t i = 0; i < c.conditions.size(); ++i) {
        Candidate trial;
        trial.conditions = c.conditions;
        trial.conditions.erase(trial.conditions.begin() + static_cast<std::ptrdiff_t>(i));
        trial.covered.assign(data_.size(), true);
        for (std::size_t r = 0; r < data_.size(); ++r) {
          for (const auto& cond : trial.conditions) {
            if (!cond.holds(data_[r])) {
              trial.covered[r] = false;
              break;
            }
          }
        }
        score(trial, uncovered);
        if (consistent(trial) && trial.tp_new >= c.tp_new) {
          c = std::move(trial);
          changed = true;
          break;
        }
      }
    }
  }

  const std::vector<FeatureVector>& data_;
  std::vector<Feature> features_;
  std::size_t beam_;
  double max_fp_rate_;
  std::map<Feature, std::pair<double, double>> range_;
};

}  // namespace

RuleSet train_covering_rules(const LabeledSet& train, std::size_t beam, double max_fp_rate,
                             std::vector<std::size_t>* residue) {
  const auto& data = train.vectors;
  if (data.empty()) throw NumericError("empty training set");
  if (beam == 0) throw ConfigError("beam width must be at least 1");
  if (max_fp_rate < 0.0 || max_fp_rate >= 1.0) throw ConfigError("max_fp_rate must be in [0,1)");

  Bits uncovered(data.size(), false);
  std::size_t remaining = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].label.value_or(false)) {
      uncovered[i] = true;
      ++remaining;
    }
  }
  if (remaining == 0) throw NumericError("covering learner needs at least one positive example");

  CoveringSearch search(data, beam, max_fp_rate);
  RuleSet result;
  result.default_class = Label::NonSummary;
  for (std::size_t seed = 0; seed < data.size() && remaining > 0; ++seed) {
    if (!uncovered[seed]) continue;
    const auto found = search.search(seed, uncovered);
    if (!found || found->tp_new == 0) {
      uncovered[seed] = false;
      --remaining;
      if (residue != nullptr) residue->push_back(seed);
      continue;
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (found->covered[i] && uncovered[i]) {
        uncovered[i] = false;
        --remaining;
      }
    }
    Rule rule;
    rule.conditions = found->conditions;
    std::sort(rule.conditions.begin(), rule.conditions.end(),
              [](const Condition& a, const Condition& b) { return a.feature < b.feature; });
    rule.label = Label::Summary;
    rule.quality = laplace_quality(found->tp, found->tp + found->fp);
    result.rules.push_back(std::move(rule));
  }
  result.sort_by_quality();
  return result;
}

}  // namespace salience
