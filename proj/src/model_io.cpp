#include <fstream>
#include <sstream>

#include "json.hpp"
#include "salience/error.hpp"
#include "salience/format.hpp"
#include "salience/learners.hpp"

namespace salience {

using json = nlohmann::json;

std::string model_to_json(const Model& model) {
  json root;
  if (const auto* rules = std::get_if<RuleSet>(&model)) {
    root["type"] = "rules";
    json list = json::array();
    for (const auto& rule : rules->rules) {
      json conditions = json::array();
      for (const auto& c : rule.conditions) {
        conditions.push_back({{"feature", std::string(feature_name(c.feature))},
                              {"test", std::string(to_string(c.test))},
                              {"args", c.args}});
      }
      list.push_back({{"conditions", std::move(conditions)},
                      {"class", std::string(to_string(rule.label))},
                      {"quality", rule.quality}});
    }
    root["rules"] = std::move(list);
    root["default_class"] = std::string(to_string(rules->default_class));
  } else {
    const auto& linear = std::get<LinearModel>(model);
    root["type"] = "linear";
    json means = json::object();
    json stds = json::object();
    json weights = json::object();
    for (std::size_t i = 0; i < linear.features.size(); ++i) {
      const std::string name(feature_name(linear.features[i]));
      means[name] = linear.means[i];
      stds[name] = linear.stds[i];
      weights[name] = linear.weights[i];
    }
    root["means"] = std::move(means);
    root["stds"] = std::move(stds);
    root["weights"] = std::move(weights);
    root["threshold"] = linear.threshold;
  }
  return root.dump(2) + "\n";
}

namespace {

Feature require_feature(const json& value, const std::string& where) {
  if (!value.is_string()) throw DataError(where + ": feature must be a string");
  const auto f = parse_feature(value.get<std::string>());
  if (!f) throw DataError(where + ": unknown feature \"" + value.get<std::string>() + "\"");
  return *f;
}

Condition parse_condition(const json& cj, const std::string& where) {
  if (!cj.is_object()) throw DataError(where + ": condition must be an object");
  Condition c;
  c.feature = require_feature(cj.at("feature"), where);
  const auto test = parse_test(cj.at("test").get<std::string>());
  if (!test) throw DataError(where + ": unknown test \"" + cj.at("test").get<std::string>() + "\"");
  c.test = *test;
  c.args = cj.at("args").get<std::vector<double>>();
  std::size_t expected = 1;
  if (c.test == Condition::Test::Between) expected = 2;
  if (c.test == Condition::Test::In) expected = c.args.empty() ? 1 : c.args.size();
  if (c.args.size() != expected) throw DataError(where + ": wrong number of args for test");
  const auto& info = feature_info(c.feature);
  for (const double v : c.args) {
    if (v < info.min_value || v > info.max_value) {
      throw DataError(where + ": value " + format_double(v) + " outside the range of " + std::string(info.name));
    }
  }
  if (c.test == Condition::Test::Between && c.args[0] > c.args[1]) {
    throw DataError(where + ": interval bounds are reversed");
  }
  if (c.test == Condition::Test::In) std::sort(c.args.begin(), c.args.end());
  return c;
}

Label require_label(const json& value, const std::string& where) {
  const auto label = parse_label(value.get<std::string>());
  if (!label) throw DataError(where + ": class must be \"summary\" or \"non-summary\"");
  return *label;
}

}  // namespace

Model model_from_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    const auto type = root.at("type").get<std::string>();
    if (type == "rules") {
      RuleSet rules;
      rules.default_class = require_label(root.at("default_class"), "default_class");
      const auto& list = root.at("rules");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "rules[" + std::to_string(i) + "]";
        Rule rule;
        const auto& conditions = list[i].at("conditions");
        for (std::size_t k = 0; k < conditions.size(); ++k) {
          rule.conditions.push_back(parse_condition(conditions[k], where + ".conditions[" + std::to_string(k) + "]"));
        }
        if (rule.conditions.empty()) throw DataError(where + ": a rule needs at least one condition");
        rule.label = require_label(list[i].at("class"), where);
        rule.quality = list[i].at("quality").get<double>();
        if (!(rule.quality > 0.0 && rule.quality < 1.0)) throw DataError(where + ": quality must be in (0,1)");
        rules.rules.push_back(std::move(rule));
      }
      rules.sort_by_quality();
      return rules;
    }
    if (type == "linear") {
      LinearModel model;
      const auto& weights = root.at("weights");
      for (const auto& info : feature_table()) {
        const std::string name(info.name);
        if (!weights.contains(name)) continue;
        model.features.push_back(info.id);
        model.weights.push_back(weights.at(name).get<double>());
        model.means.push_back(root.at("means").at(name).get<double>());
        const double std = root.at("stds").at(name).get<double>();
        if (!(std > 0.0)) throw DataError("linear model: std of " + name + " must be positive");
        model.stds.push_back(std);
      }
      for (const auto& [name, value] : weights.items()) {
        if (!parse_feature(name)) throw DataError("linear model: unknown feature \"" + name + "\"");
      }
      model.threshold = root.at("threshold").get<double>();
      return model;
    }
    throw DataError("model type must be \"rules\" or \"linear\"");
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write model file: " + path.string());
  out << model_to_json(model);
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("missing model file " + path.string() + " (run the train step first)");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

// ---------------------------------------------------------------------------

namespace {

std::string join_or(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += i + 1 == parts.size() ? " or " : ", ";
    out += parts[i];
  }
  return out;
}

std::vector<double> values_of(const Condition& c) {
  if (c.test == Condition::Test::Equals || c.test == Condition::Test::In) return c.args;
  return {};
}

std::string third_name(double v) {
  if (v == 1) return "first";
  if (v == 2) return "middle";
  return "last";
}

std::string special_name(double v) {
  if (v == 1) return "the introduction";
  if (v == 2) return "the conclusion";
  return "a section other than the introduction or conclusion";
}

std::string depth_name(double v) {
  if (v == 1) return "a top-level section";
  if (v == 2) return "a subsection";
  if (v == 3) return "a subsubsection";
  return "a subsubsubsection";
}

std::string quality_name(Feature f) {
  switch (f) {
    case Feature::InHighestTf: return "high tf";
    case Feature::InHighestTfIdf: return "high tf.idf";
    case Feature::InHighestG2: return "high G2";
    case Feature::InHighestTitle: return "high title-term";
    case Feature::InHighestPname: return "high proper-name";
    case Feature::InHighestSyn: return "high synonym-cohesion";
    case Feature::InHighestCooc: return "high co-occurrence-cohesion";
    default: return std::string(feature_name(f));
  }
}

std::string numeric_phrase(const Condition& c, const std::string& subject) {
  switch (c.test) {
    case Condition::Test::AtMost: return subject + " is at most " + format_double(c.args[0]);
    case Condition::Test::AtLeast: return subject + " is at least " + format_double(c.args[0]);
    case Condition::Test::Between:
      return subject + " is between " + format_double(c.args[0]) + " and " + format_double(c.args[1]);
    case Condition::Test::Equals: return subject + " is " + format_double(c.args[0]);
    case Condition::Test::In: {
      std::vector<std::string> parts;
      for (const double v : c.args) parts.push_back(format_double(v));
      return subject + " is " + join_or(parts);
    }
  }
  return subject;
}

}  // namespace

std::string describe_condition(const Condition& c) {
  const auto values = values_of(c);
  auto names = [&](auto&& namer) {
    std::vector<std::string> parts;
    for (const double v : values) parts.push_back(namer(v));
    return join_or(parts);
  };
  switch (c.feature) {
    case Feature::SentLocPara:
      if (values.empty()) return numeric_phrase(c, "the sentence's third of its paragraph");
      return "the sentence is in the " + names(third_name) + " third of its paragraph";
    case Feature::ParaLocSection:
      if (values.empty()) return numeric_phrase(c, "the paragraph's third of its section");
      return "the sentence's paragraph is in the " + names(third_name) + " third of its section";
    case Feature::SentSpecialSection:
      if (values.empty()) return numeric_phrase(c, "the section type");
      return "the sentence is in " + names(special_name);
    case Feature::DepthSentSection:
      if (values.empty()) return numeric_phrase(c, "the section depth");
      return "the sentence is in " + names(depth_name);
    case Feature::KeywordCount: return numeric_phrase(c, "the number of keywords");
    case Feature::KeywordRatio: return numeric_phrase(c, "the proportion of keywords among content words");
    default:
      break;
  }
  if (values.size() == 1) {
    return std::string(values[0] == 1 ? "it is a " : "it is not a ") + quality_name(c.feature) + " sentence";
  }
  return numeric_phrase(c, std::string(feature_name(c.feature)));
}

std::string pretty_print(const RuleSet& rules) {
  std::ostringstream out;
  for (std::size_t i = 0; i < rules.rules.size(); ++i) {
    const auto& rule = rules.rules[i];
    out << "Rule " << (i + 1) << " [quality " << format_double(std::round(rule.quality * 1000) / 1000)
        << "]: If ";
    for (std::size_t k = 0; k < rule.conditions.size(); ++k) {
      if (k > 0) out << " and ";
      out << describe_condition(rule.conditions[k]);
    }
    out << ", then it is a " << to_string(rule.label) << " sentence.\n";
  }
  out << "Otherwise it is a " << to_string(rules.default_class) << " sentence.\n";
  return out.str();
}

std::string pretty_print(const LinearModel& model) {
  std::ostringstream out;
  out << "Summary sentence iff sum of weight * (value - mean) / std >= "
      << format_double(model.threshold) << "\n";
  for (std::size_t i = 0; i < model.features.size(); ++i) {
    out << "  " << feature_name(model.features[i]) << ": weight " << format_double(model.weights[i])
        << ", mean " << format_double(model.means[i]) << ", std " << format_double(model.stds[i]) << '\n';
  }
  return out.str();
}

}  // namespace salience
