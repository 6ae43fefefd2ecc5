#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "salience/commands.hpp"
#include "salience/error.hpp"
#include "salience/summarizer.hpp"

namespace py = pybind11;
using namespace salience;

namespace {

py::dict metrics_dict(const Metrics& m) {
  py::dict d;
  d["accuracy"] = m.accuracy;
  d["precision"] = m.precision;
  d["recall"] = m.recall;
  d["f_score"] = m.f_score;
  return d;
}

// Python keyword names follow the CLI option names with dashes as underscores.
#define RW_NESTED(name, member, field)                                                      \
  def_property(                                                                            \
      name, [](const RunConfig& c) { return c.member.field; },                             \
      [](RunConfig& c, decltype(RunConfig{}.member.field) v) { c.member.field = v; })

}  // namespace

PYBIND11_MODULE(_salience, m) {
  m.doc() = "Trainable extractive summarizer";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<RunConfig>(m, "Config")
      .def(py::init<>())
      .def_readwrite("corpus", &RunConfig::corpus_dir)
      .def_readwrite("stoplist", &RunConfig::stoplist_path)
      .def_readwrite("synonyms", &RunConfig::synonyms_path)
      .def_readwrite("compression", &RunConfig::compression)
      .def_property(
          "learner", [](const RunConfig& c) { return std::string(to_string(c.learner)); },
          [](RunConfig& c, const std::string& s) {
            const auto k = parse_learner(s);
            if (!k) throw ConfigError("unknown learner \"" + s + "\" (linear, tree or covering)");
            c.learner = *k;
          })
      .def_property(
          "mode", [](const RunConfig& c) { return std::string(to_string(c.mode)); },
          [](RunConfig& c, const std::string& s) {
            const auto mode = parse_mode(s);
            if (!mode) throw ConfigError("unknown mode \"" + s + "\" (generic or user)");
            c.mode = *mode;
          })
      .def_readwrite("interest", &RunConfig::interest_file)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("neg_ratio", &RunConfig::neg_ratio)
      .def_readwrite("folds", &RunConfig::folds)
      .def_readwrite("balance_test", &RunConfig::balance_test)
      .RW_NESTED("cooc_window", cooc, window)
      .RW_NESTED("cooc_min_count", cooc, min_count)
      .RW_NESTED("cooc_min_score", cooc, min_score)
      .RW_NESTED("decay", activation, decay)
      .RW_NESTED("iterations", activation, iterations)
      .RW_NESTED("topic_sigma", topic, threshold_sigma)
      .RW_NESTED("topic_top_k", topic, top_k_per_doc)
      .RW_NESTED("ridge", learner_params, ridge)
      .RW_NESTED("min_leaf", learner_params, min_leaf)
      .RW_NESTED("cf", learner_params, cf)
      .RW_NESTED("beam", learner_params, beam)
      .RW_NESTED("max_fp_rate", learner_params, max_fp_rate)
      .def_readwrite("output_dir", &RunConfig::output_dir)
      .def("validate", &RunConfig::validate);

  m.def("ingest", &cmd_ingest, py::arg("config"), "Store the corpus; returns the document count");
  m.def("stats", &cmd_stats, py::arg("config"));
  m.def(
      "topic",
      [](const RunConfig& c) {
        const auto t = cmd_topic(c);
        return std::map<std::string, double>(t.words.begin(), t.words.end());
      },
      py::arg("config"), "Build the topic; returns word -> score");
  m.def(
      "label",
      [](const RunConfig& c) {
        const auto set = cmd_label(c);
        py::dict d;
        d["raw"] = set.n_raw;
        d["unique"] = set.n_unique;
        d["positive"] = set.n_positive;
        d["negative"] = set.n_negative_sampled;
        d["conflicting"] = set.n_conflicting;
        d["training"] = set.vectors.size();
        return d;
      },
      py::arg("config"));
  m.def(
      "train",
      [](const RunConfig& c, std::optional<std::filesystem::path> model) {
        const auto trained = cmd_train(c, model);
        py::dict d;
        d["json"] = model_to_json(trained);
        d["rules"] = std::visit([](const auto& x) { return pretty_print(x); }, trained);
        return d;
      },
      py::arg("config"), py::arg("model") = py::none(), "Train; returns the model JSON and its rendering");
  m.def(
      "evaluate",
      [](const RunConfig& c, bool curve) {
        const auto report = cmd_evaluate(c, curve);
        py::dict d;
        d["mean"] = metrics_dict(report.mean);
        d["stddev"] = metrics_dict(report.stddev);
        d["folds_disjoint"] = report.integrity.folds_disjoint;
        d["folds_cover_corpus"] = report.integrity.folds_cover_corpus;
        d["no_leakage"] = report.integrity.no_leakage;
        d["json"] = report_to_json(report);
        return d;
      },
      py::arg("config"), py::arg("learning_curve") = false);
  m.def(
      "sweep",
      [](const RunConfig& c, const std::vector<double>& compressions) {
        const auto sweep = cmd_sweep(c, compressions);
        py::dict d;
        py::list means;
        for (const auto& r : sweep.reports) means.append(metrics_dict(r.mean));
        d["mean"] = means;
        d["f_range"] = sweep.f_range;
        d["adjacent_overlap"] = sweep.adjacent_overlap;
        return d;
      },
      py::arg("config"), py::arg("compressions") = std::vector<double>{0.05, 0.10, 0.20, 0.30});
  m.def(
      "summarize",
      [](const RunConfig& c, const std::vector<std::filesystem::path>& inputs, const std::string& format,
         std::optional<std::filesystem::path> model) {
        if (format != "text" && format != "json") throw ConfigError("format must be text or json");
        return cmd_summarize(c, inputs, format == "json" ? SummaryFormat::Json : SummaryFormat::Text, model);
      },
      py::arg("config"), py::arg("inputs") = std::vector<std::filesystem::path>{}, py::arg("format") = "text",
      py::arg("model") = py::none(), "Write summaries; returns their paths");
  m.def(
      "synth",
      [](const std::string& profile, const std::filesystem::path& dir, std::size_t n_docs, std::uint64_t seed,
         std::size_t interest_docs) {
        const auto p = parse_synth_profile(profile);
        if (!p) throw ConfigError("unknown profile \"" + profile + "\"");
        SynthParams params;
        params.profile = *p;
        params.n_docs = n_docs;
        params.seed = seed;
        params.n_interest = interest_docs;
        const auto check = cmd_synth(params, dir);
        py::dict d;
        d["planted_fraction"] = check.planted_fraction;
        d["keyword_fraction"] = check.keyword_fraction;
        return d;
      },
      py::arg("profile"), py::arg("dir"), py::arg("n_docs") = 50, py::arg("seed") = 0, py::arg("interest_docs") = 10);

  m.def("top_count", &top_count, py::arg("compression"), py::arg("n"));
  m.def(
      "filter1", [](const std::vector<double>& scores, double c) { return filter1(scores, c); }, py::arg("scores"),
      py::arg("compression"));
  m.def(
      "metrics",
      [](std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
        return metrics_dict(metrics(Confusion{tp, fp, fn, tn}));
      },
      py::arg("tp"), py::arg("fp"), py::arg("fn"), py::arg("tn"));
  m.def("g2", &g2_statistic, py::arg("term_in_doc"), py::arg("doc_total"), py::arg("term_in_corpus"),
        py::arg("corpus_total"));
  m.def("mutual_information", &mutual_information, py::arg("n"), py::arg("pair_count"), py::arg("tf_a"),
        py::arg("tf_b"));
  m.def("idf", &idf_factor, py::arg("n_docs"), py::arg("df"));
  m.def("set_warnings_enabled", &set_warnings_enabled, py::arg("enabled"));
}
