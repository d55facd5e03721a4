#include "gecscore/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gecscore/attacks.hpp"
#include "gecscore/calibration.hpp"
#include "gecscore/corpus.hpp"
#include "gecscore/detection.hpp"
#include "gecscore/errors.hpp"
#include "gecscore/gec.hpp"
#include "gecscore/harness.hpp"
#include "gecscore/report_json.hpp"
#include "gecscore/similarity.hpp"
#include "json.hpp"

namespace gecscore::cli {

namespace {

namespace fs = std::filesystem;

struct Shared {
  std::string gec = "rules";
  std::string endpoint;
  std::string metric = "chrf";
  std::uint64_t seed = 0;
  std::string out;
  bool lowercase = true;
};

void add_shared(CLI::App* cmd, Shared& s) {
  cmd->add_option("--gec", s.gec, "Correction backend")
      ->check(CLI::IsMember({"identity", "rules", "http"}))
      ->capture_default_str();
  cmd->add_option("--gec-endpoint", s.endpoint, "Service URL (default: $GECSCORE_SERVICE_URL)");
  cmd->add_option("--metric", s.metric, "Similarity metric")->capture_default_str();
  cmd->add_option("--seed", s.seed, "Seed for every random choice")->capture_default_str();
  cmd->add_option("--out", s.out, "Write the main output here instead of stdout");
  cmd->add_option("--lowercase", s.lowercase, "Lowercase before comparing")->capture_default_str();
}

std::string endpoint_of(const Shared& s) {
  if (!s.endpoint.empty()) return s.endpoint;
  if (const char* env = std::getenv("GECSCORE_SERVICE_URL")) return env;
  return {};
}

similarity::MetricSpec metric_of(const Shared& s, const std::string& name) {
  auto spec = similarity::MetricSpec::parse(name);
  spec.lowercase = s.lowercase;
  if (spec.kind == similarity::MetricKind::external) {
    spec.endpoint = endpoint_of(s);
    if (spec.endpoint.empty()) throw InvalidArgument("metric '" + name + "' needs --gec-endpoint");
  }
  return spec;
}

gec::Corrector corrector_of(const Shared& s) {
  gec::GecBackendConfig config;
  config.kind = gec::parse_backend(s.gec);
  if (config.kind == gec::BackendKind::http) {
    const auto ep = endpoint_of(s);
    if (ep.empty()) throw InvalidArgument("--gec http needs --gec-endpoint or GECSCORE_SERVICE_URL");
    config.endpoint = ep;
  }
  return gec::Corrector(config);
}

// Writes to --out when given, else to the command's stdout.
void emit(const Shared& s, std::ostream& out, const std::string& text) {
  if (s.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(s.out, std::ios::binary);
  if (!file) throw Error("cannot write '" + s.out + "'");
  file << text;
  if (!file) throw Error("write to '" + s.out + "' failed");
}

void write_csv(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) return;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  fn(file);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_jsonl(const std::string& path) { return fs::path(path).extension() == ".jsonl"; }

// A .jsonl file is a corpus of inputs; anything else is one text whose id is
// the file stem.
std::vector<TextSample> read_inputs(const std::string& path) {
  if (is_jsonl(path)) return corpus::load_corpus(path, false);
  return {TextSample::make(fs::path(path).stem().string(), read_file(path))};
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Machine-generated text detection by grammar-error-correction similarity", "gecscore"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gecscore 0.1.0");

  Shared s;
  std::string prelim_path;
  std::string input_path;
  std::string corpus_path;
  std::string roc_path;
  std::string hist_path;
  std::string attack_name = "chars";
  double rate = 0.05;
  std::vector<std::string> op_names;
  std::size_t min_token_len = 3;
  std::vector<std::string> ablation_metrics;
  std::vector<std::size_t> windows{3};
  std::size_t bin_width = 30;
  std::size_t per_bin_cap = 500;

  auto* detect = app.add_subcommand("detect", "Classify texts against a labeled preliminary set");
  add_shared(detect, s);
  detect->add_option("--prelim", prelim_path, "Labeled preliminary corpus (JSONL)")->required();
  detect->add_option("--input", input_path, "Text file, or JSONL corpus of inputs")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Score a labeled corpus and report AUROC/F1");
  add_shared(evaluate, s);
  evaluate->add_option("--corpus", corpus_path, "Labeled corpus (JSONL)")->required();
  evaluate->add_option("--roc", roc_path, "ROC curve CSV");
  evaluate->add_option("--hist", hist_path, "Score histogram CSV");

  auto* calibrate = app.add_subcommand("calibrate", "Select the decision threshold on a labeled corpus");
  add_shared(calibrate, s);
  calibrate->add_option("--corpus", corpus_path, "Labeled corpus (JSONL)")->required();
  calibrate->add_option("--roc", roc_path, "ROC curve CSV");

  auto* stats = app.add_subcommand("stats", "Per-class mean and variance of amplified scores");
  add_shared(stats, s);
  stats->add_option("--corpus", corpus_path, "Labeled corpus (JSONL)")->required();
  stats->add_option("--hist", hist_path, "Score histogram CSV");

  auto* attack = app.add_subcommand("attack", "Evaluate before and after attacking the llm texts");
  add_shared(attack, s);
  attack->add_option("--corpus", corpus_path, "Labeled corpus (JSONL)")->required();
  attack->add_option("--attack", attack_name, "none, chars or paraphrase")
      ->check(CLI::IsMember({"none", "chars", "paraphrase"}))
      ->capture_default_str();
  attack->add_option("--rate", rate, "Fraction of eligible tokens perturbed")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  attack->add_option("--ops", op_names, "Character ops (default: all)");
  attack->add_option("--min-token-len", min_token_len, "Shortest perturbable token")->capture_default_str();

  auto* ablate = app.add_subcommand("ablate-length", "AUROC per metric and length bin");
  add_shared(ablate, s);
  ablate->add_option("--corpus", corpus_path, "Labeled corpus (JSONL)")->required();
  ablate->add_option("--metrics", ablation_metrics, "Metrics to compare (default: --metric)");
  ablate->add_option("--window", windows, "Sentences per window; repeatable")->capture_default_str();
  ablate->add_option("--bin-width", bin_width, "Words per length bin")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ablate->add_option("--per-bin-cap", per_bin_cap, "Samples per class and bin")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* correct = app.add_subcommand("correct", "Print the corrector's output");
  add_shared(correct, s);
  correct->add_option("--input", input_path, "Text file, or JSONL corpus")->required();

  auto* metrics = app.add_subcommand("metrics", "List the similarity metrics");
  add_shared(metrics, s);

  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    if (!args.empty()) args.pop_back();  // program name
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*metrics) {
      std::ostringstream ss;
      for (const auto& name : similarity::metric_names()) {
        const auto spec = similarity::MetricSpec::parse(name);
        ss << name << '\t'
           << (spec.direction() == similarity::Direction::higher_is_similar ? "higher_is_similar"
                                                                            : "lower_is_similar")
           << (spec.kind == similarity::MetricKind::external ? "\tservice" : "") << '\n';
      }
      emit(s, out, ss.str());
      return 0;
    }

    const auto corrector = corrector_of(s);

    if (*correct) {
      const auto inputs = read_inputs(input_path);
      std::vector<std::string> texts;
      for (const auto& in : inputs) texts.push_back(in.text);
      const auto corrected = corrector.correct(texts);
      std::ostringstream ss;
      if (is_jsonl(input_path)) {
        for (std::size_t i = 0; i < inputs.size(); ++i) {
          nlohmann::ordered_json j;
          j["id"] = inputs[i].id;
          j["text"] = inputs[i].text;
          j["corrected"] = corrected[i];
          ss << j.dump() << '\n';
        }
      } else {
        ss << corrected.front();
      }
      emit(s, out, ss.str());
      return 0;
    }

    const auto metric = metric_of(s, s.metric);

    if (*detect) {
      const auto prelim = corpus::load_corpus(prelim_path, true);
      const auto inputs = read_inputs(input_path);
      const detection::Detector detector(prelim, corrector, metric);
      const auto entries = detector.detect_batch(inputs);
      std::ostringstream ss;
      bool failed = false;
      for (const auto& e : entries) {
        ss << report::to_json(e) << '\n';
        if (!e.ok()) {
          failed = true;
          err << "error: " << e.error << '\n';
        }
      }
      emit(s, out, ss.str());
      return failed ? 2 : 0;
    }

    if (*ablate) {
      const auto data = corpus::load_corpus(corpus_path, true);
      harness::AblationConfig config;
      if (ablation_metrics.empty()) ablation_metrics.push_back(s.metric);
      for (const auto& name : ablation_metrics) config.metrics.push_back(metric_of(s, name));
      config.window_sizes = windows;
      config.bin_width = bin_width;
      config.per_bin_cap = per_bin_cap;
      config.seed = s.seed;
      emit(s, out, report::to_json(harness::ablate_length(data, corrector, config)) + "\n");
      return 0;
    }

    const auto data = corpus::load_corpus(corpus_path, true);

    if (*attack) {
      attacks::AttackParams params;
      params.kind = attacks::parse_attack(attack_name);
      params.chars.rate = rate;
      params.chars.seed = s.seed;
      params.chars.min_token_len = min_token_len;
      if (!op_names.empty()) {
        params.chars.ops.clear();
        for (const auto& name : op_names) params.chars.ops.push_back(attacks::parse_char_op(name));
      }
      if (params.kind == attacks::AttackKind::paraphrase) {
        params.paraphrase_endpoint = endpoint_of(s);
        if (params.paraphrase_endpoint.empty())
          throw InvalidArgument("--attack paraphrase needs --gec-endpoint or GECSCORE_SERVICE_URL");
      }
      emit(s, out, report::to_json(attacks::robustness_eval(data, params, corrector, metric)) + "\n");
      return 0;
    }

    const auto report = harness::evaluate(data, corrector, metric);
    write_csv(roc_path, [&](std::ostream& os) {
      calibration::write_roc_csv(os, calibration::roc_points(report.scores.amplified, report.labels));
    });
    write_csv(hist_path, [&](std::ostream& os) { harness::write_histogram_csv(os, report.scores, report.labels); });

    if (*evaluate) {
      emit(s, out, report::to_json(report) + "\n");
    } else if (*calibrate) {
      emit(s, out, report::to_json(report.threshold, metric) + "\n");
    } else {
      emit(s, out, report::to_json(report.class_stats) + "\n");
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace gecscore::cli
