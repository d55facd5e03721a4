#include "gecscore/harness.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <random>

#include "gecscore/errors.hpp"

namespace gecscore::harness {

namespace {

void require_both_classes(const std::vector<Label>& labels) {
  std::size_t human = 0;
  std::size_t llm = 0;
  for (Label l : labels) {
    if (l == Label::unknown) throw CalibrationError("evaluation needs labeled samples");
    (l == Label::human ? human : llm) += 1;
  }
  if (human == 0 || llm == 0) throw CalibrationError("evaluation needs at least one human and one llm sample");
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments moments(const std::vector<double>& values) {
  long double sum = 0.0L;
  for (double v : values) sum += v;
  const long double mean = sum / static_cast<long double>(values.size());
  long double sq = 0.0L;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {static_cast<double>(mean), static_cast<double>(sq / static_cast<long double>(values.size()))};
}

}  // namespace

ClassStats class_statistics(const scoring::ScoreSet& set, const std::vector<Label>& labels) {
  if (set.amplified.size() != labels.size()) throw InvalidArgument("scores and labels differ in length");
  require_both_classes(labels);
  std::vector<double> human;
  std::vector<double> llm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] == Label::human ? human : llm).push_back(set.amplified[i]);
  }
  const Moments h = moments(human);
  const Moments l = moments(llm);
  ClassStats stats{h.mean, h.var, l.mean, l.var, std::nullopt};
  if (h.mean > 0.0) stats.ratio = l.mean / h.mean;
  return stats;
}

EvalReport report_from_scores(scoring::ScoreSet set, std::vector<Label> labels) {
  if (set.amplified.size() != labels.size()) throw InvalidArgument("scores and labels differ in length");
  require_both_classes(labels);
  EvalReport r;
  r.threshold = calibration::select_threshold(set.amplified, labels);
  r.confusion = calibration::confusion_at(set.amplified, labels, r.threshold.epsilon);
  r.auroc = calibration::auroc(set.amplified, labels);
  const auto& c = r.confusion;
  r.recall = c.tp + c.fn == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  r.precision = c.tp + c.fp == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  r.f1 = r.precision + r.recall == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  r.n_human = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), Label::human));
  r.n_llm = labels.size() - r.n_human;
  r.class_stats = class_statistics(set, labels);
  r.metric = set.metric;
  r.scores = std::move(set);
  r.labels = std::move(labels);
  return r;
}

EvalReport evaluate(const std::vector<TextSample>& corpus, const gec::Corrector& corrector,
                    const similarity::MetricSpec& metric) {
  std::vector<Label> labels;
  labels.reserve(corpus.size());
  for (const auto& s : corpus) labels.push_back(s.label);
  require_both_classes(labels);
  return report_from_scores(scoring::gecscore_set(corpus, corrector, metric), std::move(labels));
}

std::vector<TextSample> expand_windows(const std::vector<TextSample>& corpus,
                                       const std::vector<std::size_t>& window_sizes) {
  std::vector<TextSample> out;
  for (const auto& sample : corpus) {
    const auto sentences = corpus::segment_sentences(sample.text);
    for (std::size_t k : window_sizes) {
      const auto windows = corpus::sliding_windows(sentences, k);
      for (std::size_t start = 0; start < windows.size(); ++start) {
        auto w = TextSample::make(sample.id + "#n" + std::to_string(k) + "." + std::to_string(start), windows[start],
                                  sample.label);
        w.source_model = sample.source_model;
        w.domain = sample.domain;
        out.push_back(std::move(w));
      }
    }
  }
  return out;
}

std::vector<AblationRow> ablate_length(const std::vector<TextSample>& corpus, const gec::Corrector& corrector,
                                       const AblationConfig& config) {
  if (config.metrics.empty()) throw InvalidArgument("ablation needs at least one metric");
  if (config.window_sizes.empty()) throw InvalidArgument("ablation needs at least one window size");
  if (config.per_bin_cap == 0) throw InvalidArgument("per_bin_cap must be positive");
  for (const auto& m : config.metrics) m.validate();

  const auto windows = expand_windows(corpus, config.window_sizes);
  const auto bins = corpus::bin_by_length(windows, config.bin_width);

  std::vector<AblationRow> rows;
  for (const auto& bin : bins) {
    std::vector<const TextSample*> human;
    std::vector<const TextSample*> llm;
    for (const auto& s : bin.samples) {
      if (s.label == Label::human) human.push_back(&s);
      if (s.label == Label::llm) llm.push_back(&s);
    }

    if (human.empty() || llm.empty()) {
      for (const auto& m : config.metrics) {
        AblationRow row;
        row.metric = m.name();
        row.lower = bin.lower;
        row.upper = bin.upper;
        row.n_human = human.size();
        row.n_llm = llm.size();
        row.warning = "bin has only one class";
        rows.push_back(std::move(row));
      }
      continue;
    }

    const std::size_t take = std::min({human.size(), llm.size(), config.per_bin_cap});
    std::mt19937_64 rng(config.seed ^ (0x9E3779B97F4A7C15ULL * (bin.lower + 1)));
    std::shuffle(human.begin(), human.end(), rng);
    std::shuffle(llm.begin(), llm.end(), rng);
    human.resize(take);
    llm.resize(take);

    std::vector<TextSample> chosen;
    chosen.reserve(2 * take);
    for (const auto* s : human) chosen.push_back(*s);
    for (const auto* s : llm) chosen.push_back(*s);
    std::vector<std::string> ids;
    std::vector<std::string> texts;
    std::vector<Label> labels;
    for (const auto& s : chosen) {
      ids.push_back(s.id);
      texts.push_back(s.text);
      labels.push_back(s.label);
    }
    const auto corrected = corrector.correct(texts);

    for (const auto& m : config.metrics) {
      const auto raw = scoring::similarities(ids, texts, corrected, m);
      const auto amplified = scoring::softmax(raw);
      AblationRow row;
      row.metric = m.name();
      row.lower = bin.lower;
      row.upper = bin.upper;
      row.n_human = take;
      row.n_llm = take;
      row.auroc = calibration::auroc(amplified, labels);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_histogram_csv(std::ostream& out, const scoring::ScoreSet& set, const std::vector<Label>& labels) {
  if (set.amplified.size() != labels.size()) throw InvalidArgument("scores and labels differ in length");
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "score,label\n" << std::setprecision(17);
  for (std::size_t i = 0; i < labels.size(); ++i) out << set.amplified[i] << ',' << to_string(labels[i]) << '\n';
  out.flags(flags);
  out.precision(precision);
}

}  // namespace gecscore::harness
