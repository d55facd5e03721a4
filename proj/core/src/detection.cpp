#include "gecscore/detection.hpp"

#include <unordered_set>

#include "gecscore/calibration.hpp"
#include "gecscore/errors.hpp"
#include "gecscore/scoring.hpp"

namespace gecscore::detection {

namespace {

void check_preliminary(std::span<const Label> labels) {
  bool human = false;
  bool llm = false;
  for (Label l : labels) {
    if (l == Label::unknown) throw CalibrationError("cannot calibrate: preliminary sample without a label");
    human = human || l == Label::human;
    llm = llm || l == Label::llm;
  }
  if (!human || !llm)
    throw CalibrationError("cannot calibrate: preliminary set needs at least one human and one llm sample");
}

}  // namespace

Verdict verdict_from_raw(std::span<const double> preliminary_raw, std::span<const Label> labels,
                         const std::string& input_id, double input_raw) {
  if (preliminary_raw.size() != labels.size())
    throw InvalidArgument("preliminary scores and labels differ in length");
  check_preliminary(labels);

  std::vector<double> pool(preliminary_raw.begin(), preliminary_raw.end());
  pool.push_back(input_raw);
  const auto amplified = scoring::softmax(pool);
  const std::span<const double> prelim(amplified.data(), preliminary_raw.size());
  const auto threshold = calibration::select_threshold(prelim, labels);

  Verdict v;
  v.sample_id = input_id;
  v.amplified_score = amplified.back();
  v.epsilon = threshold.epsilon;
  v.is_llm = v.amplified_score > v.epsilon;
  v.n_preliminary = preliminary_raw.size();
  return v;
}

Detector::Detector(std::vector<TextSample> preliminary, const gec::Corrector& corrector,
                   similarity::MetricSpec metric)
    : preliminary_(std::move(preliminary)), corrector_(&corrector), metric_(std::move(metric)) {
  metric_.validate();
  labels_.reserve(preliminary_.size());
  std::unordered_set<std::string> seen;
  for (const auto& s : preliminary_) {
    if (!seen.insert(s.id).second) throw InvalidArgument("duplicate preliminary id '" + s.id + "'");
    labels_.push_back(s.label);
  }
  check_preliminary(labels_);
  const auto scored = scoring::raw_scores(preliminary_, *corrector_, metric_);
  raw_.reserve(scored.size());
  for (const auto& entry : scored) raw_.push_back(entry.second);
}

Verdict Detector::detect(const TextSample& input) const {
  const auto scored = scoring::raw_scores({input}, *corrector_, metric_);
  Verdict v = verdict_from_raw(raw_, labels_, input.id, scored.front().second);
  v.metric = metric_;
  return v;
}

std::vector<BatchEntry> Detector::detect_batch(const std::vector<TextSample>& inputs) const {
  std::vector<BatchEntry> out(inputs.size());
  if (inputs.empty()) return out;

  // One pass over all inputs; the corrector deduplicates repeated texts. If
  // anything fails, redo per input so one bad input cannot sink the others.
  std::vector<double> raw;
  try {
    const auto scored = scoring::raw_scores(inputs, *corrector_, metric_);
    for (const auto& entry : scored) raw.push_back(entry.second);
  } catch (const Error&) {
    raw.clear();
  }

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    out[i].sample_id = inputs[i].id;
    try {
      if (raw.empty()) {
        out[i].verdict = detect(inputs[i]);
      } else {
        Verdict v = verdict_from_raw(raw_, labels_, inputs[i].id, raw[i]);
        v.metric = metric_;
        out[i].verdict = std::move(v);
      }
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  }
  return out;
}

Verdict detect(const std::vector<TextSample>& preliminary, const TextSample& input,
               const gec::Corrector& corrector, const similarity::MetricSpec& metric) {
  return Detector(preliminary, corrector, metric).detect(input);
}

std::vector<BatchEntry> detect_batch(const std::vector<TextSample>& preliminary,
                                     const std::vector<TextSample>& inputs, const gec::Corrector& corrector,
                                     const similarity::MetricSpec& metric) {
  return Detector(preliminary, corrector, metric).detect_batch(inputs);
}

}  // namespace gecscore::detection
