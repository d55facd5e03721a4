#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gecscore/corpus.hpp"
#include "gecscore/gec.hpp"
#include "gecscore/similarity.hpp"

namespace gecscore::detection {

struct Verdict {
  std::string sample_id;
  double amplified_score = 0.0;
  double epsilon = 0.0;
  bool is_llm = false;
  similarity::MetricSpec metric;
  std::size_t n_preliminary = 0;
};

// One detect_batch result: a verdict, or the error that prevented one.
struct BatchEntry {
  std::string sample_id;
  std::optional<Verdict> verdict;
  std::string error;

  bool ok() const noexcept { return verdict.has_value(); }
};

// Decision for one input given raw similarities: softmax over the
// preliminary raws plus the input raw, threshold calibrated on the
// preliminary amplified scores only.
Verdict verdict_from_raw(std::span<const double> preliminary_raw, std::span<const Label> labels,
                         const std::string& input_id, double input_raw);

// Runs the full detection procedure. Preliminary similarities are computed
// once; corrections go through the corrector's cache.
class Detector {
 public:
  Detector(std::vector<TextSample> preliminary, const gec::Corrector& corrector,
           similarity::MetricSpec metric);

  Verdict detect(const TextSample& input) const;
  std::vector<BatchEntry> detect_batch(const std::vector<TextSample>& inputs) const;

  std::size_t n_preliminary() const noexcept { return raw_.size(); }
  const std::vector<double>& preliminary_raw() const noexcept { return raw_; }

 private:
  std::vector<TextSample> preliminary_;
  const gec::Corrector* corrector_;
  similarity::MetricSpec metric_;
  std::vector<double> raw_;
  std::vector<Label> labels_;
};

Verdict detect(const std::vector<TextSample>& preliminary, const TextSample& input,
               const gec::Corrector& corrector, const similarity::MetricSpec& metric);

std::vector<BatchEntry> detect_batch(const std::vector<TextSample>& preliminary,
                                     const std::vector<TextSample>& inputs,
                                     const gec::Corrector& corrector,
                                     const similarity::MetricSpec& metric);

}  // namespace gecscore::detection
