#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gecscore/corpus.hpp"
#include "gecscore/gec.hpp"
#include "gecscore/similarity.hpp"

namespace gecscore::scoring {

// Raw oriented similarities and their softmax over one sample set.
struct ScoreSet {
  std::vector<std::string> sample_ids;
  std::vector<double> raw;
  std::vector<double> amplified;
  similarity::MetricSpec metric;

  std::size_t size() const noexcept { return sample_ids.size(); }
  // Index of a sample id, or size() when absent.
  std::size_t index_of(const std::string& id) const noexcept;
};

// Numerically stable softmax: exp(s_i - max s) / sum_j exp(s_j - max s).
std::vector<double> softmax(std::span<const double> raw);

// Oriented Sim(x, g(x)) per sample, order-aligned with the input.
std::vector<std::pair<std::string, double>> raw_scores(const std::vector<TextSample>& samples,
                                                       const gec::Corrector& corrector,
                                                       const similarity::MetricSpec& metric);

// Oriented similarities for already-corrected pairs; used when the caller holds
// the corrections. `ids` only labels errors.
std::vector<double> similarities(const std::vector<std::string>& ids,
                                 const std::vector<std::string>& originals,
                                 const std::vector<std::string>& corrected,
                                 const similarity::MetricSpec& metric);

// Builds a ScoreSet from precomputed raw values.
ScoreSet from_raw(std::vector<std::string> ids, std::vector<double> raw, similarity::MetricSpec metric);

ScoreSet gecscore_set(const std::vector<TextSample>& samples, const gec::Corrector& corrector,
                      const similarity::MetricSpec& metric);

struct Appended {
  ScoreSet set;
  double new_amplified = 0.0;
};

// Adds one sample and recomputes the softmax over n + 1 values. Existing raw
// values are reused, so only the new sample is corrected.
Appended score_new_sample(const ScoreSet& existing, const TextSample& new_sample,
                          const gec::Corrector& corrector);

// Same, for a caller that already knows the new sample's raw similarity.
Appended append_raw(const ScoreSet& existing, const std::string& id, double raw);

// Drops a sample and recomputes the softmax over the rest.
ScoreSet remove_sample(const ScoreSet& existing, const std::string& id);

}  // namespace gecscore::scoring
