#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gecscore/calibration.hpp"
#include "gecscore/corpus.hpp"
#include "gecscore/gec.hpp"
#include "gecscore/scoring.hpp"
#include "gecscore/similarity.hpp"

namespace gecscore::harness {

struct ClassStats {
  double mean_human = 0.0;
  double var_human = 0.0;
  double mean_llm = 0.0;
  double var_llm = 0.0;
  std::optional<double> ratio;  // mean_llm / mean_human, when mean_human > 0
};

struct EvalReport {
  double auroc = 0.0;
  double f1 = 0.0;
  double recall = 0.0;
  double precision = 0.0;
  calibration::Confusion confusion;
  calibration::Threshold threshold;
  similarity::MetricSpec metric;
  std::size_t n_human = 0;
  std::size_t n_llm = 0;
  ClassStats class_stats;
  scoring::ScoreSet scores;
  std::vector<Label> labels;
};

// Population mean and variance of the amplified scores per class.
ClassStats class_statistics(const scoring::ScoreSet& set, const std::vector<Label>& labels);

// Report for an already scored set: threshold on the amplified scores,
// confusion at that threshold, AUROC, precision/recall/F1.
EvalReport report_from_scores(scoring::ScoreSet set, std::vector<Label> labels);

// Full pipeline over a labeled corpus; the softmax pool is the whole corpus.
EvalReport evaluate(const std::vector<TextSample>& corpus, const gec::Corrector& corrector,
                    const similarity::MetricSpec& metric);

struct AblationConfig {
  std::vector<similarity::MetricSpec> metrics;
  std::vector<std::size_t> window_sizes{3};  // sentences per window
  std::size_t bin_width = 30;
  std::size_t per_bin_cap = 500;             // per class
  std::uint64_t seed = 0;
};

struct AblationRow {
  std::string metric;
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::size_t n_human = 0;
  std::size_t n_llm = 0;
  std::optional<double> auroc;  // empty on a warning row
  std::string warning;
};

// Expands every sample into sentence windows, bins them by word count,
// draws a balanced seeded sample per bin and evaluates each metric per bin.
std::vector<AblationRow> ablate_length(const std::vector<TextSample>& corpus,
                                       const gec::Corrector& corrector, const AblationConfig& config);

// Window expansion used by ablate_length; ids are "<id>#n<k>.<start>".
std::vector<TextSample> expand_windows(const std::vector<TextSample>& corpus,
                                       const std::vector<std::size_t>& window_sizes);

// CSV with header score,label (amplified scores).
void write_histogram_csv(std::ostream& out, const scoring::ScoreSet& set, const std::vector<Label>& labels);

}  // namespace gecscore::harness
