#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "gecscore/corpus.hpp"

namespace gecscore::calibration {

// Positive class is llm; a sample is predicted llm iff score > threshold.
struct RocPoint {
  double threshold = 0.0;
  double tpr = 0.0;
  double fpr = 0.0;
  double j = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
};

struct Threshold {
  double epsilon = 0.0;
  double j_at_epsilon = 0.0;
  double tpr = 0.0;
  double fpr = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
};

// Candidate thresholds are -inf, the midpoints between consecutive distinct
// scores, and +inf, in increasing order. Labels must be human or llm with at
// least one of each.
std::vector<RocPoint> roc_points(std::span<const double> scores, std::span<const Label> labels);

// Integer form of the rank statistic: half_wins = 2 * #(pos > neg) + #ties,
// pairs = n_pos * n_neg. AUROC = half_wins / (2 * pairs).
struct RankCounts {
  unsigned long long half_wins = 0;
  unsigned long long pairs = 0;
};

RankCounts rank_counts(std::span<const double> scores, std::span<const Label> labels);

// Mann-Whitney rank statistic, ties counted half.
double auroc(std::span<const double> scores, std::span<const Label> labels);

// Maximizes TPR + (1 - FPR). Ties go to the lowest FPR, then the smallest
// threshold.
Threshold select_threshold(std::span<const double> scores, std::span<const Label> labels);

Confusion confusion_at(std::span<const double> scores, std::span<const Label> labels, double threshold);

// CSV with header threshold,tpr,fpr,j.
void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& points);

}  // namespace gecscore::calibration
