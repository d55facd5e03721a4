#include "gecscore/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "gecscore/errors.hpp"

namespace gecscore::calibration {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Split {
  std::vector<double> pos;
  std::vector<double> neg;
};

Split split_sorted(std::span<const double> scores, std::span<const Label> labels) {
  if (scores.size() != labels.size())
    throw CalibrationError("scores and labels differ in length (" + std::to_string(scores.size()) + " vs " +
                           std::to_string(labels.size()) + ")");
  Split s;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (std::isnan(scores[i])) throw CalibrationError("score " + std::to_string(i) + " is NaN");
    switch (labels[i]) {
      case Label::llm: s.pos.push_back(scores[i]); break;
      case Label::human: s.neg.push_back(scores[i]); break;
      case Label::unknown: throw CalibrationError("calibration needs labeled samples");
    }
  }
  if (s.pos.empty() || s.neg.empty())
    throw CalibrationError("calibration needs at least one human and one llm sample");
  std::sort(s.pos.begin(), s.pos.end());
  std::sort(s.neg.begin(), s.neg.end());
  return s;
}

std::size_t count_above(const std::vector<double>& sorted, double t) {
  return static_cast<std::size_t>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t));
}

// Strictly between a and b when a < b are adjacent doubles' neighbors allow
// it; otherwise a, which still separates a from b under the strict rule.
double midpoint(double a, double b) {
  const double mid = a / 2.0 + b / 2.0;
  return (mid > a && mid < b) ? mid : a;
}

}  // namespace

std::vector<RocPoint> roc_points(std::span<const double> scores, std::span<const Label> labels) {
  const Split s = split_sorted(scores, labels);
  std::vector<double> distinct(scores.begin(), scores.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<double> candidates;
  candidates.reserve(distinct.size() + 1);
  candidates.push_back(-kInf);
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) candidates.push_back(midpoint(distinct[i], distinct[i + 1]));
  candidates.push_back(kInf);

  const auto np = static_cast<double>(s.pos.size());
  const auto nn = static_cast<double>(s.neg.size());
  std::vector<RocPoint> points;
  points.reserve(candidates.size());
  for (double t : candidates) {
    RocPoint p;
    p.threshold = t;
    p.tp = count_above(s.pos, t);
    p.fp = count_above(s.neg, t);
    p.tpr = static_cast<double>(p.tp) / np;
    p.fpr = static_cast<double>(p.fp) / nn;
    p.j = p.tpr - p.fpr;
    points.push_back(p);
  }
  return points;
}

RankCounts rank_counts(std::span<const double> scores, std::span<const Label> labels) {
  const Split s = split_sorted(scores, labels);
  RankCounts c;
  c.pairs = static_cast<unsigned long long>(s.pos.size()) * s.neg.size();
  // For each positive: negatives strictly below count 2, equal count 1.
  for (double p : s.pos) {
    const auto lo = std::lower_bound(s.neg.begin(), s.neg.end(), p);
    const auto hi = std::upper_bound(lo, s.neg.end(), p);
    c.half_wins += 2ULL * static_cast<unsigned long long>(lo - s.neg.begin()) +
                   static_cast<unsigned long long>(hi - lo);
  }
  return c;
}

double auroc(std::span<const double> scores, std::span<const Label> labels) {
  const RankCounts c = rank_counts(scores, labels);
  return static_cast<double>(c.half_wins) / (2.0 * static_cast<double>(c.pairs));
}

Threshold select_threshold(std::span<const double> scores, std::span<const Label> labels) {
  const auto points = roc_points(scores, labels);
  std::size_t np = 0;
  for (Label l : labels) np += l == Label::llm ? 1 : 0;
  const std::size_t nn = labels.size() - np;

  // J scaled by n_pos * n_neg, compared exactly in integers.
  auto scaled_j = [&](const RocPoint& p) {
    return static_cast<long long>(p.tp) * static_cast<long long>(nn) -
           static_cast<long long>(p.fp) * static_cast<long long>(np);
  };
  const RocPoint* best = &points.front();
  for (const auto& p : points) {
    const auto j = scaled_j(p);
    const auto bj = scaled_j(*best);
    if (j > bj || (j == bj && p.fp < best->fp)) best = &p;
  }

  const Confusion c = confusion_at(scores, labels, best->threshold);
  Threshold t;
  t.epsilon = best->threshold;
  t.n_pos = np;
  t.n_neg = nn;
  t.tp = c.tp;
  t.fp = c.fp;
  t.tpr = static_cast<double>(c.tp) / static_cast<double>(np);
  t.fpr = static_cast<double>(c.fp) / static_cast<double>(nn);
  t.j_at_epsilon = t.tpr - t.fpr;
  return t;
}

Confusion confusion_at(std::span<const double> scores, std::span<const Label> labels, double threshold) {
  if (scores.size() != labels.size()) throw CalibrationError("scores and labels differ in length");
  Confusion c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted_llm = scores[i] > threshold;
    if (labels[i] == Label::llm) {
      predicted_llm ? ++c.tp : ++c.fn;
    } else if (labels[i] == Label::human) {
      predicted_llm ? ++c.fp : ++c.tn;
    } else {
      throw CalibrationError("confusion counts need labeled samples");
    }
  }
  return c;
}

void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& points) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "threshold,tpr,fpr,j\n" << std::setprecision(17);
  for (const auto& p : points) {
    if (std::isinf(p.threshold)) {
      out << (p.threshold < 0 ? "-inf" : "inf");
    } else {
      out << p.threshold;
    }
    out << ',' << p.tpr << ',' << p.fpr << ',' << p.j << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace gecscore::calibration
