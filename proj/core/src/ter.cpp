#include <algorithm>
#include <limits>
#include <optional>
#include <unordered_map>

#include "gecscore/errors.hpp"
#include "gecscore/similarity.hpp"
#include "levenshtein.hpp"

namespace gecscore::similarity {

namespace {

constexpr std::size_t kMaxShiftLength = 10;
constexpr std::size_t kMaxShiftDistance = 50;

struct Alignment {
  std::size_t distance = 0;
  std::vector<bool> hyp_correct;       // hyp word aligned to an identical ref word
  std::vector<bool> ref_correct;
  std::vector<std::size_t> ref_to_hyp; // insertion point in hyp for each ref word
};

// Full-matrix Levenshtein with a traceback that prefers diagonal moves.
Alignment align(const std::vector<int>& hyp, const std::vector<int>& ref) {
  const std::size_t h = hyp.size();
  const std::size_t r = ref.size();
  std::vector<std::size_t> dp((h + 1) * (r + 1));
  auto at = [r](std::size_t i, std::size_t j) { return i * (r + 1) + j; };
  for (std::size_t i = 0; i <= h; ++i) dp[at(i, 0)] = i;
  for (std::size_t j = 0; j <= r; ++j) dp[at(0, j)] = j;
  for (std::size_t i = 1; i <= h; ++i) {
    for (std::size_t j = 1; j <= r; ++j) {
      const std::size_t sub = dp[at(i - 1, j - 1)] + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      dp[at(i, j)] = std::min({sub, dp[at(i - 1, j)] + 1, dp[at(i, j - 1)] + 1});
    }
  }

  Alignment a;
  a.distance = dp[at(h, r)];
  a.hyp_correct.assign(h, false);
  a.ref_correct.assign(r, false);
  a.ref_to_hyp.assign(r, 0);
  std::size_t i = h;
  std::size_t j = r;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && dp[at(i, j)] == dp[at(i - 1, j - 1)] + (hyp[i - 1] == ref[j - 1] ? 0 : 1)) {
      if (hyp[i - 1] == ref[j - 1]) {
        a.hyp_correct[i - 1] = true;
        a.ref_correct[j - 1] = true;
      }
      a.ref_to_hyp[j - 1] = i - 1;
      --i;
      --j;
    } else if (j > 0 && dp[at(i, j)] == dp[at(i, j - 1)] + 1) {
      a.ref_to_hyp[j - 1] = i;
      --j;
    } else {
      --i;
    }
  }
  return a;
}

std::vector<int> moved(const std::vector<int>& hyp, std::size_t start, std::size_t len, std::size_t dest) {
  std::vector<int> out;
  out.reserve(hyp.size());
  std::vector<int> span(hyp.begin() + static_cast<std::ptrdiff_t>(start),
                        hyp.begin() + static_cast<std::ptrdiff_t>(start + len));
  for (std::size_t i = 0; i <= hyp.size(); ++i) {
    if (i == dest) out.insert(out.end(), span.begin(), span.end());
    if (i < hyp.size() && (i < start || i >= start + len)) out.push_back(hyp[i]);
  }
  return out;
}

}  // namespace

TerDetail ter_detail(const textproc::TokenSeq& hypothesis, const textproc::TokenSeq& reference) {
  if (reference.empty()) throw InvalidArgument("TER needs a non-empty reference");

  std::unordered_map<std::string, int> ids;
  auto encode = [&](const std::vector<std::string>& words) {
    std::vector<int> out;
    for (const auto& w : words) out.push_back(ids.emplace(w, static_cast<int>(ids.size())).first->second);
    return out;
  };
  std::vector<int> hyp = encode(hypothesis.tokens);
  const std::vector<int> ref = encode(reference.tokens);

  std::unordered_map<int, std::vector<std::size_t>> ref_positions;
  for (std::size_t j = 0; j < ref.size(); ++j) ref_positions[ref[j]].push_back(j);

  TerDetail detail;
  detail.reference_length = ref.size();

  for (;;) {
    const Alignment cur = align(hyp, ref);
    if (cur.distance == 0) {
      detail.edits = 0;
      break;
    }

    std::optional<std::vector<int>> best;
    std::size_t best_distance = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < hyp.size(); ++i) {
      auto pos = ref_positions.find(hyp[i]);
      if (pos == ref_positions.end()) continue;
      for (std::size_t j : pos->second) {
        if ((j > i ? j - i : i - j) > kMaxShiftDistance) continue;
        bool span_correct = true;
        bool ref_span_correct = true;
        for (std::size_t len = 1; len <= kMaxShiftLength; ++len) {
          if (i + len > hyp.size() || j + len > ref.size()) break;
          if (hyp[i + len - 1] != ref[j + len - 1]) break;
          span_correct = span_correct && cur.hyp_correct[i + len - 1];
          ref_span_correct = ref_span_correct && cur.ref_correct[j + len - 1];
          // Moving words that are already matched, onto words that are already
          // matched, cannot help.
          if (span_correct || ref_span_correct) continue;

          const std::size_t dest = cur.ref_to_hyp[j];
          if (dest >= i && dest <= i + len) continue;
          const std::size_t landed = dest > i ? dest - len : dest;
          if ((landed > i ? landed - i : i - landed) > kMaxShiftDistance) continue;

          auto candidate = moved(hyp, i, len, dest);
          const std::size_t d = detail::levenshtein<int>(candidate, ref);
          if (d < best_distance) {
            best_distance = d;
            best = std::move(candidate);
          }
        }
      }
    }

    // A shift costs one edit, so it must save at least two.
    if (!best || best_distance + 1 >= cur.distance) {
      detail.edits = cur.distance;
      break;
    }
    hyp = std::move(*best);
    ++detail.shifts;
  }
  return detail;
}

}  // namespace gecscore::similarity
