#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gecscore/errors.hpp"
#include "gecscore/scoring.hpp"
#include "gecscore/utf8.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace gecscore;
using namespace gecscore::scoring;

namespace {

gec::Corrector make_corrector(gec::BackendKind kind) {
  gec::GecBackendConfig c;
  c.kind = kind;
  return gec::Corrector(c);
}

std::vector<TextSample> samples(std::initializer_list<const char*> texts) {
  std::vector<TextSample> out;
  for (const char* t : texts) out.push_back(TextSample::make("s" + std::to_string(out.size()), t));
  return out;
}

}  // namespace

TEST(RawScores, IdentityIsMaximal) {
  const auto id = make_corrector(gec::BackendKind::identity);
  for (const char* name : {"chrf", "bleu", "edit", "ter", "rouge1", "gleu"}) {
    const auto r = raw_scores(samples({"One two three four.", "five six seven eight", "nine ten x y"}), id,
                              similarity::MetricSpec::parse(name));
    ASSERT_EQ(r.size(), 3u);
    for (const auto& [sid, v] : r) EXPECT_EQ(v, 1.0) << name;
  }
}

TEST(RawScores, CleanBeatsErroneous) {
  const auto rules = make_corrector(gec::BackendKind::rules);
  const std::string dirty = "She walk to the library. it is an big building.";
  const std::string clean = "She walks to the library. It is a big building.";
  const auto r = raw_scores(
      {TextSample::make("dirty", dirty), TextSample::make("clean", clean)}, rules, similarity::MetricSpec::parse("chrf"));
  const std::string fixed = gec::correct_with_rules(dirty);
  EXPECT_EQ(fixed, "She walks to the library. It is a big building.");
  EXPECT_NEAR(r[0].second, oracle::chrf(utf8::ascii_lower(fixed), utf8::ascii_lower(dirty)), 1e-12);
  EXPECT_EQ(r[1].second, 1.0);
  EXPECT_GT(r[1].second, r[0].second);
}

TEST(RawScores, Errors) {
  const auto rules = make_corrector(gec::BackendKind::rules);
  EXPECT_THROW(raw_scores({}, rules, similarity::MetricSpec::parse("chrf")), InvalidArgument);
  try {
    raw_scores({TextSample::make("ok", "fine text."), TextSample::make("blank", "   ")}, rules,
               similarity::MetricSpec::parse("ter"));
    FAIL() << "expected a scoring error";
  } catch (const ScoringError& e) {
    EXPECT_EQ(e.sample_id(), "blank");
  }
}

TEST(Softmax, Examples) {
  const double a[] = {0.3, 0.3, 0.3, 0.3};
  for (double v : softmax(a)) EXPECT_EQ(v, 0.25);
  const double b[] = {0.0, std::log(3.0)};
  const auto sb = softmax(b);
  EXPECT_NEAR(sb[0], 0.25, 1e-15);
  EXPECT_NEAR(sb[1], 0.75, 1e-15);
  const double c[] = {1.0, 2.0};
  const double d[] = {11.0, 12.0};
  EXPECT_EQ(softmax(c), softmax(d));
}

TEST(Softmax, Errors) {
  EXPECT_THROW(softmax(std::vector<double>{}), InvalidArgument);
  EXPECT_THROW(softmax(std::vector<double>{1.0, std::nan("")}), InvalidArgument);
  EXPECT_THROW(softmax(std::vector<double>{1.0, INFINITY}), InvalidArgument);
}

TEST(Softmax, StableForLargeInputs) {
  const auto s = softmax(std::vector<double>{1000.0, 1000.0, 999.0});
  EXPECT_NEAR(std::accumulate(s.begin(), s.end(), 0.0), 1.0, 1e-12);
  EXPECT_EQ(s[0], s[1]);
}

TEST(Softmax, SumRangeOrderProperties) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> raw(1 + rng() % 300);
    for (auto& v : raw) v = rng() % 4 == 0 ? 0.5 : u(rng);
    const auto s = softmax(raw);
    EXPECT_NEAR(std::accumulate(s.begin(), s.end(), 0.0L), 1.0L, 1e-9L);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      EXPECT_GT(s[i], 0.0);
      EXPECT_LE(s[i], 1.0);
      const std::size_t j = rng() % raw.size();
      EXPECT_EQ(raw[i] > raw[j], s[i] > s[j]);
      EXPECT_EQ(raw[i] == raw[j], s[i] == s[j]);
    }
  }
}

TEST(Softmax, ShiftInvarianceIsExact) {
  // Dyadic scores and integer shifts keep s + c exactly representable.
  std::mt19937_64 rng(41);
  for (int t = 0; t < 300; ++t) {
    std::vector<double> raw(1 + rng() % 100);
    std::vector<double> shifted;
    const double c = static_cast<double>(static_cast<long>(rng() % 201) - 100);
    for (auto& v : raw) {
      v = static_cast<double>(static_cast<long>(rng() % 4097) - 2048) / 512.0;
      shifted.push_back(v + c);
    }
    EXPECT_EQ(softmax(raw), softmax(shifted));
  }
  EXPECT_EQ(softmax(std::vector<double>{1, 2}), softmax(std::vector<double>{11, 12}));
}

TEST(Softmax, PermutationEquivariance) {
  std::mt19937_64 rng(37);
  std::vector<double> raw(50);
  for (auto& v : raw) v = static_cast<double>(rng() % 1000) / 1000.0;
  std::vector<std::size_t> perm(raw.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<double> permuted;
  for (auto i : perm) permuted.push_back(raw[i]);
  const auto s = softmax(raw);
  const auto sp = softmax(permuted);
  for (std::size_t k = 0; k < perm.size(); ++k) EXPECT_NEAR(sp[k], s[perm[k]], 1e-15);
}

TEST(GecscoreSet, Examples) {
  const auto id = make_corrector(gec::BackendKind::identity);
  const auto chrf = similarity::MetricSpec::parse("chrf");
  const auto two = gecscore_set(samples({"a b", "c d"}), id, chrf);
  EXPECT_EQ(two.amplified, (std::vector<double>{0.5, 0.5}));
  EXPECT_THROW(gecscore_set(samples({"a"}), id, chrf), InvalidArgument);
  auto dup = samples({"a", "b"});
  dup[1].id = dup[0].id;
  EXPECT_THROW(gecscore_set(dup, id, chrf), InvalidArgument);
}

TEST(GecscoreSet, ThousandNearEqualScores) {
  std::vector<std::string> ids;
  std::vector<double> raw;
  std::mt19937_64 rng(41);
  for (int i = 0; i < 1000; ++i) {
    ids.push_back(std::to_string(i));
    raw.push_back(0.9 + static_cast<double>(rng() % 1000) * 1e-5);
  }
  const auto set = from_raw(ids, raw, similarity::MetricSpec{});
  for (double v : set.amplified) {
    EXPECT_GT(v, 0.98e-3);
    EXPECT_LT(v, 1.02e-3);
  }
  const auto arg_raw = std::max_element(raw.begin(), raw.end()) - raw.begin();
  const auto arg_amp = std::max_element(set.amplified.begin(), set.amplified.end()) - set.amplified.begin();
  EXPECT_EQ(arg_raw, arg_amp);
}

TEST(ScoreNewSample, Examples) {
  const auto base = from_raw({"a", "b", "c"}, {0.4, 0.4, 0.4}, similarity::MetricSpec{});
  const auto equal = append_raw(base, "d", 0.4);
  EXPECT_NEAR(equal.new_amplified, 0.25, 1e-15);

  const auto big = append_raw(base, "e", 0.9);
  EXPECT_EQ(big.new_amplified, *std::max_element(big.set.amplified.begin(), big.set.amplified.end()));

  const auto restored = remove_sample(big.set, "e");
  for (std::size_t i = 0; i < base.size(); ++i) EXPECT_NEAR(restored.amplified[i], base.amplified[i], 1e-12);

  EXPECT_THROW(append_raw(base, "a", 0.1), InvalidArgument);
  EXPECT_THROW(remove_sample(base, "zz"), InvalidArgument);
}

TEST(ScoreNewSample, CorrectsOnlyTheNewSample) {
  const auto rules = make_corrector(gec::BackendKind::rules);
  const auto chrf = similarity::MetricSpec::parse("chrf");
  const auto base = gecscore_set(samples({"He walk home.", "She walks home.", "the the end."}), rules, chrf);
  const auto calls = rules.backend_calls();
  const auto next = score_new_sample(base, TextSample::make("new", "It rains."), rules);
  EXPECT_EQ(rules.backend_calls(), calls + 1);
  EXPECT_EQ(next.set.size(), 4u);
  EXPECT_EQ(next.set.raw[0], base.raw[0]);
  EXPECT_THROW(score_new_sample(base, TextSample::make("s0", "x"), rules), InvalidArgument);
}
