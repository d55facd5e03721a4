#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <random>

#include "gecscore/detection.hpp"
#include "gecscore/errors.hpp"
#include "support/synthetic.hpp"

using namespace gecscore;
using namespace gecscore::detection;

namespace {

gec::Corrector make_corrector(gec::BackendKind kind = gec::BackendKind::rules) {
  gec::GecBackendConfig c;
  c.kind = kind;
  return gec::Corrector(c);
}

const similarity::MetricSpec kChrf = similarity::MetricSpec::parse("chrf");

// 50 human samples with five injected errors and 50 clean llm samples.
std::vector<TextSample> preliminary() {
  std::vector<TextSample> out;
  for (std::uint64_t i = 0; i < 50; ++i) {
    out.push_back(TextSample::make("h" + std::to_string(i),
                                   gec::inject_errors(synth::clean_text(1000 + i, 120), 5, i).text, Label::human));
  }
  for (std::uint64_t i = 0; i < 50; ++i) {
    out.push_back(TextSample::make("l" + std::to_string(i), synth::clean_text(2000 + i, 120), Label::llm));
  }
  return out;
}

}  // namespace

TEST(Detect, CleanInputIsLlm) {
  const auto rules = make_corrector();
  const auto v = detect(preliminary(), TextSample::make("in", synth::clean_text(7, 120)), rules, kChrf);
  EXPECT_TRUE(v.is_llm);
  EXPECT_GT(v.amplified_score, v.epsilon);
  EXPECT_EQ(v.n_preliminary, 100u);
  EXPECT_EQ(v.metric.name(), "chrf");
}

TEST(Detect, ErroneousInputIsHuman) {
  const auto rules = make_corrector();
  const auto text = gec::inject_errors(synth::clean_text(8, 120), 5, 3).text;
  const auto v = detect(preliminary(), TextSample::make("in", text), rules, kChrf);
  EXPECT_FALSE(v.is_llm);
}

TEST(Detect, IdentityBackendCannotSeparate) {
  const auto id = make_corrector(gec::BackendKind::identity);
  const auto v = detect(preliminary(), TextSample::make("in", "Anything at all."), id, kChrf);
  EXPECT_EQ(v.epsilon, std::numeric_limits<double>::infinity());
  EXPECT_FALSE(v.is_llm);
}

TEST(Detect, SingleClassCannotCalibrate) {
  const auto rules = make_corrector();
  auto prelim = preliminary();
  prelim.resize(50);
  try {
    detect(prelim, TextSample::make("in", "Text."), rules, kChrf);
    FAIL();
  } catch (const CalibrationError& e) {
    EXPECT_NE(std::string(e.what()).find("cannot calibrate"), std::string::npos);
  }
  prelim.push_back(TextSample::make("u", "Unlabeled."));
  EXPECT_THROW(detect(prelim, TextSample::make("in", "Text."), rules, kChrf), CalibrationError);
}

TEST(Detect, InputLabelIgnored) {
  const auto rules = make_corrector();
  const Detector d(preliminary(), rules, kChrf);
  auto in = TextSample::make("in", synth::clean_text(9, 120), Label::human);
  const auto a = d.detect(in);
  in.label = Label::llm;
  const auto b = d.detect(in);
  EXPECT_EQ(a.amplified_score, b.amplified_score);
  EXPECT_EQ(a.epsilon, b.epsilon);
}

TEST(Detect, PureAndPermutationInvariant) {
  const auto rules = make_corrector();
  auto prelim = preliminary();
  std::vector<TextSample> inputs;
  for (std::uint64_t i = 0; i < 10; ++i) {
    inputs.push_back(TextSample::make("x" + std::to_string(i),
                                      gec::inject_errors(synth::clean_text(300 + i, 120), i % 4, i).text));
  }
  const auto first = detect_batch(prelim, inputs, rules, kChrf);
  const auto again = detect_batch(prelim, inputs, rules, kChrf);
  std::mt19937_64 rng(3);
  std::shuffle(prelim.begin(), prelim.end(), rng);
  const auto shuffled = detect_batch(prelim, inputs, rules, kChrf);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    ASSERT_TRUE(first[i].ok());
    EXPECT_EQ(first[i].verdict->amplified_score, again[i].verdict->amplified_score);
    EXPECT_EQ(first[i].verdict->epsilon, again[i].verdict->epsilon);
    EXPECT_EQ(first[i].verdict->is_llm, shuffled[i].verdict->is_llm);
    EXPECT_EQ(first[i].verdict->is_llm, first[i].verdict->amplified_score > first[i].verdict->epsilon);
  }
}

TEST(DetectBatch, ConsistencyAndIndependence) {
  const auto rules = make_corrector();
  const Detector d(preliminary(), rules, kChrf);
  const auto a = TextSample::make("a", synth::clean_text(11, 120));
  const auto b = TextSample::make("b", gec::inject_errors(synth::clean_text(12, 120), 4, 1).text);

  const auto single = d.detect_batch({a});
  ASSERT_EQ(single.size(), 1u);
  const auto direct = d.detect(a);
  EXPECT_EQ(single[0].verdict->amplified_score, direct.amplified_score);
  EXPECT_EQ(single[0].verdict->epsilon, direct.epsilon);
  EXPECT_EQ(single[0].verdict->is_llm, direct.is_llm);

  const auto ab = d.detect_batch({a, b});
  const auto ba = d.detect_batch({b, a});
  EXPECT_EQ(ab[0].sample_id, "a");
  EXPECT_EQ(ba[1].sample_id, "a");
  EXPECT_EQ(ab[0].verdict->amplified_score, ba[1].verdict->amplified_score);
  EXPECT_EQ(ab[1].verdict->amplified_score, ba[0].verdict->amplified_score);
  EXPECT_EQ(ab[1].verdict->is_llm, ba[0].verdict->is_llm);
}

TEST(DetectBatch, FailingInputIsIsolated) {
  const auto rules = make_corrector();
  const auto ter = similarity::MetricSpec::parse("ter");
  const Detector d(preliminary(), rules, ter);
  const auto out = d.detect_batch({TextSample::make("good", "He walk home."), TextSample::make("bad", "   "),
                                   TextSample::make("also_good", "Fine.")});
  ASSERT_EQ(out.size(), 3u);
  EXPECT_TRUE(out[0].ok());
  EXPECT_FALSE(out[1].ok());
  EXPECT_NE(out[1].error.find("bad"), std::string::npos);
  EXPECT_TRUE(out[2].ok());
}

TEST(DetectBatch, RepeatedTextsCorrectedOnce) {
  const auto rules = make_corrector();
  const Detector d(preliminary(), rules, kChrf);
  const auto before = rules.backend_calls();
  const std::string text = "He walk to the the store.";
  d.detect_batch({TextSample::make("a", text), TextSample::make("b", text), TextSample::make("c", text)});
  EXPECT_EQ(rules.backend_calls(), before + 1);
}

TEST(VerdictFromRaw, MonotoneInInputRaw) {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> raw;
    std::vector<Label> labels;
    for (int i = 0; i < 30; ++i) {
      raw.push_back(static_cast<double>(rng() % 1000) / 1000.0);
      labels.push_back(i % 2 ? Label::llm : Label::human);
    }
    bool was_llm = false;
    for (double x = 0.0; x <= 1.0; x += 0.01) {
      const auto v = verdict_from_raw(raw, labels, "x", x);
      EXPECT_EQ(v.is_llm, v.amplified_score > v.epsilon);
      if (was_llm) {
        EXPECT_TRUE(v.is_llm) << x;
      }
      was_llm = v.is_llm;
    }
  }
}
