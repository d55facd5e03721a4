#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "gecscore/attacks.hpp"
#include "gecscore/calibration.hpp"
#include "gecscore/gec.hpp"
#include "gecscore/scoring.hpp"
#include "gecscore/similarity.hpp"

using namespace gecscore;

namespace {

std::string prose(std::size_t words, std::uint64_t seed) {
  static const char* kWords[] = {"the", "committee", "recieve", "a", "apple", "he", "walk", "quickly",
                                 "to",  "market",    "and",     "definately", "buys", "bread", "."};
  std::mt19937_64 rng(seed);
  std::string s;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) s += ' ';
    s += kWords[rng() % std::size(kWords)];
  }
  return s;
}

void metric_pair(benchmark::State& state, const char* name) {
  const auto spec = similarity::MetricSpec::parse(name);
  const auto a = prose(static_cast<std::size_t>(state.range(0)), 1);
  const auto b = gec::correct_with_rules(a);
  for (auto _ : state) benchmark::DoNotOptimize(similarity::compute(spec, a, b).oriented);
  state.SetComplexityN(state.range(0));
}

void BM_Chrf(benchmark::State& s) { metric_pair(s, "chrf"); }
void BM_Bleu(benchmark::State& s) { metric_pair(s, "bleu"); }
void BM_Ter(benchmark::State& s) { metric_pair(s, "ter"); }
void BM_Edit(benchmark::State& s) { metric_pair(s, "edit"); }
void BM_Meteor(benchmark::State& s) { metric_pair(s, "meteor"); }

void BM_RulesCorrect(benchmark::State& state) {
  const auto text = prose(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(gec::correct_with_rules(text));
}

void BM_Softmax(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> raw(static_cast<std::size_t>(state.range(0)));
  for (auto& v : raw) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(scoring::softmax(raw));
}

void BM_Auroc(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> s(n);
  std::vector<Label> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = u(rng);
    y[i] = i % 2 ? Label::llm : Label::human;
  }
  for (auto _ : state) benchmark::DoNotOptimize(calibration::auroc(s, y));
}

void BM_PerturbChars(benchmark::State& state) {
  const auto text = prose(static_cast<std::size_t>(state.range(0)), 5);
  attacks::PerturbationConfig cfg;
  cfg.rate = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(attacks::perturb_chars(text, cfg).text);
}

}  // namespace

BENCHMARK(BM_Chrf)->Range(32, 1024);
BENCHMARK(BM_Bleu)->Range(32, 1024);
BENCHMARK(BM_Ter)->Range(32, 512);
BENCHMARK(BM_Edit)->Range(32, 1024);
BENCHMARK(BM_Meteor)->Range(32, 1024);
BENCHMARK(BM_RulesCorrect)->Range(32, 1024);
BENCHMARK(BM_Softmax)->Range(1 << 10, 1 << 20);
BENCHMARK(BM_Auroc)->Range(1 << 8, 1 << 16);
BENCHMARK(BM_PerturbChars)->Range(32, 1024);
BENCHMARK_MAIN();
