// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gecscore/attacks.hpp"
#include "gecscore/calibration.hpp"
#include "gecscore/gec.hpp"
#include "gecscore/harness.hpp"
#include "gecscore/scoring.hpp"
#include "gecscore/similarity.hpp"
#include "gecscore/utf8.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace gecscore;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    detail += (pass ? "" : "; ") + what;
    pass = false;
  }
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << std::fixed << v;
  return ss.str();
}

int failures = 0;

void criterion(const std::string& id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs >= limit_s) o.require(false, "runtime over the " + fmt(limit_s) + " s limit");
  if (!o.pass) ++failures;
  std::ostringstream line;
  line << (o.pass ? "PASS " : "FAIL ") << id << " " << title << " (" << std::fixed;
  line.precision(2);
  line << secs << " s)";
  if (!o.detail.empty()) line << ": " << o.detail;
  std::cout << line.str() << std::endl;
}


textproc::TokenSeq words(const std::string& s) { return textproc::tokenize_words(s, true); }

std::vector<Label> random_labels(std::mt19937_64& rng, std::size_t n) {
  std::vector<Label> y(n);
  for (auto& l : y) l = rng() % 2 ? Label::llm : Label::human;
  y[0] = Label::human;
  y[1] = Label::llm;
  std::shuffle(y.begin(), y.end(), rng);
  return y;
}

std::vector<double> random_scores(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> s(n);
  // Some exact ties, as real similarity scores have them.
  for (auto& v : s) v = rng() % 5 == 0 ? std::round(u(rng) * 4) / 4 : u(rng);
  return s;
}

Outcome p1() {
  Outcome o;
  std::mt19937_64 rng(1);
  const std::u32string alphabet = U"abcdeé中";
  for (int t = 0; t < 1000; ++t) {
    std::u32string a, b;
    for (std::size_t i = 0, n = rng() % 21; i < n; ++i) a += alphabet[rng() % alphabet.size()];
    for (std::size_t i = 0, n = rng() % 21; i < n; ++i) b += alphabet[rng() % alphabet.size()];
    const auto lib = similarity::edit_distance(utf8::encode(a), utf8::encode(b));
    o.require(lib == oracle::edit_distance(a, b), "edit_distance differs from the DP table at pair " + std::to_string(t));
  }
  auto near = [&](double got, double want, const std::string& what) {
    o.require(std::abs(got - want) <= 1e-9, what + " = " + fmt(got) + ", expected " + fmt(want));
  };
  near(similarity::bleu(words("the the the the"), words("the cat")).value, std::pow(1.0 / 192.0, 0.25), "bleu repeat");
  near(similarity::bleu(words("a b c d e f g h i j"), words("k l m n o p q r s t")).value,
       std::pow(1.0 / (20.0 * 18.0 * 16.0 * 14.0), 0.25), "bleu zero overlap");
  near(similarity::bleu(words("the cat sat"), words("the cat sat on the mat")).value,
       std::exp(1.0 - 2.0), "bleu brevity");
  near(similarity::chrf("abcd", "abce").value, (0.75 + 2.0 / 3.0 + 0.5) / 4.0, "chrf abcd/abce");
  near(similarity::chrf("abc", "abc").value, 1.0, "chrf identical");
  near(similarity::rouge_n(words("the cat"), words("the dog cat"), 1).value, 0.8, "rouge1");
  near(similarity::rouge_n(words("the cat sat down"), words("the cat sat up"), 2).value, 2.0 / 3.0, "rouge2");
  near(similarity::rouge_l(words("the cat"), words("the dog cat")).value, 0.8, "rougeL");
  return o;
}

Outcome p2() {
  Outcome o;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<double> big(1'000'000);
  for (auto& v : big) v = u(rng);
  const auto sb = scoring::softmax(big);
  const long double sum = std::accumulate(sb.begin(), sb.end(), 0.0L);
  o.require(std::abs(sum - 1.0L) <= 1e-9L, "sum over 10^6 elements off by " + fmt(double(sum - 1.0L)));

  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng() % 200;
    // Dyadic values and an integer shift, so s + c is exactly representable.
    std::vector<double> s(n), shifted(n);
    const double c = static_cast<double>(static_cast<long>(rng() % 2001) - 1000);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(static_cast<long>(rng() % 8193) - 4096) / 1024.0;
      shifted[i] = s[i] + c;
    }
    const auto a = scoring::softmax(s);
    o.require(a == scoring::softmax(shifted), "shift changed the output on vector " + std::to_string(t));

    std::vector<double> r(n);
    for (auto& v : r) v = u(rng);
    const auto sr = scoring::softmax(r);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if ((r[i] < r[j]) != (sr[i] < sr[j])) o.require(false, "rank order broken on vector " + std::to_string(t));
      }
    }
  }
  return o;
}

Outcome p3() {
  Outcome o;
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng() % 200;
    const auto s = random_scores(rng, n);
    const auto y = random_labels(rng, n);
    const auto sm = scoring::softmax(s);
    o.require(calibration::auroc(sm, y) == calibration::auroc(s, y), "softmax changed AUROC on set " + std::to_string(t));
    const auto rc = calibration::rank_counts(s, y);
    const auto ref = oracle::auroc(s, y);
    o.require(rc.half_wins == ref.half_wins && rc.pairs == ref.pairs, "rank counts differ from pairwise count");
    std::vector<Label> flipped(y);
    for (auto& l : flipped) l = l == Label::llm ? Label::human : Label::llm;
    const auto rf = calibration::rank_counts(s, flipped);
    o.require(rf.pairs == rc.pairs && rf.half_wins + rc.half_wins == 2 * rc.pairs,
              "label flip is not antisymmetric on set " + std::to_string(t));
  }
  const std::vector<double> hand{0.3, 0.7, 0.5, 0.9};
  const std::vector<Label> hy{Label::human, Label::human, Label::llm, Label::llm};
  o.require(calibration::auroc(hand, hy) == 0.75, "hand example is not 0.75");
  return o;
}

Outcome p4() {
  Outcome o;
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 120;
    const auto s = random_scores(rng, n);
    const auto y = random_labels(rng, n);
    const auto th = calibration::select_threshold(s, y);
    const auto best = oracle::best_j(s, y);
    o.require(th.j_at_epsilon == best.j, "J " + fmt(th.j_at_epsilon) + " below brute force " + fmt(best.j) +
                                             " on set " + std::to_string(t));
    std::size_t tp = 0, fp = 0, np = 0, nn = 0;
    for (std::size_t i = 0; i < n; ++i) {
      (y[i] == Label::llm ? np : nn) += 1;
      if (s[i] > th.epsilon) (y[i] == Label::llm ? tp : fp) += 1;
    }
    o.require(th.tp == tp && th.fp == fp && th.tpr == double(tp) / double(np) && th.fpr == double(fp) / double(nn),
              "tpr/fpr disagree with a recount at epsilon on set " + std::to_string(t));
  }
  return o;
}

gec::Corrector rules() { return gec::Corrector(gec::GecBackendConfig{}); }

std::vector<TextSample> p5_corpus() { return synth::hypothesis_corpus(200, 200, 5); }

Outcome p5() {
  Outcome o;
  const auto corpus = p5_corpus();
  std::size_t shortest = std::numeric_limits<std::size_t>::max();
  for (const auto& s : corpus) shortest = std::min(shortest, s.word_count);
  o.require(shortest >= 300, "a sample has fewer than 300 words");

  const auto report = harness::evaluate(corpus, rules(), similarity::MetricSpec::parse("chrf"));
  o.require(report.auroc >= 0.95, "AUROC " + fmt(report.auroc) + " < 0.95");
  const auto ratio = report.class_stats.ratio;
  o.require(ratio && *ratio > 1.05, "class mean ratio " + (ratio ? fmt(*ratio) : std::string("undefined")) + " <= 1.05");

  // Read the modes back from the exported histogram.
  std::stringstream csv;
  harness::write_histogram_csv(csv, report.scores, report.labels);
  std::string line;
  std::getline(csv, line);
  double max_human = -1.0, sum_llm = 0.0;
  std::size_t n_llm = 0;
  while (std::getline(csv, line)) {
    const auto comma = line.find(',');
    const double v = std::stod(line.substr(0, comma));
    if (line.substr(comma + 1) == "human") {
      max_human = std::max(max_human, v);
    } else {
      sum_llm += v;
      ++n_llm;
    }
  }
  const double mean_llm = sum_llm / double(n_llm);
  o.require(max_human < mean_llm, "max human score " + std::to_string(max_human) + " >= mean llm score " +
                                      std::to_string(mean_llm));
  double raw_h = 0, raw_l = 0;
  for (std::size_t i = 0; i < report.labels.size(); ++i)
    (report.labels[i] == Label::llm ? raw_l : raw_h) += report.scores.raw[i];
  const std::string summary = "auroc " + fmt(report.auroc) + ", ratio " + (ratio ? fmt(*ratio) : "n/a") +
                              ", mean raw chrF human " + fmt(raw_h / 200) + " llm " + fmt(raw_l / 200);
  o.detail = o.pass ? summary : o.detail + " [" + summary + "]";
  return o;
}

Outcome p6() {
  Outcome o;
  std::mt19937_64 rng(6);
  for (int t = 0; t < 100; ++t) {
    // Half the bases already carry errors, so the identity is not trivial.
    std::string x = synth::clean_text(rng(), 40 + rng() % 80);
    if (t % 2) x = gec::inject_errors(x, 1 + rng() % 4, rng()).text;
    const std::size_t k = rng() % 9;
    const auto injected = gec::inject_errors(x, k, rng()).text;
    const auto fixed = gec::correct_with_rules(x);
    o.require(gec::correct_with_rules(injected) == fixed, "round trip failed on triple " + std::to_string(t));
    o.require(gec::correct_with_rules(fixed) == fixed, "rules not idempotent on triple " + std::to_string(t));
  }
  return o;
}

Outcome p7() {
  Outcome o;
  const auto corpus = p5_corpus();
  const auto chrf = similarity::MetricSpec::parse("chrf");
  attacks::AttackParams params;
  params.kind = attacks::AttackKind::chars;
  params.chars.rate = 0.05;
  params.chars.seed = 7;
  const auto r = attacks::robustness_eval(corpus, params, rules(), chrf);
  o.require(r.after.auroc >= r.before.auroc - 0.10,
            "AUROC fell from " + fmt(r.before.auroc) + " to " + fmt(r.after.auroc));

  std::vector<std::string> llm;
  for (const auto& s : corpus)
    if (s.label == Label::llm) llm.push_back(s.text);
  const std::vector<double> rates{0.0, 0.1, 0.3, 0.5};
  std::vector<double> mean(rates.size(), 0.0);
  const std::size_t trials = 200;
  for (std::size_t ri = 0; ri < rates.size(); ++ri) {
    for (std::size_t t = 0; t < trials; ++t) {
      attacks::PerturbationConfig cfg;
      cfg.rate = rates[ri];
      cfg.seed = 1000 + t;
      const auto& x = llm[t % llm.size()];
      mean[ri] += similarity::compute(chrf, x, attacks::perturb_chars(x, cfg).text).oriented;
    }
    mean[ri] /= double(trials);
  }
  for (std::size_t a = 0; a < rates.size(); ++a)
    for (std::size_t b = a + 1; b < rates.size(); ++b)
      o.require(mean[a] >= mean[b] - 0.01, "mean similarity rises from rate " + fmt(rates[a]) + " to " + fmt(rates[b]));
  if (o.pass) o.detail = "auroc " + fmt(r.before.auroc) + " -> " + fmt(r.after.auroc);
  return o;
}

Outcome p8() {
  Outcome o;
  const auto corpus = synth::density_corpus(30, 40, 8);
  harness::AblationConfig cfg;
  cfg.metrics = {similarity::MetricSpec::parse("edit"), similarity::MetricSpec::parse("chrf")};
  cfg.window_sizes.clear();
  for (std::size_t k = 1; k <= 30; ++k) cfg.window_sizes.push_back(k);
  cfg.bin_width = 30;
  cfg.per_bin_cap = 200;
  cfg.seed = 8;
  const auto rows = harness::ablate_length(corpus, rules(), cfg);

  double edit_short = 0, edit_long = 0;
  std::size_t n_short = 0, n_long = 0;
  double chrf_min = 2, chrf_max = -1;
  for (const auto& row : rows) {
    const bool is_short = row.upper <= 60;
    const bool is_long = row.lower >= 240;
    if (!is_short && !is_long) continue;
    o.require(row.auroc.has_value(), "bin " + std::to_string(row.lower) + " has no AUROC: " + row.warning);
    if (!row.auroc) continue;
    if (row.metric == "edit") {
      (is_short ? edit_short : edit_long) += *row.auroc;
      (is_short ? n_short : n_long) += 1;
    } else {
      chrf_min = std::min(chrf_min, *row.auroc);
      chrf_max = std::max(chrf_max, *row.auroc);
    }
  }
  o.require(n_short > 0 && n_long > 0, "missing short or long bins");
  if (!o.pass) return o;
  edit_short /= double(n_short);
  edit_long /= double(n_long);
  o.require(edit_short <= edit_long - 0.05,
            "edit AUROC short " + fmt(edit_short) + " vs long " + fmt(edit_long) + " differs by < 0.05");
  o.require(chrf_max - chrf_min <= 0.05, "chrF AUROC varies by " + fmt(chrf_max - chrf_min));
  if (o.pass)
    o.detail = "edit " + fmt(edit_short) + " -> " + fmt(edit_long) + ", chrF range " + fmt(chrf_max - chrf_min);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome p9() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "gecscore_acceptance_p9";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto corpus = (dir / "corpus.jsonl").string();
  corpus::write_corpus(fs::path(corpus), synth::hypothesis_corpus(15, 15, 9, 80));
  {
    std::ofstream(dir / "input.txt") << "She walk to a apple store and buy a umbrella.";
  }
  const std::string cli = GECSCORE_CLI_PATH;
  const std::vector<std::pair<std::string, std::vector<std::string>>> runs{
      {"evaluate --corpus " + corpus + " --metric bleu --roc {}roc.csv --hist {}hist.csv", {"roc.csv", "hist.csv"}},
      {"calibrate --corpus " + corpus + " --metric ter", {}},
      {"stats --corpus " + corpus, {}},
      {"attack --corpus " + corpus + " --attack chars --rate 0.3 --seed 17", {}},
      {"ablate-length --corpus " + corpus + " --metrics chrf edit --window 1 --window 2 --bin-width 20 --seed 4", {}},
      {"detect --prelim " + corpus + " --input " + (dir / "input.txt").string(), {}},
      {"correct --input " + (dir / "input.txt").string(), {}},
      {"metrics", {}},
  };
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::vector<std::string> outputs;
    for (int rep = 0; rep < 2; ++rep) {
      const std::string prefix = (dir / ("r" + std::to_string(rep) + "_")).string();
      std::string args = runs[i].first;
      for (auto at = args.find("{}"); at != std::string::npos; at = args.find("{}")) args.replace(at, 2, prefix);
      const std::string cmd = "\"" + cli + "\" " + args + " --out " + prefix + "out.txt 2>/dev/null";
      if (std::system(cmd.c_str()) != 0) {
        o.require(false, "command failed: " + cmd);
        return o;
      }
      std::string all = slurp(prefix + "out.txt");
      for (const auto& extra : runs[i].second) all += "\n--\n" + slurp(prefix + extra);
      o.require(all.size() > 1, "empty output: " + cmd);
      outputs.push_back(all);
    }
    o.require(outputs[0] == outputs[1], "outputs differ for: " + runs[i].first.substr(0, runs[i].first.find(' ')));
  }
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  criterion("P1", "metric oracle equivalence", 5, p1);
  criterion("P2", "softmax contract", 10, p2);
  criterion("P3", "AUROC invariance", 5, p3);
  criterion("P4", "threshold optimality", 0, p4);
  criterion("P5", "synthetic hypothesis reproduction", 60, p5);
  criterion("P6", "GEC round trip", 0, p6);
  criterion("P7", "robustness under character attacks", 120, p7);
  criterion("P8", "length ablation shape", 0, p8);
  criterion("P9", "CLI determinism", 0, p9);
  return failures == 0 ? 0 : 1;
}
