// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"
#include "lifescope/corpus.hpp"
#include "lifescope/cross_validation.hpp"
#include "lifescope/dataset_io.hpp"
#include "lifescope/diffview.hpp"
#include "lifescope/erc20.hpp"
#include "lifescope/features.hpp"
#include "lifescope/lineage.hpp"
#include "lifescope/metrics.hpp"
#include "lifescope/random.hpp"
#include "lifescope/textprep.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace lifescope;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and thresholds.
constexpr std::size_t kErc20MinFixtures = 24;
constexpr double kErc20MaxSeconds = 1.0;
constexpr double kTfIdfTolerance = 1e-9;
constexpr int kTfIdfCorpora = 100;
constexpr double kIgTolerance = 1e-9;
constexpr std::size_t kIgMaxFunctions = 50;
constexpr double kIgZeroTolerance = 1e-12;
constexpr double kSimilarityTolerance = 1e-12;
constexpr int kSimilarityPairs = 1000;
constexpr std::size_t kFoldParts = 10;
constexpr std::size_t kFoldTestParts = 3;
constexpr std::size_t kFoldSizeSlack = 10;
constexpr std::size_t kClassifierFunctions = 2000;
constexpr double kClassifierNoise = 0.10;
constexpr double kMinTreeFMeasure = 0.85;
constexpr double kMinTreeAuc = 0.90;
constexpr int kAucSets = 100;
constexpr std::size_t kAucMaxN = 200;
constexpr std::size_t kPorterMinPairs = 100;
constexpr int kDiffCases = 500;
constexpr std::size_t kDiffMaxLines = 200;
constexpr double kLineageThreshold = 0.6;
constexpr double kLineageMinShared = 0.80;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string test_dir() { return LIFESCOPE_TEST_DIR; }

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("lifescope_acceptance_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

// ------------------------------------------------------------------------ 1

Outcome erc20_fixtures() {
  const fs::path dir = test_dir() + "/fixtures/erc20";
  std::ifstream in(dir / "expected.tsv");
  std::vector<std::pair<std::string, std::string>> expected;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    expected.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  std::vector<std::string> sources;
  for (const auto& [file, verdict] : expected) sources.push_back(read_text(dir / file));

  const auto start = std::chrono::steady_clock::now();
  std::size_t correct = 0;
  std::string wrong;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto got = std::string(erc20::to_string(erc20::check_source(sources[i]).verdict));
    if (got == expected[i].second) {
      ++correct;
    } else {
      wrong += " " + expected[i].first + "=" + got;
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = expected.size() >= kErc20MinFixtures && correct == expected.size() && seconds < kErc20MaxSeconds;
  return {pass, std::to_string(correct) + "/" + std::to_string(expected.size()) + " verdicts correct in " +
                    fmt(seconds * 1000, 1) + " ms" + (wrong.empty() ? "" : "; wrong:" + wrong)};
}

// ------------------------------------------------------------------------ 2

Outcome tfidf_oracle() {
  Rng rng(mix_seed(kSeed, 2));
  const std::vector<std::string> words = {"owner",  "transfer", "balance", "withdraw", "mint",   "approve",
                                          "amount", "sender",   "token",   "killSwitch", "paused", "supply"};
  double worst = 0.0;
  std::size_t checked = 0, mismatched_support = 0;
  for (int trial = 0; trial < kTfIdfCorpora; ++trial) {
    std::vector<FunctionRecord> fns(10);
    for (auto& f : fns) {
      f.name = words[rng.below(words.size())];
      f.text = "function " + f.name + "() {";
      for (std::uint64_t k = 0, n = rng.below(10); k < n; ++k) f.text += " " + words[rng.below(words.size())] + ";";
      f.text += " }";
    }
    // Seven training functions; the remaining three are held out.
    std::vector<std::vector<std::string>> training;
    for (std::size_t i = 0; i < 7; ++i) training.push_back(text::preprocess(fns[i]));
    const auto vocab = text::Vocabulary::build(training);
    for (const auto& f : fns) {
      const auto got = text::vectorize(f, vocab);
      const auto want = oracle::tfidf(training, text::preprocess(f));
      std::size_t nonzero = 0;
      for (const auto& [w, weight] : want) {
        if (weight == 0.0) continue;
        ++nonzero;
        const auto idx = vocab.index_of(w);
        const auto it = std::find_if(got.begin(), got.end(),
                                     [&](const SparseEntry& e) { return static_cast<std::int64_t>(e.index) == idx; });
        if (it == got.end()) {
          ++mismatched_support;
          continue;
        }
        worst = std::max(worst, std::abs(it->value - weight));
        ++checked;
      }
      if (got.size() != nonzero) ++mismatched_support;
    }
  }
  return {worst <= kTfIdfTolerance && mismatched_support == 0 && checked > 0,
          std::to_string(kTfIdfCorpora) + " corpora, " + std::to_string(checked) +
              " weights, max |diff| = " + fmt(worst, 15) + ", support mismatches " +
              std::to_string(mismatched_support)};
}

// ------------------------------------------------------------------------ 3

Outcome ig_oracle() {
  Rng rng(mix_seed(kSeed, 3));
  const std::vector<std::string> words = {"own", "mint", "pay", "get", "set", "kill", "add", "burn", "lock"};
  double worst = 0.0, worst_bound = 0.0;
  std::size_t checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(kIgMaxFunctions);
    std::vector<std::vector<std::string>> docs(n);
    std::vector<bool> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = rng.below(2) == 1;
      for (std::uint64_t k = 0, len = rng.below(6); k < len; ++k) docs[i].push_back(words[rng.below(words.size())]);
    }
    const double h = features::label_entropy(labels);
    for (const auto& e : features::information_gain(docs, labels)) {
      worst = std::max(worst, std::abs(e.ig - oracle::information_gain(docs, labels, e.word)));
      worst_bound = std::max(worst_bound, e.ig - h);
      ++checked;
    }
  }
  // Label-independent words: present in exactly half of each class.
  double worst_independent = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t pos = 2 * (1 + rng.below(12)), neg = 2 * (1 + rng.below(12));
    std::vector<std::vector<std::string>> docs;
    std::vector<bool> labels;
    for (std::size_t i = 0; i < pos + neg; ++i) {
      const bool label = i < pos;
      const std::size_t within = label ? i : i - pos;
      const std::size_t half = (label ? pos : neg) / 2;
      docs.push_back(within < half ? std::vector<std::string>{"neutral", "x"} : std::vector<std::string>{"x"});
      labels.push_back(label);
    }
    for (const auto& e : features::information_gain(docs, labels)) {
      if (e.word == "neutral") worst_independent = std::max(worst_independent, std::abs(e.ig));
    }
  }
  const bool pass = worst <= kIgTolerance && worst_bound <= 1e-12 && worst_independent <= kIgZeroTolerance;
  return {pass, std::to_string(checked) + " words, max |diff| = " + fmt(worst, 15) +
                    ", max IG - H = " + fmt(worst_bound, 15) + ", independent max IG = " +
                    fmt(worst_independent, 15)};
}

// ------------------------------------------------------------------------ 4

std::string corpus_file(const std::vector<corpus::ContractRecord>& records, const std::string& path) {
  std::ofstream out(path);
  for (const auto& r : records) out << corpus::serialize_record(r) << "\n";
  return path;
}

Outcome similarity_formula(const TempDir& tmp) {
  Rng rng(mix_seed(kSeed, 4));
  bool self_exact = true;
  double worst = 0.0;
  bool bounded = true;
  for (int trial = 0; trial < kSimilarityPairs; ++trial) {
    const std::size_t dim = 1 + rng.below(40);
    std::vector<double> a(dim, 0.0), b(dim, 0.0);
    SparseVector sa, sb;
    for (std::uint32_t i = 0; i < dim; ++i) {
      if (rng.below(3)) a[i] = rng.below(2) ? static_cast<double>(1 + rng.below(50)) : 10 * rng.unit();
      if (rng.below(3)) b[i] = rng.below(2) ? static_cast<double>(1 + rng.below(50)) : 10 * rng.unit();
      if (a[i] != 0) sa.push_back({i, a[i]});
      if (b[i] != 0) sb.push_back({i, b[i]});
    }
    if (!sa.empty() && lineage::similarity(sa, sa) != 1.0) self_exact = false;
    if (sa.empty() && sb.empty()) continue;
    const double s = lineage::similarity(sa, sb);
    worst = std::max(worst, std::abs(s - oracle::similarity(a, b)));
    if (!(s >= 0.0 && s <= 1.0)) bounded = false;
  }

  // Monotonicity of the pair filter in the threshold.
  const auto corpus = synth::lineage_corpus(mix_seed(kSeed, 10));
  const auto path = corpus_file(corpus.records, tmp.file("monotone.jsonl"));
  bool monotone = true;
  std::set<std::string> previous;
  bool first = true;
  for (int step = 1; step <= 20; ++step) {
    const double t = step * 0.05;
    const auto r = run_cli({"pairs", "--corpus", path, "--threshold", fmt(t, 2)});
    if (r.code != 0) return {false, "pairs failed: " + r.err};
    std::set<std::string> current;
    std::istringstream in(r.out);
    for (std::string l; std::getline(in, l);) current.insert(l.substr(0, l.rfind('\t')));
    if (!first && !std::includes(previous.begin(), previous.end(), current.begin(), current.end())) monotone = false;
    previous = std::move(current);
    first = false;
  }
  return {self_exact && worst <= kSimilarityTolerance && bounded && monotone,
          "self-similarity exact: " + std::string(self_exact ? "yes" : "no") + ", " +
              std::to_string(kSimilarityPairs) + " pairs max |diff| = " + fmt(worst, 15) +
              ", bounded: " + (bounded ? "yes" : "no") + ", monotone over 20 thresholds: " +
              (monotone ? "yes" : "no")};
}

// ------------------------------------------------------------------------ 5

ml::Dataset to_dataset(const synth::PermissionCorpus& c, std::uint64_t seed) {
  ml::Dataset ds;
  for (const auto& r : c.records) {
    ds.stems.push_back(text::preprocess(r));
    ds.labels.push_back(r.label);
  }
  ds.fold_ids = ml::assign_folds(ds.labels.size(), kFoldParts, seed);
  return ds;
}

Outcome fold_protocol() {
  std::vector<int> incidence(kFoldParts, 0);
  bool rounds_ok = true;
  for (std::size_t r = 0; r < kFoldParts; ++r) {
    const auto parts = ml::test_parts_for_round(r, kFoldParts, kFoldTestParts);
    std::vector<std::uint32_t> want;
    for (std::size_t k = 0; k < kFoldTestParts; ++k) want.push_back(static_cast<std::uint32_t>((r + k) % kFoldParts));
    if (parts != want) rounds_ok = false;
    for (auto p : parts) ++incidence[p];
  }
  const bool incidence_ok = std::all_of(incidence.begin(), incidence.end(), [](int c) { return c == 3; });

  const auto corpus = synth::permission_corpus(kClassifierFunctions, kClassifierNoise, mix_seed(kSeed, 5));
  const auto ds = to_dataset(corpus, mix_seed(kSeed, 50));
  const auto report = ml::cross_validate(ds, ml::Algorithm::NaiveBayes, kSeed);
  const std::size_t n = ds.labels.size();
  std::size_t worst = 0;
  std::vector<int> tested(n, 0);
  for (const auto& r : report.rounds) {
    const auto test = r.test_indices.size();
    const auto dev_test = test > 3 * n / 10 ? test - 3 * n / 10 : 3 * n / 10 - test;
    const auto dev_train = r.train_size > 7 * n / 10 ? r.train_size - 7 * n / 10 : 7 * n / 10 - r.train_size;
    worst = std::max({worst, dev_test, dev_train});
    for (auto i : r.test_indices) ++tested[i];
  }
  const bool each_thrice = std::all_of(tested.begin(), tested.end(), [](int c) { return c == 3; });
  const bool pass = rounds_ok && incidence_ok && each_thrice && report.rounds.size() == kFoldParts &&
                    worst <= kFoldSizeSlack;
  return {pass, "rounds test parts {r,r+1,r+2}: " + std::string(rounds_ok ? "yes" : "no") +
                    ", every part tested 3 times: " + (incidence_ok ? "yes" : "no") +
                    ", every example tested 3 times: " + (each_thrice ? "yes" : "no") +
                    ", max size deviation " + std::to_string(worst) + " of " + std::to_string(n)};
}

// ------------------------------------------------------------------------ 6

Outcome classifier_sanity() {
  const auto corpus = synth::permission_corpus(kClassifierFunctions, kClassifierNoise, mix_seed(kSeed, 6));
  const auto ds = to_dataset(corpus, mix_seed(kSeed, 60));
  std::map<ml::Algorithm, ml::Metrics> avg;
  std::string failures;
  for (auto a : ml::all_algorithms()) {
    try {
      avg[a] = ml::cross_validate(ds, a, kSeed).average;
    } catch (const std::exception& e) {
      failures += " " + std::string(ml::algorithm_name(a)) + ": " + e.what();
    }
  }

  std::vector<bool> predicted, truth;
  std::vector<double> scores;
  const auto rule = features::KeywordRule::defaults();
  for (const auto& r : corpus.records) {
    const bool hit = features::keyword_predict(r, rule);
    predicted.push_back(hit);
    scores.push_back(hit ? 1.0 : 0.0);
    truth.push_back(r.label);
  }
  const auto baseline = ml::compute_metrics(predicted, scores, truth);

  if (!failures.empty()) return {false, "training failed:" + failures};
  const auto& tree = avg.at(ml::Algorithm::DecisionTree);
  const bool pass = tree.f_measure >= kMinTreeFMeasure && tree.auc >= kMinTreeAuc &&
                    baseline.f_measure < tree.f_measure && baseline.auc < tree.auc;
  std::string detail = "dtree F=" + fmt(tree.f_measure) + " AUC=" + fmt(tree.auc) + " (need >= " +
                       fmt(kMinTreeFMeasure, 2) + " / " + fmt(kMinTreeAuc, 2) + ");";
  for (const auto& [a, m] : avg) {
    if (a == ml::Algorithm::DecisionTree) continue;
    detail += " " + std::string(ml::algorithm_name(a)) + " F=" + fmt(m.f_measure) + " AUC=" + fmt(m.auc) + ";";
  }
  detail += " keyword baseline F=" + fmt(baseline.f_measure) + " AUC=" + fmt(baseline.auc) + "; " +
            std::to_string(corpus.relabeled) + " labels changed by noise";
  return {pass, detail};
}

// Symmetric flips instead of resampling: reported, not judged.
std::string classifier_flip_info() {
  const auto corpus = synth::permission_corpus_flipped(kClassifierFunctions, kClassifierNoise, mix_seed(kSeed, 6));
  const auto ds = to_dataset(corpus, mix_seed(kSeed, 60));
  const auto m = ml::cross_validate(ds, ml::Algorithm::DecisionTree, kSeed).average;
  return "dtree with 10% flipped labels: F=" + fmt(m.f_measure) + " AUC=" + fmt(m.auc);
}

// ------------------------------------------------------------------------ 7

Outcome auc_exactness() {
  Rng rng(mix_seed(kSeed, 7));
  int exact = 0;
  for (int trial = 0; trial < kAucSets; ++trial) {
    const std::size_t n = 2 + rng.below(kAucMaxN - 1);
    std::vector<double> scores;
    std::vector<bool> truth;
    std::vector<bool> predicted;
    const bool coarse = trial % 2 == 0;
    for (std::size_t i = 0; i < n; ++i) {
      scores.push_back(coarse ? static_cast<double>(rng.below(8)) / 7.0 : rng.unit());
      truth.push_back(rng.below(2) == 1);
      predicted.push_back(scores.back() >= 0.5);
    }
    truth[0] = true;
    truth[1] = false;
    const auto m = ml::compute_metrics(predicted, scores, truth);
    if (m.auc == oracle::pairwise_auc(scores, truth)) ++exact;
  }
  return {exact == kAucSets, std::to_string(exact) + "/" + std::to_string(kAucSets) + " sets exactly equal"};
}

// ------------------------------------------------------------------------ 8

Outcome porter_reference() {
  std::ifstream in(test_dir() + "/data/porter_reference.tsv");
  std::size_t total = 0, agree = 0;
  std::string wrong;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    const auto word = line.substr(0, tab), stem = line.substr(tab + 1);
    ++total;
    const auto got = text::porter_stem(word);
    if (got == stem) {
      ++agree;
    } else if (wrong.size() < 200) {
      wrong += " " + word + "->" + got;
    }
  }
  const bool running = text::porter_stem("running") == "run";
  return {total >= kPorterMinPairs && agree == total && running,
          std::to_string(agree) + "/" + std::to_string(total) + " reference stems, running -> " +
              text::porter_stem("running") + (wrong.empty() ? "" : "; wrong:" + wrong)};
}

// ------------------------------------------------------------------------ 9

Outcome diff_correctness() {
  std::uint64_t state = mix_seed(kSeed, 9);
  int reconstructed = 0, lcs_ok = 0, self_ok = 0;
  std::size_t longest = 0;
  for (int trial = 0; trial < kDiffCases; ++trial) {
    // An edit inserts at most six lines, so the base text leaves room for them.
    const auto a = synth::random_lines(state, kDiffMaxLines - 6, 12);
    const auto b = trial % 4 == 0 ? synth::random_lines(state, kDiffMaxLines, 12) : synth::random_edit(state, a, 12);
    const auto hunks = diff::lcs_diff(a, b);
    if (diff::reconstruct_a(hunks) == a && diff::reconstruct_b(hunks) == b && diff::apply_diff(a, hunks) == b &&
        diff::apply_rendered(a, diff::render_diff(hunks)) == b) {
      ++reconstructed;
    }
    const auto la = diff::split_lines(a), lb = diff::split_lines(b);
    longest = std::max({longest, la.size(), lb.size()});
    if (diff::common_line_count(hunks) == oracle::lcs_length(la, lb)) ++lcs_ok;
    const auto self = diff::lcs_diff(a, a);
    if (!diff::has_changes(self) && diff::reconstruct_b(self) == a) ++self_ok;
  }
  return {reconstructed == kDiffCases && lcs_ok == kDiffCases && self_ok == kDiffCases && longest <= kDiffMaxLines,
          "reconstruction " + std::to_string(reconstructed) + "/" + std::to_string(kDiffCases) + ", LCS length " +
              std::to_string(lcs_ok) + "/" + std::to_string(kDiffCases) + ", diff(x,x) clean " +
              std::to_string(self_ok) + "/" + std::to_string(kDiffCases) + ", longest input " +
              std::to_string(longest) + " lines"};
}

// ----------------------------------------------------------------------- 10

Outcome lineage_recovery(const TempDir& tmp) {
  const auto corpus = synth::lineage_corpus(mix_seed(kSeed, 10));
  std::set<std::string> creators;
  for (const auto& r : corpus.records) creators.insert(r.creator);
  std::map<std::string, std::string> source_of;
  for (const auto& r : corpus.records) source_of[r.address] = r.source;
  double min_shared = 1.0;
  for (const auto& [p, s] : corpus.planted) {
    min_shared = std::min(min_shared, synth::shared_token_fraction(source_of[p], source_of[s]));
  }

  const auto path = corpus_file(corpus.records, tmp.file("lineage.jsonl"));
  const auto r = run_cli({"pairs", "--corpus", path, "--threshold", fmt(kLineageThreshold, 1)});
  if (r.code != 0) return {false, "pairs failed: " + r.err};
  std::set<std::pair<std::string, std::string>> found;
  std::istringstream in(r.out);
  for (std::string l; std::getline(in, l);) {
    const auto t1 = l.find('\t'), t2 = l.find('\t', t1 + 1);
    found.emplace(l.substr(0, t1), l.substr(t1 + 1, t2 - t1 - 1));
  }
  std::size_t recovered = 0;
  for (const auto& p : corpus.planted) recovered += found.count(p);
  const std::set<std::string> unrelated(corpus.unrelated.begin(), corpus.unrelated.end());
  std::size_t false_pairs = 0;
  for (const auto& [p, s] : found) false_pairs += unrelated.count(p) && unrelated.count(s);
  // Background level: similarity between every two unrelated contracts.
  std::vector<double> background;
  for (std::size_t i = 0; i < corpus.unrelated.size(); ++i) {
    for (std::size_t j = i + 1; j < corpus.unrelated.size(); ++j) {
      background.push_back(
          lineage::source_similarity(source_of[corpus.unrelated[i]], source_of[corpus.unrelated[j]]));
    }
  }
  std::sort(background.begin(), background.end());
  const auto above = static_cast<std::size_t>(
      std::count_if(background.begin(), background.end(), [](double s) { return s > kLineageThreshold; }));

  const bool shape = corpus.records.size() == 20 && creators.size() == 6 && corpus.planted.size() == 4 &&
                     corpus.unrelated.size() == 10;
  return {shape && min_shared >= kLineageMinShared && recovered == corpus.planted.size() && false_pairs == 0,
          std::to_string(corpus.records.size()) + " contracts, " + std::to_string(creators.size()) +
              " creators; planted recovered " + std::to_string(recovered) + "/" +
              std::to_string(corpus.planted.size()) + " (min shared tokens " + fmt(min_shared, 3) +
              "); pairs among unrelated " + std::to_string(false_pairs) + "; " + std::to_string(found.size()) +
              " pairs total; unrelated background above threshold " + std::to_string(above) + "/" +
              std::to_string(background.size()) + ", median " + fmt(background[background.size() / 2], 3) +
              ", max " + fmt(background.back(), 3)};
}

// ----------------------------------------------------------------------- 11

Outcome determinism(const TempDir& tmp) {
  const auto corpus = synth::permission_corpus(600, kClassifierNoise, mix_seed(kSeed, 11));
  const auto data = tmp.file("functions.jsonl");
  {
    std::ofstream out(data);
    for (const auto& r : corpus.records) out << io::function_to_json(r).dump() << "\n";
  }
  const auto lineage = corpus_file(synth::lineage_corpus(mix_seed(kSeed, 10)).records, tmp.file("lineage.jsonl"));

  std::vector<std::pair<std::string, std::vector<std::string>>> commands;
  for (const std::string algo : {"dtree", "knn", "rf", "logreg", "nb"}) {
    commands.push_back({"eval " + algo, {"eval", data, "--algo", algo, "--seed", "7"}});
  }
  commands.push_back({"pairs", {"pairs", "--corpus", lineage, "--threshold", "0.3"}});
  commands.push_back({"pairs --normalize-identifiers", {"pairs", "--corpus", lineage, "--normalize-identifiers"}});
  std::string failing;
  for (const auto& [name, args] : commands) {
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    if (a.code != 0 || a.out != b.out || a.out.empty()) failing += " " + name;
  }
  for (const std::string algo : {"dtree", "rf", "logreg"}) {
    const auto m1 = tmp.file("m1_" + algo + ".json"), m2 = tmp.file("m2_" + algo + ".json");
    const auto a = run_cli({"train", data, "--algo", algo, "--seed", "7", "--out", m1});
    const auto b = run_cli({"train", data, "--algo", algo, "--seed", "7", "--out", m2});
    if (a.code != 0 || b.code != 0 || read_text(m1) != read_text(m2) || read_text(m1).empty()) {
      failing += " train " + algo;
    }
  }
  const std::size_t total = commands.size() + 3;
  return {failing.empty(), std::to_string(total) + " commands run twice" +
                               (failing.empty() ? ", all byte-identical" : "; differing:" + failing)};
}

}  // namespace

int main() {
  TempDir tmp;
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"ERC20 checker exactness on fixtures", erc20_fixtures},
      {"TF-IDF matches brute-force recount", tfidf_oracle},
      {"information gain matches joint-table oracle", ig_oracle},
      {"similarity formula", [&] { return similarity_formula(tmp); }},
      {"cross-validation protocol", fold_protocol},
      {"classifier sanity on synthetic corpus", classifier_sanity},
      {"AUC exactness", auc_exactness},
      {"Porter stemmer reference agreement", porter_reference},
      {"diff correctness", diff_correctness},
      {"lineage recovery", [&] { return lineage_recovery(tmp); }},
      {"determinism", [&] { return determinism(tmp); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i].check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("[%s] %2zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  try {
    std::printf("[INFO]    %s\n", classifier_flip_info().c_str());
  } catch (const std::exception& e) {
    std::printf("[INFO]    flip-noise run failed: %s\n", e.what());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed;
}
