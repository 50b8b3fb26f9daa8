#include "app.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "lifescope/corpus.hpp"
#include "lifescope/cross_validation.hpp"
#include "lifescope/dataset_io.hpp"
#include "lifescope/diffview.hpp"
#include "lifescope/erc20.hpp"
#include "lifescope/features.hpp"
#include "lifescope/lineage.hpp"
#include "lifescope/metrics.hpp"
#include "lifescope/ml.hpp"
#include "lifescope/solfront.hpp"
#include "lifescope/textprep.hpp"

namespace lifescope::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t seed = 42;
  double threshold = 0.6;
  std::size_t folds = 10;
  std::string algo = "dtree";
  std::string model;
  std::string out;
  std::string format = "text";
  std::size_t top = 50;
  bool ignore_blank = false;
  bool normalize_identifiers = false;
  std::string keywords;
  std::string deny_modifiers;
  std::string corpus;
  std::vector<std::string> inputs;
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string percent(double v) { return fixed(v * 100.0, 2) + "%"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> read_word_list(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    words.push_back(line.substr(first, last - first + 1));
  }
  return words;
}

void report(std::ostream& err, const std::string& file, const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) err << format_diagnostic(file, d) << "\n";
}

// Writes to --out when given, otherwise to the command's output stream.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + o.out);
  f << text;
}

std::vector<corpus::ContractRecord> load_corpus(const std::string& path, std::ostream& err) {
  corpus::LoadResult loaded;
  try {
    loaded = corpus::load_corpus(path);
  } catch (const corpus::CorpusError& e) {
    throw InputError(e.what());
  }
  report(err, path, loaded.diagnostics);
  if (!loaded.diagnostics.empty()) {
    err << path << ": skipped " << loaded.diagnostics.size() << " malformed record(s)\n";
  }
  return std::move(loaded.records);
}

io::FunctionDataset load_dataset(const Options& o, std::ostream& err) {
  if (o.inputs.size() != 1) throw UsageError("expected exactly one function-dataset file");
  io::FunctionDataset data;
  try {
    data = io::load_function_dataset(o.inputs.front());
  } catch (const io::FormatError& e) {
    throw InputError(e.what());
  }
  report(err, o.inputs.front(), data.diagnostics);
  if (data.records.empty()) throw InputError(o.inputs.front() + ": no usable function records");
  return data;
}

sol::ModifierDenyList deny_list(const Options& o) {
  sol::ModifierDenyList deny;
  if (!o.deny_modifiers.empty()) {
    for (auto& w : read_word_list(o.deny_modifiers)) deny.insert(std::move(w));
  }
  return deny;
}

ml::Algorithm algorithm(const Options& o) {
  auto a = ml::parse_algorithm(o.algo);
  if (!a) throw UsageError("unknown algorithm " + o.algo);
  return *a;
}

json metrics_json(const ml::Metrics& m) {
  return {{"precision", m.precision},
          {"recall", m.recall},
          {"f_measure", m.f_measure},
          {"accuracy", m.accuracy},
          {"auc", m.auc},
          {"confusion", {{"tp", m.confusion.tp}, {"tn", m.confusion.tn}, {"fp", m.confusion.fp}, {"fn", m.confusion.fn}}},
          {"warnings", m.warnings}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- check-erc20

int cmd_check_erc20(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<std::string, std::string>> sources;
  if (!o.corpus.empty()) {
    for (auto& r : load_corpus(o.corpus, err)) sources.emplace_back(r.address, std::move(r.source));
  }
  for (const auto& path : o.inputs) sources.emplace_back(path, read_file(path));
  if (sources.empty()) throw UsageError("check-erc20 needs source files or --corpus");

  json rows = json::array();
  for (const auto& [name, source] : sources) {
    auto parsed = sol::extract_units(source);
    report(err, name, parsed.diagnostics);
    const auto v = erc20::classify_erc20(erc20::scan_interface(parsed.units));
    json members = json::object();
    for (const auto& [member, status] : v.scan.per_member) members[member] = std::string(erc20::to_string(status));
    rows.push_back({{"source", name},
                    {"verdict", std::string(erc20::to_string(v.verdict))},
                    {"appeared_func", v.scan.appeared_func},
                    {"legal_func", v.scan.legal_func},
                    {"legal_event", v.scan.legal_event},
                    {"members", members}});
  }
  if (o.format == "json") {
    emit(o, out, dump(rows));
    return kSuccess;
  }
  std::string text;
  for (const auto& r : rows) {
    text += r["source"].get<std::string>() + "\t" + r["verdict"].get<std::string>() +
            "\tappeared=" + std::to_string(r["appeared_func"].get<int>()) +
            " legal_func=" + std::to_string(r["legal_func"].get<int>()) +
            " legal_event=" + std::to_string(r["legal_event"].get<int>());
    std::string off;
    for (const auto& [member, status] : r["members"].items()) {
      if (status != "matched" && status != "matched_via_variable") {
        off += (off.empty() ? "" : ",") + member + ":" + status.get<std::string>();
      }
    }
    if (!off.empty()) text += "\tmismatch=" + off;
    text += "\n";
  }
  emit(o, out, text);
  return kSuccess;
}

// -------------------------------------------------------------------- extract

std::vector<FunctionRecord> extract_all(const Options& o, std::ostream& err) {
  const auto deny = deny_list(o);
  std::vector<std::pair<std::string, std::string>> sources;
  if (!o.corpus.empty()) {
    for (auto& r : load_corpus(o.corpus, err)) sources.emplace_back(r.address, std::move(r.source));
  }
  for (const auto& path : o.inputs) sources.emplace_back(path, read_file(path));
  if (sources.empty()) throw UsageError("expected source files or --corpus");
  std::vector<FunctionRecord> records;
  for (const auto& [name, source] : sources) {
    std::vector<Diagnostic> diags;
    auto fns = sol::extract_functions(source, name, deny, &diags);
    report(err, name, diags);
    std::move(fns.begin(), fns.end(), std::back_inserter(records));
  }
  return records;
}

std::string dataset_lines(const std::vector<FunctionRecord>& records,
                          const std::vector<std::uint32_t>& folds) {
  std::string text;
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::optional<std::uint32_t> fold;
    if (!folds.empty()) fold = folds[i];
    text += io::function_to_json(records[i], fold).dump() + "\n";
  }
  return text;
}

int cmd_extract(const Options& o, std::ostream& out, std::ostream& err) {
  emit(o, out, dataset_lines(extract_all(o, err), {}));
  return kSuccess;
}

void check_folds(const Options& o, std::ostream& err) {
  if (o.folds < 3) throw UsageError("--folds must be at least 3");
  if (o.folds != 10) err << "warning: " << o.folds << " parts instead of the standard 10\n";
}

int cmd_dataset(const Options& o, std::ostream& out, std::ostream& err) {
  check_folds(o, err);
  std::vector<FunctionRecord> records;
  if (!o.corpus.empty()) {
    records = extract_all(o, err);
  } else {
    records = load_dataset(o, err).records;
  }
  emit(o, out, dataset_lines(records, ml::assign_folds(records.size(), o.folds, o.seed)));
  return kSuccess;
}

// ---------------------------------------------------------- train / predict

std::vector<std::vector<std::string>> stems_of(const std::vector<FunctionRecord>& records) {
  std::vector<std::vector<std::string>> stems;
  stems.reserve(records.size());
  for (const auto& r : records) stems.push_back(text::preprocess(r));
  return stems;
}

int cmd_train(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.out.empty()) throw UsageError("train needs --out");
  const auto algo = algorithm(o);
  const auto data = load_dataset(o, err);
  const auto stems = stems_of(data.records);
  auto vocab = text::Vocabulary::build(stems);
  std::vector<SparseVector> vectors;
  std::vector<bool> labels;
  for (std::size_t i = 0; i < stems.size(); ++i) {
    vectors.push_back(text::vectorize(stems[i], vocab));
    labels.push_back(data.records[i].label);
  }
  auto model = ml::train(algo, {vectors, labels}, vocab.size(), {}, o.seed);
  emit(o, out, io::model_to_json({std::move(vocab), std::move(model)}).dump() + "\n");
  return kSuccess;
}

int cmd_predict(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.model.empty()) throw UsageError("predict needs --model");
  if (o.inputs.empty()) throw UsageError("predict needs at least one source file");
  io::ModelFile file = [&] {
    try {
      return io::load_model(o.model);
    } catch (const io::FormatError& e) {
      throw InputError(e.what());
    }
  }();
  const auto deny = deny_list(o);
  json rows = json::array();
  for (const auto& path : o.inputs) {
    std::vector<Diagnostic> diags;
    const auto fns = sol::extract_functions(read_file(path), path, deny, &diags);
    report(err, path, diags);
    for (const auto& fn : fns) {
      const auto p = file.model.predict(text::vectorize(fn, file.vocab));
      rows.push_back({{"source", path}, {"function", fn.name}, {"label", p.label}, {"score", p.score},
                      {"modifiers", fn.modifiers}});
    }
  }
  if (o.format == "json") {
    emit(o, out, dump(rows));
    return kSuccess;
  }
  std::string text;
  for (const auto& r : rows) {
    text += r["source"].get<std::string>() + "\t" + r["function"].get<std::string>() + "\t" +
            (r["label"].get<bool>() ? "needs-check" : "no-check") + "\t" +
            fixed(r["score"].get<double>(), 6) + "\n";
  }
  emit(o, out, text);
  return kSuccess;
}

// ----------------------------------------------------------------------- eval

std::string eval_table(const ml::CvReport& report) {
  std::string text = "algorithm: " + std::string(ml::algorithm_name(report.algorithm)) + "\n";
  text += "metric";
  for (const auto& r : report.rounds) text += "\tR" + std::to_string(r.round + 1);
  text += "\tAVG\n";
  auto row = [&](const char* name, auto get) {
    text += name;
    for (const auto& r : report.rounds) text += "\t" + get(r.metrics);
    text += "\t" + get(report.average) + "\n";
  };
  row("Precision", [](const ml::Metrics& m) { return percent(m.precision); });
  row("Recall", [](const ml::Metrics& m) { return percent(m.recall); });
  row("F-Measure", [](const ml::Metrics& m) { return percent(m.f_measure); });
  row("Accuracy", [](const ml::Metrics& m) { return percent(m.accuracy); });
  row("AUC", [](const ml::Metrics& m) { return fixed(m.auc, 4); });
  return text;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const auto algo = algorithm(o);
  check_folds(o, err);
  auto data = load_dataset(o, err);
  ml::Dataset ds;
  ds.stems = stems_of(data.records);
  for (const auto& r : data.records) ds.labels.push_back(r.label);
  if (!data.folds.empty()) {
    const auto parts = *std::max_element(data.folds.begin(), data.folds.end()) + 1;
    if (parts != o.folds) {
      throw InputError("dataset has " + std::to_string(parts) + " parts but --folds is " + std::to_string(o.folds));
    }
    ds.fold_ids = data.folds;
  } else {
    ds.fold_ids = ml::assign_folds(ds.labels.size(), o.folds, o.seed);
  }
  ml::CvOptions cv;
  cv.parts = o.folds;
  const auto report = ml::cross_validate(ds, algo, o.seed, cv);
  for (const auto& r : report.rounds) {
    for (const auto& w : r.metrics.warnings) err << "warning: R" << r.round + 1 << ": " << w << "\n";
  }
  if (o.format == "json") {
    json rounds = json::array();
    for (const auto& r : report.rounds) {
      rounds.push_back({{"round", r.round + 1},
                        {"test_parts", r.test_parts},
                        {"train_size", r.train_size},
                        {"test_size", r.test_indices.size()},
                        {"vocab_size", r.vocab_size},
                        {"metrics", metrics_json(r.metrics)}});
    }
    emit(o, out, dump({{"algorithm", std::string(ml::algorithm_name(algo))},
                       {"seed", o.seed},
                       {"rounds", rounds},
                       {"average", metrics_json(report.average)}}));
    return kSuccess;
  }
  emit(o, out, eval_table(report));
  return kSuccess;
}

// ------------------------------------------------------------- ig / baseline

int cmd_ig(const Options& o, std::ostream& out, std::ostream& err) {
  const auto data = load_dataset(o, err);
  std::vector<bool> labels;
  for (const auto& r : data.records) labels.push_back(r.label);
  auto ranked = features::information_gain(stems_of(data.records), labels);
  if (o.top > 0 && ranked.size() > o.top) ranked.resize(o.top);
  if (o.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      const auto& e = ranked[i];
      rows.push_back({{"rank", i + 1}, {"word", e.word}, {"ig", e.ig},
                      {"counts", {e.counts.word_pos, e.counts.word_neg, e.counts.absent_pos, e.counts.absent_neg}}});
    }
    emit(o, out, dump(rows));
    return kSuccess;
  }
  std::string text = "rank\tword\tig\tn(w,t)\tn(w,~t)\tn(~w,t)\tn(~w,~t)\n";
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& e = ranked[i];
    text += std::to_string(i + 1) + "\t" + e.word + "\t" + fixed(e.ig, 6) + "\t" +
            std::to_string(e.counts.word_pos) + "\t" + std::to_string(e.counts.word_neg) + "\t" +
            std::to_string(e.counts.absent_pos) + "\t" + std::to_string(e.counts.absent_neg) + "\n";
  }
  emit(o, out, text);
  return kSuccess;
}

int cmd_baseline(const Options& o, std::ostream& out, std::ostream& err) {
  const auto data = load_dataset(o, err);
  features::KeywordRule rule = features::KeywordRule::defaults();
  if (!o.keywords.empty()) {
    try {
      rule = features::KeywordRule::load(o.keywords);
    } catch (const std::runtime_error& e) {
      throw InputError(e.what());
    }
  }
  std::vector<bool> predicted, truth;
  std::vector<double> scores;
  for (const auto& r : data.records) {
    const bool hit = features::keyword_predict(r, rule);
    predicted.push_back(hit);
    scores.push_back(hit ? 1.0 : 0.0);
    truth.push_back(r.label);
  }
  const auto m = ml::compute_metrics(predicted, scores, truth);
  for (const auto& w : m.warnings) err << "warning: " << w << "\n";
  if (o.format == "json") {
    emit(o, out, dump({{"keywords", rule.keywords}, {"metrics", metrics_json(m)}}));
    return kSuccess;
  }
  emit(o, out,
       "Precision\t" + percent(m.precision) + "\nRecall\t" + percent(m.recall) + "\nF-Measure\t" +
           percent(m.f_measure) + "\nAccuracy\t" + percent(m.accuracy) + "\nAUC\t" + fixed(m.auc, 4) + "\n");
  return kSuccess;
}

// --------------------------------------------------------------- pairs / diff

int cmd_pairs(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.corpus.empty()) throw UsageError("pairs needs --corpus");
  if (!(o.threshold > 0.0 && o.threshold <= 1.0)) throw UsageError("--threshold must be in (0, 1]");
  const auto groups = corpus::cluster_by_creator(load_corpus(o.corpus, err));
  lineage::PairOptions opts;
  opts.threshold = o.threshold;
  opts.embed.normalize_identifiers = o.normalize_identifiers;
  const auto pairs = lineage::find_ps_pairs(groups, opts);
  if (o.format == "json") {
    json rows = json::array();
    for (const auto& p : pairs) {
      rows.push_back({{"predecessor", p.predecessor.address}, {"successor", p.successor.address},
                      {"similarity", p.similarity}});
    }
    emit(o, out, dump(rows));
    return kSuccess;
  }
  std::string text;
  for (const auto& p : pairs) {
    text += p.predecessor.address + "\t" + p.successor.address + "\t" + fixed(p.similarity, 6) + "\n";
  }
  emit(o, out, text);
  return kSuccess;
}

int cmd_diff(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.inputs.size() != 2) throw UsageError("diff needs exactly two inputs");
  std::string a, b;
  if (!o.corpus.empty()) {
    std::map<std::string, std::string> by_address;
    for (auto& r : load_corpus(o.corpus, err)) by_address.emplace(r.address, std::move(r.source));
    auto lookup = [&](const std::string& addr) {
      const auto norm = corpus::normalize_address(addr);
      if (!norm) throw UsageError("not an address: " + addr);
      auto it = by_address.find(*norm);
      if (it == by_address.end()) throw InputError("address " + *norm + " not in corpus");
      return it->second;
    };
    a = lookup(o.inputs[0]);
    b = lookup(o.inputs[1]);
  } else {
    a = read_file(o.inputs[0]);
    b = read_file(o.inputs[1]);
  }
  diff::DiffOptions opts;
  opts.ignore_blank = o.ignore_blank;
  const auto hunks = diff::lcs_diff(a, b, opts);
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& h : hunks) {
      json lines = json::array();
      for (const auto& l : h.lines) lines.push_back({{"number", l.number}, {"text", l.text}});
      arr.push_back({{"kind", std::string(diff::to_string(h.kind))}, {"lines", lines}});
    }
    emit(o, out, dump({{"a", o.inputs[0]}, {"b", o.inputs[1]}, {"hunks", arr}}));
    return kSuccess;
  }
  emit(o, out, "--- " + o.inputs[0] + "\n+++ " + o.inputs[1] + "\n" + diff::render_diff(hunks, opts));
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contract lifecycle analysis: token conformance, permission prediction, lineage"};
  app.name("lifescope");
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "Write output to this file"); };
  auto add_corpus = [&](CLI::App* c) { c->add_option("--corpus", o.corpus, "Line-delimited contract corpus"); };
  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "Random seed"); };

  auto* check = app.add_subcommand("check-erc20", "Check token interface conformance");
  check->add_option("files", o.inputs, "Solidity source files");
  add_corpus(check);
  add_format(check);
  add_out(check);

  auto* extract = app.add_subcommand("extract", "Write the labeled function dataset");
  extract->add_option("files", o.inputs, "Solidity source files");
  add_corpus(extract);
  extract->add_option("--deny-modifiers", o.deny_modifiers, "Modifiers that are not permission checks");
  add_out(extract);

  auto* dataset = app.add_subcommand("dataset", "Assign cross-validation parts to a function dataset");
  dataset->add_option("dataset", o.inputs, "Function dataset file");
  add_corpus(dataset);
  dataset->add_option("--deny-modifiers", o.deny_modifiers, "Modifiers that are not permission checks");
  dataset->add_option("--folds", o.folds, "Number of parts");
  add_seed(dataset);
  add_out(dataset);

  auto* train = app.add_subcommand("train", "Train a permission classifier");
  train->add_option("dataset", o.inputs, "Function dataset file");
  train->add_option("--algo", o.algo, "dtree, knn, rf, logreg or nb");
  add_seed(train);
  add_out(train);

  auto* eval = app.add_subcommand("eval", "Cross-validate a classifier");
  eval->add_option("dataset", o.inputs, "Function dataset file");
  eval->add_option("--algo", o.algo, "dtree, knn, rf, logreg or nb");
  eval->add_option("--folds", o.folds, "Number of parts");
  add_seed(eval);
  add_format(eval);
  add_out(eval);

  auto* predict = app.add_subcommand("predict", "Predict which functions need a permission check");
  predict->add_option("files", o.inputs, "Solidity source files");
  predict->add_option("--model", o.model, "Model file written by train");
  predict->add_option("--deny-modifiers", o.deny_modifiers, "Modifiers that are not permission checks");
  add_format(predict);
  add_out(predict);

  auto* ig = app.add_subcommand("ig", "Rank words by information gain");
  ig->add_option("dataset", o.inputs, "Function dataset file");
  ig->add_option("--top", o.top, "Rows to print (0 for all)");
  add_format(ig);
  add_out(ig);

  auto* baseline = app.add_subcommand("baseline", "Score the keyword rule against dataset labels");
  baseline->add_option("dataset", o.inputs, "Function dataset file");
  baseline->add_option("--keywords", o.keywords, "Keyword file, one per line");
  add_format(baseline);
  add_out(baseline);

  auto* pairs = app.add_subcommand("pairs", "Find predecessor/successor contract pairs");
  add_corpus(pairs);
  pairs->add_option("--threshold", o.threshold, "Similarity cutoff (pairs above it are kept)");
  pairs->add_flag("--normalize-identifiers", o.normalize_identifiers, "Replace identifiers by positional names");
  add_format(pairs);
  add_out(pairs);

  auto* diff = app.add_subcommand("diff", "Line diff of two contracts");
  diff->add_option("inputs", o.inputs, "Two files, or two addresses with --corpus");
  add_corpus(diff);
  diff->add_flag("--ignore-blank", o.ignore_blank, "Ignore whitespace-only changes");
  add_format(diff);
  add_out(diff);

  const std::map<CLI::App*, int (*)(const Options&, std::ostream&, std::ostream&)> handlers = {
      {check, cmd_check_erc20}, {extract, cmd_extract}, {dataset, cmd_dataset}, {train, cmd_train},
      {eval, cmd_eval},         {predict, cmd_predict}, {ig, cmd_ig},           {baseline, cmd_baseline},
      {pairs, cmd_pairs},       {diff, cmd_diff}};

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    for (const auto& [sub, handler] : handlers) {
      if (sub->parsed()) return handler(o, out, err);
    }
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace lifescope::cli
