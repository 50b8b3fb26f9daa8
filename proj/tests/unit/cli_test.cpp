#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "app.hpp"
#include "lifescope/dataset_io.hpp"
#include "synthetic.hpp"

using namespace lifescope;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& rel) { return std::string(LIFESCOPE_TEST_DIR) + "/fixtures/" + rel; }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lifescope_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write_dataset(std::size_t n) const {
    const auto corpus = synth::permission_corpus(n, 0.0, 3);
    const auto p = path("functions.jsonl");
    std::ofstream out(p);
    for (const auto& r : corpus.records) out << io::function_to_json(r).dump() << "\n";
    return p;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, UsageExitCodes) {
  EXPECT_EQ(run({}).code, cli::kUsageError);
  EXPECT_EQ(run({"--help"}).code, cli::kSuccess);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsageError);
  EXPECT_EQ(run({"check-erc20"}).code, cli::kUsageError);
  EXPECT_EQ(run({"check-erc20", "--format", "xml", fixture("erc20/matched_standard.sol")}).code,
            cli::kUsageError);
  EXPECT_EQ(run({"pairs"}).code, cli::kUsageError);
  EXPECT_EQ(run({"diff", fixture("diff/predecessor.sol")}).code, cli::kUsageError);
}

TEST_F(CliTest, MissingInputIsInputError) {
  const auto r = run({"check-erc20", fixture("erc20/does_not_exist.sol")});
  EXPECT_EQ(r.code, cli::kInputError);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  EXPECT_EQ(run({"eval", path("none.jsonl")}).code, cli::kInputError);
}

TEST_F(CliTest, CheckErc20TextAndJson) {
  const auto r = run({"check-erc20", fixture("erc20/matched_standard.sol"), fixture("erc20/mutated_approve.sol"),
                      fixture("erc20/four_functions.sol")});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto rows = lines_of(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NE(rows[0].find("\tMatched\tappeared=6 legal_func=6 legal_event=2"), std::string::npos);
  EXPECT_NE(rows[1].find("\tUnmatched\t"), std::string::npos);
  EXPECT_NE(rows[1].find("mismatch=approve:present_unmatched"), std::string::npos);
  EXPECT_NE(rows[2].find("\tNotErc20\t"), std::string::npos);

  const auto j = run({"check-erc20", "--format", "json", fixture("erc20/matched_standard.sol")});
  ASSERT_EQ(j.code, cli::kSuccess);
  const auto parsed = nlohmann::json::parse(j.out);
  EXPECT_EQ(parsed.at(0).at("verdict"), "Matched");
}

TEST_F(CliTest, ExtractLabelsModifierFunctions) {
  const auto r = run({"extract", fixture("solidity/lottery_example.sol")});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  std::map<std::string, bool> labels;
  for (const auto& l : lines_of(r.out)) {
    const auto rec = io::function_from_json(nlohmann::json::parse(l));
    labels[rec.name] = rec.label;
  }
  ASSERT_TRUE(labels.count("Selfdestructs"));
  ASSERT_TRUE(labels.count("getWinner"));
  EXPECT_TRUE(labels["Selfdestructs"]);
  EXPECT_FALSE(labels["getWinner"]);

  const auto deny = path("deny.txt");
  std::ofstream(deny) << "onlyOwner\n";
  const auto d = run({"extract", "--deny-modifiers", deny, fixture("solidity/lottery_example.sol")});
  ASSERT_EQ(d.code, cli::kSuccess) << d.err;
  for (const auto& l : lines_of(d.out)) EXPECT_FALSE(nlohmann::json::parse(l).at("label").get<bool>());
}

TEST_F(CliTest, DatasetAssignsFolds) {
  const auto data = write_dataset(50);
  const auto r = run({"dataset", data, "--seed", "9"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  std::istringstream in(r.out);
  const auto ds = io::parse_function_dataset(in);
  ASSERT_EQ(ds.records.size(), 50u);
  ASSERT_EQ(ds.folds.size(), 50u);
  std::vector<int> sizes(10, 0);
  for (auto f : ds.folds) ++sizes.at(f);
  for (int s : sizes) EXPECT_EQ(s, 5);
  EXPECT_EQ(run({"dataset", data, "--folds", "2"}).code, cli::kUsageError);
  const auto warn = run({"dataset", data, "--folds", "5"});
  EXPECT_EQ(warn.code, cli::kSuccess);
  EXPECT_NE(warn.err.find("warning"), std::string::npos);
}

TEST_F(CliTest, EvalTableShape) {
  const auto data = write_dataset(120);
  const auto r = run({"eval", data, "--algo", "dtree", "--seed", "1"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto rows = lines_of(r.out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], "algorithm: dtree");
  EXPECT_EQ(rows[1].rfind("metric\tR1\tR2", 0), 0u);
  EXPECT_NE(rows[1].find("\tR10\tAVG"), std::string::npos);
  EXPECT_EQ(rows[2].rfind("Precision\t", 0), 0u);
  EXPECT_EQ(rows[6].rfind("AUC\t", 0), 0u);
  EXPECT_EQ(run({"eval", data, "--algo", "svm"}).code, cli::kUsageError);

  const auto folded = path("folded.jsonl");
  ASSERT_EQ(run({"dataset", data, "--out", folded}).code, cli::kSuccess);
  EXPECT_EQ(run({"eval", folded, "--folds", "5"}).code, cli::kInputError);
  const auto j = run({"eval", folded, "--format", "json", "--algo", "nb"});
  ASSERT_EQ(j.code, cli::kSuccess) << j.err;
  EXPECT_EQ(nlohmann::json::parse(j.out).at("rounds").size(), 10u);
}

TEST_F(CliTest, TrainPredictPipeline) {
  const auto data = write_dataset(200);
  EXPECT_EQ(run({"train", data}).code, cli::kUsageError);
  const auto model = path("model.json");
  ASSERT_EQ(run({"train", data, "--algo", "dtree", "--out", model}).code, cli::kSuccess);
  ASSERT_TRUE(fs::exists(model));

  const auto sol = path("wallet.sol");
  std::ofstream(sol) << "contract W {\n function withdrawAll(address to) public { to.transfer(1); }\n"
                        " function readValue() public view returns (uint) { return 1; }\n}\n";
  const auto r = run({"predict", "--model", model, sol});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto rows = lines_of(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NE(rows[0].find("\twithdrawAll\tneeds-check\t"), std::string::npos);
  EXPECT_NE(rows[1].find("\treadValue\t"), std::string::npos);

  std::ofstream(path("broken.json")) << "{}";
  EXPECT_EQ(run({"predict", "--model", path("broken.json"), sol}).code, cli::kInputError);
  EXPECT_EQ(run({"predict", sol}).code, cli::kUsageError);
}

TEST_F(CliTest, IgAndBaseline) {
  const auto data = write_dataset(200);
  const auto r = run({"ig", data, "--top", "5"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto rows = lines_of(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], "rank\tword\tig\tn(w,t)\tn(w,~t)\tn(~w,t)\tn(~w,~t)");
  EXPECT_EQ(rows[1].rfind("1\t", 0), 0u);

  const auto b = run({"baseline", data});
  ASSERT_EQ(b.code, cli::kSuccess) << b.err;
  EXPECT_EQ(lines_of(b.out).size(), 5u);
  EXPECT_EQ(run({"baseline", data, "--keywords", path("none.txt")}).code, cli::kInputError);
}

TEST_F(CliTest, DiffFilesAndThresholdValidation) {
  const auto r = run({"diff", fixture("diff/predecessor.sol"), fixture("diff/successor.sol")});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  EXPECT_EQ(r.out.rfind("--- ", 0), 0u);
  EXPECT_NE(r.out.find("\n+        emit Transfer(msg.sender, to, value);\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n-        selfdestruct(owner);\n"), std::string::npos);

  const auto corpus = path("corpus.jsonl");
  std::ofstream(corpus) << "";
  EXPECT_EQ(run({"pairs", "--corpus", corpus, "--threshold", "0"}).code, cli::kUsageError);
  EXPECT_EQ(run({"pairs", "--corpus", corpus, "--threshold", "1.5"}).code, cli::kUsageError);
  const auto ok = run({"pairs", "--corpus", corpus});
  EXPECT_EQ(ok.code, cli::kSuccess) << ok.err;
  EXPECT_TRUE(ok.out.empty());
}

TEST_F(CliTest, OutputIsDeterministic) {
  const auto data = write_dataset(150);
  for (const std::string algo : {"dtree", "rf", "knn"}) {
    const auto a = run({"eval", data, "--algo", algo, "--seed", "5"});
    const auto b = run({"eval", data, "--algo", algo, "--seed", "5"});
    ASSERT_EQ(a.code, cli::kSuccess) << a.err;
    EXPECT_EQ(a.out, b.out) << algo;
  }
}
