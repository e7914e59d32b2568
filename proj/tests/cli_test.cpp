#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ahp/io.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run ahp_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ahp");
  std::ostringstream out, err;
  const int code = ahp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ahp_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir_);
    for (const char* f : {"bank_study.json", "office_study.json"})
      fs::copy_file(fs::path(AHP_DATA_DIR) / f, dir_ / f);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const ahp::Study& s) const {
    ahp::write_study_file(dir_ / name, s);
    return path(name);
  }

  fs::path dir_;
};

ahp::Study consistent_single() {
  ahp::Study s;
  s.hierarchy = {"goal", {"a", "b", "c"}, {}};
  ahp::JudgmentSet j{"solo", "", {}, ""};
  j.matrices.emplace("goal", ahp::PairwiseMatrixd::from_upper_triangle(
                                 3, {{0, 1, 2.0}, {0, 2, 4.0}, {1, 2, 2.0}}, {"a", "b", "c"}));
  s.judgments.push_back(j);
  return s;
}

}  // namespace

TEST_F(CliTest, HelpAndUsage) {
  const auto help = ahp_cli({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("synthesize"), std::string::npos);
  EXPECT_NE(help.out.find("Flags override"), std::string::npos);
  EXPECT_EQ(ahp_cli({}).code, ahp::cli::kExitValidation);
  EXPECT_EQ(ahp_cli({"priorities"}).code, ahp::cli::kExitValidation);
  EXPECT_EQ(ahp_cli({"priorities", "--study", path("office_study.json"), "--method", "median"}).code,
            ahp::cli::kExitValidation);
}

TEST_F(CliTest, ValidateReportsCounts) {
  const auto r = ahp_cli({"validate", "--study", path("office_study.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("respondents 4"), std::string::npos);
  EXPECT_NE(r.out.find("matrices 16"), std::string::npos);
}

TEST_F(CliTest, ValidateFailures) {
  {
    std::ofstream(path("broken.json")) << R"({"schema_version": 1, "hierarchy": {"goal": "g"}})";
  }
  const auto bad = ahp_cli({"validate", "--study", path("broken.json")});
  EXPECT_EQ(bad.code, ahp::cli::kExitValidation);
  EXPECT_NE(bad.err.find("/hierarchy/criteria"), std::string::npos);
  EXPECT_TRUE(bad.out.empty());
  EXPECT_EQ(ahp_cli({"validate", "--study", path("absent.json")}).code, ahp::cli::kExitInternal);
}

TEST_F(CliTest, PrioritiesConsistentRespondent) {
  const auto study = write("single.json", consistent_single());
  const auto r = ahp_cli({"priorities", "--study", study});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0.571"), std::string::npos);
  EXPECT_NE(r.out.find("0.286"), std::string::npos);
  EXPECT_NE(r.out.find("0.143"), std::string::npos);
  EXPECT_NE(r.out.find(" 0.000  yes"), std::string::npos) << r.out;

  const auto geo = ahp_cli({"priorities", "--study", study, "--method", "geometric"});
  EXPECT_EQ(geo.out, r.out);
}

TEST_F(CliTest, PrioritiesUnknownNode) {
  const auto r = ahp_cli({"priorities", "--study", path("office_study.json"), "--node", "basement"});
  EXPECT_EQ(r.code, ahp::cli::kExitValidation);
  EXPECT_NE(r.err.find("unknown node"), std::string::npos);
}

TEST_F(CliTest, PrioritiesWritesJson) {
  const auto out = path("prio.json");
  const auto r = ahp_cli({"priorities", "--study", path("office_study.json"), "--out", out});
  ASSERT_EQ(r.code, 0);
  std::ifstream in(out);
  const auto doc = ahp::json::parse(in);
  EXPECT_EQ(doc["respondents"].size(), 4u);
  EXPECT_EQ(doc["respondents"][2]["consistency"]["accepted"], false);
}

TEST_F(CliTest, AggregateCountsAndThreshold) {
  const auto r = ahp_cli({"aggregate", "--study", path("office_study.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("accepted: 3 of 4"), std::string::npos);
  EXPECT_NE(r.out.find("rejected: 1"), std::string::npos);

  const auto all = ahp_cli({"aggregate", "--study", path("office_study.json"), "--threshold", "1.0"});
  EXPECT_NE(all.out.find("accepted: 4 of 4"), std::string::npos);
}

TEST_F(CliTest, AggregateEmptyPanel) {
  ahp::Study s;
  s.hierarchy = {"goal", {"a", "b"}, {}};
  const auto r = ahp_cli({"aggregate", "--study", write("empty.json", s)});
  EXPECT_EQ(r.code, ahp::cli::kExitValidation);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, SynthesizeBankStudy) {
  const auto out = path("report.json");
  const auto r = ahp_cli({"synthesize", "--study", path("bank_study.json"), "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("   1  NB1          0.066\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("Group means"), std::string::npos);
  std::ifstream in(out);
  const auto doc = ahp::json::parse(in);
  EXPECT_NEAR(doc["scores"]["scores"]["NB1"].get<double>(), 0.065563, 1e-12);
  EXPECT_EQ(doc["rollup"]["groups"].size(), 8u);
}

TEST_F(CliTest, SynthesizeWithoutAlternatives) {
  auto s = consistent_single();
  const auto r = ahp_cli({"synthesize", "--study", write("weights_only.json", s)});
  EXPECT_EQ(r.code, ahp::cli::kExitValidation);
  EXPECT_NE(r.err.find("no alternatives"), std::string::npos);
}

TEST_F(CliTest, RiEstimateNeedsSeedAndIsDeterministic) {
  EXPECT_EQ(ahp_cli({"ri-estimate", "--order", "4", "--samples", "2000"}).code, ahp::cli::kExitValidation);
  EXPECT_EQ(ahp_cli({"ri-estimate", "--samples", "2000", "--seed", "1"}).code, ahp::cli::kExitValidation);
  const auto a = ahp_cli({"ri-estimate", "--max-order", "5", "--samples", "2000", "--seed", "3"});
  const auto b = ahp_cli({"ri-estimate", "--max-order", "5", "--samples", "2000", "--seed", "3",
                          "--threads", "2", "--out", path("ri.json")});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::ifstream in(path("ri.json"));
  const auto table = ahp::random_index_table_from_json(ahp::json::parse(in));
  EXPECT_EQ(table.values().size(), 5u);
}

TEST_F(CliTest, DelphiRoundTripThroughTheStudyFile) {
  const auto study = path("bank_study.json");
  EXPECT_EQ(ahp_cli({"delphi", "open", "--study", study}).code, 0);
  EXPECT_EQ(ahp_cli({"delphi", "vote", "--study", study, "--expert", "NB1", "--items", "i01,i02",
                     "--comment", "finance first"})
                .code,
            0);
  EXPECT_EQ(ahp_cli({"delphi", "vote", "--study", study, "--expert", "GB1", "--items", "i01"}).code, 0);
  const auto unknown = ahp_cli({"delphi", "vote", "--study", study, "--expert", "ZZ9", "--items", "i01"});
  EXPECT_EQ(unknown.code, ahp::cli::kExitValidation);

  const auto closed = ahp_cli({"delphi", "close", "--study", study});
  ASSERT_EQ(closed.code, 0) << closed.err;
  EXPECT_NE(closed.out.find("retained 2"), std::string::npos);

  const auto status = ahp_cli({"delphi", "status", "--study", study});
  EXPECT_NE(status.out.find("round 1 closed voters 2 retained 2"), std::string::npos) << status.out;

  const auto s = ahp::read_study_file(study);
  ASSERT_EQ(s.rounds.size(), 1u);
  EXPECT_EQ(s.rounds[0].comments, (std::vector<std::string>{"finance first"}));
  EXPECT_EQ(ahp_cli({"delphi", "vote", "--study", study, "--expert", "NB1", "--items", "i01"}).code,
            ahp::cli::kExitValidation);
}

TEST_F(CliTest, ImportCsvMergesJudgments) {
  {
    std::ofstream(path("extra.csv")) << "respondent,group,node,first,second,side,magnitude\n"
                                        "erin,ops,cost,north,south,first,2\n";
  }
  const auto r = ahp_cli({"import", "--study", path("office_study.json"), "--csv", path("extra.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto s = ahp::read_study_file(path("office_study.json"));
  EXPECT_EQ(s.judgments.size(), 5u);
  EXPECT_EQ(s.judgments.back().respondent_id, "erin");
}
