#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdio>
#include <sys/wait.h>

#include "cuttana/metrics.hpp"
#include "cuttana/workbench.hpp"
#include "test_support.hpp"

using namespace cuttana;
using cuttana::testing::TempDir;
using cuttana::testing::read_text;
using cuttana::testing::write_text;
using ::testing::HasSubstr;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::string& args, const TempDir& dir) {
  const auto err_path = dir / "stderr.txt";
  const std::string cmd = std::string(CUTTANA_CLI) + " " + args + " 2>" + err_path.string();
  Outcome o;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return o;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
  const int status = ::pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.err = read_text(err_path);
  return o;
}

std::string small_graph(const TempDir& dir) {
  RmatParams p;
  p.scale = 9;
  p.edge_factor = 6;
  p.seed = 4;
  gen_rmat(p, dir / "g.txt");
  return (dir / "g.txt").string();
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  TempDir dir;
  EXPECT_EQ(run_cli("--help", dir).code, 0);
  EXPECT_EQ(run_cli("", dir).code, 1);
  EXPECT_EQ(run_cli("partition", dir).code, 1);
  EXPECT_EQ(run_cli("partition --input x --algo metis", dir).code, 1);
}

TEST(Cli, PartitionWritesMapsAndManifest) {
  TempDir dir;
  const std::string graph = small_graph(dir);
  const std::string out_dir = (dir / "out").string();
  const Outcome o = run_cli("partition --input " + graph + " --k 4 --subparts 16 --out-dir " + out_dir +
                                " --trade-log " + (dir / "trades.jsonl").string(),
                            dir);
  ASSERT_EQ(o.code, 0) << o.err;
  const auto manifest = nlohmann::json::parse(read_text(dir / "out" / "g.manifest.json"));
  EXPECT_EQ(nlohmann::json::parse(o.out), manifest);
  EXPECT_EQ(manifest["config"]["k"], 4);
  EXPECT_EQ(manifest["config"]["balance"], "edge");
  EXPECT_DOUBLE_EQ(manifest["config"]["epsilon"].get<double>(), 0.10);

  const auto parts = read_part_map(dir / "out" / "g.parts");
  const auto subparts = read_part_map(dir / "out" / "g.subparts");
  ASSERT_EQ(parts.size(), 512u);
  ASSERT_EQ(subparts.size(), 512u);
  GraphStream stream{std::filesystem::path(graph)};
  const QualityReport q = evaluate(stream, parts, 4);
  EXPECT_DOUBLE_EQ(manifest["quality"]["lambda_ec"].get<double>(), q.lambda_ec);
  EXPECT_EQ(manifest["quality"]["cut_edges"].get<std::uint64_t>(), q.cut_edges);

  const std::string trades = read_text(dir / "trades.jsonl");
  std::istringstream lines(trades);
  std::string line;
  std::uint64_t count = 0;
  while (std::getline(lines, line)) {
    const auto t = nlohmann::json::parse(line);
    EXPECT_GE(t["dec"].get<std::int64_t>(), 1);
    ++count;
  }
  EXPECT_EQ(count, manifest["refinement"]["trades"].get<std::uint64_t>());
}

TEST(Cli, EvaluateMatchesLibrary) {
  TempDir dir;
  write_text(dir / "c4.txt", "4 4\n2 4\n1 3\n2 4\n1 3\n");
  write_text(dir / "c4.parts", "1\n2\n1\n2\n");
  const Outcome o = run_cli("evaluate --input " + (dir / "c4.txt").string() + " --parts " +
                                (dir / "c4.parts").string() + " --k 2 --epsilon 0 --balance vertex",
                            dir);
  ASSERT_EQ(o.code, 0) << o.err;
  const auto doc = nlohmann::json::parse(o.out);
  EXPECT_DOUBLE_EQ(doc["lambda_ec"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(doc["lambda_cv"].get<double>(), 0.5);
  EXPECT_TRUE(doc["epsilon_check"]["ok"].get<bool>());
}

TEST(Cli, EvaluateRejectsShortMap) {
  TempDir dir;
  write_text(dir / "c4.txt", "4 4\n2 4\n1 3\n2 4\n1 3\n");
  write_text(dir / "short.parts", "1\n2\n");
  const Outcome o = run_cli("evaluate --input " + (dir / "c4.txt").string() + " --parts " +
                                (dir / "short.parts").string() + " --k 2",
                            dir);
  EXPECT_EQ(o.code, 2);
  EXPECT_THAT(o.err, HasSubstr("map covers 2 of 4 vertices"));
}

TEST(Cli, MalformedGraphIsInputError) {
  TempDir dir;
  write_text(dir / "bad.txt", "2 1\n3\n1\n");
  const Outcome o = run_cli("partition --input " + (dir / "bad.txt").string() + " --k 2 --out-dir " +
                                dir.path().string(),
                            dir);
  EXPECT_EQ(o.code, 2);
  EXPECT_THAT(o.err, HasSubstr("out of range"));
}

TEST(Cli, ConvertAndValidate) {
  TempDir dir;
  write_text(dir / "e.el", "1 2\n2 3\n3 1\n");
  ASSERT_EQ(run_cli("convert --input " + (dir / "e.el").string() + " --out " + (dir / "e.txt").string(), dir).code, 0);
  const Outcome v = run_cli("validate --input " + (dir / "e.txt").string(), dir);
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(v.out)["ok"].get<bool>());
  write_text(dir / "asym.txt", "2 1\n2\n\n");
  EXPECT_EQ(run_cli("validate --input " + (dir / "asym.txt").string(), dir).code, 2);
}

TEST(Cli, InfeasibleBalanceWarnsButSucceeds) {
  TempDir dir;
  write_text(dir / "star.txt", "4 3\n2 3 4\n1\n1\n1\n");
  const Outcome o = run_cli("partition --input " + (dir / "star.txt").string() + " --k 3 --epsilon 0 --out-dir " +
                                dir.path().string(),
                            dir);
  EXPECT_EQ(o.code, 0);
  EXPECT_THAT(o.err, HasSubstr("warning"));
  EXPECT_TRUE(nlohmann::json::parse(o.out)["violations"]["balance"].get<bool>());
}

TEST(Cli, SameSeedSameBytes) {
  TempDir dir;
  const std::string graph = small_graph(dir);
  for (const char* sub : {"a", "b"}) {
    ASSERT_EQ(run_cli("partition --input " + graph + " --k 4 --subparts 8 --seed 5 --out-dir " +
                          (dir / sub).string(),
                      dir)
                  .code,
              0);
  }
  EXPECT_EQ(read_text(dir / "a" / "g.parts"), read_text(dir / "b" / "g.parts"));
  EXPECT_EQ(read_text(dir / "a" / "g.subparts"), read_text(dir / "b" / "g.subparts"));
}

TEST(Cli, GenerateRejectsBadQuadrants) {
  TempDir dir;
  EXPECT_EQ(run_cli("generate --scale 4 --a 0.9 --out " + (dir / "r.txt").string(), dir).code, 1);
}
