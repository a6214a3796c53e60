#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(QBALL_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, Graph) {
  auto r = run("graph --n 2");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["vertices"].size(), 3u);
  EXPECT_EQ(j["edges"].size(), 5u);
  r = run("graph --n 1");
  EXPECT_EQ(nlohmann::json::parse(r.out)["edges"].size(), 2u);
  EXPECT_EQ(run("graph --n 0").code, 2);
}

TEST(Cli, GraphImportRoundTrips) {
  const std::string path = testing::TempDir() + "qball_graph.json";
  ASSERT_EQ(run("graph --n 3 --out " + path).code, 0);
  const auto r = run("graph --from " + path);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, run("graph --n 3").out);
  std::ofstream(path) << "{broken";
  EXPECT_EQ(run("graph --from " + path).code, 2);
}

TEST(Cli, Paths) {
  const auto r = run("paths --n 2 --cutoff 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 16u);
  EXPECT_EQ(r.out.substr(0, 3), "v0\n");
  EXPECT_NE(r.out.find("\na^0 c b^0 e\n"), std::string::npos);
}

TEST(Cli, Reduce) {
  EXPECT_EQ(run("reduce --n 1 \"S[e]* S[e]\"").out, "P[v0]\n");
  EXPECT_EQ(run("reduce --n 2 \"S[b] S[b]* S[e]\"").out, "0\n");
  EXPECT_EQ(run("reduce --n 1 \"\"").out, "P[v0] + P[v1]\n");
  EXPECT_EQ(run("reduce --n 1 \"S[q]\"").code, 2);
}

TEST(Cli, VerifyExitCodesAndDeterminism) {
  const auto a = run("verify --n 2 --q 0.5 --cutoff 6 --tol 1e-12");
  EXPECT_EQ(a.code, 0);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_GT(j["checks"].size(), 100u);
  EXPECT_EQ(run("verify --n 2 --q 0.5 --cutoff 6 --tol 1e-12").out, a.out);

  const auto disc = nlohmann::json::parse(run("verify --n 1 --suite ball").out);
  bool saw_qrel = false;
  for (const auto& c : disc["checks"])
    if (c["id"] == "q=0.5/pi/ball.qrel[x1]") saw_qrel = c["pass"].get<bool>();
  EXPECT_TRUE(saw_qrel);

  EXPECT_EQ(run("verify --n 2 --q 1.5").code, 2);
  EXPECT_EQ(run("verify --n 2 --cutoff 1").code, 2);
  EXPECT_EQ(run("verify --n 2 --suite bogus").code, 2);
  EXPECT_EQ(run("verify --n 2 --bogus").code, 2);
  // a tolerance below rounding noise makes some checks fail
  EXPECT_EQ(run("verify --n 2 --suite ball --tol 1e-300").code, 1);
}

TEST(Cli, VerifyNdjson) {
  const auto r = run("verify --n 1 --suite ck --format ndjson");
  ASSERT_EQ(r.code, 0);
  EXPECT_GT(lines(r.out), 0u);
  EXPECT_EQ(nlohmann::json::parse(r.out.substr(0, r.out.find('\n')))["n"], 1);
}

TEST(Cli, OperatorExport) {
  const auto r = run("operator --n 1 --cutoff 2 --z 1 --q 0.5");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 3u);
  EXPECT_EQ(run("operator --n 1 --cutoff 2 --word \"S[e]\"").out, "1 0 1 0\n");
  EXPECT_EQ(run("operator --n 1 --cutoff 2").code, 2);
}
