#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "twistroot/cli.hpp"

using namespace twistroot;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome runCli(std::vector<std::string> args) {
  args.insert(args.begin(), "twistroot");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json runJson(const std::vector<std::string>& args) {
  const auto o = runCli(args);
  EXPECT_EQ(o.code, 0) << o.err;
  return Json::parse(o.out);
}

std::string sample(const std::string& name) { return std::string(TWISTROOT_SAMPLES) + "/" + name; }

}  // namespace

TEST(Cli, SexticRoot) {
  const auto j = runJson({"root", "--sextic-b", "43", "--t", "1", "--json"});
  EXPECT_EQ(j["W"], 1);
  EXPECT_EQ(j["oracle"], 1);
  EXPECT_EQ(j["parameter"], "43");
  const auto k = runJson({"root", "--sextic-b", "16", "--t", "43", "--json"});
  EXPECT_EQ(k["W"], -1);
  EXPECT_EQ(k["parameter"], "688");
}

TEST(Cli, JsonRoundTrip) {
  for (const char* t : {"1", "-35", "2000", "123456789012345678901"}) {
    const auto o = runCli({"root", "--quartic", "-49", "--t", t, "--json"});
    ASSERT_EQ(o.code, 0) << o.err;
    const Json j = Json::parse(o.out);
    const auto br = breakdownFromJson(j);
    EXPECT_EQ(br, rootNumberQuartic(-49, parseInteger(t)));
    Json again = toJson(br);
    again["oracle"] = j["oracle"];
    EXPECT_EQ(again, j);
  }
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"scan", "--sextic", "6", "--range", "-3000", "3000", "--json"};
  EXPECT_EQ(runCli(args).out, runCli(args).out);
  const std::vector<std::string> prof{"profile", "--quartic", "1", "--csv"};
  EXPECT_EQ(runCli(prof).out, runCli(prof).out);
}

TEST(Cli, QuadraticRoot) {
  const auto j = runJson({"root", "--quadratic", "-91", "182", "--t", "-5", "--json"});
  EXPECT_EQ(j["W"], -1);
  EXPECT_EQ(j["relative"]["C"], -1);
  const auto rel = runJson({"root", "--quadratic", "-1", "1", "--t", "73", "--json"});
  EXPECT_EQ(rel["relative"]["D2_source"], "local-square");
  const auto human = runCli({"root", "--quadratic", "-91", "182", "--t", "35"});
  EXPECT_EQ(human.code, 0);
  EXPECT_NE(human.out.find("W = +1"), std::string::npos) << human.out;
}

TEST(Cli, ProfileCsv) {
  const auto o = runCli({"profile", "--quartic", "1", "--csv"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.out.rfind("t_class,sq_class,sign,witness\n", 0), 0u);
  EXPECT_EQ(o.out.find("mixed"), std::string::npos);
}

TEST(Cli, ProfileModulusSearch) {
  const auto j = runJson({"profile", "--quartic", "1", "--modulus-search", "--json"});
  ASSERT_EQ(j["modulus_checks"].size(), 2u);
  EXPECT_EQ(j["modulus_checks"][0]["modulus"], 16);
  EXPECT_GT(j["modulus_checks"][0]["mixed"], 0);
  EXPECT_EQ(j["modulus_checks"][1]["mixed"], 0);
}

TEST(Cli, Constancy) {
  const auto j = runJson({"constancy", "--quadratic", "-91", "182", "--json"});
  EXPECT_EQ(j["overall"], "sign-determined");
  const auto k = runJson({"constancy", "--quadratic", "-3", "127", "--json"});
  EXPECT_EQ(k["overall"], "not-sign-determined");
  EXPECT_EQ(k["flip_witness"]["relative"]["C"], -1);
}

TEST(Cli, Scan) {
  const auto j = runJson({"scan", "--quadratic", "-91", "182", "--range", "1", "100", "--json"});
  EXPECT_EQ(j["minus"]["count"], 0);
  EXPECT_GT(j["plus"]["count"], 0);
}

TEST(Cli, AuditWithTable) {
  const auto good = runCli({"audit", "--quadratic", "-91", "182", "--local-table",
                            sample("e1plus.table"), "--bound", "500"});
  EXPECT_EQ(good.code, 0) << good.out << good.err;

  const std::string bad = ::testing::TempDir() + "/flipped.table";
  std::ofstream(bad) << "rootnum-local-table 1\n"
                        "2, 1, 4, 0, 1 -> -1\n2, 1, 4, 0, 3 -> +1\n";
  const auto flipped = runCli({"audit", "--quadratic", "-91", "182", "--local-table", bad,
                               "--bound", "200", "--json"});
  EXPECT_EQ(flipped.code, 3);
  EXPECT_FALSE(Json::parse(flipped.out)["table_discrepancies"].empty());
}

TEST(Cli, DomainErrors) {
  auto expectError = [](std::vector<std::string> args, const std::string& kind) {
    const auto o = runCli(std::move(args));
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.err.find(kind), std::string::npos) << o.err;
  };
  expectError({"root", "--sextic", "1", "--t", "0"}, "zero-input");
  expectError({"root", "--quadratic", "-3", "2", "--t", "5"}, "singular-curve");
  expectError({"root", "--quadratic", "-1", "1", "--t", "5"}, "insufficient-local-data");
  expectError({"profile", "--sextic", "1", "--bound", "1000"}, "scan-bound-too-small");
  expectError({"root", "--quadratic", "-91", "182", "--t", "5", "--local-table", "/nonexistent"},
              "invalid-argument");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(runCli({}).code, 2);
  EXPECT_EQ(runCli({"root", "--t", "5"}).code, 2);
  EXPECT_EQ(runCli({"root", "--sextic", "1", "--quartic", "1", "--t", "5"}).code, 2);
  EXPECT_EQ(runCli({"root", "--sextic", "x", "--t", "5"}).code, 2);
  EXPECT_EQ(runCli({"bogus"}).code, 2);
  EXPECT_EQ(runCli({"--help"}).code, 0);
}
