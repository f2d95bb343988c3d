#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "txinfer/cli.hpp"

using namespace txinfer;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tx-infer");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string data(const std::string& f) { return oracle::data_path(f); }

}  // namespace

TEST(Cli, TypesAFile) {
  const auto r = cli({data("Fac.jtx"), "--emit", "signatures"});
  EXPECT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(r.out, "Fac.getFac : Integer -> Integer\n");
}

TEST(Cli, UntypableExitsWithOne) {
  const auto r = cli({data("Broken.jtx")});
  EXPECT_EQ(r.status, kExitUntypable);
  EXPECT_NE(r.err.find("error[Untypable]"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, MissingFileIsAConfigError) {
  const auto r = cli({data("does-not-exist.jtx")});
  EXPECT_EQ(r.status, kExitFrontEnd);
}

TEST(Cli, UnknownEmitTargetIsRejected) {
  EXPECT_EQ(cli({data("Fac.jtx"), "--emit", "bytecode"}).status, kExitFrontEnd);
}

TEST(Cli, BadTableIsRejected) {
  const auto dir = fs::temp_directory_path() / "txinfer_cli_table";
  fs::create_directories(dir);
  const auto table = dir / "bad.json";
  std::ofstream(table) << "[1, 2";
  EXPECT_EQ(cli({data("Fac.jtx"), "--table", table.string()}).status, kExitFrontEnd);
}

TEST(Cli, WritesOutputFiles) {
  const auto dir = fs::temp_directory_path() / "txinfer_cli_out";
  fs::remove_all(dir);
  const auto r = cli({data("OLFun.jtx"), "--emit", "typed-source,signatures,descriptors,funifaces", "-o",
                      dir.string()});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  for (const auto* suffix : {".typed.jtx", ".sigs.txt", ".desc.txt", ".funifaces.txt"}) {
    EXPECT_TRUE(fs::exists(dir / (std::string("OLFun") + suffix))) << suffix;
  }
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, SeveralInputsGetHeadersInOrder) {
  const auto r = cli({data("Fac.jtx"), data("Cycle.jtx"), "--emit", "signatures"});
  EXPECT_EQ(r.status, kExitOk);
  const auto a = r.out.find("Fac.jtx [signatures]");
  const auto b = r.out.find("Cycle.jtx [signatures]");
  ASSERT_NE(a, std::string::npos) << r.out;
  ASSERT_NE(b, std::string::npos) << r.out;
  EXPECT_LT(a, b);
}

TEST(Cli, WorstStatusWins) {
  EXPECT_EQ(cli({data("Fac.jtx"), data("Broken.jtx")}).status, kExitUntypable);
}

TEST(Cli, DumpStages) {
  const auto r = cli({data("TPHsToGenerics.jtx"), "--dump-stage", "generics"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_NE(r.out.find("cfgg:"), std::string::npos);
}

TEST(Cli, HelpExitsCleanly) {
  const auto r = cli({"--help"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_NE(r.out.find("--emit"), std::string::npos);
}
