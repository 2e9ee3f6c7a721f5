#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "chbox/errors.hpp"
#include "commands.hpp"

using namespace chbox;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "chbox");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Field `column` of the first CSV data row with the given method.
double csv_field(const std::string& csv, const std::string& method, int column) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.rfind(method + ",", 0) != 0) continue;
    std::istringstream fields(line);
    std::string f;
    for (int i = 0; i <= column; ++i) std::getline(fields, f, ',');
    return std::stod(f);
  }
  ADD_FAILURE() << "no " << method << " row in\n" << csv;
  return 0.0;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("chbox_test_" + name);
}

}  // namespace

TEST(Cli, SolvePerturbation) {
  const CliRun r = run({"solve", "--method", "pt", "--radius", "1.0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(csv_field(r.out, "pt", 2), 3.15142, 1e-4);
}

TEST(Cli, SolveClampedNucleus) {
  const CliRun r = run({"solve", "--method", "cnc", "--radius", "2.0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(csv_field(r.out, "cnc", 2), -0.125, 2e-5);
}

TEST(Cli, SolveMovingNucleusWithFixedParameters) {
  const CliRun r = run({"solve", "--method", "mnc", "--radius", "1.0", "--fixed-params",
                     "beta=11.365,gamma=1.393"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(csv_field(r.out, "mnc", 2), 2.46468, 1e-3);
  EXPECT_EQ(csv_field(r.out, "mnc", 10), 11.365);
}

TEST(Cli, PrettyLayoutHasThreeRowsPerRadius) {
  const CliRun r = run({"solve", "--radius", "0.5", "--format", "pretty"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_NE(lines[1].find("pt"), std::string::npos);
  EXPECT_NE(lines[2].find("mnc"), std::string::npos);
  EXPECT_NE(lines[3].find("cnc"), std::string::npos);
  EXPECT_NE(lines[1].find("16.17781"), std::string::npos);
}

TEST(Cli, JsonOutput) {
  const CliRun r = run({"solve", "--method", "pt", "--radius", "1", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.front(), '[');
  EXPECT_NE(r.out.find("\"method\": \"pt\""), std::string::npos);
}

TEST(Cli, SweepRangeAndDeterminism) {
  const std::vector<std::string> args{"sweep",   "--method", "pt,cnc", "--r-min", "0.5",
                                      "--r-max", "1.5",      "--step", "0.25"};
  const CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream in(a.out);
  int lines = 0;
  for (std::string l; std::getline(in, l);) ++lines;
  EXPECT_EQ(lines, 1 + 5 * 2);
}

TEST(Cli, OutputFile) {
  const auto path = temp_file("out.csv");
  const CliRun r = run({"solve", "--method", "pt", "--radius", "1", "-o", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_NEAR(csv_field(ss.str(), "pt", 2), 3.15142, 1e-4);
  std::filesystem::remove(path);
}

TEST(Cli, ConfigFileWithCommandLinePrecedence) {
  const auto path = temp_file("config.toml");
  {
    std::ofstream f(path);
    f << "[solve]\nmethod = \"cnc\"\nradius = 2.0\nformat = \"json\"\n";
  }
  const CliRun from_file = run({"--config", path.string(), "solve"});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_NE(from_file.out.find("\"method\": \"cnc\""), std::string::npos);
  const CliRun overridden = run({"--config", path.string(), "solve", "--method", "pt"});
  ASSERT_EQ(overridden.code, 0) << overridden.err;
  EXPECT_NE(overridden.out.find("\"method\": \"pt\""), std::string::npos);
  EXPECT_EQ(overridden.out.find("\"method\": \"cnc\""), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsageError);
  EXPECT_EQ(run({"solve"}).code, cli::kUsageError);
  EXPECT_EQ(run({"solve", "--radius", "-1"}).code, cli::kUsageError);
  EXPECT_EQ(run({"solve", "--radius", "1", "--method", "dft"}).code, cli::kUsageError);
  EXPECT_EQ(run({"solve", "--radius", "1", "--format", "xml"}).code, cli::kUsageError);
  EXPECT_EQ(run({"sweep", "--r-min", "1", "--r-max", "2"}).code, cli::kUsageError);
  EXPECT_EQ(run({"sweep", "--r-min", "1", "--r-max", "2", "--step", "0"}).code, cli::kUsageError);
  EXPECT_EQ(run({"sweep", "--radius", "1", "--r-min", "1", "--r-max", "2", "--step", "1"}).code,
            cli::kUsageError);
  EXPECT_EQ(run({"reproduce", "table3"}).code, cli::kUsageError);
  EXPECT_EQ(run({"--help"}).code, cli::kSuccess);
}

TEST(Cli, MissingGoldenIsConfigurationError) {
  const CliRun r = run({"reproduce", "table1", "--golden-dir", "/nonexistent", "--rows", "1.0"});
  EXPECT_EQ(r.code, cli::kUsageError);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, NumericalFailureExitCode) {
  const CliRun dup = run({"solve", "--method", "cnc", "--radius", "1", "--cnc-terms", "40"});
  EXPECT_EQ(dup.code, cli::kNumericalFailure) << dup.err;
}

TEST(Cli, ReproduceTableOneSubset) {
  const CliRun r = run({"reproduce", "table1", "--rows", "0.6,1.0,5.0"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  int pt = 0, cnc = 0;
  while (std::getline(in, line)) {
    if (line.find(",pt,") != std::string::npos) ++pt;
    if (line.find(",cnc,") != std::string::npos) ++cnc;
    EXPECT_NE(line.find(",pass"), std::string::npos) << line;
  }
  EXPECT_EQ(pt, 10);
  EXPECT_EQ(cnc, 9);
}

TEST(Cli, ReproduceTableTwoDistances) {
  const CliRun r = run({"reproduce", "table2", "--rows", "1.0", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  for (const char* col : {"\"r_e\"", "\"r_n\""}) {
    const auto at = r.out.find(std::string("\"column\":") + col);
    ASSERT_NE(at, std::string::npos);
    EXPECT_NE(r.out.substr(at, 300).find("\"status\":\"pass\""), std::string::npos);
  }
}

TEST(Cli, ReproduceFlagsKnownTypo) {
  const CliRun r = run({"reproduce", "table1", "--rows", "0.9", "--format", "pretty"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("typo-excluded"), std::string::npos);
}

TEST(Cli, VirialAndBesselZeros) {
  const CliRun v = run({"virial", "--radius", "1,2"});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_NE(v.out.find("cnc,1,"), std::string::npos);
  const CliRun z = run({"bessel-zeros", "--l-max", "1", "--count", "1"});
  ASSERT_EQ(z.code, 0);
  EXPECT_EQ(z.out, "l,n,x\n0,1,3.1415926535897931\n1,1,4.4934094579090642\n");
  EXPECT_EQ(run({"virial", "--radius", "1", "--method", "pt"}).code, cli::kUsageError);
}

TEST(Cli, ParseExponents) {
  const Exponents e = cli::parse_exponents("gamma=2,beta=1.5");
  EXPECT_EQ(e.beta, 1.5);
  EXPECT_EQ(e.gamma, 2.0);
  EXPECT_EQ(e.alpha, 0.0);
  EXPECT_THROW(cli::parse_exponents("delta=1"), Error);
  EXPECT_THROW(cli::parse_exponents("beta=x"), Error);
  EXPECT_THROW(cli::parse_exponents("beta"), Error);
}
