#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "parem/dfa.hpp"
#include "test_support.hpp"

namespace parem {
namespace {

namespace fs = std::filesystem;

struct Result {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("parem_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  void write(const std::string& name, const std::string& contents) const {
    std::ofstream(path(name), std::ios::binary) << contents;
  }

  Result run(const std::string& args, const std::string& env = "") const {
    const fs::path err = path("stderr.txt");
    const std::string cmd = env + " '" PAREM_CLI "' " + args + " 2>'" + err.string() + "'";
    Result r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = ::pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    return r;
  }

  fs::path dir_;
};

TEST_F(Cli, CompileLiteralWritesTheTable) {
  const Result r = run("compile --literal parallel --alphabet parel -o '" +
                       path("t.tsv").string() + "'");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("states: 9"), std::string::npos);
  EXPECT_NE(r.out.find("complete: true"), std::string::npos);
  EXPECT_EQ(load_dfa_table(slurp(path("t.tsv"))), testing::parallel_search_dfa());
}

TEST_F(Cli, CompileRegexToStdoutWithDot) {
  const Result r = run("compile --regex '(a|b)?c*[0..3]b+' --dot '" + path("g.dot").string() + "'");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(load_dfa_table(r.out), compile_regex("(a|b)?c*[0..3]b+"));
  EXPECT_NE(r.err.find("alphabet: abc0123"), std::string::npos);
  EXPECT_NE(r.err.find("complete: false"), std::string::npos);
  EXPECT_TRUE(slurp(path("g.dot")).starts_with("digraph"));
}

TEST_F(Cli, MatchWorkedExample) {
  write("in.txt", testing::kWorkedExample);
  const std::string in = " -i '" + path("in.txt").string() + "'";
  const Result parem = run("match --literal parallel --alphabet parel --threads 4" + in);
  ASSERT_EQ(parem.exit_code, 0) << parem.err;
  EXPECT_NE(parem.out.find("count: 1\n"), std::string::npos);
  EXPECT_NE(parem.out.find("end_state: 0\n"), std::string::npos);
  EXPECT_NE(parem.out.find("routes: 6\n"), std::string::npos);
  EXPECT_NE(parem.out.find("time_ms: "), std::string::npos);

  const Result en = run("match --literal parallel --alphabet parel --engine enum --threads 4" + in);
  EXPECT_NE(en.out.find("routes: 28\n"), std::string::npos);
  EXPECT_NE(en.out.find("count: 1\n"), std::string::npos);

  const Result acc = run("match --literal parallel --alphabet parel --engine seq --mode accept" + in);
  EXPECT_NE(acc.out.find("accepted: false\n"), std::string::npos);
}

TEST_F(Cli, MatchTrace) {
  write("in.txt", testing::kWorkedExample);
  const Result r = run("match --literal parallel --alphabet parel --threads 4 --trace -i '" +
                       path("in.txt").string() + "'");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("from 7: 8 0 1 2 3 0"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("from 1: 2 3 4 5 6 7"), std::string::npos) << r.out;
}

TEST_F(Cli, MatchFromCompiledTable) {
  write("in.txt", "parallelparallel");
  ASSERT_EQ(run("compile --literal parallel --alphabet parel -o '" + path("t.tsv").string() + "'")
                .exit_code, 0);
  const Result r = run("match --dfa '" + path("t.tsv").string() + "' --threads 3 -i '" +
                       path("in.txt").string() + "'");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("count: 2\n"), std::string::npos);
  EXPECT_NE(r.out.find("end_state: 8\n"), std::string::npos);
}

TEST_F(Cli, GenIsReproducible) {
  const Result a = run("gen --length 500 --alphabet parel --seed 9 --plant parallel --occurrences 3");
  const Result b = run("gen --length 500 --alphabet parel --seed 9 --plant parallel --occurrences 3");
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out.size(), 500u);
  EXPECT_EQ(a.out, b.out);
  EXPECT_GE(testing::count_substring(a.out, "parallel"), 3u);
}

TEST_F(Cli, BenchWritesCsv) {
  const Result r = run("bench --threads 1,2 --lengths 2000 --reps 2 -o '" +
                       path("b.csv").string() + "'");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const std::string csv = slurp(path("b.csv"));
  EXPECT_TRUE(csv.starts_with("engine,threads,input_length,"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
}

TEST_F(Cli, InputErrorsExitTwo) {
  write("in.txt", "parxllel");
  const std::string in = " -i '" + path("in.txt").string() + "'";
  const Result bad_symbol = run("match --literal parallel --alphabet parel" + in);
  EXPECT_EQ(bad_symbol.exit_code, 2);
  EXPECT_NE(bad_symbol.err.find("SymbolNotInAlphabet"), std::string::npos) << bad_symbol.err;
  EXPECT_EQ(run("compile --regex 'a||b'").exit_code, 2);
  EXPECT_EQ(run("compile --literal pax --alphabet parel").exit_code, 2);
  EXPECT_EQ(run("gen --length 4 --alphabet ab --plant abc --occurrences 2").exit_code, 2);
  EXPECT_EQ(run("match --engine warp --literal a --alphabet a" + in).exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);
  write("bad.tsv", "symbols\ta\nstart\t0\n");
  EXPECT_EQ(run("match --dfa '" + path("bad.tsv").string() + "'" + in).exit_code, 2);
}

TEST_F(Cli, IoErrorsExitOne) {
  const Result r = run("match --literal a --alphabet a -i '" + path("missing.txt").string() + "'");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("parem: error:"), std::string::npos);
  EXPECT_EQ(run("compile --literal a --alphabet a -o '" + path("no/such/dir/t.tsv").string() + "'")
                .exit_code, 1);
}

TEST_F(Cli, StateCapFromEnvironment) {
  const std::string regex = "compile --regex '(a|b)*a(a|b)(a|b)(a|b)'";
  EXPECT_EQ(run(regex).exit_code, 0);
  const Result capped = run(regex, "PAREM_MAX_DFA_STATES=4");
  EXPECT_EQ(capped.exit_code, 2);
  EXPECT_NE(capped.err.find("StateExplosion"), std::string::npos) << capped.err;
  EXPECT_EQ(run(regex + " --max-dfa-states 4").exit_code, 2);
}

}  // namespace
}  // namespace parem
