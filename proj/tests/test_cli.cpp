#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "twi/cli.hpp"
#include "twi/dimacs.hpp"
#include "twi/instance_gen.hpp"
#include "twi/report.hpp"

using namespace twi;
using namespace twi::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "twi");
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("twi_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(file(name)) << text;
    return file(name);
  }
  std::string graph(const std::string& name, const Graph& g) const {
    std::ostringstream s;
    write_dimacs_graph(s, g);
    return write(name, s.str());
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("a tree needs no deletions") {
    TempDir dir;
    const std::string in = dir.graph("tree.gr", path_graph(6));
    const Run r = run({"interdict", "--input", in, "--w", "2"});
    REQUIRE(r.code == kExitOk);
    const Json doc = Json::parse(r.out);
    CHECK(doc["command"] == "interdict");
    CHECK(doc["schema_version"] == kSchemaVersion);
    CHECK(doc["result"]["F"].empty());
    const std::string report = dir.write("tree.json", r.out);
    const Run v = run({"verify", "--input", in, "--report", report});
    CHECK(v.code == kExitOk);
  }

  TEST_CASE("a tampered decomposition names the uncovered edge") {
    TempDir dir;
    const std::string in = dir.graph("p3.gr", path_graph(3));
    const std::string bad = dir.write("bad.json", R"({"bags": [[1, 2], [3]], "parent": [-1, 0]})");
    const Run r = run({"verify", "--input", in, "--decomposition", bad});
    CHECK(r.code == kExitSolverFailure);
    CHECK(r.err.find("edge 2 3") != std::string::npos);
    const std::string good = dir.write("good.json", R"({"bags": [[1, 2], [2, 3]], "parent": [-1, 0]})");
    CHECK(run({"verify", "--input", in, "--decomposition", good}).code == kExitOk);
  }

  TEST_CASE("independent set reports verify") {
    TempDir dir;
    const std::string in = dir.file("grid.gr");
    REQUIRE(run({"gen", "grid", "--k", "5", "--delta", "0.1", "--seed", "4", "--out", in}).code == kExitOk);
    const std::string report = dir.file("mis.json");
    REQUIRE(run({"mis", "--input", in, "--preset", "fast", "--out", report}).code == kExitOk);
    CHECK(run({"verify", "--input", in, "--report", report}).code == kExitOk);

    // Claiming one more vertex than the set holds is caught.
    Json doc = Json::parse(slurp(report));
    doc["result"]["objective"] = doc["result"]["objective"].get<int>() + 1;
    const std::string forged = dir.write("forged.json", doc.dump());
    const Run v = run({"verify", "--input", in, "--report", forged});
    CHECK(v.code == kExitSolverFailure);
  }

  TEST_CASE("maxsat and bsi reports verify") {
    TempDir dir;
    const std::string cnf = dir.file("f.cnf");
    REQUIRE(run({"gen", "cnf", "--n", "12", "--m", "10", "--arity", "3", "--delta", "0.2", "--seed", "2",
                 "--out", cnf})
                .code == kExitOk);
    const Run sat = run({"maxsat", "--input", cnf, "--w", "2"});
    REQUIRE(sat.code == kExitOk);
    CHECK(run({"verify", "--input", cnf, "--report", dir.write("sat.json", sat.out)}).code == kExitOk);

    const std::string gr = dir.graph("g.gr", gen_grid(4));
    const Run b = run({"bsi", "--input", gr, "--s", "4", "--beta", "0.3", "--repeats", "2"});
    REQUIRE(b.code == kExitOk);
    CHECK(run({"verify", "--input", gr, "--report", dir.write("bsi.json", b.out)}).code == kExitOk);
  }

  TEST_CASE("bad input exits with code 2") {
    TempDir dir;
    CHECK(run({"interdict", "--input", dir.file("missing.gr")}).code == kExitBadInput);
    const std::string broken = dir.write("broken.gr", "p edge 3 1\ne 1 9\n");
    CHECK(run({"interdict", "--input", broken}).code == kExitBadInput);
    const std::string in = dir.graph("ok.gr", path_graph(3));
    CHECK(run({"interdict", "--input", in, "--w", "0"}).code == kExitBadInput);
    CHECK(run({"bsi", "--input", in, "--beta", "1.5"}).code == kExitBadInput);
    CHECK(run({"frobnicate"}).code == kExitBadInput);
    CHECK(run({"oracle", "sudoku", "--input", in}).code == kExitBadInput);
  }

  TEST_CASE("oracle reports verify") {
    TempDir dir;
    const std::string in = dir.graph("k4.gr", complete_graph(4));
    const Run tw = run({"oracle", "treewidth", "--input", in});
    REQUIRE(tw.code == kExitOk);
    CHECK(Json::parse(tw.out)["result"]["objective"] == 3);
    CHECK(run({"verify", "--input", in, "--report", dir.write("tw.json", tw.out)}).code == kExitOk);
    const Run fi = run({"oracle", "interdiction", "--input", in, "--w", "2"});
    REQUIRE(fi.code == kExitOk);
    CHECK(Json::parse(fi.out)["result"]["objective"] == 3);
    CHECK(run({"verify", "--input", in, "--report", dir.write("fi.json", fi.out)}).code == kExitOk);
  }

  TEST_CASE("repeated runs are byte-identical") {
    TempDir dir;
    const std::string in = dir.file("g.gr");
    REQUIRE(run({"gen", "grid", "--k", "4", "--delta", "0.1", "--seed", "9", "--out", in}).code == kExitOk);
    const std::string first = slurp(in);
    REQUIRE(run({"gen", "grid", "--k", "4", "--delta", "0.1", "--seed", "9", "--out", in}).code == kExitOk);
    CHECK(slurp(in) == first);
    const std::string plain = dir.graph("plain.gr", gen_grid(4));
    for (const std::vector<std::string>& cmd :
         {std::vector<std::string>{"interdict", "--input", plain, "--w", "1", "--bag-cap", "8"},
          std::vector<std::string>{"mis", "--input", in, "--seed", "3"}}) {
      const Run a = run(cmd), b = run(cmd);
      REQUIRE(a.code == kExitOk);
      CHECK(a.out == b.out);
    }
  }
}
