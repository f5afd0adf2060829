#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "lqharm/io.hpp"

namespace fs = std::filesystem;
using lqharm::io::Json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

struct Sandbox {
  fs::path dir;
  Sandbox() {
    dir = fs::temp_directory_path() / ("lqharm_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }

  Run run(const std::string& args, const std::string& env = "") const {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" + LQHARM_CLI_PATH + "' " + args + " >'" +
                            path("stdout.txt") + "' 2>'" + path("stderr.txt") + "'";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = lqharm::io::read_text_file(path("stdout.txt"));
    r.err = lqharm::io::read_text_file(path("stderr.txt"));
    return r;
  }
  void write(const std::string& name, const std::string& text) const { lqharm::io::write_text_file(path(name), text); }
  std::string read(const std::string& name) const { return lqharm::io::read_text_file(path(name)); }
};

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("gen then classify the dyadic harmonic") {
  Sandbox s;
  auto r = s.run("gen dyadic-line --radius 20 --out " + s.path("g.json") + "," + s.path("f.json"));
  REQUIRE(r.code == 0);
  const auto g = lqharm::io::parse_json(s.read("g.json"));
  CHECK(g["scalar"] == "rational");
  CHECK(g["marks"]["root"] == "0");
  CHECK(g["marks"]["radius"] == 20);
  r = s.run("classify --graph " + s.path("g.json") + " --function " + s.path("f.json") + " --tol 0");
  CHECK(r.code == 0);
  const auto j = lqharm::io::parse_json(r.out);
  CHECK(j["verdict"] == "harmonic");
  CHECK(j["vertices"].size() == 41);

  // harmonic also counts as subharmonic
  r = s.run("classify --graph " + s.path("g.json") + " --function " + s.path("f.json") + " --expect subharmonic");
  CHECK(r.code == 0);

  REQUIRE(s.run("gen dyadic-line --radius 20 --function dyadic-abs --out " + s.path("g2.json") + "," +
                s.path("a.json"))
              .code == 0);
  r = s.run("classify --graph " + s.path("g2.json") + " --function " + s.path("a.json") + " --expect harmonic");
  CHECK(r.code == 1);
  const auto v = lqharm::io::parse_json(r.out);
  CHECK(v["status"] == "violation");
  CHECK(v["details"]["verdict"] == "subharmonic");
  CHECK(v["report"]["verdict"] == "subharmonic");
}

TEST_CASE("growth CSV on Z2") {
  Sandbox s;
  const auto r = s.run("growth --family z2 --function abs-x1 --q 2 --rmax 40 --out " + s.path("growth.csv"));
  REQUIRE(r.code == 0);
  const auto text = s.read("growth.csv");
  CHECK(text.find('\r') == std::string::npos);
  const auto rows = csv_rows(text);
  REQUIRE(rows.size() == 41);
  CHECK(rows[0] == std::vector<std::string>{"R", "S_R", "A_R"});
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][2]) > std::stod(rows[i - 1][2]));

  const auto again = s.run("growth --family z2 --function abs-x1 --q 2 --rmax 40 --out " + s.path("growth2.csv"));
  REQUIRE(again.code == 0);
  CHECK(s.read("growth2.csv") == text);
}

TEST_CASE("caccioppoli exit codes") {
  Sandbox s;
  auto r = s.run("caccioppoli --family dyadic-line --function dyadic-abs --q 2 --r 3 --R 4");
  CHECK(r.code == 2);
  CHECK(r.err.find("degenerate cutoff") != std::string::npos);
  r = s.run("caccioppoli --family dyadic-line --function dyadic-abs --q 2 --r 3 --R 3");
  CHECK(r.code == 2);

  r = s.run("caccioppoli --family dyadic-line --function dyadic-abs --q 2 --r 3 --R 8 --scalar rational");
  REQUIRE(r.code == 0);
  const auto j = lqharm::io::parse_json(r.out);
  CHECK(j["lhs"]["exact"] == "14/1");
  CHECK(j["rhs_core"]["exact"] == "373341/3200");

  r = s.run("caccioppoli --family dyadic-line --function dyadic-harmonic --q 2 --r 3 --R 8");
  CHECK(r.code == 2);
  r = s.run("caccioppoli --family z2 --function abs-x1 --q 1 --r 2 --R 5");
  CHECK(r.code == 2);
}

TEST_CASE("input errors exit 2") {
  Sandbox s;
  s.write("bad.json", "{\n  \"edges\": [\n    {\"u\": \"a\" \"v\": \"b\"}\n  ]\n}\n");
  s.write("f.json", "{\"values\": {}}");
  auto r = s.run("classify --graph " + s.path("bad.json") + " --function " + s.path("f.json"));
  CHECK(r.code == 2);
  CHECK(r.err.find("bad.json:3:") != std::string::npos);
  CHECK(r.err.find("malformed JSON") != std::string::npos);

  CHECK(s.run("classify --graph " + s.path("missing.json") + " --function " + s.path("f.json")).code == 2);
  CHECK(s.run("frobnicate").code == 2);
  CHECK(s.run("growth --family z2 --bogus-flag 1").code == 2);
  CHECK(s.run("").code == 2);
  CHECK(s.run("gen moebius --radius 3").code == 2);
}

TEST_CASE("GP_MAX_RADIUS caps materialization") {
  Sandbox s;
  CHECK(s.run("gen dyadic-line --radius 10 --out " + s.path("g.json"), "GP_MAX_RADIUS=10").code == 0);
  const auto r = s.run("gen dyadic-line --radius 11 --out " + s.path("g.json"), "GP_MAX_RADIUS=10");
  CHECK(r.code == 2);
  CHECK(r.err.find("GP_MAX_RADIUS") != std::string::npos);
  CHECK(s.run("gen dyadic-line --radius 201 --out " + s.path("g.json")).code == 2);
  CHECK(s.run("gen dyadic-line --radius 200 --out " + s.path("g.json")).code == 0);
  CHECK(s.run("growth --family z --function square --q 2 --rmax 5", "GP_MAX_RADIUS=abc").code == 2);
}

TEST_CASE("random generation is deterministic") {
  Sandbox s;
  REQUIRE(s.run("gen random --vertices 30 --seed 7 --out " + s.path("a.json") + "," + s.path("af.json")).code == 0);
  REQUIRE(s.run("gen random --vertices 30 --seed 7 --out " + s.path("b.json") + "," + s.path("bf.json")).code == 0);
  REQUIRE(s.run("gen random --vertices 30 --seed 8 --out " + s.path("c.json")).code == 0);
  CHECK(s.read("a.json") == s.read("b.json"));
  CHECK(s.read("af.json") == s.read("bf.json"));
  CHECK(s.read("a.json") != s.read("c.json"));

  const auto c1 = s.run("check --instances 20 --seed 3");
  const auto c2 = s.run("check --instances 20 --seed 3");
  CHECK(c1.code == 0);
  CHECK(c1.out == c2.out);

  const auto t1 = s.run("trace --family dyadic-line --function dyadic-abs --q 1.5 --r1 4 --rmax 16 --C 2");
  const auto t2 = s.run("trace --family dyadic-line --function dyadic-abs --q 1.5 --r1 4 --rmax 16 --C 2");
  CHECK(t1.code == 0);
  CHECK(t1.out == t2.out);
  CHECK(lqharm::io::parse_json(t1.out)["levels"].size() == 3);
}

TEST_CASE("glue subcommand") {
  Sandbox s;
  REQUIRE(s.run("gen z2 --scalar rational --radius 3 --out " + s.path("a.json")).code == 0);
  REQUIRE(s.run("gen dyadic-line --radius 3 --function dyadic-harmonic --out " + s.path("b.json") + "," +
                s.path("bf.json"))
              .code == 0);
  auto r = s.run("glue --left " + s.path("a.json") + " --left-mark 0,0 --right " + s.path("b.json") +
                 " --right-mark 0 --right-function " + s.path("bf.json") + " --out " + s.path("c.json") + "," +
                 s.path("cf.json"));
  REQUIRE(r.code == 0);
  const auto c = lqharm::io::graph_from_json<lqharm::Rational>(lqharm::io::parse_json(s.read("c.json")));
  // B_4 of Z^2 has 41 vertices, B_4 of the line 9
  CHECK(c.graph.num_vertices() == 41 + 9 - 1);
  const auto f = lqharm::io::parse_json(s.read("cf.json"));
  CHECK(f["values"]["g1:1,0"] == "0/1");
  CHECK(f["values"]["3"] == "7/1");

  // the seam and its neighbours are interior; check them with tolerance 0
  s.write("d.json", R"({"interior": ["0", "g1:1,0", "g1:-1,0", "g1:0,1", "g1:0,-1", "1", "-1", "2", "-2"]})");
  r = s.run("classify --graph " + s.path("c.json") + " --function " + s.path("cf.json") + " --domain " +
            s.path("d.json") + " --tol 0 --expect harmonic");
  CHECK(r.code == 0);

  r = s.run("glue --left " + s.path("a.json") + " --left-mark 9,9 --right " + s.path("b.json") + " --right-mark 0");
  CHECK(r.code == 2);
  CHECK(r.err.find("9,9") != std::string::npos);
  REQUIRE(s.run("gen z2 --radius 3 --out " + s.path("fl.json")).code == 0);
  CHECK(s.run("glue --left " + s.path("fl.json") + " --left-mark 0,0 --right " + s.path("b.json") +
              " --right-mark 0")
            .code == 2);
}

TEST_CASE("solve subcommand") {
  Sandbox s;
  s.write("p.json", R"({"scalar": "rational", "edges": [
    {"u": "a", "v": "b", "w": 1}, {"u": "b", "v": "c", "w": 1}, {"u": "c", "v": "d", "w": 1}]})");
  s.write("dom.json", R"({"interior": ["b", "c"]})");
  s.write("bd.json", R"({"values": {"a": 0, "d": 3}})");
  auto r = s.run("solve --graph " + s.path("p.json") + " --domain " + s.path("dom.json") + " --boundary " +
                 s.path("bd.json"));
  REQUIRE(r.code == 0);
  const auto j = lqharm::io::parse_json(r.out);
  CHECK(j["solution"]["b"] == "1/1");
  CHECK(j["solution"]["c"] == "2/1");
  CHECK(j["residual"] == "0/1");

  s.write("src.json", R"({"values": {"b": 1, "c": 1}})");
  r = s.run("solve --graph " + s.path("p.json") + " --domain " + s.path("dom.json") + " --boundary " +
            s.path("bd.json") + " --source " + s.path("src.json"));
  CHECK(r.code == 0);

  s.write("partial.json", R"({"values": {"a": 0}})");
  r = s.run("solve --graph " + s.path("p.json") + " --domain " + s.path("dom.json") + " --boundary " +
            s.path("partial.json"));
  CHECK(r.code == 2);
  CHECK(s.run("solve --graph " + s.path("p.json") + " --domain " + s.path("dom.json") + " --boundary " +
              s.path("bd.json") + " --method sideways")
            .code == 2);
}

TEST_CASE("corpus run") {
  Sandbox s;
  const auto r = s.run("caccioppoli --corpus --scale 1");
  REQUIRE(r.code == 0);
  const auto j = lqharm::io::parse_json(r.out);
  CHECK(j["cases"].size() == 60);
  CHECK(j["violations"].empty());
  CHECK(j["constant"].get<double>() > 0);
}
