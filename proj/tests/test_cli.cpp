#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "minorlab/constructions.hpp"
#include "minorlab/presentation.hpp"
#include "minorlab/report.hpp"

using namespace minorlab;
namespace fs = std::filesystem;

namespace {

struct ScratchDir {
  fs::path path = fs::temp_directory_path() / ("minorlab_cli_" + std::to_string(::getpid()));
  ScratchDir() { fs::create_directories(path); }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

const fs::path& scratch() {
  static const ScratchDir dir;
  return dir.path;
}

std::string put(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run cli(const std::string& args, const std::string& env = "") {
  const std::string out = (scratch() / "stdout").string();
  const std::string err = (scratch() / "stderr").string();
  const std::string cmd = env + " " + std::string(MINORLAB_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read(out), read(err)};
}

std::string graph_file(const std::string& name, const FiniteGraph& g, std::vector<int> marks = {}) {
  return put(name + ".graph", emit_graph(MarkedGraph(g, std::move(marks))));
}

std::string pres_file(const std::string& name, const Presentation& p) {
  return put(name + ".pres", emit_presentation(p));
}

Presentation cone_over_cones() {
  Presentation g0 = Presentation::node(FiniteGraph(0), {}, {FamilyTemplate{Generator::Clique, {}}});
  return suspension(Presentation::node(FiniteGraph(0), {}, {ConcreteTemplate{share(suspension(g0)), Multiplicity::omega(), {}}}));
}

Presentation fan_cone() {
  return Presentation::node(FiniteGraph(1), {}, {FamilyTemplate{Generator::Fan, Attachment::to_all({0})}});
}

}  // namespace

TEST_CASE("finite minor exit codes") {
  const auto k3 = graph_file("K3", FiniteGraph::complete(3));
  const auto k4 = graph_file("K4", FiniteGraph::complete(4));
  const auto c4 = graph_file("C4", FiniteGraph::cycle(4));
  const auto model = (scratch() / "model.txt").string();
  CHECK(cli("minor " + k3 + " " + k4 + " --embed-out " + model).code == 0);
  CHECK(fs::exists(model));
  CHECK(parse_certificate(read(model)).branch_sets.size() == 3);
  CHECK(cli("minor " + k4 + " " + c4).code == 1);

  // An apex over the bipyramid on C6: planar plus one vertex, so K6-free, and the refutation takes seconds.
  std::vector<Edge> es;
  for (int i = 0; i < 6; ++i) {
    es.emplace_back(std::min(i, (i + 1) % 6), std::max(i, (i + 1) % 6));
    es.emplace_back(i, 6);
    es.emplace_back(i, 7);
  }
  for (int v = 0; v < 8; ++v) es.emplace_back(v, 8);
  const auto dense = graph_file("apex", FiniteGraph(9, es));
  const auto k6 = graph_file("K6", FiniteGraph::complete(6));
  CHECK(cli("minor " + k6 + " " + dense + " --timeout 1").code == 2);

  const auto marked_edge = graph_file("edge_marked", FiniteGraph::path(2), {0, 1});
  const auto marked_p3 = graph_file("p3_end", FiniteGraph::path(3), {0});
  CHECK(cli("minor --marked " + marked_edge + " " + marked_p3).code == 1);
  CHECK(cli("minor " + marked_edge + " " + marked_p3).code == 0);
}

TEST_CASE("bad input and usage") {
  CHECK(cli("").code == 3);
  CHECK(cli("frobnicate").code == 3);
  CHECK(cli("minor only-one-file").code == 3);
  const auto k3 = graph_file("K3b", FiniteGraph::complete(3));
  CHECK(cli("minor " + k3 + " /nonexistent/file.graph").code == 4);
  const auto broken = put("broken.graph", "graph 3\ne 0 1\ne 0 7\n");
  Run r = cli("minor " + broken + " " + k3);
  CHECK(r.code == 4);
  CHECK(r.err.find("3:") != std::string::npos);
  CHECK(cli("verify no-such-suite").code == 3);
  CHECK(cli("--help").code == 0);
}

TEST_CASE("presented decisions") {
  const auto t2 = pres_file("T2", minimal_tree(Ordinal::finite(2)));
  const auto t3 = pres_file("T3", minimal_tree(Ordinal::finite(3)));
  const auto report = (scratch() / "verdict.json").string();
  CHECK(cli("presented " + t2 + " " + t3 + " --report " + report).code == 0);
  CHECK(Json::parse(read(report))["kind"] == "yes");

  CHECK(cli("presented " + t3 + " " + t2 + " --report " + report).code == 1);
  Json no = Json::parse(read(report));
  CHECK(no["kind"] == "no");
  CHECK(no["payload"].dump().find("rank") != std::string::npos);

  const auto g = pres_file("cones", cone_over_cones());
  const auto h = pres_file("fan", fan_cone());
  fs::remove(report);
  CHECK(cli("presented " + g + " " + h + " --steps 1 --report " + report).code == 2);
  CHECK(Json::parse(read(report))["kind"] == "unknown");
  CHECK(cli("presented " + g + " " + h).code == 1);
}

TEST_CASE("queries on presentations") {
  const auto t3 = pres_file("T3q", minimal_tree(Ordinal::finite(3)));
  CHECK(cli("rank " + t3).out == "3\n");
  CHECK(cli("kernel " + t3).out == "0\n");
  CHECK(cli("rank " + pres_file("Tw", minimal_tree(Ordinal::omega()))).out == "w\n");
  Run n = cli("normalize " + t3);
  CHECK(n.code == 0);
  CHECK(parse_presentation(n.out) == normalize(minimal_tree(Ordinal::finite(3))));

  const auto t1 = pres_file("T1", minimal_tree(Ordinal::finite(1)));
  Run t = cli("truncate " + t1 + " --depth 1 --copies 3");
  CHECK(t.code == 0);
  CHECK(parse_graph(t.out).graph().size() == 3);

  Run d = cli("export-dot " + t1 + " --depth 1 --copies 2");
  CHECK(d.code == 0);
  CHECK(d.out.find("graph") != std::string::npos);
  CHECK(d.out.find("--") != std::string::npos);

  Run s = cli("selfminor " + t1);
  CHECK(s.code == 0);
  CHECK(Json::parse(s.out).is_object());
  CHECK(cli("selfminor " + graph_file("single", FiniteGraph(1))).code == 4);
}

TEST_CASE("constructions round-trip and are deterministic") {
  const auto out = (scratch() / "built").string();
  CHECK(cli("construct talpha 1 -o " + out).code == 0);
  CHECK(parse_presentation(read(out)) == minimal_tree(Ordinal::finite(1)));
  const std::string first = read(out);
  CHECK(cli("construct talpha 1 -o " + out).code == 0);
  CHECK(read(out) == first);

  const auto both = graph_file("K2m", FiniteGraph::path(2), {0, 1});
  CHECK(cli("construct amalgam " + both + " -n 1 -o " + out).code == 0);
  FiniteGraph p4 = parse_graph(read(out)).graph();
  CHECK(p4.order() == 4);
  CHECK(p4.size() == 3);
  CHECK(is_connected(p4));

  const auto one = graph_file("K2one", FiniteGraph::path(2), {0});
  CHECK(cli("construct gc " + one + " -n 2 -o " + out).code == 0);
  CHECK(parse_presentation(read(out)).as_node().templates.size() == 2);

  CHECK(cli("construct suspension " + both + " --marked -o " + out).code == 0);
  CHECK(parse_graph(read(out)).marked().size() == 3);
  CHECK(cli("construct unmark-gadget " + one + " -t 0 -o " + out).code == 0);
  CHECK(parse_graph(read(out)).order() == 5);

  const auto k3 = graph_file("K3", FiniteGraph::complete(3));
  const auto k2 = graph_file("K2", FiniteGraph::complete(2));
  const auto hf = put("x.hf", "(hf ((hf K3) (hf K2)))");
  CHECK(cli("construct tx " + hf + " --ground " + k3 + " " + k2 + " -o " + out).code == 0);
  CHECK(rank(parse_presentation(read(out))) == Ordinal::finite(2));

  CHECK(cli("construct talpha w+1").code == 4);
  CHECK(cli("construct amalgam " + one + " -n 1").code == 4);
}

TEST_CASE("order queries") {
  const auto k3 = graph_file("K3", FiniteGraph::complete(3));
  const auto k2 = graph_file("K2", FiniteGraph::complete(2));
  const auto k4 = graph_file("K4", FiniteGraph::complete(4));
  const auto p5 = graph_file("P5", FiniteGraph::path(5));
  const auto x = put("lo.hf", "(hf ((hf K2)))");
  const auto y = put("hi.hf", "(hf ((hf K3) (hf ((hf K2)))))");
  const std::string ground = " --ground " + k3 + " " + k2;
  CHECK(cli("order le-plus --left " + x + " --right " + y + ground).code == 0);
  CHECK(cli("order le-plus --left " + y + " --right " + x + ground).code == 1);
  CHECK(cli("order qrank --left " + x + " " + y + ground).out == "2\n3\n");
  CHECK(cli("order le-star --left " + k3 + " --right " + k4).code == 0);
  CHECK(cli("order le-star --left " + k4 + " --right " + k3 + " " + p5).code == 1);
  CHECK(cli("order seq --left " + k2 + " " + k4 + " --right " + k4 + " " + k3).code == 1);
  CHECK(cli("order seq --left " + k2 + " " + k3 + " --right " + k4 + " " + k3).code == 0);
}

TEST_CASE("suite reports") {
  const auto a = (scratch() / "a.json").string();
  const auto b = (scratch() / "b.json").string();
  CHECK(cli("verify perms --seed 1 --count 1000 --jobs 1 --report " + a).code == 0);
  CHECK(cli("verify perms --seed 1 --count 1000 --report " + b, "MINORLAB_JOBS=3").code == 0);
  CHECK(read(a) == read(b));
  Json j = Json::parse(read(a));
  CHECK(j["fail"] == 0);
  CHECK(j["count"] == 1000);

  CHECK(cli("verify cones --seed 7 --count 100 --report " + a).code == 0);
  CHECK(Json::parse(read(a))["pass"] == 100);
  CHECK(cli("verify t-encode --seed 3 --report " + a).code == 0);
  Json t = Json::parse(read(a));
  CHECK(t["unknown"] == 0);
  CHECK(t["fail"] == 0);
  CHECK_FALSE(t.contains("wall_ms"));
  CHECK(cli("verify remarks --timing --report " + a).code == 0);
  CHECK(Json::parse(read(a)).contains("wall_ms"));
}
