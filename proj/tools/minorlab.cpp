// Command-line front end. Exit codes: minor 0 yes, 1 no, 2 budget; presented
// 0 yes, 1 no, 2 unknown; 3 for usage errors and 4 for unreadable input.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "minorlab/constructions.hpp"
#include "minorlab/errors.hpp"
#include "minorlab/harness.hpp"
#include "minorlab/minor.hpp"
#include "minorlab/order.hpp"
#include "minorlab/presentation.hpp"
#include "minorlab/presented.hpp"
#include "minorlab/report.hpp"

using namespace minorlab;

namespace {

constexpr int kUsage = 3;
constexpr int kBadInput = 4;

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spill(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

bool is_presentation_text(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '(';
  }
  return false;
}

MarkedGraph read_graph(const std::string& path) { return parse_graph(slurp(path)); }

// Graph files are read as finite presentations.
Presentation read_presentation(const std::string& path) {
  const std::string text = slurp(path);
  if (is_presentation_text(text)) return parse_presentation(text);
  return Presentation::base(parse_graph(text));
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

// Ground order of graph files under the minor relation, named by file stem.
struct Ground {
  GroundOrder order;
  std::vector<FiniteGraph> graphs;
};

Ground read_ground(const std::vector<std::string>& files) {
  Ground g;
  std::vector<std::string> names;
  for (const auto& f : files) {
    names.push_back(stem(f));
    g.graphs.push_back(read_graph(f).graph());
  }
  g.order = GroundOrder::from_relation(names, [&](int a, int b) { return find_minor(g.graphs[a], g.graphs[b]).found(); });
  return g;
}

Relation<FiniteGraph> minor_relation() {
  return [](const FiniteGraph& a, const FiniteGraph& b) { return find_minor(a, b).found(); };
}

std::vector<FiniteGraph> read_graphs(const std::vector<std::string>& files) {
  std::vector<FiniteGraph> out;
  for (const auto& f : files) out.push_back(read_graph(f).graph());
  return out;
}

Ordinal parse_ordinal(const std::string& s) {
  if (s == "w" || s == "omega") return Ordinal::omega();
  try {
    std::size_t used = 0;
    const int n = std::stoi(s, &used);
    if (used == s.size() && n >= 0) return Ordinal::finite(n);
  } catch (const std::exception&) {
  }
  throw InputError("bad ordinal " + s);
}

struct MinorArgs {
  std::string g, h, embed_out;
  bool marked = false;
  long timeout_ms = 60'000;
  std::uint64_t nodes = 20'000'000;
};

int cmd_minor(const MinorArgs& a) {
  const MarkedGraph g = read_graph(a.g);
  const MarkedGraph h = read_graph(a.h);
  SolverLimits limits{a.nodes, std::chrono::milliseconds(a.timeout_ms)};
  MinorResult r = a.marked ? find_marked_minor(g, h, limits) : find_minor(g.graph(), h.graph(), limits);
  switch (r.status) {
    case SearchStatus::Found:
      std::cout << "yes\n";
      if (!a.embed_out.empty()) spill(a.embed_out, emit_certificate(*r.embedding));
      return 0;
    case SearchStatus::NotMinor:
      std::cout << "no\n";
      return 1;
    case SearchStatus::BudgetExhausted:
      std::cout << "unknown: budget exhausted after " << r.nodes << " nodes\n";
      return 2;
  }
  return 2;
}

struct PresentedArgs {
  std::string p, q, report;
  bool marked = false;
  std::uint64_t steps = DecisionBudget{}.steps;
  long time_ms = DecisionBudget{}.time.count();
  int separator_order = DecisionBudget{}.separator_order;
};

int cmd_presented(const PresentedArgs& a) {
  const Presentation p = read_presentation(a.p);
  const Presentation q = read_presentation(a.q);
  DecisionBudget budget;
  budget.steps = a.steps;
  budget.time = std::chrono::milliseconds(a.time_ms);
  budget.separator_order = a.separator_order;
  Verdict v = a.marked ? decide_marked_minor(p, q, budget) : decide_minor(p, q, budget);
  spill(a.report, to_json(v).dump(2) + "\n");
  if (!a.report.empty() && a.report != "-") std::cout << to_json(v)["kind"].get<std::string>() << "\n";
  return v.is_yes() ? 0 : v.is_no() ? 1 : 2;
}

struct ConstructArgs {
  std::string kind, out;
  std::vector<std::string> params;
  std::vector<std::string> ground;
  int n = 0;
  int t = 0;
  bool marked = false;
  bool small = false;
};

int cmd_construct(const ConstructArgs& a) {
  auto need = [&](std::size_t k) {
    if (a.params.size() != k) {
      throw InputError(a.kind + " takes " + std::to_string(k) + " argument" + (k == 1 ? "" : "s"));
    }
  };
  std::string text;
  if (a.kind == "talpha") {
    need(1);
    text = emit_presentation(minimal_tree(parse_ordinal(a.params[0])));
  } else if (a.kind == "tx") {
    need(1);
    Ground g = read_ground(a.ground);
    text = emit_presentation(encode_T(parse_hf(slurp(a.params[0]), g.order), g.graphs));
  } else if (a.kind == "gc") {
    if (a.params.empty()) throw InputError("gc needs representative files");
    std::vector<GCRepresentative> reps;
    for (const auto& f : a.params) {
      const std::string body = slurp(f);
      if (is_presentation_text(body)) reps.emplace_back(parse_presentation(body));
      else reps.emplace_back(parse_graph(body));
    }
    text = emit_presentation(build_GC(reps, a.n));
  } else if (a.kind == "amalgam") {
    need(1);
    text = emit_graph(self_amalgamation(read_graph(a.params[0]), a.n));
  } else if (a.kind == "suspension") {
    need(1);
    const std::string body = slurp(a.params[0]);
    if (is_presentation_text(body)) {
      const Presentation p = parse_presentation(body);
      text = emit_presentation(a.marked ? marked_suspension(p) : suspension(p));
    } else {
      const MarkedGraph g = parse_graph(body);
      text = a.marked ? emit_graph(marked_suspension(g)) : emit_graph(suspension(g.graph()));
    }
  } else if (a.kind == "unmark-gadget") {
    need(1);
    text = emit_graph(unmark_clique_gadget(read_graph(a.params[0]), a.t, a.small ? GadgetSize::TPlus2 : GadgetSize::TPlus4));
  } else if (a.kind == "unmark-trees") {
    need(1);
    text = emit_presentation(unmark_by_trees(read_presentation(a.params[0])));
  } else {
    throw InputError("unknown construction " + a.kind);
  }
  if (text.empty() || text.back() != '\n') text += '\n';
  spill(a.out, text);
  return 0;
}

struct OrderArgs {
  std::string op;
  std::vector<std::string> left, right, ground;
};

int cmd_order(const OrderArgs& a) {
  if (a.op == "qrank" || a.op == "le-plus") {
    Ground g = read_ground(a.ground);
    if (a.op == "qrank") {
      for (const auto& f : a.left) std::cout << qrank(parse_hf(slurp(f), g.order)) << "\n";
      return 0;
    }
    if (a.left.size() != 1 || a.right.size() != 1) throw InputError("le-plus compares one set with one set");
    const bool le = le_plus(parse_hf(slurp(a.left[0]), g.order), parse_hf(slurp(a.right[0]), g.order), g.order);
    std::cout << (le ? "true" : "false") << "\n";
    return le ? 0 : 1;
  }
  const auto left = read_graphs(a.left);
  const auto right = read_graphs(a.right);
  bool le = false;
  if (a.op == "le-star") le = le_star(left, right, minor_relation());
  else if (a.op == "seq") le = seq_le(left, right, minor_relation());
  else throw InputError("unknown order operation " + a.op);
  std::cout << (le ? "true" : "false") << "\n";
  return le ? 0 : 1;
}

struct VerifyArgs {
  std::string suite, report;
  std::uint64_t seed = 1;
  int count = 0;
  int jobs = 0;
  bool timing = false;
};

int cmd_verify(const VerifyArgs& a) {
  SuiteReport r = run_suite(a.suite, a.seed, a.count, a.jobs);
  spill(a.report, to_json(r, a.timing).dump(2) + "\n");
  std::cerr << r.suite << ": " << r.pass << " pass, " << r.fail << " fail, " << r.unknown << " unknown in "
            << r.wall.count() << " ms\n";
  return r.ok() ? 0 : 1;
}

struct TruncArgs {
  std::string file, out;
  int depth = 2;
  int copies = 2;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minors of finite graphs and of presented rayless graphs"};
  app.require_subcommand(1);

  MinorArgs minor;
  auto* m = app.add_subcommand("minor", "is G a minor of H");
  m->add_option("pattern", minor.g)->required();
  m->add_option("host", minor.h)->required();
  m->add_flag("--marked", minor.marked, "marked vertices must land on marked vertices");
  m->add_option("--embed-out", minor.embed_out, "write the model here");
  m->add_option("--timeout", minor.timeout_ms, "milliseconds");
  m->add_option("--nodes", minor.nodes, "search node budget");

  PresentedArgs pres;
  auto* pr = app.add_subcommand("presented", "is presentation P a minor of Q");
  pr->add_option("pattern", pres.p)->required();
  pr->add_option("host", pres.q)->required();
  pr->add_flag("--marked", pres.marked);
  pr->add_option("--report", pres.report, "JSON verdict, stdout by default");
  pr->add_option("--steps", pres.steps);
  pr->add_option("--time", pres.time_ms, "milliseconds");
  pr->add_option("--separator-order", pres.separator_order);

  std::string unary_file;
  std::string out;
  auto* rk = app.add_subcommand("rank", "rank of a presentation");
  rk->add_option("file", unary_file)->required();
  auto* kn = app.add_subcommand("kernel", "kernel vertices of a presentation");
  kn->add_option("file", unary_file)->required();
  auto* nm = app.add_subcommand("normalize", "normal form of a presentation");
  nm->add_option("file", unary_file)->required();
  nm->add_option("-o,--out", out);

  TruncArgs trunc;
  auto* tr = app.add_subcommand("truncate", "finite truncation of a presentation");
  tr->add_option("file", trunc.file)->required();
  tr->add_option("--depth", trunc.depth);
  tr->add_option("--copies", trunc.copies);
  tr->add_option("-o,--out", trunc.out);

  ConstructArgs con;
  auto* cs = app.add_subcommand("construct", "build a named construction");
  cs->add_option("kind", con.kind)
      ->required()
      ->check(CLI::IsMember({"talpha", "tx", "gc", "amalgam", "suspension", "unmark-gadget", "unmark-trees"}));
  cs->add_option("params", con.params);
  cs->add_option("--ground", con.ground, "ground graph files for tx");
  cs->add_option("-n,--n", con.n, "anchors for gc, depth for amalgam");
  cs->add_option("-t,--t", con.t, "gadget parameter");
  cs->add_flag("--marked", con.marked, "marked suspension");
  cs->add_flag("--small", con.small, "cliques of size t+2 instead of t+4");
  cs->add_option("-o,--out", con.out);

  auto* sm = app.add_subcommand("selfminor", "a proper self-minor certificate");
  sm->add_option("file", unary_file)->required();
  sm->add_option("-o,--out", out);

  OrderArgs ord;
  auto* od = app.add_subcommand("order", "lifted orders over graph files");
  od->add_option("op", ord.op)->required()->check(CLI::IsMember({"le-plus", "le-star", "seq", "qrank"}));
  od->add_option("--left", ord.left)->required();
  od->add_option("--right", ord.right);
  od->add_option("--ground", ord.ground, "ground graph files, named by stem");

  VerifyArgs ver;
  auto* vf = app.add_subcommand("verify", "run a property suite");
  vf->add_option("suite", ver.suite)->required();
  vf->add_option("--seed", ver.seed);
  vf->add_option("--count", ver.count);
  vf->add_option("--jobs", ver.jobs, "workers, MINORLAB_JOBS by default");
  vf->add_option("--report", ver.report);
  vf->add_flag("--timing", ver.timing, "include wall time in the report");

  TruncArgs dot;
  auto* ed = app.add_subcommand("export-dot", "DOT for a graph or a truncation");
  ed->add_option("file", dot.file)->required();
  ed->add_option("--depth", dot.depth);
  ed->add_option("--copies", dot.copies);
  ed->add_option("-o,--out", dot.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (m->parsed()) return cmd_minor(minor);
    if (pr->parsed()) return cmd_presented(pres);
    if (rk->parsed()) {
      std::cout << rank(read_presentation(unary_file)).to_string() << "\n";
      return 0;
    }
    if (kn->parsed()) {
      const auto k = kernel(read_presentation(unary_file));
      for (std::size_t i = 0; i < k.size(); ++i) std::cout << (i ? " " : "") << k[i];
      std::cout << "\n";
      return 0;
    }
    if (nm->parsed()) {
      std::string text = emit_presentation(normalize(read_presentation(unary_file)));
      if (text.empty() || text.back() != '\n') text += '\n';
      spill(out, text);
      return 0;
    }
    if (tr->parsed()) {
      spill(trunc.out, emit_graph(denote_truncation(read_presentation(trunc.file), {trunc.depth, trunc.copies})));
      return 0;
    }
    if (cs->parsed()) return cmd_construct(con);
    if (sm->parsed()) {
      const Presentation p = read_presentation(unary_file);
      CertPtr cert = self_minor(p);
      if (auto bad = verify_pres_certificate(*cert, p, p, {3, 4})) {
        std::cerr << "certificate rejected: " << bad->invariant << ": " << bad->detail << "\n";
        return 1;
      }
      spill(out, to_json(*cert).dump(2) + "\n");
      return 0;
    }
    if (od->parsed()) return cmd_order(ord);
    if (vf->parsed()) return cmd_verify(ver);
    if (ed->parsed()) {
      const std::string text = slurp(dot.file);
      MarkedGraph g = is_presentation_text(text)
                          ? denote_truncation(parse_presentation(text), {dot.depth, dot.copies})
                          : parse_graph(text);
      spill(dot.out, to_dot(g, stem(dot.file)));
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return kBadInput;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == ErrorKind::UnknownSuite ? kUsage : kBadInput;
  }
  return kUsage;
}
