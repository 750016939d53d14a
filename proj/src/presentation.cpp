#include "minorlab/presentation.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "minorlab/errors.hpp"

namespace minorlab {

Multiplicity Multiplicity::finite(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "finite multiplicity must be positive");
  return Multiplicity(k);
}

Attachment Attachment::to_ports(std::vector<std::pair<int, int>> links) {
  Attachment a;
  a.ports = std::move(links);
  return a;
}

Attachment Attachment::to_all(std::vector<int> anchors) {
  Attachment a;
  a.all = std::move(anchors);
  return a;
}

std::string_view to_string(Generator g) {
  switch (g) {
    case Generator::Clique: return "CLIQUE";
    case Generator::Path: return "PATH";
    case Generator::Cycle: return "CYCLE";
    case Generator::MinTree: return "MINTREE";
    case Generator::Fan: return "FAN";
  }
  return "?";
}

Generator parse_generator(std::string_view name) {
  for (Generator g : {Generator::Clique, Generator::Path, Generator::Cycle, Generator::MinTree,
                      Generator::Fan}) {
    if (to_string(g) == name) return g;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown generator " + std::string(name));
}

const Attachment& attachment_of(const Template& t) {
  return std::visit([](const auto& x) -> const Attachment& { return x.attach; }, t);
}

namespace {

Attachment canonical(Attachment a) {
  std::sort(a.ports.begin(), a.ports.end());
  std::sort(a.all.begin(), a.all.end());
  return a;
}

void check_attachment(const Attachment& a, int kernel_order, int part_order) {
  std::set<std::pair<int, int>> seen;
  for (auto [port, anchor] : a.ports) {
    if (anchor < 0 || anchor >= kernel_order) throw Error(ErrorKind::InvalidArgument, "bad anchor");
    if (port < 0 || port >= part_order) throw Error(ErrorKind::InvalidArgument, "bad port");
    if (!seen.insert({port, anchor}).second) throw Error(ErrorKind::InvalidArgument, "duplicate port");
  }
  std::set<int> anchors;
  for (int anchor : a.all) {
    if (anchor < 0 || anchor >= kernel_order) throw Error(ErrorKind::InvalidArgument, "bad anchor");
    if (!anchors.insert(anchor).second) throw Error(ErrorKind::InvalidArgument, "duplicate anchor");
  }
}

}  // namespace

Presentation Presentation::base(MarkedGraph graph) {
  Presentation p;
  p.body_ = BasePresentation{std::move(graph)};
  return p;
}

Presentation Presentation::node(FiniteGraph kernel, std::vector<int> kernel_marks,
                                std::vector<Template> templates) {
  std::sort(kernel_marks.begin(), kernel_marks.end());
  kernel_marks.erase(std::unique(kernel_marks.begin(), kernel_marks.end()), kernel_marks.end());
  for (int m : kernel_marks)
    if (m < 0 || m >= kernel.order()) throw Error(ErrorKind::InvalidArgument, "kernel mark out of range");
  bool infinite = false;
  for (auto& t : templates) {
    if (auto* c = std::get_if<ConcreteTemplate>(&t)) {
      if (!c->part) throw Error(ErrorKind::InvalidArgument, "template without part");
      check_attachment(c->attach, kernel.order(), c->part->top_order());
      c->attach = canonical(c->attach);
      infinite = infinite || c->mult.is_omega();
    } else {
      auto& f = std::get<FamilyTemplate>(t);
      check_attachment(f.attach, kernel.order(), 1);
      f.attach = canonical(f.attach);
      infinite = true;
    }
  }
  if (!infinite) {
    throw Error(ErrorKind::InvalidArgument, "a node needs an omega or family template");
  }
  Presentation p;
  p.body_ = NodePresentation{std::move(kernel), std::move(kernel_marks), std::move(templates)};
  return p;
}

int Presentation::top_order() const {
  return is_base() ? as_base().graph.order() : as_node().kernel.order();
}

const std::vector<int>& Presentation::top_marks() const {
  return is_base() ? as_base().graph.marked() : as_node().kernel_marks;
}

const FiniteGraph& Presentation::top_graph() const {
  return is_base() ? as_base().graph.graph() : as_node().kernel;
}

namespace {

bool same_template(const Template& a, const Template& b) {
  if (a.index() != b.index()) return false;
  if (auto* ca = std::get_if<ConcreteTemplate>(&a)) {
    const auto& cb = std::get<ConcreteTemplate>(b);
    return ca->mult == cb.mult && ca->attach == cb.attach &&
           (ca->part == cb.part || *ca->part == *cb.part);
  }
  const auto& fa = std::get<FamilyTemplate>(a);
  const auto& fb = std::get<FamilyTemplate>(b);
  return fa.gen == fb.gen && fa.attach == fb.attach;
}

}  // namespace

bool operator==(const Presentation& a, const Presentation& b) {
  if (a.is_base() != b.is_base()) return false;
  if (a.is_base()) return a.as_base().graph == b.as_base().graph;
  const auto& na = a.as_node();
  const auto& nb = b.as_node();
  if (!(na.kernel == nb.kernel) || na.kernel_marks != nb.kernel_marks ||
      na.templates.size() != nb.templates.size()) {
    return false;
  }
  for (std::size_t i = 0; i < na.templates.size(); ++i)
    if (!same_template(na.templates[i], nb.templates[i])) return false;
  return true;
}

PresPtr share(Presentation p) { return std::make_shared<const Presentation>(std::move(p)); }

PresPtr minimal_tree_presentation(int n) {
  static std::mutex mu;
  static std::vector<PresPtr> cache;
  std::lock_guard lock(mu);
  while (static_cast<int>(cache.size()) <= n) {
    const int k = static_cast<int>(cache.size());
    if (k == 0) {
      cache.push_back(share(Presentation::base(MarkedGraph(FiniteGraph(1)))));
      continue;
    }
    std::vector<Template> ts;
    for (int b = 0; b < k; ++b)
      ts.push_back(ConcreteTemplate{cache[b], Multiplicity::omega(), Attachment::to_ports({{0, 0}})});
    cache.push_back(share(Presentation::node(FiniteGraph(1), {}, std::move(ts))));
  }
  return cache[n];
}

PresPtr family_member(Generator g, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, PresPtr> cache;
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative family member");
  if (g == Generator::MinTree) return minimal_tree_presentation(n);
  std::lock_guard lock(mu);
  auto key = std::make_pair(static_cast<int>(g), n);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  PresPtr out;
  switch (g) {
    case Generator::Clique:
      out = share(Presentation::base(MarkedGraph(FiniteGraph::complete(n + 1))));
      break;
    case Generator::Path:
      out = share(Presentation::base(MarkedGraph(FiniteGraph::path(n + 1))));
      break;
    case Generator::Cycle:
      out = share(Presentation::base(MarkedGraph(FiniteGraph::cycle(n + 3))));
      break;
    case Generator::Fan: {
      auto clique = share(Presentation::base(MarkedGraph(FiniteGraph::complete(n + 1))));
      out = share(Presentation::node(
          FiniteGraph(1), {},
          {ConcreteTemplate{clique, Multiplicity::omega(), Attachment::to_all({0})}}));
      break;
    }
    case Generator::MinTree:
      break;
  }
  cache[key] = out;
  return out;
}

Ordinal family_contribution(Generator g) {
  switch (g) {
    case Generator::MinTree: return Ordinal::omega();
    case Generator::Fan: return Ordinal::finite(2);
    default: return Ordinal::finite(1);
  }
}

std::string to_string(const VertexName& name) {
  std::string s;
  for (const Step& st : name.path) {
    s += std::to_string(st.tmpl) + "." + std::to_string(st.member) + "." + std::to_string(st.copy) + "/";
  }
  return s + std::to_string(name.local);
}

namespace {

class TruncationBuilder {
 public:
  struct Placed {
    std::vector<int> top;
    std::vector<int> all;
  };

  Placed place(const Presentation& p, int depth, int copies, std::vector<Step>& path) {
    Placed out;
    const FiniteGraph& top = p.top_graph();
    for (int v = 0; v < top.order(); ++v) out.top.push_back(add(path, v));
    for (const Edge& e : top.edges()) edges_.emplace_back(out.top[e.u], out.top[e.v]);
    out.all = out.top;
    if (p.is_base() || depth == 0) return out;
    const auto& node = p.as_node();
    for (int j = 0; j < static_cast<int>(node.templates.size()); ++j) {
      const Template& t = node.templates[j];
      const Attachment& att = attachment_of(t);
      int members = 1;
      int per_member = copies;
      if (auto* c = std::get_if<ConcreteTemplate>(&t)) {
        if (!c->mult.is_omega()) per_member = c->mult.count();
      } else {
        members = copies;
      }
      for (int m = 0; m < members; ++m) {
        const Presentation& part =
            std::holds_alternative<ConcreteTemplate>(t)
                ? *std::get<ConcreteTemplate>(t).part
                : *family_member(std::get<FamilyTemplate>(t).gen, m);
        for (int i = 0; i < per_member; ++i) {
          path.push_back(Step{j, m, i});
          Placed sub = place(part, depth - 1, copies, path);
          path.pop_back();
          for (auto [port, anchor] : att.ports) edges_.emplace_back(sub.top[port], out.top[anchor]);
          for (int anchor : att.all)
            for (int x : sub.all) edges_.emplace_back(x, out.top[anchor]);
          out.all.insert(out.all.end(), sub.all.begin(), sub.all.end());
        }
      }
    }
    return out;
  }

  TruncatedGraph finish(const Presentation& p, const Placed& root) {
    TruncatedGraph t;
    std::vector<int> marks;
    for (int m : p.top_marks()) marks.push_back(root.top[m]);
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    t.graph = MarkedGraph(FiniteGraph(static_cast<int>(names_.size()), std::move(edges_)), marks);
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) t.index.emplace(names_[i], i);
    t.names = std::move(names_);
    return t;
  }

 private:
  int add(const std::vector<Step>& path, int local) {
    if (static_cast<int>(names_.size()) >= kMaxOrder) {
      throw Error(ErrorKind::BoundExceeded, "truncation has too many vertices");
    }
    names_.push_back(VertexName{path, local});
    return static_cast<int>(names_.size()) - 1;
  }

  std::vector<VertexName> names_;
  std::vector<Edge> edges_;
};

}  // namespace

TruncatedGraph truncate(const Presentation& p, Truncation t) {
  if (t.depth < 0 || t.copies < 1) throw Error(ErrorKind::InvalidArgument, "bad truncation parameters");
  TruncationBuilder b;
  std::vector<Step> path;
  auto root = b.place(p, t.depth, t.copies, path);
  return b.finish(p, root);
}

MarkedGraph denote_truncation(const Presentation& p, Truncation t) { return truncate(p, t).graph; }

Ordinal contribution(const Template& t) {
  if (auto* c = std::get_if<ConcreteTemplate>(&t)) {
    Ordinal r = raw_rank(*c->part);
    return c->mult.is_omega() ? r.successor() : r;
  }
  return family_contribution(std::get<FamilyTemplate>(t).gen);
}

Ordinal raw_rank(const Presentation& p) {
  if (p.is_base()) return Ordinal::finite(0);
  Ordinal best;
  for (const Template& t : p.as_node().templates) best = std::max(best, contribution(t));
  return best;
}

bool is_normal_form(const Presentation& p) {
  if (p.is_base()) return true;
  const Ordinal r = raw_rank(p);
  for (const Template& t : p.as_node().templates) {
    auto* c = std::get_if<ConcreteTemplate>(&t);
    if (!c) continue;
    if (!is_normal_form(*c->part)) return false;
    if (!c->mult.is_omega() && !c->part->is_base() && raw_rank(*c->part) == r) return false;
  }
  return true;
}

Ordinal rank(const Presentation& p) {
  if (!is_normal_form(p)) throw Error(ErrorKind::NotNormalForm, "rank needs a normal-form presentation");
  return raw_rank(p);
}

std::vector<int> kernel(const Presentation& p) {
  if (!is_normal_form(p)) throw Error(ErrorKind::NotNormalForm, "kernel needs a normal-form presentation");
  if (p.is_base()) return {};
  const auto& node = p.as_node();
  const Ordinal r = raw_rank(p);
  std::vector<Ordinal> at(node.kernel.order());
  for (const Template& t : node.templates) {
    const Ordinal c = contribution(t);
    const Attachment& a = attachment_of(t);
    for (auto [port, anchor] : a.ports) at[anchor] = std::max(at[anchor], c);
    for (int anchor : a.all) at[anchor] = std::max(at[anchor], c);
  }
  std::vector<int> out;
  for (int v = 0; v < node.kernel.order(); ++v)
    if (at[v] == r) out.push_back(v);
  return out;
}

namespace {

std::vector<Template> merge_templates(std::vector<Template> ts) {
  std::vector<Template> out;
  for (auto& t : ts) {
    bool merged = false;
    for (auto& o : out) {
      if (t.index() != o.index()) continue;
      if (auto* c = std::get_if<ConcreteTemplate>(&t)) {
        auto& oc = std::get<ConcreteTemplate>(o);
        if (!(c->attach == oc.attach) || !(c->part == oc.part || *c->part == *oc.part)) continue;
        if (c->mult.is_omega() || oc.mult.is_omega()) {
          oc.mult = Multiplicity::omega();
        } else {
          oc.mult = Multiplicity::finite(c->mult.count() + oc.mult.count());
        }
        merged = true;
      } else {
        auto& f = std::get<FamilyTemplate>(t);
        auto& of = std::get<FamilyTemplate>(o);
        merged = f.gen == of.gen && f.attach == of.attach;
      }
      if (merged) break;
    }
    if (!merged) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

Presentation normalize(const Presentation& p) {
  if (p.is_base()) return p;
  const auto& node = p.as_node();
  int order = node.kernel.order();
  std::set<Edge> kedges(node.kernel.edges().begin(), node.kernel.edges().end());
  std::vector<Template> ts;
  for (const Template& t : node.templates) {
    if (auto* c = std::get_if<ConcreteTemplate>(&t)) {
      auto part = share(normalize(*c->part));
      ts.push_back(ConcreteTemplate{part, c->mult, c->attach});
    } else {
      ts.push_back(t);
    }
  }
  while (true) {
    Ordinal r;
    for (const Template& t : ts) r = std::max(r, contribution(t));
    auto it = std::find_if(ts.begin(), ts.end(), [&](const Template& t) {
      auto* c = std::get_if<ConcreteTemplate>(&t);
      return c && !c->mult.is_omega() && !c->part->is_base() && raw_rank(*c->part) == r;
    });
    if (it == ts.end()) break;
    ConcreteTemplate flat = std::get<ConcreteTemplate>(*it);
    ts.erase(it);
    const auto& sub = flat.part->as_node();
    for (int copy = 0; copy < flat.mult.count(); ++copy) {
      const int off = order;
      order += sub.kernel.order();
      for (const Edge& e : sub.kernel.edges()) kedges.insert(Edge(off + e.u, off + e.v));
      for (auto [port, anchor] : flat.attach.ports) kedges.insert(Edge(off + port, anchor));
      for (int anchor : flat.attach.all)
        for (int v = 0; v < sub.kernel.order(); ++v) kedges.insert(Edge(off + v, anchor));
      for (const Template& st : sub.templates) {
        Template moved = st;
        Attachment& a = std::visit([](auto& x) -> Attachment& { return x.attach; }, moved);
        for (auto& [port, anchor] : a.ports) anchor += off;
        for (int& anchor : a.all) anchor += off;
        a.all.insert(a.all.end(), flat.attach.all.begin(), flat.attach.all.end());
        a = canonical(a);
        ts.push_back(std::move(moved));
      }
    }
  }
  ts = merge_templates(std::move(ts));
  return Presentation::node(FiniteGraph(order, std::vector<Edge>(kedges.begin(), kedges.end())),
                            node.kernel_marks, std::move(ts));
}

int depth(const Presentation& p, int tree_cap) {
  if (p.is_base()) return 0;
  int best = 0;
  for (const Template& t : p.as_node().templates) {
    if (auto* c = std::get_if<ConcreteTemplate>(&t)) {
      best = std::max(best, depth(*c->part, tree_cap));
    } else {
      switch (std::get<FamilyTemplate>(t).gen) {
        case Generator::Fan: best = std::max(best, 1); break;
        case Generator::MinTree: best = std::max(best, tree_cap); break;
        default: break;
      }
    }
  }
  return best + 1;
}

bool has_family(const Presentation& p, Generator g) {
  if (p.is_base()) return false;
  for (const Template& t : p.as_node().templates) {
    if (auto* c = std::get_if<ConcreteTemplate>(&t)) {
      if (has_family(*c->part, g)) return true;
    } else if (std::get<FamilyTemplate>(t).gen == g) {
      return true;
    }
  }
  return false;
}

Presentation suspension(const Presentation& p) {
  if (p.is_base()) {
    const auto& g = p.as_base().graph;
    return Presentation::base(MarkedGraph(suspension(g.graph()), g.marked()));
  }
  const auto& node = p.as_node();
  const int s = node.kernel.order();
  std::vector<Edge> es = node.kernel.edges();
  for (int v = 0; v < s; ++v) es.emplace_back(v, s);
  std::vector<Template> ts = node.templates;
  for (Template& t : ts) {
    Attachment& a = std::visit([](auto& x) -> Attachment& { return x.attach; }, t);
    a.all.push_back(s);
  }
  return Presentation::node(FiniteGraph(s + 1, std::move(es)), node.kernel_marks, std::move(ts));
}

Presentation marked_suspension(const Presentation& p) {
  Presentation s = suspension(p);
  std::vector<int> marks = p.top_marks();
  marks.push_back(p.top_order());
  return with_kernel_marks(s, std::move(marks));
}

Presentation with_kernel_marks(const Presentation& p, std::vector<int> marks) {
  if (p.is_base()) return Presentation::base(MarkedGraph(p.as_base().graph.graph(), std::move(marks)));
  const auto& node = p.as_node();
  return Presentation::node(node.kernel, std::move(marks), node.templates);
}

}  // namespace minorlab
