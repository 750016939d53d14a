#pragma once

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "minorlab/graph.hpp"
#include "minorlab/ordinal.hpp"

namespace minorlab {

class Multiplicity {
 public:
  static Multiplicity omega() { return Multiplicity(0); }
  static Multiplicity finite(int k);

  bool is_omega() const { return k_ == 0; }
  int count() const { return k_; }

  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;

 private:
  explicit Multiplicity(int k) : k_(k) {}
  int k_;
};

// How each copy of a part is joined to the kernel. `ports` lists
// (top-level part vertex, kernel vertex) edges; every vertex of the copy is
// joined to each kernel vertex in `all`. Suspensions over ported parts need both.
struct Attachment {
  std::vector<std::pair<int, int>> ports;
  std::vector<int> all;

  static Attachment none() { return {}; }
  static Attachment to_ports(std::vector<std::pair<int, int>> links);
  static Attachment to_all(std::vector<int> anchors);

  bool empty() const { return ports.empty() && all.empty(); }
  friend bool operator==(const Attachment&, const Attachment&) = default;
};

enum class Generator { Clique, Path, Cycle, MinTree, Fan };

std::string_view to_string(Generator g);
Generator parse_generator(std::string_view name);

class Presentation;
using PresPtr = std::shared_ptr<const Presentation>;

struct ConcreteTemplate {
  PresPtr part;
  Multiplicity mult = Multiplicity::omega();
  Attachment attach;
};

// Member n of the family, for every n, with omega copies each.
struct FamilyTemplate {
  Generator gen = Generator::Clique;
  Attachment attach;
};

using Template = std::variant<ConcreteTemplate, FamilyTemplate>;

const Attachment& attachment_of(const Template& t);

struct BasePresentation {
  MarkedGraph graph;
};

struct NodePresentation {
  FiniteGraph kernel;
  std::vector<int> kernel_marks;
  std::vector<Template> templates;
};

class Presentation {
 public:
  static Presentation base(MarkedGraph graph);
  // Validates anchors, ports and that some template is infinite.
  static Presentation node(FiniteGraph kernel, std::vector<int> kernel_marks,
                           std::vector<Template> templates);

  bool is_base() const { return std::holds_alternative<BasePresentation>(body_); }
  const BasePresentation& as_base() const { return std::get<BasePresentation>(body_); }
  const NodePresentation& as_node() const { return std::get<NodePresentation>(body_); }

  // Base: its vertices; Node: its kernel vertices.
  int top_order() const;
  const std::vector<int>& top_marks() const;
  const FiniteGraph& top_graph() const;

  friend bool operator==(const Presentation& a, const Presentation& b);

 private:
  std::variant<BasePresentation, NodePresentation> body_;
};

PresPtr share(Presentation p);

// Member n of a generator family. Port 0 is vertex 0 (the root for trees, the apex for fans).
PresPtr family_member(Generator g, int n);
// Supremum over members of (member rank + 1).
Ordinal family_contribution(Generator g);
PresPtr minimal_tree_presentation(int n);

struct Truncation {
  int depth = 1;
  int copies = 1;
};

struct Step {
  int tmpl = 0;
  int member = 0;
  int copy = 0;

  friend auto operator<=>(const Step&, const Step&) = default;
};

// Path of (template, member, copy) steps down to a presentation, then a top-level vertex there.
struct VertexName {
  std::vector<Step> path;
  int local = 0;

  friend auto operator<=>(const VertexName&, const VertexName&) = default;
};

std::string to_string(const VertexName& name);

struct TruncatedGraph {
  MarkedGraph graph;
  std::vector<VertexName> names;
  std::map<VertexName, int> index;
};

TruncatedGraph truncate(const Presentation& p, Truncation t);
MarkedGraph denote_truncation(const Presentation& p, Truncation t);

bool is_normal_form(const Presentation& p);
Ordinal rank(const Presentation& p);
// Rank without the normal-form precondition.
Ordinal raw_rank(const Presentation& p);
Ordinal contribution(const Template& t);
std::vector<int> kernel(const Presentation& p);
Presentation normalize(const Presentation& p);
// Nesting depth; trees of a MINTREE family count as `tree_cap` deep.
int depth(const Presentation& p, int tree_cap = 4);
bool has_family(const Presentation& p, Generator g);

Presentation suspension(const Presentation& p);
Presentation marked_suspension(const Presentation& p);
// Same presentation with kernel_marks replaced.
Presentation with_kernel_marks(const Presentation& p, std::vector<int> marks);

// s-expression text format.
Presentation parse_presentation(const std::string& text);
std::string emit_presentation(const Presentation& p);

}  // namespace minorlab
