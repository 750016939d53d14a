#pragma once

#include <variant>
#include <vector>

#include "minorlab/graph.hpp"
#include "minorlab/order.hpp"
#include "minorlab/presentation.hpp"

namespace minorlab {

// T_alpha for finite alpha or alpha = omega.
Presentation minimal_tree(Ordinal alpha);

// T(X): ground elements become a root joined to every vertex of omega copies;
// collections get a root joined to the roots of omega copies of each member.
Presentation encode_T(const HFSet& x, const std::vector<FiniteGraph>& ground);

using GCRepresentative = std::variant<MarkedGraph, Presentation>;

// n isolated kernel vertices plus, for each representative and each injection
// of its marks into them, an omega-template matched along that injection.
Presentation build_GC(const std::vector<GCRepresentative>& reps, int n);

// Rooted tree of the given depth whose non-leaf vertices have degree mu, with
// edge labels in 0..mu-1 forming a bijection at every non-leaf vertex.
struct LabeledTree {
  int mu = 2;
  std::vector<int> parent;  // -1 at the root
  std::vector<int> label;   // label of the edge to the parent
  std::vector<int> depth;

  int order() const { return static_cast<int>(parent.size()); }
  FiniteGraph graph() const;
  bool labels_valid() const;
};

LabeledTree labeled_tree(int depth, int mu);
long long labeled_tree_order(int depth, int mu);

// Copies of g along the tree, where tree edge xy with label i glues the i-th marked vertex of both copies.
FiniteGraph self_amalgamation(const MarkedGraph& g, int n);
// The self-amalgamation of the double marked suspension of g.
FiniteGraph u_map(const MarkedGraph& g, int n);

enum class GadgetSize { TPlus4, TPlus2 };

// Glues a fresh clique of size t+4 (or t+2) onto each marked vertex and forgets the marks.
FiniteGraph unmark_clique_gadget(const MarkedGraph& mg, int t, GadgetSize size = GadgetSize::TPlus4);

// Hangs a minimal tree of the presentation's rank at each kernel mark and forgets the marks.
Presentation unmark_by_trees(const Presentation& p);

}  // namespace minorlab
