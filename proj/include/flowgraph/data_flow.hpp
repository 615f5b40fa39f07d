#pragma once

#include <algorithm>
#include <deque>
#include <iterator>
#include <set>
#include <vector>

#include "flowgraph/error.hpp"
#include "flowgraph/structure_graph.hpp"

namespace flowgraph {

// "The definition of `var` at `def_site` may reach this point."
struct ReachFact {
  ItemId def_site;
  ItemId var;

  friend auto operator<=>(const ReachFact&, const ReachFact&) = default;
};

using FactSet = std::set<ReachFact>;

struct ReachState {
  std::vector<FactSet> in;   // indexed by item id; empty for non-flow items
  std::vector<FactSet> out;
  std::size_t iterations{0};

  const FactSet& in_of(ItemId id) const { return in.at(index(id)); }
  const FactSet& out_of(ItemId id) const { return out.at(index(id)); }
};

// A dfNext link m -> n.
struct DataEdge {
  ItemId from;
  ItemId to;

  friend auto operator<=>(const DataEdge&, const DataEdge&) = default;
};

using DataEdgeSet = std::set<DataEdge>;

namespace detail {

inline void require_control_flow(const StructureGraph& graph) {
  if (!graph.has_control_flow()) {
    throw Error(ErrorKind::Precondition,
                "control flow links are missing; run control flow synthesis first");
  }
}

inline bool intersects(const IdSet& a, const IdSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

// out(n) = gen(n) ∪ (in(n) \ kill(n)); kill(n) drops other sites' facts
// for the variables n defines.
inline FactSet transfer(const Item& node, const FactSet& in) {
  FactSet out;
  for (const auto& fact : in) {
    if (!node.defs.contains(fact.var)) out.insert(fact);
  }
  for (ItemId v : node.defs) out.insert(ReachFact{node.id, v});
  return out;
}

inline FactSet meet(const ReachState& state, const Item& node) {
  FactSet in;
  for (ItemId pred : node.cf_prev) {
    const auto& o = state.out_of(pred);
    in.insert(o.begin(), o.end());
  }
  return in;
}

}  // namespace detail

// Iterative reaching definitions over cfNext, FIFO worklist seeded with every
// flow instruction in id order.
inline ReachState reaching_definitions(const StructureGraph& graph) {
  detail::require_control_flow(graph);
  ReachState state;
  state.in.resize(graph.size());
  state.out.resize(graph.size());

  std::deque<ItemId> worklist;
  std::vector<bool> queued(graph.size(), false);
  for (const auto& item : graph.items) {
    if (item.is_flow_instr()) {
      worklist.push_back(item.id);
      queued[index(item.id)] = true;
    }
  }

  while (!worklist.empty()) {
    ItemId id = worklist.front();
    worklist.pop_front();
    queued[index(id)] = false;
    ++state.iterations;

    const Item& node = graph.at(id);
    state.in[index(id)] = detail::meet(state, node);
    FactSet out = detail::transfer(node, state.in[index(id)]);
    if (out != state.out[index(id)]) {
      state.out[index(id)] = std::move(out);
      for (ItemId succ : node.cf_next) {
        if (!queued[index(succ)]) {
          worklist.push_back(succ);
          queued[index(succ)] = true;
        }
      }
    }
  }
  return state;
}

// True when one more round-robin sweep over all flow instructions would not
// change any in/out set.
inline bool is_fixpoint(const StructureGraph& graph, const ReachState& state) {
  for (const auto& node : graph.items) {
    if (!node.is_flow_instr()) continue;
    FactSet in = detail::meet(state, node);
    if (in != state.in_of(node.id)) return false;
    if (detail::transfer(node, in) != state.out_of(node.id)) return false;
  }
  return true;
}

inline DataEdgeSet data_flow_edges_worklist(const StructureGraph& graph) {
  ReachState state = reaching_definitions(graph);
  DataEdgeSet edges;
  for (const auto& node : graph.items) {
    if (!node.is_flow_instr()) continue;
    for (const auto& fact : state.in_of(node.id)) {
      if (node.uses.contains(fact.var)) edges.insert({fact.def_site, node.id});
    }
  }
  return edges;
}

// Literal reading of the dfNext definition: is there a cfNext path
// m = n_0 -> ... -> n_k = n, k >= 1, along which some variable in
// def(m) ∩ use(n) is redefined by none of n_1 .. n_{k-1}?
//
// Enumerates paths with pairwise distinct interior nodes depth-first, carrying
// the still-undefined part of def(m) ∩ use(n); a branch is abandoned once that
// set is empty since extending a path only grows the interior union.
inline bool path_witness_exists(ItemId m, ItemId n, const StructureGraph& graph) {
  IdSet shared;
  const Item& from = graph.at(m);
  const Item& to = graph.at(n);
  std::set_intersection(from.defs.begin(), from.defs.end(), to.uses.begin(), to.uses.end(),
                        std::inserter(shared, shared.end()));
  if (shared.empty()) return false;

  std::vector<bool> on_path(graph.size(), false);

  // `node` is the next position on the path; `alive` excludes the defs of
  // every interior node so far.
  auto search = [&](auto&& self, ItemId node, const IdSet& alive) -> bool {
    if (node == n) return true;
    if (node == m || on_path[index(node)]) return false;
    IdSet remaining;
    for (ItemId v : alive) {
      if (!graph.at(node).defs.contains(v)) remaining.insert(v);
    }
    if (remaining.empty()) return false;
    on_path[index(node)] = true;
    for (ItemId next : graph.at(node).cf_next) {
      if (self(self, next, remaining)) {
        on_path[index(node)] = false;
        return true;
      }
    }
    on_path[index(node)] = false;
    return false;
  };

  for (ItemId next : from.cf_next) {
    if (search(search, next, shared)) return true;
  }
  return false;
}

inline DataEdgeSet data_flow_edges_bruteforce(const StructureGraph& graph) {
  detail::require_control_flow(graph);
  DataEdgeSet edges;
  for (const auto& m : graph.items) {
    if (!m.is_flow_instr() || m.defs.empty()) continue;
    for (const auto& n : graph.items) {
      if (!n.is_flow_instr() || !detail::intersects(m.defs, n.uses)) continue;
      if (path_witness_exists(m.id, n.id, graph)) edges.insert({m.id, n.id});
    }
  }
  return edges;
}

inline void apply_data_flow(StructureGraph& graph, const DataEdgeSet& edges) {
  for (auto& item : graph.items) item.df_next.clear();
  for (const auto& e : edges) graph.at(e.from).df_next.insert(e.to);
}

inline DataEdgeSet data_flow_edges(const StructureGraph& graph) {
  DataEdgeSet edges;
  for (const auto& item : graph.items) {
    for (ItemId to : item.df_next) edges.insert({item.id, to});
  }
  return edges;
}

inline void synthesize_data_flow_worklist(StructureGraph& graph) {
  apply_data_flow(graph, data_flow_edges_worklist(graph));
}

inline void synthesize_data_flow_bruteforce(StructureGraph& graph) {
  apply_data_flow(graph, data_flow_edges_bruteforce(graph));
}

}  // namespace flowgraph
