#pragma once

#include <optional>
#include <vector>

#include "flowgraph/error.hpp"
#include "flowgraph/structure_graph.hpp"

namespace flowgraph {

struct ParentRef {
  ItemId parent;
  Role role;
  std::size_t index;
};

// Parent links of the containment tree, for walking outward from an item.
class CfContext {
 public:
  explicit CfContext(const StructureGraph& graph) : parents_(graph.size()) {
    for (const auto& item : graph.items) {
      for (const auto& c : children_of(item)) {
        parents_.at(index(c.child)) = ParentRef{item.id, c.role, c.index};
      }
    }
  }

  const std::optional<ParentRef>& parent(ItemId id) const { return parents_.at(index(id)); }

  // Innermost Loop strictly containing `id`.
  std::optional<ItemId> enclosing_loop(const StructureGraph& graph, ItemId id) const {
    for (auto p = parent(id); p; p = parent(p->parent)) {
      if (graph.at(p->parent).kind == ItemKind::Loop) return p->parent;
    }
    return std::nullopt;
  }

 private:
  std::vector<std::optional<ParentRef>> parents_;
};

namespace detail {

inline std::optional<ItemId> first_in_sequence(const StructureGraph& graph,
                                               std::span<const ItemId> stmts);

}  // namespace detail

// The first flow instruction reached by a depth-first descent into `id`, or
// nothing when the subtree holds none (e.g. nested empty blocks).
inline std::optional<ItemId> first_flow_instruction(ItemId id, const StructureGraph& graph) {
  const Item& item = graph.at(id);
  switch (item.kind) {
    case ItemKind::Block:
      return detail::first_in_sequence(graph, item.stmts);
    case ItemKind::Label:
      return first_flow_instruction(*item.stmt, graph);
    case ItemKind::If:
    case ItemKind::Loop:
      return item.test;
    case ItemKind::Var:
    case ItemKind::Param:
      return std::nullopt;
    default:
      return id;
  }
}

namespace detail {

inline std::optional<ItemId> first_in_sequence(const StructureGraph& graph,
                                               std::span<const ItemId> stmts) {
  for (ItemId s : stmts) {
    if (auto f = first_flow_instruction(s, graph)) return f;
  }
  return std::nullopt;
}

}  // namespace detail

// Where control goes once `id` (a statement in the method body) completes
// normally: the first flow instruction of the next sibling that has one,
// walking outward; back to the test when leaving a loop body; the Exit when
// nothing follows.
inline ItemId flow_successor_after(ItemId id, const StructureGraph& graph,
                                   const CfContext& ctx) {
  ItemId current = id;
  for (;;) {
    const auto& p = ctx.parent(current);
    if (!p) return graph.exit();
    const Item& parent = graph.at(p->parent);
    switch (parent.kind) {
      case ItemKind::Method:
      case ItemKind::Block: {
        std::span<const ItemId> rest(parent.stmts);
        if (auto f = detail::first_in_sequence(graph, rest.subspan(p->index + 1))) return *f;
        if (parent.kind == ItemKind::Method) return graph.exit();
        break;
      }
      case ItemKind::Loop:
        if (p->role == Role::Body) return *parent.test;
        break;
      default:
        break;
    }
    current = p->parent;
  }
}

inline ItemId flow_successor_after(ItemId id, const StructureGraph& graph) {
  return flow_successor_after(id, graph, CfContext(graph));
}

namespace detail {

// Follows Label -> stmt until something other than a Label.
inline ItemId unwrap_labels(const StructureGraph& graph, ItemId id) {
  while (graph.at(id).kind == ItemKind::Label) id = *graph.at(id).stmt;
  return id;
}

inline IdSet control_successors(const StructureGraph& graph, const CfContext& ctx,
                                const Item& item) {
  switch (item.kind) {
    case ItemKind::Method: {
      auto first = first_in_sequence(graph, item.stmts);
      return {first.value_or(graph.exit())};
    }
    case ItemKind::Exit:
      return {};
    case ItemKind::Return:
      return {graph.exit()};
    case ItemKind::Expr: {
      const auto& p = ctx.parent(item.id);
      const Item& owner = graph.at(p->parent);
      if (owner.kind == ItemKind::Loop) {
        ItemId into_body = first_flow_instruction(*owner.body, graph).value_or(item.id);
        return {into_body, flow_successor_after(owner.id, graph, ctx)};
      }
      ItemId after_if = flow_successor_after(owner.id, graph, ctx);
      ItemId into_then = first_flow_instruction(*owner.then_branch, graph).value_or(after_if);
      ItemId other = owner.else_branch
                         ? first_flow_instruction(*owner.else_branch, graph).value_or(after_if)
                         : after_if;
      return {into_then, other};
    }
    case ItemKind::Break: {
      if (item.target) return {flow_successor_after(*item.target, graph, ctx)};
      auto loop = ctx.enclosing_loop(graph, item.id);
      if (!loop) throw Error(ErrorKind::JumpOutsideLoop, "'" + item.txt + "' is not inside a loop");
      return {flow_successor_after(*loop, graph, ctx)};
    }
    case ItemKind::Continue: {
      if (item.target) {
        ItemId labeled = unwrap_labels(graph, *item.target);
        if (graph.at(labeled).kind != ItemKind::Loop) {
          throw Error(ErrorKind::ContinueTargetNotLoop,
                      "'" + item.txt + "' names label '" + graph.at(*item.target).name +
                          "', which does not label a loop");
        }
        return {*graph.at(labeled).test};
      }
      auto loop = ctx.enclosing_loop(graph, item.id);
      if (!loop) throw Error(ErrorKind::JumpOutsideLoop, "'" + item.txt + "' is not inside a loop");
      return {*graph.at(*loop).test};
    }
    default:
      return {flow_successor_after(item.id, graph, ctx)};
  }
}

}  // namespace detail

// Fills cfNext/cfPrev on every flow instruction of `graph`.
inline void synthesize_control_flow(StructureGraph& graph) {
  for (const auto& item : graph.items) {
    if (!item.cf_next.empty() || !item.cf_prev.empty()) {
      throw Error(ErrorKind::Precondition, "control flow links are already present");
    }
  }
  CfContext ctx(graph);
  std::vector<IdSet> next(graph.size());
  for (const auto& item : graph.items) {
    if (item.is_flow_instr()) next[index(item.id)] = detail::control_successors(graph, ctx, item);
  }
  for (std::size_t i = 0; i < next.size(); ++i) {
    for (ItemId target : next[i]) graph.at(target).cf_prev.insert(item_id(i));
    graph.items[i].cf_next = std::move(next[i]);
  }
}

// cfPrev is never stored on disk; rebuild it from cfNext.
inline void rebuild_cf_prev(StructureGraph& graph) {
  for (auto& item : graph.items) item.cf_prev.clear();
  for (const auto& item : graph.items) {
    for (ItemId target : item.cf_next) graph.at(target).cf_prev.insert(item.id);
  }
}

}  // namespace flowgraph
