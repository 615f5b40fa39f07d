#pragma once

#include <string>
#include <string_view>

#include "flowgraph/structure_graph.hpp"

namespace flowgraph {

struct DotOptions {
  bool tree{true};
  bool control_flow{true};
  bool data_flow{true};
};

namespace detail {

inline std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string dot_node(ItemId id) { return "n" + std::to_string(index(id)); }

}  // namespace detail

// Graphviz rendering. Containment edges are solid, cfNext edges are labeled,
// dfNext edges are dashed.
inline std::string to_dot(const StructureGraph& graph, const DotOptions& options = {}) {
  std::string out = "digraph flowgraph {\n  node [fontname=\"monospace\"];\n";
  for (const auto& item : graph.items) {
    std::string shape = item.is_flow_instr() ? "box" : is_variable(item.kind) ? "ellipse" : "note";
    out += "  " + detail::dot_node(item.id) + " [label=\"" + std::string(to_string(item.kind)) +
           "\\n" + detail::dot_escape(item.txt) + "\" shape=" + shape + "];\n";
  }
  if (options.tree) {
    for (const auto& item : graph.items) {
      for (const auto& c : children_of(item)) {
        out += "  " + detail::dot_node(item.id) + " -> " + detail::dot_node(c.child) +
               " [label=\"" + std::string(to_string(c.role)) + "\" color=gray];\n";
      }
    }
  }
  if (options.control_flow) {
    for (const auto& item : graph.items) {
      for (ItemId t : item.cf_next) {
        out += "  " + detail::dot_node(item.id) + " -> " + detail::dot_node(t) +
               " [label=\"cfNext\" color=blue];\n";
      }
    }
  }
  if (options.data_flow) {
    for (const auto& item : graph.items) {
      for (ItemId t : item.df_next) {
        out += "  " + detail::dot_node(item.id) + " -> " + detail::dot_node(t) +
               " [style=dashed color=red];\n";
      }
    }
  }
  return out + "}\n";
}

}  // namespace flowgraph
