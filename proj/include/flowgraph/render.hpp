#pragma once

#include <string>

#include "flowgraph/ast.hpp"

namespace flowgraph {

// Canonical concrete syntax for an expression: single spaces around binary
// operators, unary operators attached to their operand, parentheses only
// where the source had them.
inline std::string render_expression(const AstNode& e) {
  switch (e.kind) {
    case AstKind::IntLit:
      return std::to_string(e.int_value);
    case AstKind::BoolLit:
      return e.bool_value ? "true" : "false";
    case AstKind::VarRef:
      return e.name;
    case AstKind::ParenExpr:
      return "(" + render_expression(e.child(0)) + ")";
    case AstKind::UnaryExpr: {
      std::string operand = render_expression(e.child(0));
      // "- -x" must not collapse into the decrement token.
      if (e.op == "-" && !operand.empty() && operand.front() == '-') {
        return e.op + " " + operand;
      }
      return e.op + operand;
    }
    case AstKind::BinaryExpr:
      return render_expression(e.child(0)) + " " + e.op + " " +
             render_expression(e.child(1));
    default:
      return {};
  }
}

// The txt of the item a node becomes in the structure graph.
inline std::string render_txt(const AstNode& node) {
  switch (node.kind) {
    case AstKind::MethodDecl: {
      std::string out = node.name + "(";
      bool first = true;
      for (const auto& p : node.params()) {
        if (!first) out += ", ";
        out += p.name;
        first = false;
      }
      return out + ")";
    }
    case AstKind::ParamDecl:
      return node.name;
    case AstKind::VarDeclStmt: {
      std::string out = std::string(to_string(node.type)) + " " + node.name;
      if (!node.children.empty()) out += " = " + render_expression(node.child(0));
      return out + ";";
    }
    case AstKind::AssignStmt:
      return node.name + " = " + render_expression(node.child(0)) + ";";
    case AstKind::IncDecStmt:
      return node.name + node.op + ";";
    case AstKind::ReturnStmt:
      if (node.children.empty()) return "return;";
      return "return " + render_expression(node.child(0)) + ";";
    case AstKind::BreakStmt:
      return node.name.empty() ? "break;" : "break " + node.name + ";";
    case AstKind::ContinueStmt:
      return node.name.empty() ? "continue;" : "continue " + node.name + ";";
    case AstKind::BlockStmt:
      return "{...}";
    case AstKind::IfStmt:
      return "if (" + render_expression(node.child(0)) + ")";
    case AstKind::WhileStmt:
      return "while (" + render_expression(node.child(0)) + ")";
    case AstKind::LabeledStmt:
      return node.name + ":";
    default:
      return render_expression(node);
  }
}

namespace detail {

inline void render_statement(const AstNode& s, int depth, std::string& out);

inline std::string indent(int depth) { return std::string(static_cast<std::size_t>(depth) * 4, ' '); }

// Renders a block body, or a single statement, following `head` on its line.
inline void render_nested(const AstNode& s, int depth, std::string& out) {
  if (s.kind == AstKind::BlockStmt) {
    out += " {\n";
    for (const auto& c : s.children) render_statement(c, depth + 1, out);
    out += indent(depth) + "}";
  } else {
    out += "\n";
    render_statement(s, depth + 1, out);
    out.pop_back();  // newline added by the caller
  }
}

inline void render_statement(const AstNode& s, int depth, std::string& out) {
  switch (s.kind) {
    case AstKind::BlockStmt:
      out += indent(depth) + "{";
      if (s.children.empty()) {
        out += "}\n";
        return;
      }
      out += "\n";
      for (const auto& c : s.children) render_statement(c, depth + 1, out);
      out += indent(depth) + "}\n";
      return;
    case AstKind::IfStmt:
      out += indent(depth) + render_txt(s);
      render_nested(s.child(1), depth, out);
      if (s.children.size() > 2) {
        out += s.child(1).kind == AstKind::BlockStmt ? " " : "\n" + indent(depth);
        out += "else";
        render_nested(s.child(2), depth, out);
      }
      out += "\n";
      return;
    case AstKind::WhileStmt:
      out += indent(depth) + render_txt(s);
      render_nested(s.child(1), depth, out);
      out += "\n";
      return;
    case AstKind::LabeledStmt: {
      out += indent(depth) + render_txt(s) + "\n";
      render_statement(s.child(0), depth, out);
      return;
    }
    default:
      out += indent(depth) + render_txt(s) + "\n";
      return;
  }
}

inline std::string render_modifiers(const AstNode& n) {
  std::string out;
  for (const auto& m : n.modifiers) out += m + " ";
  return out;
}

}  // namespace detail

// Pretty-prints a whole compilation unit. Re-parsing the result yields a
// structurally equal tree.
inline std::string render_java(const AstNode& unit) {
  const AstNode& cls = unit.child(0);
  const AstNode& method = cls.child(0);
  std::string out = detail::render_modifiers(cls) + "class " + cls.name + " {\n";
  out += detail::indent(1) + detail::render_modifiers(method) +
         std::string(to_string(method.type)) + " " + method.name + "(";
  bool first = true;
  for (const auto& p : method.params()) {
    if (!first) out += ", ";
    out += std::string(to_string(p.type)) + " " + p.name;
    first = false;
  }
  out += ") {\n";
  for (const auto& s : method.body().children) detail::render_statement(s, 2, out);
  out += detail::indent(1) + "}\n}\n";
  return out;
}

}  // namespace flowgraph
