#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flowgraph/error.hpp"

namespace flowgraph {

enum class AstKind {
  CompilationUnit,
  ClassDecl,
  MethodDecl,
  ParamDecl,
  VarDeclStmt,
  AssignStmt,
  IncDecStmt,
  ReturnStmt,
  BlockStmt,
  IfStmt,
  WhileStmt,
  LabeledStmt,
  BreakStmt,
  ContinueStmt,
  BinaryExpr,
  UnaryExpr,
  VarRef,
  IntLit,
  BoolLit,
  ParenExpr,
};

inline std::string_view to_string(AstKind kind) {
  switch (kind) {
    case AstKind::CompilationUnit: return "CompilationUnit";
    case AstKind::ClassDecl: return "ClassDecl";
    case AstKind::MethodDecl: return "MethodDecl";
    case AstKind::ParamDecl: return "ParamDecl";
    case AstKind::VarDeclStmt: return "VarDeclStmt";
    case AstKind::AssignStmt: return "AssignStmt";
    case AstKind::IncDecStmt: return "IncDecStmt";
    case AstKind::ReturnStmt: return "ReturnStmt";
    case AstKind::BlockStmt: return "BlockStmt";
    case AstKind::IfStmt: return "IfStmt";
    case AstKind::WhileStmt: return "WhileStmt";
    case AstKind::LabeledStmt: return "LabeledStmt";
    case AstKind::BreakStmt: return "BreakStmt";
    case AstKind::ContinueStmt: return "ContinueStmt";
    case AstKind::BinaryExpr: return "BinaryExpr";
    case AstKind::UnaryExpr: return "UnaryExpr";
    case AstKind::VarRef: return "VarRef";
    case AstKind::IntLit: return "IntLit";
    case AstKind::BoolLit: return "BoolLit";
    case AstKind::ParenExpr: return "ParenExpr";
  }
  return "?";
}

enum class ScalarType { None, Int, Boolean, Void };

inline std::string_view to_string(ScalarType type) {
  switch (type) {
    case ScalarType::Int: return "int";
    case ScalarType::Boolean: return "boolean";
    case ScalarType::Void: return "void";
    case ScalarType::None: break;
  }
  return "";
}

struct SourceSpan {
  SourcePos begin;
  SourcePos end;  // one past the last character

  bool contains(const SourceSpan& inner) const {
    return begin <= inner.begin && inner.end <= end;
  }

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

// Concrete syntax tree node. Child roles by kind:
//
//   CompilationUnit  [ClassDecl]
//   ClassDecl        [MethodDecl]                    name, modifiers
//   MethodDecl       [ParamDecl..., BlockStmt body]  name, type, modifiers
//   ParamDecl        []                              name, type
//   VarDeclStmt      [init?]                         name, type
//   AssignStmt       [value]                         name
//   IncDecStmt       []                              name, op ("++" | "--")
//   ReturnStmt       [value?]
//   BlockStmt        [stmt...]
//   IfStmt           [cond, then, else?]
//   WhileStmt        [cond, body]
//   LabeledStmt      [stmt]                          name (label)
//   BreakStmt        []                              name (optional label)
//   ContinueStmt     []                              name (optional label)
//   BinaryExpr       [lhs, rhs]                      op
//   UnaryExpr        [operand]                       op ("-" | "!")
//   VarRef           []                              name
//   IntLit           []                              int_value
//   BoolLit          []                              bool_value
//   ParenExpr        [inner]
//
// Expression nodes carry their inferred `type` after parsing.
struct AstNode {
  AstKind kind{AstKind::CompilationUnit};
  std::string name;
  std::string op;
  ScalarType type{ScalarType::None};
  std::vector<std::string> modifiers;
  std::int64_t int_value{0};
  bool bool_value{false};
  std::vector<AstNode> children;
  SourceSpan span;

  const AstNode& child(std::size_t i) const { return children.at(i); }

  // MethodDecl helpers.
  std::span<const AstNode> params() const {
    return std::span<const AstNode>(children).first(children.size() - 1);
  }
  const AstNode& body() const { return children.back(); }

  bool is_statement() const {
    switch (kind) {
      case AstKind::VarDeclStmt:
      case AstKind::AssignStmt:
      case AstKind::IncDecStmt:
      case AstKind::ReturnStmt:
      case AstKind::BlockStmt:
      case AstKind::IfStmt:
      case AstKind::WhileStmt:
      case AstKind::LabeledStmt:
      case AstKind::BreakStmt:
      case AstKind::ContinueStmt:
        return true;
      default:
        return false;
    }
  }

  bool is_expression() const {
    switch (kind) {
      case AstKind::BinaryExpr:
      case AstKind::UnaryExpr:
      case AstKind::VarRef:
      case AstKind::IntLit:
      case AstKind::BoolLit:
      case AstKind::ParenExpr:
        return true;
      default:
        return false;
    }
  }
};

// Compares kinds, roles, names, operators, types and literals; ignores spans.
inline bool structurally_equal(const AstNode& a, const AstNode& b) {
  if (a.kind != b.kind || a.name != b.name || a.op != b.op || a.type != b.type ||
      a.modifiers != b.modifiers || a.int_value != b.int_value ||
      a.bool_value != b.bool_value || a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structurally_equal(a.children[i], b.children[i])) return false;
  }
  return true;
}

// The single method of a compilation unit.
inline const AstNode& method_of(const AstNode& unit) {
  return unit.child(0).child(0);
}

}  // namespace flowgraph
