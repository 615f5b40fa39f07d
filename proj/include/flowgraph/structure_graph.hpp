#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flowgraph/ast.hpp"
#include "flowgraph/error.hpp"
#include "flowgraph/render.hpp"

namespace flowgraph {

// Dense, file-local item identifier.
enum class ItemId : std::uint32_t {};

constexpr std::size_t index(ItemId id) { return static_cast<std::size_t>(id); }
constexpr ItemId item_id(std::size_t i) { return static_cast<ItemId>(i); }

enum class ItemKind {
  Method,
  Exit,
  Block,
  If,
  Loop,
  Label,
  Break,
  Continue,
  Return,
  SimpleStmt,
  Expr,
  Var,
  Param,
};

inline constexpr ItemKind kAllItemKinds[] = {
    ItemKind::Method, ItemKind::Exit,     ItemKind::Block,  ItemKind::If,
    ItemKind::Loop,   ItemKind::Label,    ItemKind::Break,  ItemKind::Continue,
    ItemKind::Return, ItemKind::SimpleStmt, ItemKind::Expr, ItemKind::Var,
    ItemKind::Param,
};

inline std::string_view to_string(ItemKind kind) {
  switch (kind) {
    case ItemKind::Method: return "Method";
    case ItemKind::Exit: return "Exit";
    case ItemKind::Block: return "Block";
    case ItemKind::If: return "If";
    case ItemKind::Loop: return "Loop";
    case ItemKind::Label: return "Label";
    case ItemKind::Break: return "Break";
    case ItemKind::Continue: return "Continue";
    case ItemKind::Return: return "Return";
    case ItemKind::SimpleStmt: return "SimpleStmt";
    case ItemKind::Expr: return "Expr";
    case ItemKind::Var: return "Var";
    case ItemKind::Param: return "Param";
  }
  return "?";
}

inline std::optional<ItemKind> item_kind_from_string(std::string_view s) {
  for (auto k : kAllItemKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

// Items that take part in control flow. Blocks, labels, loops and ifs only
// structure the tree; variables and parameters are data.
constexpr bool is_flow_instr(ItemKind kind) {
  switch (kind) {
    case ItemKind::Method:
    case ItemKind::Exit:
    case ItemKind::Break:
    case ItemKind::Continue:
    case ItemKind::Return:
    case ItemKind::SimpleStmt:
    case ItemKind::Expr:
      return true;
    default:
      return false;
  }
}

constexpr bool is_variable(ItemKind kind) {
  return kind == ItemKind::Var || kind == ItemKind::Param;
}

using IdSet = std::set<ItemId>;

struct Item {
  ItemId id{};
  ItemKind kind{ItemKind::SimpleStmt};
  std::string txt;

  // Containment. Which slots are meaningful depends on `kind`:
  //   Method: params, vars, stmts, exit     Block: stmts
  //   If: test, then_branch, else_branch    Loop: test, body
  //   Label: name, stmt                     Break/Continue: target (not owned)
  std::vector<ItemId> params;
  std::vector<ItemId> vars;
  std::vector<ItemId> stmts;
  std::optional<ItemId> exit;
  std::optional<ItemId> test;
  std::optional<ItemId> then_branch;
  std::optional<ItemId> else_branch;
  std::optional<ItemId> body;
  std::optional<ItemId> stmt;
  std::optional<ItemId> target;
  std::string name;

  // FlowInstr links.
  IdSet defs;
  IdSet uses;
  IdSet cf_next;
  IdSet cf_prev;
  IdSet df_next;

  bool is_flow_instr() const { return flowgraph::is_flow_instr(kind); }

  friend bool operator==(const Item&, const Item&) = default;
};

// Where an item hangs in the containment tree.
enum class Role { Params, Vars, Stmts, Exit, Test, Then, Else, Body, Stmt };

inline std::string_view to_string(Role role) {
  switch (role) {
    case Role::Params: return "params";
    case Role::Vars: return "vars";
    case Role::Stmts: return "stmts";
    case Role::Exit: return "exit";
    case Role::Test: return "test";
    case Role::Then: return "then";
    case Role::Else: return "else";
    case Role::Body: return "body";
    case Role::Stmt: return "stmt";
  }
  return "?";
}

struct ChildRef {
  Role role;
  std::size_t index;
  ItemId child;
};

// Owned children of an item in role order (params, vars, stmts, exit, test,
// then, else, body, stmt).
inline std::vector<ChildRef> children_of(const Item& item) {
  std::vector<ChildRef> out;
  for (std::size_t i = 0; i < item.params.size(); ++i) out.push_back({Role::Params, i, item.params[i]});
  for (std::size_t i = 0; i < item.vars.size(); ++i) out.push_back({Role::Vars, i, item.vars[i]});
  for (std::size_t i = 0; i < item.stmts.size(); ++i) out.push_back({Role::Stmts, i, item.stmts[i]});
  if (item.exit) out.push_back({Role::Exit, 0, *item.exit});
  if (item.test) out.push_back({Role::Test, 0, *item.test});
  if (item.then_branch) out.push_back({Role::Then, 0, *item.then_branch});
  if (item.else_branch) out.push_back({Role::Else, 0, *item.else_branch});
  if (item.body) out.push_back({Role::Body, 0, *item.body});
  if (item.stmt) out.push_back({Role::Stmt, 0, *item.stmt});
  return out;
}

// A method's structure graph. Item 0 is always the Method.
struct StructureGraph {
  std::vector<Item> items;

  static constexpr ItemId root() { return ItemId{0}; }

  std::size_t size() const { return items.size(); }
  Item& at(ItemId id) { return items.at(index(id)); }
  const Item& at(ItemId id) const { return items.at(index(id)); }
  const Item& method() const { return items.at(0); }
  ItemId exit() const { return *method().exit; }

  bool has_control_flow() const { return !items.empty() && !method().cf_next.empty(); }

  bool has_data_flow() const {
    for (const auto& item : items) {
      if (!item.df_next.empty()) return true;
    }
    return false;
  }

  friend bool operator==(const StructureGraph&, const StructureGraph&) = default;
};

struct DefUse {
  IdSet defs;
  IdSet uses;
};

// Name -> Var/Param item binding visible at a statement.
using Scope = std::map<std::string, ItemId, std::less<>>;

namespace detail {

inline void collect_var_refs(const AstNode& e, const Scope& scope, IdSet& out) {
  if (e.kind == AstKind::VarRef) {
    auto it = scope.find(e.name);
    if (it == scope.end()) {
      throw Error(ErrorKind::UnboundVariable, "cannot resolve variable '" + e.name + "'",
                  e.span.begin);
    }
    out.insert(it->second);
    return;
  }
  for (const auto& c : e.children) collect_var_refs(c, scope, out);
}

inline ItemId bound(const Scope& scope, const std::string& name, SourcePos where) {
  auto it = scope.find(name);
  if (it == scope.end()) {
    throw Error(ErrorKind::UnboundVariable, "cannot resolve variable '" + name + "'", where);
  }
  return it->second;
}

}  // namespace detail

// Variables written and read by the flow instruction built from `node`.
// `node` is the statement, the condition expression, or the method itself.
// For a declaration `scope` must already bind the declared name.
inline DefUse compute_def_use(const AstNode& node, const Scope& scope) {
  DefUse du;
  switch (node.kind) {
    case AstKind::VarDeclStmt:
      if (!node.children.empty()) {
        du.defs.insert(detail::bound(scope, node.name, node.span.begin));
        detail::collect_var_refs(node.child(0), scope, du.uses);
      }
      break;
    case AstKind::AssignStmt:
      du.defs.insert(detail::bound(scope, node.name, node.span.begin));
      detail::collect_var_refs(node.child(0), scope, du.uses);
      break;
    case AstKind::IncDecStmt: {
      ItemId v = detail::bound(scope, node.name, node.span.begin);
      du.defs.insert(v);
      du.uses.insert(v);
      break;
    }
    case AstKind::ReturnStmt:
      if (!node.children.empty()) detail::collect_var_refs(node.child(0), scope, du.uses);
      break;
    case AstKind::MethodDecl:
      for (const auto& p : node.params()) {
        du.defs.insert(detail::bound(scope, p.name, p.span.begin));
      }
      break;
    case AstKind::BreakStmt:
    case AstKind::ContinueStmt:
      break;
    default:
      if (node.is_expression()) detail::collect_var_refs(node, scope, du.uses);
      break;
  }
  return du;
}

namespace detail {

class GraphBuilder {
 public:
  StructureGraph build(const AstNode& unit) {
    if (unit.kind != AstKind::CompilationUnit) {
      throw Error(ErrorKind::Precondition, "expected a compilation unit");
    }
    const AstNode& method = method_of(unit);

    ItemId method_id = add(ItemKind::Method, render_txt(method));
    scopes_.emplace_back();
    for (const auto& p : method.params()) {
      ItemId pid = add(ItemKind::Param, render_txt(p));
      graph_.at(method_id).params.push_back(pid);
      scopes_.back()[p.name] = pid;
    }
    DefUse du = compute_def_use(method, visible());
    graph_.at(method_id).defs = std::move(du.defs);

    scopes_.emplace_back();
    for (const auto& s : method.body().children) {
      ItemId sid = build_statement(s);
      graph_.at(method_id).stmts.push_back(sid);
    }
    scopes_.pop_back();

    ItemId exit_id = add(ItemKind::Exit, "Exit");
    graph_.at(method_id).exit = exit_id;
    return std::move(graph_);
  }

 private:
  struct LabelFrame {
    std::string name;
    ItemId label;
  };

  ItemId add(ItemKind kind, std::string txt) {
    Item item;
    item.id = item_id(graph_.items.size());
    item.kind = kind;
    item.txt = std::move(txt);
    graph_.items.push_back(std::move(item));
    return graph_.items.back().id;
  }

  Scope visible() const {
    Scope all;
    for (const auto& s : scopes_) {
      for (const auto& [name, id] : s) all[name] = id;
    }
    return all;
  }

  void set_def_use(ItemId id, const AstNode& node) {
    DefUse du = compute_def_use(node, visible());
    Item& item = graph_.at(id);
    item.defs = std::move(du.defs);
    item.uses = std::move(du.uses);
  }

  ItemId build_statement(const AstNode& s) {
    switch (s.kind) {
      case AstKind::VarDeclStmt: {
        ItemId sid = add(ItemKind::SimpleStmt, render_txt(s));
        ItemId vid = add(ItemKind::Var, s.name);
        graph_.at(ItemId{0}).vars.push_back(vid);
        scopes_.back()[s.name] = vid;
        set_def_use(sid, s);
        return sid;
      }
      case AstKind::AssignStmt:
      case AstKind::IncDecStmt: {
        ItemId sid = add(ItemKind::SimpleStmt, render_txt(s));
        set_def_use(sid, s);
        return sid;
      }
      case AstKind::ReturnStmt: {
        ItemId sid = add(ItemKind::Return, render_txt(s));
        set_def_use(sid, s);
        return sid;
      }
      case AstKind::BlockStmt: {
        ItemId bid = add(ItemKind::Block, render_txt(s));
        scopes_.emplace_back();
        for (const auto& c : s.children) {
          ItemId cid = build_statement(c);
          graph_.at(bid).stmts.push_back(cid);
        }
        scopes_.pop_back();
        return bid;
      }
      case AstKind::IfStmt: {
        ItemId iid = add(ItemKind::If, render_txt(s));
        ItemId test = build_condition(s.child(0));
        graph_.at(iid).test = test;
        ItemId then_id = build_statement(s.child(1));
        graph_.at(iid).then_branch = then_id;
        if (s.children.size() > 2) {
          ItemId else_id = build_statement(s.child(2));
          graph_.at(iid).else_branch = else_id;
        }
        return iid;
      }
      case AstKind::WhileStmt: {
        ItemId lid = add(ItemKind::Loop, render_txt(s));
        ItemId test = build_condition(s.child(0));
        graph_.at(lid).test = test;
        ++loop_depth_;
        ItemId body = build_statement(s.child(1));
        --loop_depth_;
        graph_.at(lid).body = body;
        return lid;
      }
      case AstKind::LabeledStmt: {
        for (const auto& frame : labels_) {
          if (frame.name == s.name) {
            throw Error(ErrorKind::DuplicateLabel,
                        "label '" + s.name + "' is already in use", s.span.begin);
          }
        }
        ItemId lid = add(ItemKind::Label, render_txt(s));
        graph_.at(lid).name = s.name;
        labels_.push_back({s.name, lid});
        ItemId inner = build_statement(s.child(0));
        labels_.pop_back();
        graph_.at(lid).stmt = inner;
        return lid;
      }
      case AstKind::BreakStmt:
      case AstKind::ContinueStmt: {
        bool is_break = s.kind == AstKind::BreakStmt;
        ItemId jid = add(is_break ? ItemKind::Break : ItemKind::Continue, render_txt(s));
        if (!s.name.empty()) {
          auto it = std::find_if(labels_.rbegin(), labels_.rend(),
                                 [&](const LabelFrame& f) { return f.name == s.name; });
          if (it == labels_.rend()) {
            throw Error(ErrorKind::UnknownLabel, "undefined label '" + s.name + "'",
                        s.span.begin);
          }
          graph_.at(jid).target = it->label;
        } else if (loop_depth_ == 0) {
          throw Error(ErrorKind::JumpOutsideLoop,
                      std::string(is_break ? "break" : "continue") + " outside of a loop",
                      s.span.begin);
        }
        return jid;
      }
      default:
        throw Error(ErrorKind::Precondition,
                    "unexpected " + std::string(to_string(s.kind)) + " in statement position",
                    s.span.begin);
    }
  }

  ItemId build_condition(const AstNode& cond) {
    ItemId eid = add(ItemKind::Expr, render_txt(cond));
    set_def_use(eid, cond);
    return eid;
  }

  StructureGraph graph_;
  std::vector<Scope> scopes_;
  std::vector<LabelFrame> labels_;
  int loop_depth_{0};
};

}  // namespace detail

// Maps a parsed compilation unit onto the structure graph: one item per
// statement, condition, parameter and declared variable, plus the synthetic
// Exit. def/use sets are filled; control and data flow links are left empty.
inline StructureGraph build_structure_graph(const AstNode& unit) {
  return detail::GraphBuilder().build(unit);
}

}  // namespace flowgraph
