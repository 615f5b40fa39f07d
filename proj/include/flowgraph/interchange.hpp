#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "flowgraph/control_flow.hpp"
#include "flowgraph/error.hpp"
#include "flowgraph/structure_graph.hpp"

// On-disk form of a structure graph / CFG / PDG:
//
//   { "format": "flowgraph-pdg", "version": 1, "nodes": [ ... ] }
//
// Nodes appear in id order. Each node has "id", "kind" and "txt", the
// containment fields of its kind (params, vars, stmts, exit, test, then, else,
// body, name, stmt, target) and, for flow instructions, "defs", "uses",
// "cfNext" and "dfNext" as ascending id lists. cfPrev is derived on load.

namespace flowgraph {

inline constexpr std::string_view kInterchangeFormat = "flowgraph-pdg";
inline constexpr int kInterchangeVersion = 1;

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson id_list(const std::vector<ItemId>& ids) {
  ojson arr = ojson::array();
  for (ItemId id : ids) arr.push_back(index(id));
  return arr;
}

inline ojson id_list(const IdSet& ids) {
  ojson arr = ojson::array();
  for (ItemId id : ids) arr.push_back(index(id));
  return arr;
}

inline ojson node_to_json(const Item& item) {
  ojson node;
  node["id"] = index(item.id);
  node["kind"] = to_string(item.kind);
  node["txt"] = item.txt;
  switch (item.kind) {
    case ItemKind::Method:
      node["params"] = id_list(item.params);
      node["vars"] = id_list(item.vars);
      node["stmts"] = id_list(item.stmts);
      node["exit"] = index(*item.exit);
      break;
    case ItemKind::Block:
      node["stmts"] = id_list(item.stmts);
      break;
    case ItemKind::If:
      node["test"] = index(*item.test);
      node["then"] = index(*item.then_branch);
      if (item.else_branch) node["else"] = index(*item.else_branch);
      break;
    case ItemKind::Loop:
      node["test"] = index(*item.test);
      node["body"] = index(*item.body);
      break;
    case ItemKind::Label:
      node["name"] = item.name;
      node["stmt"] = index(*item.stmt);
      break;
    case ItemKind::Break:
    case ItemKind::Continue:
      if (item.target) node["target"] = index(*item.target);
      break;
    default:
      break;
  }
  if (item.is_flow_instr()) {
    node["defs"] = id_list(item.defs);
    node["uses"] = id_list(item.uses);
    node["cfNext"] = id_list(item.cf_next);
    node["dfNext"] = id_list(item.df_next);
  }
  return node;
}

// Field names each kind may carry besides id/kind/txt.
inline std::vector<std::string_view> allowed_fields(ItemKind kind) {
  std::vector<std::string_view> f;
  switch (kind) {
    case ItemKind::Method: f = {"params", "vars", "stmts", "exit"}; break;
    case ItemKind::Block: f = {"stmts"}; break;
    case ItemKind::If: f = {"test", "then", "else"}; break;
    case ItemKind::Loop: f = {"test", "body"}; break;
    case ItemKind::Label: f = {"name", "stmt"}; break;
    case ItemKind::Break:
    case ItemKind::Continue: f = {"target"}; break;
    default: break;
  }
  if (is_flow_instr(kind)) {
    for (auto name : {"defs", "uses", "cfNext", "dfNext"}) f.push_back(name);
  }
  return f;
}

class DocumentReader {
 public:
  explicit DocumentReader(const ojson& doc) : doc_(doc) {}

  StructureGraph read() {
    if (!doc_.is_object()) malformed("document", "expected a JSON object");
    if (!doc_.contains("format") || !doc_["format"].is_string() ||
        doc_["format"].get<std::string>() != kInterchangeFormat) {
      malformed("format", "expected \"" + std::string(kInterchangeFormat) + "\"");
    }
    if (!doc_.contains("version") || !doc_["version"].is_number_integer()) {
      malformed("version", "expected an integer");
    }
    if (auto v = doc_["version"].get<long long>(); v != kInterchangeVersion) {
      throw Error(ErrorKind::UnknownVersion,
                  "version: " + std::to_string(v) + " is not supported (expected " +
                      std::to_string(kInterchangeVersion) + ")");
    }
    for (const auto& [key, value] : doc_.items()) {
      if (key != "format" && key != "version" && key != "nodes") {
        malformed(key, "unknown top-level field");
      }
    }
    if (!doc_.contains("nodes") || !doc_["nodes"].is_array() || doc_["nodes"].empty()) {
      malformed("nodes", "expected a non-empty array");
    }
    const ojson& nodes = doc_["nodes"];
    count_ = nodes.size();
    graph_.items.resize(count_);
    for (std::size_t i = 0; i < count_; ++i) read_node(i, nodes[i]);
    check_kinds();
    check_tree();
    rebuild_cf_prev(graph_);
    return std::move(graph_);
  }

 private:
  [[noreturn]] static void malformed(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::MalformedDocument, where + ": " + what);
  }

  [[noreturn]] static void integrity(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::Integrity, where + ": " + what);
  }

  static std::string at(std::size_t i, std::string_view field = {}) {
    std::string s = "nodes[" + std::to_string(i) + "]";
    if (!field.empty()) s += "." + std::string(field);
    return s;
  }

  ItemId read_ref(std::size_t i, std::string_view field, const ojson& v) const {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      malformed(at(i, field), "expected a non-negative integer id");
    }
    auto id = v.get<unsigned long long>();
    if (id >= count_) {
      integrity(at(i, field), "references nonexistent id " + std::to_string(id));
    }
    return item_id(static_cast<std::size_t>(id));
  }

  std::vector<ItemId> read_list(std::size_t i, std::string_view field, const ojson& v) const {
    if (!v.is_array()) malformed(at(i, field), "expected an array of ids");
    std::vector<ItemId> ids;
    for (const auto& e : v) ids.push_back(read_ref(i, field, e));
    return ids;
  }

  IdSet read_set(std::size_t i, std::string_view field, const ojson& v) const {
    std::vector<ItemId> ids = read_list(i, field, v);
    for (std::size_t k = 1; k < ids.size(); ++k) {
      if (!(ids[k - 1] < ids[k])) malformed(at(i, field), "ids must be strictly ascending");
    }
    return IdSet(ids.begin(), ids.end());
  }

  void read_node(std::size_t i, const ojson& node) {
    if (!node.is_object()) malformed(at(i), "expected an object");
    if (!node.contains("id") || !node["id"].is_number_integer() ||
        node["id"].get<long long>() != static_cast<long long>(i)) {
      integrity(at(i, "id"), "node ids must equal their position (expected " +
                                 std::to_string(i) + ")");
    }
    if (!node.contains("kind") || !node["kind"].is_string()) {
      malformed(at(i, "kind"), "expected a string");
    }
    auto kind = item_kind_from_string(node["kind"].get<std::string>());
    if (!kind) malformed(at(i, "kind"), "unknown kind \"" + node["kind"].get<std::string>() + "\"");
    if (!node.contains("txt") || !node["txt"].is_string()) {
      malformed(at(i, "txt"), "expected a string");
    }

    const auto allowed = allowed_fields(*kind);
    for (const auto& [key, value] : node.items()) {
      if (key == "id" || key == "kind" || key == "txt") continue;
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        malformed(at(i, key), "field not allowed on " + std::string(to_string(*kind)));
      }
    }
    auto required = [&](std::string_view field) -> const ojson& {
      if (!node.contains(field)) malformed(at(i, field), "missing required field");
      return node[std::string(field)];
    };

    Item& item = graph_.items[i];
    item.id = item_id(i);
    item.kind = *kind;
    item.txt = node["txt"].get<std::string>();
    switch (*kind) {
      case ItemKind::Method:
        item.params = read_list(i, "params", required("params"));
        item.vars = read_list(i, "vars", required("vars"));
        item.stmts = read_list(i, "stmts", required("stmts"));
        item.exit = read_ref(i, "exit", required("exit"));
        break;
      case ItemKind::Block:
        item.stmts = read_list(i, "stmts", required("stmts"));
        break;
      case ItemKind::If:
        item.test = read_ref(i, "test", required("test"));
        item.then_branch = read_ref(i, "then", required("then"));
        if (node.contains("else")) item.else_branch = read_ref(i, "else", node["else"]);
        break;
      case ItemKind::Loop:
        item.test = read_ref(i, "test", required("test"));
        item.body = read_ref(i, "body", required("body"));
        break;
      case ItemKind::Label:
        if (!required("name").is_string() || node["name"].get<std::string>().empty()) {
          malformed(at(i, "name"), "expected a non-empty string");
        }
        item.name = node["name"].get<std::string>();
        item.stmt = read_ref(i, "stmt", required("stmt"));
        break;
      case ItemKind::Break:
      case ItemKind::Continue:
        if (node.contains("target")) item.target = read_ref(i, "target", node["target"]);
        break;
      default:
        break;
    }
    if (item.is_flow_instr()) {
      item.defs = read_set(i, "defs", required("defs"));
      item.uses = read_set(i, "uses", required("uses"));
      item.cf_next = read_set(i, "cfNext", required("cfNext"));
      item.df_next = read_set(i, "dfNext", required("dfNext"));
    }
  }

  void expect_kind(std::size_t i, std::string_view field, ItemId ref,
                   std::initializer_list<ItemKind> kinds) const {
    ItemKind actual = graph_.at(ref).kind;
    for (auto k : kinds) {
      if (k == actual) return;
    }
    integrity(at(i, field), "id " + std::to_string(index(ref)) + " is a " +
                                std::string(to_string(actual)) + ", which is not allowed here");
  }

  void expect_flow(std::size_t i, std::string_view field, const IdSet& refs) const {
    for (ItemId ref : refs) {
      if (!graph_.at(ref).is_flow_instr()) {
        integrity(at(i, field), "id " + std::to_string(index(ref)) + " is not a flow instruction");
      }
    }
  }

  void check_kinds() const {
    static constexpr std::initializer_list<ItemKind> kStatement = {
        ItemKind::Block,    ItemKind::If,     ItemKind::Loop,       ItemKind::Label,
        ItemKind::Break,    ItemKind::Continue, ItemKind::Return,   ItemKind::SimpleStmt};
    if (graph_.items[0].kind != ItemKind::Method) {
      integrity(at(0, "kind"), "the first node must be the Method");
    }
    for (std::size_t i = 0; i < count_; ++i) {
      const Item& item = graph_.items[i];
      if (i > 0 && item.kind == ItemKind::Method) {
        integrity(at(i, "kind"), "a graph holds exactly one Method");
      }
      for (ItemId p : item.params) expect_kind(i, "params", p, {ItemKind::Param});
      for (ItemId v : item.vars) expect_kind(i, "vars", v, {ItemKind::Var});
      for (ItemId s : item.stmts) expect_kind(i, "stmts", s, kStatement);
      if (item.exit) expect_kind(i, "exit", *item.exit, {ItemKind::Exit});
      if (item.test) expect_kind(i, "test", *item.test, {ItemKind::Expr});
      if (item.then_branch) expect_kind(i, "then", *item.then_branch, kStatement);
      if (item.else_branch) expect_kind(i, "else", *item.else_branch, kStatement);
      if (item.body) expect_kind(i, "body", *item.body, kStatement);
      if (item.stmt) expect_kind(i, "stmt", *item.stmt, kStatement);
      if (item.target) expect_kind(i, "target", *item.target, {ItemKind::Label});
      for (ItemId v : item.defs) expect_kind(i, "defs", v, {ItemKind::Var, ItemKind::Param});
      for (ItemId v : item.uses) expect_kind(i, "uses", v, {ItemKind::Var, ItemKind::Param});
      expect_flow(i, "cfNext", item.cf_next);
      expect_flow(i, "dfNext", item.df_next);
      if (item.kind == ItemKind::Exit && !item.cf_next.empty()) {
        integrity(at(i, "cfNext"), "the Exit has no control flow successors");
      }
      if (item.cf_next.contains(ItemId{0})) {
        integrity(at(i, "cfNext"), "the Method has no control flow predecessors");
      }
    }
  }

  void check_tree() const {
    std::vector<int> parent(count_, -1);
    for (std::size_t i = 0; i < count_; ++i) {
      for (const auto& c : children_of(graph_.items[i])) {
        std::size_t child = index(c.child);
        if (child == 0) integrity(at(i, to_string(c.role)), "the Method cannot be contained");
        if (parent[child] != -1) {
          integrity(at(i, to_string(c.role)),
                    "id " + std::to_string(child) + " is already contained by node " +
                        std::to_string(parent[child]));
        }
        parent[child] = static_cast<int>(i);
      }
    }
    // Every node must hang below the Method; with one parent each this also
    // rules out cycles.
    for (std::size_t i = 1; i < count_; ++i) {
      std::size_t steps = 0;
      std::size_t cur = i;
      while (cur != 0) {
        if (parent[cur] == -1 || ++steps > count_) {
          integrity(at(i), "node is not contained in the Method");
        }
        cur = static_cast<std::size_t>(parent[cur]);
      }
    }
    // Jump targets must be enclosing labels.
    for (std::size_t i = 0; i < count_; ++i) {
      const Item& item = graph_.items[i];
      if (!item.target) continue;
      bool enclosing = false;
      for (int cur = parent[i]; cur != -1; cur = parent[static_cast<std::size_t>(cur)]) {
        if (item_id(static_cast<std::size_t>(cur)) == *item.target) enclosing = true;
      }
      if (!enclosing) {
        integrity(at(i, "target"), "label " + std::to_string(index(*item.target)) +
                                       " does not enclose this jump");
      }
    }
  }

  const ojson& doc_;
  std::size_t count_{0};
  StructureGraph graph_;
};

}  // namespace detail

// Canonical text of the interchange document; equal graphs give equal bytes.
inline std::string to_interchange(const StructureGraph& graph) {
  detail::ojson doc;
  doc["format"] = kInterchangeFormat;
  doc["version"] = kInterchangeVersion;
  detail::ojson nodes = detail::ojson::array();
  for (const auto& item : graph.items) nodes.push_back(detail::node_to_json(item));
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

inline StructureGraph from_interchange(std::string_view text) {
  detail::ojson doc;
  try {
    doc = detail::ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::MalformedDocument, std::string("invalid JSON: ") + e.what());
  }
  return detail::DocumentReader(doc).read();
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorKind::Io, "failed to write '" + path.string() + "'");
}

inline void save_graph(const StructureGraph& graph, const std::filesystem::path& path) {
  write_text_file(path, to_interchange(graph));
}

inline StructureGraph load_graph(const std::filesystem::path& path) {
  return from_interchange(read_text_file(path));
}

}  // namespace flowgraph
