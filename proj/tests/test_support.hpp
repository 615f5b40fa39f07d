#pragma once

#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flowgraph/flowgraph.hpp"

namespace flowgraph::testing {

using TxtEdge = std::pair<std::string, std::string>;
using TxtEdgeSet = std::set<TxtEdge>;

inline std::filesystem::path corpus_dir() { return FLOWGRAPH_CORPUS_DIR; }

inline std::string corpus_source(const std::string& relative) {
  return read_text_file(corpus_dir() / relative);
}

// Every fixture program, relative to the corpus directory.
inline std::vector<std::string> corpus_programs() {
  return {"p1.java",
          "p2.java",
          "p3.java",
          "rules/sequence.java",
          "rules/nested_blocks.java",
          "rules/label.java",
          "rules/while.java",
          "rules/empty_loop.java",
          "rules/if_else.java",
          "rules/if_no_else.java",
          "rules/if_last.java",
          "rules/return.java",
          "rules/break.java",
          "rules/continue.java"};
}

inline StructureGraph cfg_from_source(std::string_view source) {
  StructureGraph g = build_structure_graph(parse_source(source));
  synthesize_control_flow(g);
  return g;
}

inline StructureGraph pdg_from_source(std::string_view source) {
  StructureGraph g = cfg_from_source(source);
  synthesize_data_flow_worklist(g);
  return g;
}

inline TxtEdgeSet cf_edges(const StructureGraph& g) {
  TxtEdgeSet out;
  for (const auto& item : g.items) {
    for (ItemId t : item.cf_next) out.insert({item.txt, g.at(t).txt});
  }
  return out;
}

inline TxtEdgeSet df_edges(const StructureGraph& g) {
  TxtEdgeSet out;
  for (const auto& item : g.items) {
    for (ItemId t : item.df_next) out.insert({item.txt, g.at(t).txt});
  }
  return out;
}

inline TxtEdgeSet to_txt(const StructureGraph& g, const DataEdgeSet& edges) {
  TxtEdgeSet out;
  for (const auto& e : edges) out.insert({g.at(e.from).txt, g.at(e.to).txt});
  return out;
}

inline ItemId find_txt(const StructureGraph& g, std::string_view txt) {
  auto r = resolve_txt(g, txt);
  if (!r.found()) throw std::runtime_error("no unique flow item with txt '" + std::string(txt) + "'");
  return r.id();
}

// Random programs of the Java subset: at most 3 nesting levels, 15
// statements and 5 variables (one int parameter plus up to four locals).
// Jumps only target enclosing loops/labels, so every program is valid.
class ProgramGenerator {
 public:
  explicit ProgramGenerator(std::uint32_t seed) : rng_(seed) {}

  std::string generate() {
    budget_ = 1 + pick(14);
    declared_ = {"p"};
    next_var_ = 0;
    next_label_ = 0;
    frames_.clear();
    std::string body;
    while (budget_ > 1) body += statement(0, "        ");
    body += "        return " + operand() + ";\n";
    return "class Gen {\n    int gen(int p) {\n" + body + "    }\n}\n";
  }

 private:
  struct Frame {
    bool is_loop;
    std::string label;  // empty when unlabeled
  };

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool chance(int percent) { return pick(100) < percent; }

  std::string var() { return declared_[static_cast<std::size_t>(pick(static_cast<int>(declared_.size())))]; }

  std::string operand() {
    if (chance(25)) return std::to_string(pick(10));
    return var();
  }

  std::string arith() {
    switch (pick(4)) {
      case 0: return operand();
      case 1: return operand() + " + " + operand();
      case 2: return operand() + " * " + operand() + " - " + operand();
      default: return "(" + operand() + " - " + operand() + ") / " + operand();
    }
  }

  std::string condition() {
    static const char* kRel[] = {"<", ">", "<=", ">=", "==", "!="};
    std::string c = operand() + " " + kRel[pick(6)] + " " + operand();
    switch (pick(6)) {
      case 0: return "true";
      case 1: return c + " && " + operand() + " < " + operand();
      case 2: return "!(" + c + ")";
      default: return c;
    }
  }

  bool in_loop() const {
    for (const auto& f : frames_) {
      if (f.is_loop) return true;
    }
    return false;
  }

  std::string jump(const std::string& ind) {
    bool is_break = chance(50);
    std::vector<const Frame*> targets;
    for (const auto& f : frames_) {
      if (!f.label.empty() && (is_break || f.is_loop)) targets.push_back(&f);
    }
    if (!targets.empty() && chance(50)) {
      const Frame* t = targets[static_cast<std::size_t>(pick(static_cast<int>(targets.size())))];
      return ind + (is_break ? "break " : "continue ") + t->label + ";\n";
    }
    if (in_loop()) return ind + (is_break ? "break;\n" : "continue;\n");
    return ind + var() + "++;\n";
  }

  std::string block(int depth, const std::string& ind) {
    std::string out = "{\n";
    int n = pick(3);
    for (int i = 0; i < n && budget_ > 1; ++i) out += statement(depth + 1, ind + "    ");
    return out + ind + "}";
  }

  std::string statement(int depth, const std::string& ind) {
    --budget_;
    int choice = pick(100);
    bool can_nest = depth < 3;
    if (depth == 0 && next_var_ < 4 && choice < 20) {
      std::string name = "v" + std::to_string(next_var_++);
      std::string init = arith();
      declared_.push_back(name);
      return ind + "int " + name + " = " + init + ";\n";
    }
    if (choice < 40) return ind + var() + " = " + arith() + ";\n";
    if (choice < 48) return ind + var() + (chance(50) ? "++;\n" : "--;\n");
    if (can_nest && choice < 62) {
      std::string out = ind + "if (" + condition() + ") ";
      frames_.push_back({false, ""});
      out += block(depth, ind);
      if (chance(40)) out += " else " + block(depth, ind);
      frames_.pop_back();
      return out + "\n";
    }
    if (can_nest && choice < 78) {
      std::string label;
      std::string out;
      if (budget_ > 1 && chance(35)) {
        --budget_;  // the label is a statement of its own
        label = "L" + std::to_string(next_label_++);
        out = ind + label + ":\n";
      }
      out += ind + "while (" + condition() + ") ";
      frames_.push_back({true, label});
      out += block(depth, ind);
      frames_.pop_back();
      return out + "\n";
    }
    if (can_nest && choice < 83) {
      std::string label = "L" + std::to_string(next_label_++);
      std::string out = ind + label + ": ";
      frames_.push_back({false, label});
      out += block(depth, ind);
      frames_.pop_back();
      return out + "\n";
    }
    if (choice < 95) return jump(ind);
    return ind + "return " + arith() + ";\n";
  }

  std::mt19937 rng_;
  int budget_{0};
  std::vector<std::string> declared_;
  int next_var_{0};
  int next_label_{0};
  std::vector<Frame> frames_;
};

// Number of statements of a parsed method body, at any depth.
inline int count_statements(const AstNode& node) {
  int n = node.is_statement() && node.kind != AstKind::BlockStmt ? 1 : 0;
  for (const auto& c : node.children) n += count_statements(c);
  return n;
}

}  // namespace flowgraph::testing
