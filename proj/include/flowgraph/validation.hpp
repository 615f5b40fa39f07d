#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "flowgraph/error.hpp"
#include "flowgraph/structure_graph.hpp"

namespace flowgraph {

enum class LinkKind { CfNext, DfNext };

inline std::string_view to_string(LinkKind kind) {
  return kind == LinkKind::CfNext ? "cfNext" : "dfNext";
}

// One `kind: "source" --> "target"` line of a link specification.
struct LinkSpec {
  LinkKind kind{LinkKind::CfNext};
  std::string source_txt;
  std::string target_txt;
  int line{0};

  friend bool operator==(const LinkSpec&, const LinkSpec&) = default;
};

struct ValidationSpec {
  std::vector<LinkSpec> links;
};

enum class Severity { Warning, Error };

enum class Category { FalseLink, MissingLink, UnresolvedTxt, AmbiguousTxt, DuplicateSpec };

inline std::string_view to_string(Category c) {
  switch (c) {
    case Category::FalseLink: return "false-link";
    case Category::MissingLink: return "missing-link";
    case Category::UnresolvedTxt: return "unresolved-txt";
    case Category::AmbiguousTxt: return "ambiguous-txt";
    case Category::DuplicateSpec: return "duplicate-spec";
  }
  return "?";
}

struct Diagnostic {
  Severity severity{Severity::Warning};
  Category category{Category::FalseLink};
  LinkKind kind{LinkKind::CfNext};
  std::string source_txt;
  std::string target_txt;
  // Spec line for findings about spec entries; model item ids for false links.
  std::optional<int> spec_line;
  std::optional<ItemId> source_item;
  std::optional<ItemId> target_item;
  // Extra context for errors and lint notes.
  std::string note;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// ---- DSL ------------------------------------------------------------------

inline std::string quote_txt(std::string_view txt) {
  std::string out = "\"";
  for (char c : txt) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

namespace detail {

class SpecLineParser {
 public:
  SpecLineParser(std::string_view text, int line) : text_(text), line_(line) {}

  // Returns nothing for blank and comment-only lines.
  std::optional<LinkSpec> parse() {
    skip_ws();
    if (done() || peek() == '#') return std::nullopt;

    LinkSpec spec;
    spec.line = line_;
    std::size_t kind_start = i_;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++i_;
    std::string_view kind = text_.substr(kind_start, i_ - kind_start);
    if (kind.empty()) fail("expected 'cfNext' or 'dfNext'", kind_start);
    if (kind == "cfNext") {
      spec.kind = LinkKind::CfNext;
    } else if (kind == "dfNext") {
      spec.kind = LinkKind::DfNext;
    } else {
      fail("unknown link kind '" + std::string(kind) + "' (expected cfNext or dfNext)",
           kind_start);
    }
    skip_ws();
    expect(":");
    skip_ws();
    spec.source_txt = parse_string();
    skip_ws();
    expect("-->");
    skip_ws();
    spec.target_txt = parse_string();
    skip_ws();
    if (!done() && peek() != '#') fail("unexpected text after link", i_);
    return spec;
  }

 private:
  bool done() const { return i_ >= text_.size(); }
  char peek() const { return text_[i_]; }

  void skip_ws() {
    while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++i_;
  }

  [[noreturn]] void fail(const std::string& message, std::size_t at) const {
    throw Error(ErrorKind::SpecParse, message,
                SourcePos{line_, static_cast<int>(at) + 1});
  }

  void expect(std::string_view token) {
    if (text_.substr(i_, token.size()) != token) {
      fail("expected '" + std::string(token) + "'", i_);
    }
    i_ += token.size();
  }

  std::string parse_string() {
    if (done() || peek() != '"') fail("expected a double-quoted txt", i_);
    std::size_t start = i_++;
    std::string out;
    while (!done() && peek() != '"') {
      if (peek() == '\\') {
        ++i_;
        if (done() || (peek() != '"' && peek() != '\\')) {
          fail("invalid escape sequence (only \\\" and \\\\ are allowed)", i_ - 1);
        }
      }
      out += text_[i_++];
    }
    if (done()) fail("unterminated string", start);
    ++i_;
    if (out.empty()) fail("txt must not be empty", start);
    return out;
  }

  std::string_view text_;
  int line_;
  std::size_t i_{0};
};

}  // namespace detail

// Reads a link specification: one `cfNext|dfNext: "src" --> "tgt"` per line,
// blank lines and `#` comments ignored.
inline ValidationSpec parse_spec(std::string_view text) {
  ValidationSpec spec;
  int line = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    if (auto link = detail::SpecLineParser(text.substr(start, end - start), line).parse()) {
      spec.links.push_back(std::move(*link));
    }
    if (end == text.size()) break;
    start = end + 1;
    ++line;
  }
  return spec;
}

// ---- txt lookup -----------------------------------------------------------

struct TxtResolution {
  enum class Status { Found, Unresolved, Ambiguous };
  Status status{Status::Unresolved};
  std::vector<ItemId> matches;

  bool found() const { return status == Status::Found; }
  ItemId id() const { return matches.front(); }
};

// Links only ever join flow instructions, so only those are candidates.
inline TxtResolution resolve_txt(const StructureGraph& graph, std::string_view txt) {
  TxtResolution r;
  for (const auto& item : graph.items) {
    if (item.is_flow_instr() && item.txt == txt) r.matches.push_back(item.id);
  }
  r.status = r.matches.empty()       ? TxtResolution::Status::Unresolved
             : r.matches.size() == 1 ? TxtResolution::Status::Found
                                     : TxtResolution::Status::Ambiguous;
  return r;
}

// ---- checking -------------------------------------------------------------

struct ModelLink {
  LinkKind kind;
  ItemId source;
  ItemId target;

  friend auto operator<=>(const ModelLink&, const ModelLink&) = default;
};

inline std::vector<ModelLink> model_links(const StructureGraph& graph) {
  std::vector<ModelLink> links;
  for (const auto& item : graph.items) {
    for (ItemId t : item.cf_next) links.push_back({LinkKind::CfNext, item.id, t});
  }
  for (const auto& item : graph.items) {
    for (ItemId t : item.df_next) links.push_back({LinkKind::DfNext, item.id, t});
  }
  return links;
}

namespace detail {

inline std::string ids_to_string(const std::vector<ItemId>& ids) {
  std::string out;
  for (ItemId id : ids) {
    if (!out.empty()) out += ", ";
    out += std::to_string(index(id));
  }
  return out;
}

}  // namespace detail

// Compares the model's cfNext/dfNext links with the specification. Spec
// entries whose txts do not resolve produce errors and take no further part.
//
// Order: errors by spec line, false links by (source id, target id), missing
// links by spec line, duplicate-entry notes by spec line.
inline std::vector<Diagnostic> check(const StructureGraph& graph, const ValidationSpec& spec) {
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> missing;
  std::vector<Diagnostic> duplicates;

  std::set<ModelLink> spec_links;
  std::map<std::tuple<LinkKind, std::string, std::string>, int> first_line;

  for (const auto& entry : spec.links) {
    auto key = std::make_tuple(entry.kind, entry.source_txt, entry.target_txt);
    if (auto it = first_line.find(key); it != first_line.end()) {
      Diagnostic d;
      d.severity = Severity::Warning;
      d.category = Category::DuplicateSpec;
      d.kind = entry.kind;
      d.source_txt = entry.source_txt;
      d.target_txt = entry.target_txt;
      d.spec_line = entry.line;
      d.note = "duplicate of line " + std::to_string(it->second);
      duplicates.push_back(std::move(d));
      continue;
    }
    first_line.emplace(key, entry.line);

    bool resolved = true;
    std::optional<ItemId> ends[2];
    const std::string* txts[2] = {&entry.source_txt, &entry.target_txt};
    for (int side = 0; side < 2; ++side) {
      TxtResolution r = resolve_txt(graph, *txts[side]);
      if (r.found()) {
        ends[side] = r.id();
        continue;
      }
      resolved = false;
      Diagnostic d;
      d.severity = Severity::Error;
      d.kind = entry.kind;
      d.source_txt = entry.source_txt;
      d.target_txt = entry.target_txt;
      d.spec_line = entry.line;
      if (r.status == TxtResolution::Status::Unresolved) {
        d.category = Category::UnresolvedTxt;
        d.note = "no item has txt " + quote_txt(*txts[side]);
      } else {
        d.category = Category::AmbiguousTxt;
        d.note = "txt " + quote_txt(*txts[side]) + " matches items " +
                 detail::ids_to_string(r.matches);
      }
      errors.push_back(std::move(d));
    }
    if (!resolved) continue;

    ModelLink link{entry.kind, *ends[0], *ends[1]};
    spec_links.insert(link);
    bool in_model = entry.kind == LinkKind::CfNext ? graph.at(link.source).cf_next.contains(link.target)
                                                   : graph.at(link.source).df_next.contains(link.target);
    if (!in_model) {
      Diagnostic d;
      d.severity = Severity::Warning;
      d.category = Category::MissingLink;
      d.kind = entry.kind;
      d.source_txt = entry.source_txt;
      d.target_txt = entry.target_txt;
      d.spec_line = entry.line;
      missing.push_back(std::move(d));
    }
  }

  std::vector<ModelLink> unspecified;
  for (const auto& link : model_links(graph)) {
    if (!spec_links.contains(link)) unspecified.push_back(link);
  }
  std::sort(unspecified.begin(), unspecified.end(), [](const ModelLink& a, const ModelLink& b) {
    return std::tie(a.source, a.target, a.kind) < std::tie(b.source, b.target, b.kind);
  });

  std::vector<Diagnostic> out = std::move(errors);
  for (const auto& link : unspecified) {
    Diagnostic d;
    d.severity = Severity::Warning;
    d.category = Category::FalseLink;
    d.kind = link.kind;
    d.source_txt = graph.at(link.source).txt;
    d.target_txt = graph.at(link.target).txt;
    d.source_item = link.source;
    d.target_item = link.target;
    out.push_back(std::move(d));
  }
  out.insert(out.end(), std::make_move_iterator(missing.begin()),
             std::make_move_iterator(missing.end()));
  out.insert(out.end(), std::make_move_iterator(duplicates.begin()),
             std::make_move_iterator(duplicates.end()));
  return out;
}

// Writes the model's links as a specification that `check` accepts without
// findings: cfNext lines first, each group ordered by (source id, target id).
inline std::string emit_spec(const StructureGraph& graph) {
  std::string out;
  for (const auto& link : model_links(graph)) {
    for (ItemId end : {link.source, link.target}) {
      const std::string& txt = graph.at(end).txt;
      if (!resolve_txt(graph, txt).found()) {
        throw Error(ErrorKind::AmbiguousTxt,
                    "txt " + quote_txt(txt) + " of item " + std::to_string(index(end)) +
                        " does not identify a unique item");
      }
    }
    out += std::string(to_string(link.kind)) + ": " + quote_txt(graph.at(link.source).txt) +
           " --> " + quote_txt(graph.at(link.target).txt) + "\n";
  }
  return out;
}

// ---- reporting ------------------------------------------------------------

inline std::string format_diagnostic(const Diagnostic& d) {
  std::string link = std::string(to_string(d.kind)) + ": " + quote_txt(d.source_txt) + " --> " +
                     quote_txt(d.target_txt);
  std::string where = d.spec_line ? "line " + std::to_string(*d.spec_line) : std::string();
  switch (d.category) {
    case Category::FalseLink:
      return "FALSE-LINK " + link;
    case Category::MissingLink:
      return "MISSING-LINK " + link;
    case Category::UnresolvedTxt:
      return "UNRESOLVED-TXT " + link + " (" + where + ": " + d.note + ")";
    case Category::AmbiguousTxt:
      return "AMBIGUOUS-TXT " + link + " (" + where + ": " + d.note + ")";
    case Category::DuplicateSpec:
      return "DUPLICATE-SPEC " + link + " (" + where + ": " + d.note + ")";
  }
  return link;
}

// Tab-separated: category, kind, source txt, target txt.
inline std::string format_diagnostic_line(const Diagnostic& d) {
  return std::string(to_string(d.category)) + "\t" + std::string(to_string(d.kind)) + "\t" +
         d.source_txt + "\t" + d.target_txt;
}

}  // namespace flowgraph
