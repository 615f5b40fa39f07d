#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "flowgraph/validation.hpp"
#include "test_support.hpp"

namespace flowgraph {
namespace {

using testing::corpus_programs;
using testing::corpus_source;
using testing::pdg_from_source;

using TxtLink = std::tuple<LinkKind, std::string, std::string>;

// Test-side view of the model's links, read directly off the items.
std::set<TxtLink> model_txt_links(const StructureGraph& g) {
  std::set<TxtLink> out;
  for (const auto& item : g.items) {
    for (ItemId t : item.cf_next) out.insert({LinkKind::CfNext, item.txt, g.at(t).txt});
    for (ItemId t : item.df_next) out.insert({LinkKind::DfNext, item.txt, g.at(t).txt});
  }
  return out;
}

std::set<TxtLink> spec_txt_links(const ValidationSpec& spec) {
  std::set<TxtLink> out;
  for (const auto& l : spec.links) out.insert({l.kind, l.source_txt, l.target_txt});
  return out;
}

std::size_t count(const std::vector<Diagnostic>& ds, Category c) {
  return static_cast<std::size_t>(
      std::count_if(ds.begin(), ds.end(), [c](const Diagnostic& d) { return d.category == c; }));
}

bool unique_flow_txts(const StructureGraph& g) {
  std::set<std::string> seen;
  for (const auto& item : g.items) {
    if (item.is_flow_instr() && !seen.insert(item.txt).second) return false;
  }
  return true;
}

std::string spec_line(LinkKind kind, const std::string& s, const std::string& t) {
  return std::string(to_string(kind)) + ": " + quote_txt(s) + " --> " + quote_txt(t) + "\n";
}

SourcePos spec_error_pos(std::string_view text) {
  try {
    parse_spec(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SpecParse);
    return e.pos().value_or(SourcePos{});
  }
  ADD_FAILURE() << "expected a parse error";
  return {};
}

TEST(ParseSpec, ListingLine) {
  ValidationSpec spec = parse_spec("cfNext: \"testMethod()\"   --> \"int a = 1;\"");
  ASSERT_EQ(spec.links.size(), 1u);
  EXPECT_EQ(spec.links[0].kind, LinkKind::CfNext);
  EXPECT_EQ(spec.links[0].source_txt, "testMethod()");
  EXPECT_EQ(spec.links[0].target_txt, "int a = 1;");
  EXPECT_EQ(spec.links[0].line, 1);
}

TEST(ParseSpec, ListingFile) {
  ValidationSpec spec = parse_spec(corpus_source("listing1.flow"));
  std::set<TxtLink> expected = {
      {LinkKind::CfNext, "testMethod()", "int a = 1;"},
      {LinkKind::CfNext, "int a = 1;", "int b = 2;"},
      {LinkKind::DfNext, "int a = 1;", "int c = a + b;"},
      {LinkKind::DfNext, "int b = 2;", "int c = a + b;"},
  };
  EXPECT_EQ(spec_txt_links(spec), expected);
}

TEST(ParseSpec, EmptyAndCommentOnly) {
  EXPECT_TRUE(parse_spec("").links.empty());
  EXPECT_TRUE(parse_spec("\n\n   \n# nothing here\n\t# indented\n").links.empty());
}

TEST(ParseSpec, TrailingCommentAndLineNumbers) {
  ValidationSpec spec = parse_spec("# header\n\ndfNext:\"x\"-->\"y\"  # why\r\n");
  ASSERT_EQ(spec.links.size(), 1u);
  EXPECT_EQ(spec.links[0].line, 3);
  EXPECT_EQ(spec.links[0].source_txt, "x");
  EXPECT_EQ(spec.links[0].target_txt, "y");
}

TEST(ParseSpec, Escapes) {
  ValidationSpec spec = parse_spec(R"(cfNext: "a \"q\" \\ b" --> "c")");
  ASSERT_EQ(spec.links.size(), 1u);
  EXPECT_EQ(spec.links[0].source_txt, "a \"q\" \\ b");
  EXPECT_EQ(quote_txt(spec.links[0].source_txt), R"("a \"q\" \\ b")");
}

TEST(ParseSpec, Errors) {
  EXPECT_EQ(spec_error_pos("dfNext: \"int b = 2;\" -> \"x\"").line, 1);
  EXPECT_EQ(spec_error_pos("\n\ncfPrev: \"a\" --> \"b\"").line, 3);
  EXPECT_EQ(spec_error_pos("cfNext \"a\" --> \"b\""), (SourcePos{1, 8}));
  EXPECT_EQ(spec_error_pos("cfNext: \"a --> \"b\"").line, 1);
  EXPECT_EQ(spec_error_pos("cfNext: \"a\" --> \"b\" extra").line, 1);
  EXPECT_EQ(spec_error_pos("cfNext: \"\" --> \"b\"").line, 1);
  EXPECT_EQ(spec_error_pos(R"(cfNext: "a\n" --> "b")").line, 1);
  EXPECT_EQ(spec_error_pos("cfNext: a --> \"b\"").line, 1);
}

TEST(ResolveTxt, ExactMatchOnFlowItems) {
  StructureGraph g = pdg_from_source(corpus_source("p1.java"));
  TxtResolution r = resolve_txt(g, "int a = 1;");
  ASSERT_TRUE(r.found());
  EXPECT_EQ(g.at(r.id()).kind, ItemKind::SimpleStmt);
  EXPECT_EQ(resolve_txt(g, "nonexistent;").status, TxtResolution::Status::Unresolved);
  EXPECT_EQ(resolve_txt(g, "int a = 1; ").status, TxtResolution::Status::Unresolved);
}

TEST(ResolveTxt, AmbiguousWhenDuplicated) {
  StructureGraph g = pdg_from_source(corpus_source("p2.java"));
  g.items[index(testing::find_txt(g, "s = s + i;"))].txt = "i++;";
  TxtResolution r = resolve_txt(g, "i++;");
  EXPECT_EQ(r.status, TxtResolution::Status::Ambiguous);
  EXPECT_EQ(r.matches.size(), 2u);
  EXPECT_THROW(emit_spec(g), Error);
}

TEST(Check, ListingAgainstFullModel) {
  StructureGraph g = pdg_from_source(corpus_source("p1.java"));
  auto ds = check(g, parse_spec(corpus_source("listing1.flow")));
  // The model has 5 cfNext and 3 dfNext links; Listing 1 covers 4 of them.
  EXPECT_EQ(count(ds, Category::MissingLink), 0u);
  ASSERT_EQ(count(ds, Category::FalseLink), 4u);
  ASSERT_EQ(ds.size(), 4u);
  EXPECT_EQ(format_diagnostic(ds[0]), R"(FALSE-LINK cfNext: "int b = 2;" --> "int c = a + b;")");
  EXPECT_EQ(format_diagnostic(ds[1]), R"(FALSE-LINK cfNext: "int c = a + b;" --> "return c;")");
  EXPECT_EQ(format_diagnostic(ds[2]), R"(FALSE-LINK dfNext: "int c = a + b;" --> "return c;")");
  EXPECT_EQ(format_diagnostic(ds[3]), R"(FALSE-LINK cfNext: "return c;" --> "Exit")");
  for (const auto& d : ds) EXPECT_EQ(d.severity, Severity::Warning);
}

TEST(Check, DeleteOneRedirectOne) {
  StructureGraph g = pdg_from_source(corpus_source("p1.java"));
  std::string spec;
  for (const auto& [kind, s, t] : model_txt_links(g)) {
    if (kind == LinkKind::CfNext && s == "int b = 2;") continue;  // deleted
    if (kind == LinkKind::DfNext && s == "int a = 1;") {
      spec += spec_line(kind, s, "return c;");  // redirected
      continue;
    }
    spec += spec_line(kind, s, t);
  }
  auto ds = check(g, parse_spec(spec));
  // Deleted line and the original of the redirected line are uncovered model
  // links; the redirected line names a link the model lacks.
  EXPECT_EQ(count(ds, Category::FalseLink), 2u);
  EXPECT_EQ(count(ds, Category::MissingLink), 1u);
  EXPECT_EQ(ds.size(), 3u);
}

TEST(Check, UnresolvedAndAmbiguousAreErrorsFirst) {
  StructureGraph g = pdg_from_source(corpus_source("p1.java"));
  std::string spec = emit_spec(g) + "cfNext: \"nonexistent;\" --> \"Exit\"\n";
  auto ds = check(g, parse_spec(spec));
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].category, Category::UnresolvedTxt);
  EXPECT_EQ(ds[0].severity, Severity::Error);
  EXPECT_EQ(ds[0].spec_line, 9);

  g.items[index(testing::find_txt(g, "int b = 2;"))].txt = "int a = 1;";
  ds = check(g, parse_spec("cfNext: \"testMethod()\" --> \"int a = 1;\"\n"));
  ASSERT_FALSE(ds.empty());
  EXPECT_EQ(ds[0].category, Category::AmbiguousTxt);
  EXPECT_EQ(count(ds, Category::MissingLink), 0u);
}

TEST(Check, DuplicateEntriesWarnOnce) {
  StructureGraph g = pdg_from_source(corpus_source("p1.java"));
  std::string spec = emit_spec(g);
  spec += spec.substr(0, spec.find('\n') + 1);
  auto ds = check(g, parse_spec(spec));
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].category, Category::DuplicateSpec);
  EXPECT_EQ(ds[0].spec_line, 9);
}

TEST(Check, AddingBogusLineGivesOneMissingLink) {
  StructureGraph g = pdg_from_source(corpus_source("p2.java"));
  std::string spec = emit_spec(g) + "dfNext: \"return s;\" --> \"sum(n)\"\n";
  auto ds = check(g, parse_spec(spec));
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(format_diagnostic(ds[0]), R"x(MISSING-LINK dfNext: "return s;" --> "sum(n)")x");
  EXPECT_EQ(format_diagnostic_line(ds[0]), "missing-link\tdfNext\treturn s;\tsum(n)");
}

TEST(Check, IsPure) {
  StructureGraph g = pdg_from_source(corpus_source("p3.java"));
  ValidationSpec spec = parse_spec(corpus_source("listing1.flow"));
  auto a = check(g, spec);
  auto b = check(g, spec);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(format_diagnostic(a[i]), format_diagnostic(b[i]));
}

TEST(EmitSpec, StartsWithListingLineAndGroupsKinds) {
  StructureGraph g = pdg_from_source(corpus_source("p1.java"));
  std::string text = emit_spec(g);
  EXPECT_EQ(text.rfind("cfNext: \"testMethod()\" --> \"int a = 1;\"\n", 0), 0u);
  EXPECT_LT(text.rfind("cfNext"), text.find("dfNext"));
  EXPECT_EQ(spec_txt_links(parse_spec(text)), model_txt_links(g));
}

TEST(EmitSpec, NoDataFlowGivesOnlyControlLines) {
  StructureGraph g = pdg_from_source("class C { void m() { while (true) { } } }");
  std::string text = emit_spec(g);
  EXPECT_EQ(text.find("dfNext"), std::string::npos);
  EXPECT_NE(text.find("cfNext"), std::string::npos);
}

TEST(EmitSpec, RoundTripOnCorpus) {
  for (const auto& file : corpus_programs()) {
    StructureGraph g = pdg_from_source(corpus_source(file));
    EXPECT_TRUE(check(g, parse_spec(emit_spec(g))).empty()) << file;
  }
}

// Removes d random lines and appends f lines naming links absent from the
// model; the expected counts follow from set difference on txt triples.
TEST(Check, SymmetricDifferenceRandomized) {
  std::mt19937 rng(7);
  std::vector<std::string> sources;
  for (const auto& file : corpus_programs()) sources.push_back(corpus_source(file));
  testing::ProgramGenerator gen(2024);
  for (int i = 0; i < 100; ++i) sources.push_back(gen.generate());

  for (const auto& src : sources) {
    StructureGraph g = pdg_from_source(src);
    if (!unique_flow_txts(g)) continue;
    std::set<TxtLink> model = model_txt_links(g);
    std::vector<TxtLink> lines(model.begin(), model.end());
    std::shuffle(lines.begin(), lines.end(), rng);
    std::size_t d = std::uniform_int_distribution<std::size_t>(0, lines.size())(rng);
    lines.erase(lines.begin(), lines.begin() + static_cast<std::ptrdiff_t>(d));

    std::vector<std::string> flow;
    for (const auto& item : g.items) {
      if (item.is_flow_instr()) flow.push_back(item.txt);
    }
    std::size_t f = 0;
    std::set<TxtLink> added;
    for (int k = 0; k < 4; ++k) {
      TxtLink bogus{k % 2 ? LinkKind::DfNext : LinkKind::CfNext,
                    flow[std::uniform_int_distribution<std::size_t>(0, flow.size() - 1)(rng)],
                    flow[std::uniform_int_distribution<std::size_t>(0, flow.size() - 1)(rng)]};
      if (model.contains(bogus) || !added.insert(bogus).second) continue;
      lines.push_back(bogus);
      ++f;
    }
    std::string text;
    for (const auto& [kind, s, t] : lines) text += spec_line(kind, s, t);

    auto ds = check(g, parse_spec(text));
    EXPECT_EQ(count(ds, Category::FalseLink), d) << src;
    EXPECT_EQ(count(ds, Category::MissingLink), f) << src;
    EXPECT_EQ(ds.size(), d + f) << src;
    for (const auto& diag : ds) {
      TxtLink key{diag.kind, diag.source_txt, diag.target_txt};
      if (diag.category == Category::FalseLink) {
        EXPECT_TRUE(model.contains(key));
      } else {
        EXPECT_FALSE(model.contains(key));
      }
    }
  }
}

}  // namespace
}  // namespace flowgraph
