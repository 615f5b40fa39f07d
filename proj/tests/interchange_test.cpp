#include <gtest/gtest.h>

#include <json.hpp>

#include "flowgraph/interchange.hpp"
#include "test_support.hpp"

namespace flowgraph {
namespace {

using nlohmann::ordered_json;
using testing::corpus_programs;
using testing::corpus_source;
using testing::pdg_from_source;

StructureGraph p1_pdg() { return pdg_from_source(corpus_source("p1.java")); }

ordered_json p1_doc() { return ordered_json::parse(to_interchange(p1_pdg())); }

Error load_error(const ordered_json& doc) {
  try {
    from_interchange(doc.dump());
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected a load error for " << doc.dump();
  return Error(ErrorKind::Io, "none");
}

TEST(Interchange, FirstNodeIsMethod) {
  ordered_json doc = p1_doc();
  EXPECT_EQ(doc["format"], "flowgraph-pdg");
  EXPECT_EQ(doc["version"], 1);
  const auto& first = doc["nodes"][0];
  EXPECT_EQ(first["id"], 0);
  EXPECT_EQ(first["kind"], "Method");
  EXPECT_EQ(first["txt"], "testMethod()");
  EXPECT_EQ(first["cfNext"], ordered_json::array({1}));
}

TEST(Interchange, EmptyMethodHasTwoNodes) {
  StructureGraph g = pdg_from_source("class C { void m() { } }");
  ordered_json doc = ordered_json::parse(to_interchange(g));
  ASSERT_EQ(doc["nodes"].size(), 2u);
  EXPECT_EQ(doc["nodes"][1]["kind"], "Exit");
  EXPECT_EQ(doc["nodes"][0]["cfNext"], ordered_json::array({1}));
}

TEST(Interchange, FieldsFollowKind) {
  ordered_json doc = ordered_json::parse(to_interchange(pdg_from_source(corpus_source("p3.java"))));
  for (const auto& node : doc["nodes"]) {
    auto kind = item_kind_from_string(node["kind"].get<std::string>());
    ASSERT_TRUE(kind);
    EXPECT_EQ(node.contains("cfNext"), is_flow_instr(*kind)) << node.dump();
    EXPECT_FALSE(node.contains("cfPrev"));
    EXPECT_EQ(node.contains("name"), *kind == ItemKind::Label);
  }
}

TEST(Interchange, RoundTripCorpus) {
  for (const auto& file : corpus_programs()) {
    SCOPED_TRACE(file);
    StructureGraph structure = build_structure_graph(parse_source(corpus_source(file)));
    StructureGraph pdg = pdg_from_source(corpus_source(file));
    for (const StructureGraph* g : {&structure, &pdg}) {
      std::string text = to_interchange(*g);
      StructureGraph back = from_interchange(text);
      EXPECT_EQ(back, *g);
      EXPECT_EQ(to_interchange(back), text);
    }
  }
}

TEST(Interchange, RoundTripRandom) {
  testing::ProgramGenerator gen(5);
  for (int i = 0; i < 100; ++i) {
    StructureGraph g = pdg_from_source(gen.generate());
    EXPECT_EQ(from_interchange(to_interchange(g)), g);
  }
}

TEST(Interchange, SavesAreByteIdentical) {
  auto dir = std::filesystem::temp_directory_path() / "flowgraph_interchange_test";
  std::filesystem::create_directories(dir);
  save_graph(p1_pdg(), dir / "a.json");
  save_graph(p1_pdg(), dir / "b.json");
  EXPECT_EQ(read_text_file(dir / "a.json"), read_text_file(dir / "b.json"));
  EXPECT_EQ(load_graph(dir / "a.json"), p1_pdg());
  std::filesystem::remove_all(dir);
}

TEST(Interchange, LoadRebuildsCfPrev) {
  StructureGraph g = from_interchange(to_interchange(p1_pdg()));
  for (const auto& item : g.items) {
    for (ItemId next : item.cf_next) EXPECT_TRUE(g.at(next).cf_prev.contains(item.id));
  }
  EXPECT_EQ(g.at(g.exit()).cf_prev.size(), 1u);
}

TEST(InterchangeErrors, NonexistentIdNamed) {
  ordered_json doc = p1_doc();
  doc["nodes"][1]["cfNext"] = ordered_json::array({99});
  Error e = load_error(doc);
  EXPECT_EQ(e.kind(), ErrorKind::Integrity);
  EXPECT_NE(std::string(e.what()).find("99"), std::string::npos) << e.what();
}

TEST(InterchangeErrors, UnknownVersion) {
  ordered_json doc = p1_doc();
  doc["version"] = 2;
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::UnknownVersion);
}

TEST(InterchangeErrors, Malformed) {
  EXPECT_THROW(from_interchange("{"), Error);
  EXPECT_EQ(load_error(ordered_json::array()).kind(), ErrorKind::MalformedDocument);

  ordered_json doc = p1_doc();
  doc["format"] = "other";
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::MalformedDocument);

  doc = p1_doc();
  doc["extra"] = true;
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::MalformedDocument);

  doc = p1_doc();
  doc["nodes"][2]["cfNext"] = ordered_json::array();  // Var carries no links
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::MalformedDocument);

  doc = p1_doc();
  doc["nodes"][1].erase("defs");
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::MalformedDocument);

  doc = p1_doc();
  doc["nodes"][1]["kind"] = "Statement";
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::MalformedDocument);

  doc = p1_doc();
  doc["nodes"][0]["cfNext"] = ordered_json::array({3, 1});
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::MalformedDocument);

  doc = p1_doc();
  doc["nodes"] = ordered_json::array();
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::MalformedDocument);
}

TEST(InterchangeErrors, Integrity) {
  ordered_json doc = p1_doc();
  doc["nodes"][3]["id"] = 7;
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::Integrity);

  doc = p1_doc();
  doc["nodes"][0]["stmts"] = ordered_json::array({1, 1, 5, 7});  // contained twice
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::Integrity);

  doc = p1_doc();
  doc["nodes"][0]["stmts"] = ordered_json::array({1, 5, 7});  // orphan
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::Integrity);

  doc = p1_doc();
  doc["nodes"][8]["cfNext"] = ordered_json::array({1});  // Exit successor
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::Integrity);

  doc = p1_doc();
  doc["nodes"][7]["cfNext"] = ordered_json::array({0});
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::Integrity);

  doc = p1_doc();
  doc["nodes"][1]["dfNext"] = ordered_json::array({2});  // Var is no flow item
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::Integrity);

  doc = p1_doc();
  doc["nodes"][1]["defs"] = ordered_json::array({3});  // a statement, not a variable
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::Integrity);
}

TEST(InterchangeErrors, JumpTargetMustEnclose) {
  StructureGraph g = pdg_from_source(
      "class C { void m() { a: { } b: while (true) { break b; } } }");
  ordered_json doc = ordered_json::parse(to_interchange(g));
  std::size_t label_a = index(item_id(1));
  ASSERT_EQ(doc["nodes"][label_a]["kind"], "Label");
  for (auto& node : doc["nodes"]) {
    if (node["kind"] == "Break") node["target"] = label_a;
  }
  EXPECT_EQ(load_error(doc).kind(), ErrorKind::Integrity);
}

}  // namespace
}  // namespace flowgraph
