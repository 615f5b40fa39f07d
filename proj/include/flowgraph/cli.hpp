#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flowgraph/control_flow.hpp"
#include "flowgraph/data_flow.hpp"
#include "flowgraph/dot.hpp"
#include "flowgraph/error.hpp"
#include "flowgraph/interchange.hpp"
#include "flowgraph/parser.hpp"
#include "flowgraph/structure_graph.hpp"
#include "flowgraph/validation.hpp"

namespace flowgraph {

enum class DataFlowAlgorithm { Worklist, BruteForce, Both };
enum class ReportFormat { Text, Lines };

// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitUsage = 2;

struct StageConfig {
  std::string input;
  std::string output;
  std::string spec;
  DataFlowAlgorithm algorithm{DataFlowAlgorithm::Worklist};
  ReportFormat format{ReportFormat::Text};
  std::string edges{"tree,cf,df"};
};

// Source text to structure graph, with def/use sets.
inline StructureGraph structure_from_source(std::string_view source) {
  return build_structure_graph(parse_source(source));
}

// Source text to program dependence graph.
inline StructureGraph run_pipeline(std::string_view source) {
  StructureGraph graph = structure_from_source(source);
  synthesize_control_flow(graph);
  synthesize_data_flow_worklist(graph);
  return graph;
}

namespace detail {

inline std::string describe_edge(const StructureGraph& graph, const DataEdge& e) {
  return "dfNext: " + quote_txt(graph.at(e.from).txt) + " --> " + quote_txt(graph.at(e.to).txt) +
         " (" + std::to_string(index(e.from)) + " -> " + std::to_string(index(e.to)) + ")";
}

inline int run_dfg(const StageConfig& cfg, std::ostream& err) {
  StructureGraph graph = load_graph(cfg.input);
  switch (cfg.algorithm) {
    case DataFlowAlgorithm::Worklist:
      synthesize_data_flow_worklist(graph);
      break;
    case DataFlowAlgorithm::BruteForce:
      synthesize_data_flow_bruteforce(graph);
      break;
    case DataFlowAlgorithm::Both: {
      DataEdgeSet fast = data_flow_edges_worklist(graph);
      DataEdgeSet slow = data_flow_edges_bruteforce(graph);
      if (fast != slow) {
        err << "flowgraph: data flow algorithms disagree\n";
        for (const auto& e : fast) {
          if (!slow.contains(e)) err << "  worklist only:   " << describe_edge(graph, e) << "\n";
        }
        for (const auto& e : slow) {
          if (!fast.contains(e)) err << "  bruteforce only: " << describe_edge(graph, e) << "\n";
        }
        return kExitFindings;
      }
      apply_data_flow(graph, fast);
      break;
    }
  }
  save_graph(graph, cfg.output);
  return kExitOk;
}

inline int run_validate(const StageConfig& cfg, std::ostream& out) {
  StructureGraph graph = load_graph(cfg.input);
  ValidationSpec spec = parse_spec(read_text_file(cfg.spec));
  auto diagnostics = check(graph, spec);
  for (const auto& d : diagnostics) {
    out << (cfg.format == ReportFormat::Lines ? format_diagnostic_line(d) : format_diagnostic(d))
        << "\n";
  }
  return diagnostics.empty() ? kExitOk : kExitFindings;
}

inline DotOptions parse_edge_selection(const std::string& edges) {
  DotOptions options{false, false, false};
  std::stringstream ss(edges);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part == "tree") {
      options.tree = true;
    } else if (part == "cf") {
      options.control_flow = true;
    } else if (part == "df") {
      options.data_flow = true;
    } else {
      throw CLI::ValidationError("--edges", "unknown edge set '" + part + "' (use cf, df, tree)");
    }
  }
  return options;
}

}  // namespace detail

// Entry point of the `flowgraph` tool. Reports go to `out`, errors to `err`.
// Returns 0 on success, 1 on validation findings or algorithm mismatch, 2 on
// usage and input errors.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structure, control flow and data flow graphs for a Java subset", "flowgraph"};
  app.require_subcommand(1);
  StageConfig cfg;

  const std::map<std::string, DataFlowAlgorithm> algorithms{
      {"worklist", DataFlowAlgorithm::Worklist},
      {"bruteforce", DataFlowAlgorithm::BruteForce},
      {"both", DataFlowAlgorithm::Both}};
  const std::map<std::string, ReportFormat> formats{{"text", ReportFormat::Text},
                                                    {"lines", ReportFormat::Lines}};

  auto* structure = app.add_subcommand("structure", "Build the structure graph of a Java file");
  structure->add_option("input", cfg.input, "Java source file")->required();
  structure->add_option("-o,--output", cfg.output, "Output graph document")->required();

  auto* cfg_cmd = app.add_subcommand("cfg", "Add control flow links to a structure graph");
  cfg_cmd->add_option("input", cfg.input, "Structure graph document")->required();
  cfg_cmd->add_option("-o,--output", cfg.output, "Output graph document")->required();

  auto* dfg = app.add_subcommand("dfg", "Add data flow links to a control flow graph");
  dfg->add_option("input", cfg.input, "Control flow graph document")->required();
  dfg->add_option("-o,--output", cfg.output, "Output graph document")->required();
  dfg->add_option("--algorithm", cfg.algorithm, "worklist, bruteforce or both")
      ->transform(CLI::CheckedTransformer(algorithms, CLI::ignore_case));

  auto* validate = app.add_subcommand("validate", "Check a PDG against a link specification");
  validate->add_option("pdg", cfg.input, "PDG document")->required();
  validate->add_option("spec", cfg.spec, "Link specification (.flow)")->required();
  validate->add_option("--format", cfg.format, "text or lines")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  auto* gen_spec = app.add_subcommand("gen-spec", "Write the link specification of a PDG");
  gen_spec->add_option("pdg", cfg.input, "PDG document")->required();
  gen_spec->add_option("-o,--output", cfg.output, "Output specification")->required();

  auto* run = app.add_subcommand("run", "Java file to PDG in one step");
  run->add_option("input", cfg.input, "Java source file")->required();
  run->add_option("-o,--output", cfg.output, "Output PDG document")->required();

  auto* dot = app.add_subcommand("dot", "Export a graph document in Graphviz format");
  dot->add_option("graph", cfg.input, "Graph document")->required();
  dot->add_option("-o,--output", cfg.output, "Output .dot file")->required();
  dot->add_option("--edges", cfg.edges, "Comma-separated subset of tree,cf,df");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (structure->parsed()) {
      save_graph(structure_from_source(read_text_file(cfg.input)), cfg.output);
    } else if (cfg_cmd->parsed()) {
      StructureGraph graph = load_graph(cfg.input);
      synthesize_control_flow(graph);
      save_graph(graph, cfg.output);
    } else if (dfg->parsed()) {
      return detail::run_dfg(cfg, err);
    } else if (validate->parsed()) {
      return detail::run_validate(cfg, out);
    } else if (gen_spec->parsed()) {
      write_text_file(cfg.output, emit_spec(load_graph(cfg.input)));
    } else if (run->parsed()) {
      save_graph(run_pipeline(read_text_file(cfg.input)), cfg.output);
    } else if (dot->parsed()) {
      DotOptions options = detail::parse_edge_selection(cfg.edges);
      write_text_file(cfg.output, to_dot(load_graph(cfg.input), options));
    }
  } catch (const Error& e) {
    const std::string& where = e.kind() == ErrorKind::SpecParse ? cfg.spec : cfg.input;
    err << "flowgraph: " << where << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::Error& e) {
    err << "flowgraph: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, out, err);
}

}  // namespace flowgraph
