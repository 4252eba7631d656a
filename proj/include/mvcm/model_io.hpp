#pragma once

#include <optional>

#include "mvcm/model.hpp"

namespace mvcm {

struct Diagnostic {
  int line = 0;  // 1-based; 0 for file-level problems
  std::string message;
};

/// Result of parsing a model file: the source lines, the model when the
/// text was error-free, and line-numbered diagnostics otherwise.
struct ModelDocument {
  std::vector<std::string> lines;
  std::optional<MapModel> model;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value(); }
};

/// Parses the line-oriented model grammar:
///
///   lattice atoms <id> <id> ...          # optional; default paper lattice
///   element <name> = <atom> <atom> ...   # optional named elements
///   concept <id> [clamped]
///   weight <src> -> <dst> : [-]<label>
///   init <case>: <id>=<label> <id>=<label> ...
///   doc <id> : <label> <label> ...
///
/// '#' starts a comment. Labels follow the linguistic-scale grammar.
ModelDocument parse_model_file(std::string_view text);

/// Canonical text for a model; parse ∘ serialize is the identity on it.
std::string serialize_model(const MapModel& model);

enum class TraceFormat { table, lines };

/// Renders a trace: `table` is one aligned row per iteration with one
/// column per concept; `lines` is one diff-friendly record
/// `k<TAB>concept<TAB>label<TAB>{atoms}` per (iteration, concept). Both
/// end with a convergence summary line.
std::string serialize_trace(const IterationTrace& trace, const MapModel& model,
                            TraceFormat format);

struct TraceRecord {
  int k = 0;
  std::string concept_name;
  std::string label;
  std::string atoms;
};

struct ParsedTraceLines {
  std::vector<TraceRecord> records;
  bool converged = false;
  int steps = 0;
};

/// Reads `lines` format back; the regression-test inverse of
/// serialize_trace. Throws ParseError on malformed input.
ParsedTraceLines read_trace_lines(std::string_view text);

/// Renders the weight matrix as `weight` directives (used by the CLI
/// after learning).
std::string serialize_weights(const MapModel& model, const WeightMatrix& weights);

}  // namespace mvcm
