#pragma once

// The .gm text format, DOT export and report formatting.
//
//   manifold <name>
//   piece <id> genus=<int> [fibers=<a1>/<b1>,<a2>/<b2>,...] [base=orientable|nonorientable|IK]
//   edge <id> <piece>:<int> -> <piece>:<int> matrix=[<a>,<b>;<c>,<d>]
//
// Line oriented; '#' starts a comment; whitespace between tokens is free.
// A piece's boundary count is the number of endpoints referring to it, and
// those boundary indices must be exactly 0..k-1.

#include <cstddef>
#include <map>
#include <string>

#include "gm/degree_bound.hpp"
#include "gm/model.hpp"
#include "gm/witness.hpp"

namespace gm {

struct SourcePositions {
  std::size_t manifold_line = 0;
  std::map<std::string, std::size_t> piece_lines;
  std::map<std::string, std::size_t> edge_lines;
};

struct ManifoldDocument {
  std::string text;
  GraphManifold manifold;  // fibers normalized, not yet validated
  SourcePositions positions;
  ValidationReport report;

  /// Violations prefixed by "line N: " where the subject is known.
  std::vector<std::string> annotated_report() const;
};

/// Syntax, duplicate ids, dangling references and boundary index misuse
/// throw ParseError; structural validation is left in `report`.
ManifoldDocument parse_document(const std::string& text);

/// parse_document followed by validation; throws ValidationError whose
/// violations carry line numbers.
GraphManifold parse(const std::string& text);

/// Canonical text: pieces then edges, sorted by id, fibers omitted when empty.
std::string serialize(const GraphManifold& m);

std::string export_dot(const GraphManifold& m);

// Human-readable report followed by a "---" line and key=value lines.
std::string format_invariants(const GraphManifold& m);
std::string format_cover(const CoverResult& result, const CheckReport& check);
std::string format_property_i(const PropertyINormalization& norm);
std::string format_witness(const WitnessCertificate& cert);
std::string format_bound(const BoundReport& report);

}  // namespace gm
