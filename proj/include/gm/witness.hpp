#pragma once

// Nonzero-degree maps from multiple-edge graph manifolds onto closed
// PSL~(2,R)-manifolds, and the certificate that such a manifold has a
// finite cover of nonzero Seifert volume.

#include <string>
#include <variant>
#include <vector>

#include "gm/coverings.hpp"
#include "gm/invariants.hpp"
#include "gm/model.hpp"

namespace gm {

enum class MapKind { vertical_pinch, cyclic_cover, degree_one_pinch_project, degree_two_project };

std::string to_string(MapKind kind);

using Space = std::variant<GraphManifold, ClosedSeifert>;

/// A nonzero-degree map that is not a covering.
struct MapDescriptor {
  MapKind kind = MapKind::vertical_pinch;
  Int degree = 1;
  Space source;
  Space target;
  std::string label;
  std::string detail;
};

struct PinchResult {
  GraphManifold manifold;
  MapDescriptor map;
};

/// Degree-one map collapsing the base surface of a product piece to genus
/// `target_genus` (2 <= target_genus <= genus).
PinchResult vertical_pinch(const GraphManifold& m, const std::string& piece, Int target_genus);

/// For a Property I manifold with d edges whose pieces have genus a_i d + 1,
/// the Z/d rotation quotient onto the single-edge manifold with genera
/// a_i + 1, as a degree-d covering (d_v = 1, d_h = d). The descriptor's
/// total space is `m` with every edge read from the first piece.
CoverResult rotation_cover(const GraphManifold& m);

enum class ProjectionBranch {
  fill_target = 1,       // a c != 0
  fill_source = 2,       // d c != 0, a c = 0
  double_projection = 3  // c = 0, or a = d = 0
};

struct Projection {
  ClosedSeifert target;
  MapDescriptor map;
  ProjectionBranch branch = ProjectionBranch::fill_target;
  std::string filled_piece;  // piece whose surface survives
  Slope slope;               // filling slope on that piece
  bool recoordinated = false;
  GluingMatrix matrix;       // edge matrix after any re-coordination
};

/// Map a single-edge manifold of two genus >= 2 products onto a closed
/// Seifert manifold with sv > 0, following the three-way case analysis on
/// the gluing matrix (a b; c d).
Projection project_to_psl(const GraphManifold& m);

struct ChainLink {
  std::string stage;
  std::variant<CoveringDescriptor, MapDescriptor> link;

  Int degree() const;
};

struct WitnessCertificate {
  GraphManifold input;                 // edges read from the first piece
  std::vector<ChainLink> chain;        // p1, p2, p3, pinches, rotation, projection
  ClosedSeifert target;                // N4
  Rational target_sv;
  ProjectionBranch branch = ProjectionBranch::fill_target;
  Int pinch_genus = 0;                 // a d + 1
  Int map_degree = 0;                  // N3 -> N4
  Rational sv_lower_bound;             // map_degree * target_sv <= SV(N3)
  Int cover_index_bound = 0;           // deg(p2) * deg(p3)
  std::string conclusion;
};

/// Full chain for a +-A multiple-edge manifold of genus >= 2 products.
WitnessCertificate sv_witness(const GraphManifold& m);

/// Re-checks a certificate: every covering link passes check_covering, the
/// links compose, degrees are as recorded, and target_sv = sv(target) > 0.
/// Empty iff consistent.
std::vector<std::string> verify_certificate(const WitnessCertificate& cert);

}  // namespace gm
