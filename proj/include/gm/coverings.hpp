#pragma once

// Finite coverings of graph manifolds described at the level of dual graphs
// plus piece data, and a checker that certifies such descriptions.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gm/model.hpp"

namespace gm {

/// How one piece of the total space covers its image piece.
struct PieceCover {
  std::string base;
  Int vertical_degree = 1;    // fiber direction
  Int horizontal_degree = 1;  // base surface direction
  // The total-space (s, h) basis is this sign times the lifted basis
  // (-1 after a (T, (-s, -h)) re-coordination).
  int coordinate_sign = 1;

  Int degree() const { return checked_mul(vertical_degree, horizontal_degree); }
  friend bool operator==(const PieceCover&, const PieceCover&) = default;
};

/// How one JSJ torus of the total space covers its image torus. The
/// multiplicities are the degrees of the boundary circles of the two
/// adjacent base surfaces.
struct EdgeCover {
  std::string base;
  Int source_multiplicity = 1;
  Int target_multiplicity = 1;
  friend bool operator==(const EdgeCover&, const EdgeCover&) = default;
};

struct CoveringDescriptor {
  std::string label;
  GraphManifold total_space;
  GraphManifold base_space;
  std::map<std::string, PieceCover> piece_map;  // keyed by total-space piece id
  std::map<std::string, EdgeCover> edge_map;    // keyed by total-space edge id
  std::optional<Int> characteristic;            // m of an m-characteristic cover
  bool separable = false;

  /// Sum of local degrees over the preimages of the first base piece.
  Int degree() const;
};

/// The identity self-covering, 1-characteristic and separable.
CoveringDescriptor identity_covering(const GraphManifold& m, std::string label);

enum class CoverClause {
  validity = 0,         // both manifolds valid
  incidence = 1,        // maps exist, are onto, commute with incidence
  total_degree = 2,     // constant total degree
  euler_char = 3,       // chi(F~) = d_h chi(F); exceptional fibers
  boundary_circles = 4, // preimage circle multiplicities sum to d_h
  matrix_lift = 5,      // m-characteristic: lifted matrices equal base ones
  fiber_degree = 6,     // torus degrees agree from both sides and sum to deg
  separable = 7,        // separable claim compatible with the piece data
};

struct CoverViolation {
  CoverClause clause;
  std::string message;
};

struct CheckReport {
  std::vector<CoverViolation> violations;
  Int total_degree = 0;

  bool passed() const { return violations.empty(); }
  bool failed(CoverClause clause) const;
  std::string summary() const;
};

CheckReport check_covering(const CoveringDescriptor& c);

struct CoverResult {
  GraphManifold cover;
  CoveringDescriptor descriptor;
  std::string note;
};

/// Double cover in which every JSJ torus separates two distinct pieces,
/// built from the Z/2 labeling: self-edges 1, all other edges 0. A
/// self-loop-free input is returned unchanged with the identity descriptor.
CoverResult separate_self_edges_cover(const GraphManifold& m);

struct Classification {
  bool is_multiple_edge = false;  // two pieces, every edge joins them
  std::size_t multiplicity = 0;   // number of parallel edges when multiple-edge
  bool is_pm_A = false;           // all matrices +-A in the normal direction
  bool is_property_I = false;     // products of genus >= 2, all matrices A
  bool is_swap_normal_form = false;
  bool all_pieces_product_genus2 = false;
  // Multiple-edge only: edges are read from `first_piece` to `second_piece`
  // (first_piece = source of the first edge by id); `reference` is the
  // sign-normalized matrix of the first edge in that direction.
  std::string first_piece;
  std::string second_piece;
  std::optional<GluingMatrix> reference;
};

Classification classify(const GraphManifold& m);

/// Matrix of `e` read from `from` toward the other end.
GluingMatrix matrix_from(const Edge& e, const std::string& from);

/// Sign representative: first nonzero entry positive.
GluingMatrix sign_normalized(const GluingMatrix& a);

struct PropertyINormalization {
  GraphManifold n1;  // double cover, all matrices A in the normal direction
  GraphManifold n2;  // m with every matrix replaced by A
  CoveringDescriptor n1_to_base;
  CoveringDescriptor n1_to_n2;
  // The free involution of n1 whose quotient is n2, as a piece permutation.
  std::map<std::string, std::string> deck_involution;
  std::size_t flipped_edges = 0;  // edges carrying -A
  GluingMatrix matrix;            // A
};

/// Replace a +-A multiple-edge manifold of genus >= 2 products by one with
/// Property I, through a common double cover.
PropertyINormalization property_i_normalize(const GraphManifold& m);

/// Genus of each piece of the d^2-fold cover of a d-edge Property I
/// manifold whose piece had genus g.
Int genus_cover_genus(Int d, Int g);

/// d-characteristic separable d^2-fold cover of a Property I manifold with d
/// edges: genera d(g-1) + d(d-1)/2 + 1, d boundaries, matrices unchanged.
CoverResult genus_cover(const GraphManifold& m);

}  // namespace gm
