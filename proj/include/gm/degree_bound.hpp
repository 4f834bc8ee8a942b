#pragma once

// Canonical submanifolds, their Dehn-filled hats, and the mapping-degree
// report between two graph manifolds.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gm/invariants.hpp"
#include "gm/model.hpp"
#include "gm/witness.hpp"

namespace gm {

struct CutBoundary {
  Endpoint where;
  Slope slope;  // fiber of the adjacent piece across the cut torus
  friend bool operator==(const CutBoundary&, const CutBoundary&) = default;
};

/// A union of components of the manifold cut along the edges not retained.
struct CanonicalSubmanifold {
  std::vector<std::string> pieces;          // sorted, nonempty
  std::vector<std::string> retained_edges;  // sorted, both ends in `pieces`
  std::vector<CutBoundary> cut_boundaries;  // sorted by endpoint

  std::string to_string() const;
  friend bool operator==(const CanonicalSubmanifold&, const CanonicalSubmanifold&) = default;
};

inline constexpr std::size_t kDefaultEdgeCap = 12;

/// Every canonical submanifold, duplicate-free, ordered by piece set then
/// retained-edge set. Throws HypothesisError when the edge count exceeds
/// `max_edges`.
std::vector<CanonicalSubmanifold> enumerate_canonical_submanifolds(const GraphManifold& m,
                                                                   std::size_t max_edges = kDefaultEdgeCap);

/// Builds the record for (pieces, retained_edges) of `m`, deriving the cut
/// boundaries. Throws Error when an edge is not inside `pieces`.
CanonicalSubmanifold make_canonical_submanifold(const GraphManifold& m, std::vector<std::string> pieces,
                                                std::vector<std::string> retained_edges);

/// One connected component of a hat: a filled single piece, or a closed
/// graph manifold over the retained edges.
using HatComponent = std::variant<ClosedSeifert, GraphManifold>;

struct HatRecord {
  std::vector<HatComponent> components;
  Rational abs_euler;  // additive over components
  Rational abs_sv;

  bool all_seifert() const;
  /// Sum of sv over components when every component is Seifert.
  std::optional<Rational> seifert_sv() const;
};

HatRecord hat_submanifold(const GraphManifold& m, const CanonicalSubmanifold& l);

enum class BoundPath { abs_euler_nonzero, abs_euler_zero };

struct BoundCandidate {
  CanonicalSubmanifold submanifold;
  HatRecord hat;
  std::optional<Rational> ratio;  // sv(L^) / sv(Q^) when L^ is Seifert
};

struct BoundReport {
  BoundPath path = BoundPath::abs_euler_nonzero;
  std::vector<std::string> reductions;  // steps applied to N before the bound
  std::vector<std::string> assumptions;
  GraphManifold target;                 // N after reductions
  Rational target_abs_euler;
  Rational target_abs_sv;
  // abs_euler_nonzero: the chosen piece Q and sv(Q^)
  std::string q_piece;
  std::optional<ClosedSeifert> q_hat;
  // abs_euler_zero: the adjacent pair and Q^ = S1 u S2 filled
  std::vector<std::string> q_pair;
  std::optional<GraphManifold> q_pair_hat;
  std::vector<BoundCandidate> candidates;
  std::optional<Rational> numeric_bound_over_seifert_hats;
  std::optional<WitnessCertificate> witness;
  std::string finiteness_conclusion;
};

BoundReport degree_bound_report(const GraphManifold& source, const GraphManifold& target,
                                std::size_t max_edges = kDefaultEdgeCap);

}  // namespace gm
