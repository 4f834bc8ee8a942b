#pragma once

// Coordinated graph manifolds: Seifert pieces, a directed dual multigraph
// and one integral gluing matrix per JSJ torus.
//
// Coordinates. Every boundary torus of a piece carries an (s, h) basis: the
// first coordinate is the section curve s, the second the regular fiber h.
// An edge is directed from its source ("-" side) to its target ("+" side)
// and its matrix A satisfies  tau(s-, h-) = (s+, h+) A,  i.e. the columns of
// A are the images of s- and h- written in the (s+, h+) basis.

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gm/errors.hpp"
#include "gm/integer.hpp"

namespace gm {

/// Seifert invariant (alpha, beta) of a singular fiber, 1 <= beta < alpha.
struct ExceptionalFiber {
  Int alpha = 2;
  Int beta = 1;

  friend bool operator==(const ExceptionalFiber&, const ExceptionalFiber&) = default;
  friend auto operator<=>(const ExceptionalFiber&, const ExceptionalFiber&) = default;
};

/// Base surface kind. Only orientable bases are representable as valid
/// pieces; the other two exist so that inputs naming them can be rejected.
enum class BaseKind { orientable, nonorientable, twisted_klein_bundle };

struct SeifertPiece {
  std::string id;
  Int genus = 0;
  int boundary_count = 0;
  std::vector<ExceptionalFiber> fibers;
  BaseKind base = BaseKind::orientable;

  /// F x S^1: orientable base and no exceptional fibers.
  bool is_product() const { return fibers.empty() && base == BaseKind::orientable; }

  friend bool operator==(const SeifertPiece&, const SeifertPiece&) = default;
};

/// Integral 2x2 matrix (a b; c d).
struct GluingMatrix {
  Int a = 0, b = 0, c = 0, d = 0;

  Int determinant() const { return checked_sub(checked_mul(a, d), checked_mul(b, c)); }

  /// Exact inverse; requires determinant +-1.
  GluingMatrix inverse() const;

  GluingMatrix operator-() const {
    return {checked_neg(a), checked_neg(b), checked_neg(c), checked_neg(d)};
  }
  friend GluingMatrix operator*(const GluingMatrix& x, const GluingMatrix& y);

  static constexpr GluingMatrix swap() { return {0, 1, 1, 0}; }

  std::string to_string() const;

  friend bool operator==(const GluingMatrix&, const GluingMatrix&) = default;
};

struct Endpoint {
  std::string piece;
  int boundary = 0;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

enum class Side { source, target };

struct Edge {
  std::string id;
  Endpoint source;
  Endpoint target;
  GluingMatrix matrix;

  bool is_self_edge() const { return source.piece == target.piece; }
  const Endpoint& endpoint(Side side) const { return side == Side::source ? source : target; }

  /// The same torus described from the other direction: endpoints swapped,
  /// matrix inverted.
  Edge reversed() const { return {id, target, source, matrix.inverse()}; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// One edge endpoint attached to a piece.
struct Incidence {
  const Edge* edge;
  Side side;
  int boundary;
};

/// Immutable value. Pieces and edges are kept sorted by id, so two
/// manifolds built from the same data in any order compare equal.
class GraphManifold {
 public:
  GraphManifold() = default;
  GraphManifold(std::string name, std::vector<SeifertPiece> pieces, std::vector<Edge> edges);

  const std::string& name() const { return name_; }
  std::span<const SeifertPiece> pieces() const { return pieces_; }
  std::span<const Edge> edges() const { return edges_; }

  const SeifertPiece* find_piece(const std::string& id) const;
  const Edge* find_edge(const std::string& id) const;
  /// Throw UnknownIdError.
  const SeifertPiece& piece(const std::string& id) const;
  const Edge& edge(const std::string& id) const;

  /// Endpoints attached to `piece`, ordered by boundary index. A self-edge
  /// contributes two entries.
  std::vector<Incidence> incidences(const std::string& piece) const;

  GraphManifold with_name(std::string name) const;

  friend bool operator==(const GraphManifold&, const GraphManifold&) = default;

 private:
  std::string name_;
  std::vector<SeifertPiece> pieces_;
  std::vector<Edge> edges_;
};

struct Violation {
  std::string subject;  // "piece P1", "edge e2" or "manifold X"
  std::string rule;

  std::string to_string() const { return subject + ": " + rule; }
  friend bool operator==(const Violation&, const Violation&) = default;
};

using ValidationReport = std::vector<Violation>;

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Every structural rule of a closed coordinated graph manifold. Empty iff
/// valid.
ValidationReport validate(const GraphManifold& m);

/// Throws ValidationError when validate(m) is non-empty.
void require_valid(const GraphManifold& m);

/// Replace the (s, h) basis on every boundary torus of `piece` by (-s, -h).
/// Each incidence negates the edge matrix once, so self-edges are unchanged.
GraphManifold recoordinate_piece(const GraphManifold& m, const std::string& piece);

/// Redirect every edge so that `piece` is its source (edges not touching
/// `piece` are left alone). Reversing an edge inverts its matrix.
GraphManifold orient_edges_from(const GraphManifold& m, const std::string& piece);

/// Change the section on one boundary torus: s' = s - k h. Slopes (p, q)
/// on that torus become (p, q + k p); the attached edge matrix is updated so
/// the manifold is unchanged.
GraphManifold twist_section(const GraphManifold& m, const Endpoint& where, Int k);

/// Bring a piece's exceptional fibers to 1 <= beta < alpha, absorbing each
/// integral shift into a section change on boundary 0 of that piece.
/// Fibers with alpha < 2 or gcd(alpha, beta) != 1 are left for validate().
GraphManifold normalize_fibers(const GraphManifold& m);

/// Directed dual multigraph without piece data.
struct Multigraph {
  struct Arc {
    std::string id;
    std::size_t source;
    std::size_t target;
    friend bool operator==(const Arc&, const Arc&) = default;
  };
  std::vector<std::string> vertices;
  std::vector<Arc> arcs;

  std::size_t loop_count() const;
};

Multigraph dual_graph(const GraphManifold& m);

/// Connected components of the subgraph spanned by `vertices` and those
/// `arc_ids` whose ends both lie in `vertices`. Components and their
/// members are sorted.
std::vector<std::vector<std::string>> connected_components(const GraphManifold& m,
                                                           const std::vector<std::string>& vertices,
                                                           const std::vector<std::string>& arc_ids);

}  // namespace gm
