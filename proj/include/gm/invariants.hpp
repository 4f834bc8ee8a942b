#pragma once

// Exact invariants of filled Seifert pieces.
//
// Sign convention: filling a boundary torus along the curve p*s + q*h (or
// carrying an exceptional fiber with invariant (p, q)) contributes -q/p to
// the Euler number,  e = -(sum beta/alpha + sum q/p).  Only |e| and whether
// e vanishes enter the volume results, and both are convention-free.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gm/model.hpp"
#include "gm/rational.hpp"

namespace gm {

/// Unoriented curve p*s + q*h on a boundary torus, gcd(p, q) = 1,
/// normalized to p > 0, or (p, q) = (0, 1) for the fiber itself.
struct Slope {
  Int p = 1;
  Int q = 0;

  /// Divides out gcd(p, q) and fixes the sign; throws Error on (0, 0).
  static Slope normalized(Int p, Int q);

  bool is_fiber() const { return p == 0; }
  std::string to_string() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

  friend bool operator==(const Slope&, const Slope&) = default;
  friend auto operator<=>(const Slope&, const Slope&) = default;
};

/// A closed Seifert manifold with orientable base: genus plus cone data
/// (exceptional fibers and filling slopes together).
struct ClosedSeifert {
  Int genus = 0;
  std::vector<std::pair<Int, Int>> cone_data;  // (p >= 1, q)
  Rational euler_number;
  Rational chi_orb;
  Rational sv;

  friend bool operator==(const ClosedSeifert&, const ClosedSeifert&) = default;
};

/// Builds the record, deriving e, chi_orb and sv from genus and cone data.
ClosedSeifert make_closed_seifert(Int genus, std::vector<std::pair<Int, Int>> cone_data);

/// The adjacent piece's fiber seen from `side` of an edge with matrix A:
/// source side (b, -a), target side (b, d).
Slope adjacent_fiber_slope(const GluingMatrix& a, Side side);

/// Canonical framing of a piece: boundary index -> adjacent fiber slope.
std::map<int, Slope> canonical_filling_slopes(const GraphManifold& m, const std::string& piece);

/// e of the piece filled along `slopes` (one per boundary, in boundary order).
Rational euler_number_filled(const SeifertPiece& piece, const std::vector<Slope>& slopes);

/// Orbifold Euler characteristic 2 - 2g - sum over p >= 2 of (1 - 1/p).
Rational orbifold_euler_characteristic(Int genus, const std::vector<std::pair<Int, Int>>& cone_data);

/// The piece filled along its canonical framing.
ClosedSeifert hat_piece(const GraphManifold& m, const std::string& piece);

/// chi^2 / |e| when e != 0 and chi_orb < 0, else 0.
Rational sv_closed(const ClosedSeifert& cs);

/// Sum of |e| of all hat pieces.
Rational abs_euler(const GraphManifold& m);

/// Sum of sv of all hat pieces.
Rational abs_sv(const GraphManifold& m);

}  // namespace gm
