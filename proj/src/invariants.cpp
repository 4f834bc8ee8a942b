#include "gm/invariants.hpp"

namespace gm {

Slope Slope::normalized(Int p, Int q) {
  Int g = gcd(p, q);
  if (g == 0) throw Error("slope (0,0) is not a curve");
  p /= g;
  q /= g;
  if (p < 0 || (p == 0 && q < 0)) {
    p = checked_neg(p);
    q = checked_neg(q);
  }
  return {p, q};
}

Rational orbifold_euler_characteristic(Int genus, const std::vector<std::pair<Int, Int>>& cone_data) {
  Rational chi(checked_sub(2, checked_mul(2, genus)));
  for (const auto& [p, q] : cone_data)
    if (p >= 2) chi -= Rational(1) - Rational(1, p);
  return chi;
}

Rational sv_closed(const ClosedSeifert& cs) {
  if (cs.euler_number.is_zero() || cs.chi_orb.sign() >= 0) return Rational(0);
  return cs.chi_orb * cs.chi_orb / cs.euler_number.abs();
}

ClosedSeifert make_closed_seifert(Int genus, std::vector<std::pair<Int, Int>> cone_data) {
  ClosedSeifert cs;
  cs.genus = genus;
  Rational sum(0);
  for (const auto& [p, q] : cone_data) {
    if (p < 1) throw Error("cone point with p < 1");
    sum += Rational(q, p);
  }
  cs.euler_number = -sum;
  cs.chi_orb = orbifold_euler_characteristic(genus, cone_data);
  cs.cone_data = std::move(cone_data);
  cs.sv = sv_closed(cs);
  return cs;
}

Slope adjacent_fiber_slope(const GluingMatrix& a, Side side) {
  // Source: h+ = tau((s-, h-) A^-1 e2), and A^-1 = (-d b; c -a) for det -1.
  // Target: tau(h-) = (s+, h+) (b, d)^T.
  return side == Side::source ? Slope::normalized(a.b, checked_neg(a.a)) : Slope::normalized(a.b, a.d);
}

std::map<int, Slope> canonical_filling_slopes(const GraphManifold& m, const std::string& piece) {
  m.piece(piece);
  std::map<int, Slope> out;
  for (const auto& inc : m.incidences(piece)) {
    if (inc.edge->matrix.b == 0) throw ValidationError({{"edge " + inc.edge->id, "b != 0 required (fiber glued to fiber)"}});
    if (!out.emplace(inc.boundary, adjacent_fiber_slope(inc.edge->matrix, inc.side)).second)
      throw ValidationError({{"piece " + piece, "boundary index reused: " + std::to_string(inc.boundary)}});
  }
  if (static_cast<int>(out.size()) != m.piece(piece).boundary_count)
    throw ValidationError({{"piece " + piece, "boundary components not all matched"}});
  return out;
}

Rational euler_number_filled(const SeifertPiece& piece, const std::vector<Slope>& slopes) {
  if (static_cast<int>(slopes.size()) != piece.boundary_count)
    throw Error("piece " + piece.id + " has " + std::to_string(piece.boundary_count) + " boundary components but " +
                std::to_string(slopes.size()) + " slopes were supplied");
  Rational sum(0);
  for (const auto& f : piece.fibers) sum += Rational(f.beta, f.alpha);
  for (const auto& s : slopes) {
    if (s.p == 0) throw Error("filling along the fiber slope (0,1) is not allowed");
    sum += Rational(s.q, s.p);
  }
  return -sum;
}

ClosedSeifert hat_piece(const GraphManifold& m, const std::string& piece) {
  const auto& p = m.piece(piece);
  std::vector<std::pair<Int, Int>> cone;
  for (const auto& f : p.fibers) cone.emplace_back(f.alpha, f.beta);
  for (const auto& [boundary, slope] : canonical_filling_slopes(m, piece)) cone.emplace_back(slope.p, slope.q);
  return make_closed_seifert(p.genus, std::move(cone));
}

Rational abs_euler(const GraphManifold& m) {
  Rational total(0);
  for (const auto& p : m.pieces()) total += hat_piece(m, p.id).euler_number.abs();
  return total;
}

Rational abs_sv(const GraphManifold& m) {
  Rational total(0);
  for (const auto& p : m.pieces()) total += hat_piece(m, p.id).sv;
  return total;
}

}  // namespace gm
