#include "gm/coverings.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gm {

namespace {

std::string copy_id(const std::string& id, int sheet) { return id + "." + std::to_string(sheet); }

Int surface_euler_char(const SeifertPiece& p) {
  return checked_sub(checked_sub(2, checked_mul(2, p.genus)), p.boundary_count);
}

}  // namespace

Int CoveringDescriptor::degree() const {
  if (base_space.pieces().empty()) return 0;
  const auto& first = base_space.pieces().front().id;
  Int total = 0;
  for (const auto& [_, pc] : piece_map)
    if (pc.base == first) total = checked_add(total, pc.degree());
  return total;
}

CoveringDescriptor identity_covering(const GraphManifold& m, std::string label) {
  CoveringDescriptor c;
  c.label = std::move(label);
  c.total_space = m;
  c.base_space = m;
  for (const auto& p : m.pieces()) c.piece_map[p.id] = PieceCover{p.id, 1, 1, 1};
  for (const auto& e : m.edges()) c.edge_map[e.id] = EdgeCover{e.id, 1, 1};
  c.characteristic = 1;
  c.separable = true;
  return c;
}

bool CheckReport::failed(CoverClause clause) const {
  return std::any_of(violations.begin(), violations.end(),
                     [clause](const CoverViolation& v) { return v.clause == clause; });
}

std::string CheckReport::summary() const {
  if (passed()) return "pass (degree " + std::to_string(total_degree) + ")";
  std::ostringstream os;
  os << "fail:";
  for (const auto& v : violations) os << " [clause " << static_cast<int>(v.clause) << "] " << v.message << ';';
  return os.str();
}

CheckReport check_covering(const CoveringDescriptor& c) {
  CheckReport r;
  auto add = [&r](CoverClause clause, std::string message) { r.violations.push_back({clause, std::move(message)}); };
  const GraphManifold& total = c.total_space;
  const GraphManifold& base = c.base_space;

  for (const auto& v : validate(total)) add(CoverClause::validity, "total space " + v.to_string());
  for (const auto& v : validate(base)) add(CoverClause::validity, "base space " + v.to_string());

  // (1) incidence
  bool maps_ok = true;
  auto incidence_fail = [&](std::string message) {
    add(CoverClause::incidence, std::move(message));
    maps_ok = false;
  };
  std::set<std::string> hit_pieces;
  std::set<std::string> hit_edges;
  for (const auto& p : total.pieces()) {
    auto it = c.piece_map.find(p.id);
    if (it == c.piece_map.end()) {
      incidence_fail("piece " + p.id + " has no image");
    } else if (base.find_piece(it->second.base) == nullptr) {
      incidence_fail("piece " + p.id + " maps to unknown piece " + it->second.base);
    } else {
      hit_pieces.insert(it->second.base);
    }
  }
  for (const auto& [id, _] : c.piece_map)
    if (total.find_piece(id) == nullptr) incidence_fail("piece map names unknown piece " + id);
  for (const auto& e : total.edges()) {
    auto it = c.edge_map.find(e.id);
    if (it == c.edge_map.end()) {
      incidence_fail("edge " + e.id + " has no image");
      continue;
    }
    const Edge* image = base.find_edge(it->second.base);
    if (image == nullptr) {
      incidence_fail("edge " + e.id + " maps to unknown edge " + it->second.base);
      continue;
    }
    hit_edges.insert(image->id);
    for (Side side : {Side::source, Side::target}) {
      auto pm = c.piece_map.find(e.endpoint(side).piece);
      if (pm == c.piece_map.end()) continue;
      if (pm->second.base != image->endpoint(side).piece)
        incidence_fail("edge " + e.id + " -> " + image->id + " does not commute with incidence at its " +
                       (side == Side::source ? "source" : "target"));
    }
  }
  for (const auto& [id, _] : c.edge_map)
    if (total.find_edge(id) == nullptr) incidence_fail("edge map names unknown edge " + id);
  for (const auto& p : base.pieces())
    if (!hit_pieces.contains(p.id)) incidence_fail("base piece " + p.id + " has no preimage");
  for (const auto& e : base.edges())
    if (!hit_edges.contains(e.id)) incidence_fail("base edge " + e.id + " has no preimage");
  if (!maps_ok) return r;

  // (2) total degree
  std::map<std::string, Int> per_base;
  for (const auto& [id, pc] : c.piece_map) {
    if (pc.vertical_degree < 1 || pc.horizontal_degree < 1) {
      add(CoverClause::total_degree, "piece " + id + " has a non-positive degree");
      continue;
    }
    per_base[pc.base] = checked_add(per_base[pc.base], pc.degree());
  }
  r.total_degree = per_base.empty() ? 0 : per_base.begin()->second;
  for (const auto& [id, deg] : per_base)
    if (deg != r.total_degree)
      add(CoverClause::total_degree, "base piece " + id + " is covered with degree " + std::to_string(deg) +
                                         " but the cover has degree " + std::to_string(r.total_degree));

  // (3) Euler characteristic of base surfaces, exceptional fibers
  for (const auto& p : total.pieces()) {
    const PieceCover& pc = c.piece_map.at(p.id);
    const SeifertPiece& q = base.piece(pc.base);
    Int lhs = surface_euler_char(p);
    Int rhs = checked_mul(pc.horizontal_degree, surface_euler_char(q));
    if (lhs != rhs)
      add(CoverClause::euler_char, "piece " + p.id + ": chi(F~) = " + std::to_string(lhs) + " but d_h * chi(F) = " +
                                       std::to_string(rhs));
    if (!p.fibers.empty() || !q.fibers.empty()) {
      if (pc.degree() != 1 || p.fibers != q.fibers)
        add(CoverClause::euler_char, "piece " + p.id + ": exceptional fibers are only lifted by degree-one piece covers");
    }
    if (p.base != q.base) add(CoverClause::euler_char, "piece " + p.id + ": base surface kind differs from its image");
  }

  // (4) boundary circles
  for (const auto& p : total.pieces()) {
    const PieceCover& pc = c.piece_map.at(p.id);
    const SeifertPiece& q = base.piece(pc.base);
    std::map<int, Int> sums;
    for (const auto& inc : total.incidences(p.id)) {
      const EdgeCover& ec = c.edge_map.at(inc.edge->id);
      const Edge& image = base.edge(ec.base);
      Int mult = inc.side == Side::source ? ec.source_multiplicity : ec.target_multiplicity;
      int b = image.endpoint(inc.side).boundary;
      sums[b] = checked_add(sums[b], mult);
    }
    for (int b = 0; b < q.boundary_count; ++b) {
      Int got = sums.contains(b) ? sums[b] : 0;
      if (got != pc.horizontal_degree)
        add(CoverClause::boundary_circles, "piece " + p.id + ": preimages of boundary " + pc.base + ":" +
                                               std::to_string(b) + " have total multiplicity " + std::to_string(got) +
                                               ", expected d_h = " + std::to_string(pc.horizontal_degree));
    }
  }

  // (5) matrix lifting for characteristic covers
  if (c.characteristic) {
    Int m = *c.characteristic;
    for (const auto& e : total.edges()) {
      const EdgeCover& ec = c.edge_map.at(e.id);
      const Edge& image = base.edge(ec.base);
      const PieceCover& src = c.piece_map.at(e.source.piece);
      const PieceCover& tgt = c.piece_map.at(e.target.piece);
      GluingMatrix expected = (src.coordinate_sign * tgt.coordinate_sign == 1) ? image.matrix : -image.matrix;
      if (e.matrix != expected)
        add(CoverClause::matrix_lift, "edge " + e.id + ": lifted matrix " + e.matrix.to_string() + " differs from " +
                                          expected.to_string());
      if (ec.source_multiplicity != m || ec.target_multiplicity != m || src.vertical_degree != m ||
          tgt.vertical_degree != m)
        add(CoverClause::matrix_lift, "edge " + e.id + ": torus cover is not " + std::to_string(m) + "-characteristic");
    }
  }

  // (6) fiber degrees and torus degrees
  std::map<std::string, Int> torus_total;
  for (const auto& e : total.edges()) {
    const EdgeCover& ec = c.edge_map.at(e.id);
    Int from_source = checked_mul(c.piece_map.at(e.source.piece).vertical_degree, ec.source_multiplicity);
    Int from_target = checked_mul(c.piece_map.at(e.target.piece).vertical_degree, ec.target_multiplicity);
    if (from_source != from_target)
      add(CoverClause::fiber_degree, "edge " + e.id + ": torus degree " + std::to_string(from_source) +
                                         " from the source side but " + std::to_string(from_target) +
                                         " from the target side");
    torus_total[ec.base] = checked_add(torus_total[ec.base], from_source);
  }
  for (const auto& [id, deg] : torus_total)
    if (deg != r.total_degree)
      add(CoverClause::fiber_degree, "base edge " + id + " is covered with degree " + std::to_string(deg) +
                                         " but the cover has degree " + std::to_string(r.total_degree));

  // (7) separability: fiber-degree-one covers, or covers of products
  if (c.separable) {
    for (const auto& [id, pc] : c.piece_map)
      if (pc.vertical_degree > 1 && !base.piece(pc.base).is_product())
        add(CoverClause::separable, "piece " + id + ": separable claim needs d_v = 1 or a product base piece");
  }
  return r;
}

CoverResult separate_self_edges_cover(const GraphManifold& m) {
  require_valid(m);
  bool has_loop = std::any_of(m.edges().begin(), m.edges().end(), [](const Edge& e) { return e.is_self_edge(); });
  if (!has_loop) {
    return {m, identity_covering(m, "separate-self-edges (identity)"),
            "no self-edge: every JSJ torus already separates two pieces; returned unchanged"};
  }
  std::vector<SeifertPiece> pieces;
  std::vector<Edge> edges;
  CoveringDescriptor c;
  c.label = "separate-self-edges";
  c.base_space = m;
  c.characteristic = 1;
  c.separable = true;
  for (const auto& p : m.pieces()) {
    for (int sheet = 0; sheet < 2; ++sheet) {
      SeifertPiece copy = p;
      copy.id = copy_id(p.id, sheet);
      c.piece_map[copy.id] = PieceCover{p.id, 1, 1, 1};
      pieces.push_back(std::move(copy));
    }
  }
  for (const auto& e : m.edges()) {
    int label = e.is_self_edge() ? 1 : 0;
    for (int sheet = 0; sheet < 2; ++sheet) {
      Edge lift{copy_id(e.id, sheet),
                {copy_id(e.source.piece, sheet), e.source.boundary},
                {copy_id(e.target.piece, (sheet + label) % 2), e.target.boundary},
                e.matrix};
      c.edge_map[lift.id] = EdgeCover{e.id, 1, 1};
      edges.push_back(std::move(lift));
    }
  }
  GraphManifold cover(m.name() + ".sep", std::move(pieces), std::move(edges));
  c.total_space = cover;
  return {std::move(cover), std::move(c), "double cover along the self-edge labeling"};
}

GluingMatrix matrix_from(const Edge& e, const std::string& from) {
  return e.source.piece == from ? e.matrix : e.matrix.inverse();
}

GluingMatrix sign_normalized(const GluingMatrix& a) {
  for (Int x : {a.a, a.b, a.c, a.d}) {
    if (x > 0) return a;
    if (x < 0) return -a;
  }
  return a;
}

Classification classify(const GraphManifold& m) {
  require_valid(m);
  Classification c;
  c.is_swap_normal_form = std::all_of(m.edges().begin(), m.edges().end(), [](const Edge& e) {
    return e.matrix == GluingMatrix::swap() || e.matrix == -GluingMatrix::swap();
  });
  c.all_pieces_product_genus2 = std::all_of(m.pieces().begin(), m.pieces().end(),
                                            [](const SeifertPiece& p) { return p.is_product() && p.genus >= 2; });
  bool no_loops = std::none_of(m.edges().begin(), m.edges().end(), [](const Edge& e) { return e.is_self_edge(); });
  c.is_multiple_edge = m.pieces().size() == 2 && !m.edges().empty() && no_loops;
  if (!c.is_multiple_edge) return c;

  c.multiplicity = m.edges().size();
  const Edge& first = m.edges().front();
  c.first_piece = first.source.piece;
  c.second_piece = first.target.piece;
  GluingMatrix head = matrix_from(first, c.first_piece);
  c.reference = sign_normalized(head);
  c.is_pm_A = true;
  bool all_equal = true;
  for (const auto& e : m.edges()) {
    GluingMatrix x = matrix_from(e, c.first_piece);
    if (x != head) all_equal = false;
    if (x != head && x != -head) c.is_pm_A = false;
  }
  c.is_property_I = all_equal && c.all_pieces_product_genus2;
  return c;
}

PropertyINormalization property_i_normalize(const GraphManifold& m) {
  const std::string stage = "property-I normalization";
  Classification cls = classify(m);
  if (!cls.is_multiple_edge) throw HypothesisError(stage, "not a multiple-edge graph manifold");
  if (!cls.is_pm_A) throw HypothesisError(stage, "gluing matrices are not all +-A");
  if (!cls.all_pieces_product_genus2)
    throw HypothesisError(stage, "both pieces must be products F x S^1 with genus(F) >= 2");

  const GluingMatrix a = *cls.reference;
  const std::string& one = cls.first_piece;
  const std::string& two = cls.second_piece;

  PropertyINormalization out;
  out.matrix = a;
  std::map<std::string, int> label;  // 1 on edges carrying -A
  for (const auto& e : m.edges()) {
    label[e.id] = matrix_from(e, one) == a ? 0 : 1;
    out.flipped_edges += static_cast<std::size_t>(label[e.id]);
  }

  // Every edge replaced by A in the normal direction.
  std::vector<Edge> n2_edges;
  for (const auto& e : m.edges()) {
    Edge x = e;
    x.matrix = e.source.piece == one ? a : a.inverse();
    n2_edges.push_back(std::move(x));
  }
  out.n2 = GraphManifold(m.name() + ".I", {m.pieces().begin(), m.pieces().end()}, std::move(n2_edges));

  if (out.flipped_edges == 0 || out.flipped_edges == m.edges().size()) {
    // Either already Property I, or a single re-coordination of the second
    // piece turns every -A into A; no double cover is needed.
    bool flip = out.flipped_edges != 0;
    if (!flip) out.n2 = m;
    out.n1 = out.n2;
    out.n1_to_base = identity_covering(m, "p1: N1 -> N");
    out.n1_to_base.total_space = out.n1;
    if (flip) out.n1_to_base.piece_map[two].coordinate_sign = -1;
    out.n1_to_n2 = identity_covering(out.n2, "p2: N1 -> N2");
    for (const auto& p : m.pieces()) out.deck_involution[p.id] = p.id;
    return out;
  }

  // N1: sheets 0 and 1 of each piece; -A edges lift crosswise. Sheet 1 is
  // re-coordinated by (-s, -h), which turns every lifted matrix into A.
  std::vector<SeifertPiece> pieces;
  std::vector<Edge> edges;
  CoveringDescriptor to_base;
  to_base.label = "p1: N1 -> N";
  to_base.base_space = m;
  to_base.characteristic = 1;
  to_base.separable = true;
  CoveringDescriptor to_n2;
  to_n2.label = "p2: N1 -> N2";
  to_n2.base_space = out.n2;
  to_n2.characteristic = 1;
  to_n2.separable = true;
  for (const auto& p : m.pieces()) {
    for (int sheet = 0; sheet < 2; ++sheet) {
      SeifertPiece copy = p;
      copy.id = copy_id(p.id, sheet);
      to_base.piece_map[copy.id] = PieceCover{p.id, 1, 1, sheet == 0 ? 1 : -1};
      to_n2.piece_map[copy.id] = PieceCover{p.id, 1, 1, 1};
      out.deck_involution[copy.id] = copy_id(p.id, 1 - sheet);
      pieces.push_back(std::move(copy));
    }
  }
  for (const auto& e : m.edges()) {
    int l = label.at(e.id);
    for (int sheet = 0; sheet < 2; ++sheet) {
      int src_sheet = e.source.piece == one ? sheet : (sheet + l) % 2;
      int tgt_sheet = e.source.piece == one ? (sheet + l) % 2 : sheet;
      int sign = (src_sheet == 0 ? 1 : -1) * (tgt_sheet == 0 ? 1 : -1);
      Edge lift{copy_id(e.id, sheet),
                {copy_id(e.source.piece, src_sheet), e.source.boundary},
                {copy_id(e.target.piece, tgt_sheet), e.target.boundary},
                sign == 1 ? e.matrix : -e.matrix};
      to_base.edge_map[lift.id] = EdgeCover{e.id, 1, 1};
      to_n2.edge_map[lift.id] = EdgeCover{e.id, 1, 1};
      edges.push_back(std::move(lift));
    }
  }
  out.n1 = GraphManifold(m.name() + ".N1", std::move(pieces), std::move(edges));
  to_base.total_space = out.n1;
  to_n2.total_space = out.n1;
  out.n1_to_base = std::move(to_base);
  out.n1_to_n2 = std::move(to_n2);
  return out;
}

Int genus_cover_genus(Int d, Int g) {
  // d(g - 1) + d(d - 1)/2 + 1
  return checked_add(checked_add(checked_mul(d, checked_sub(g, 1)), checked_mul(d, checked_sub(d, 1)) / 2), 1);
}

CoverResult genus_cover(const GraphManifold& m) {
  const std::string stage = "genus cover";
  Classification cls = classify(m);
  if (!cls.is_property_I) throw HypothesisError(stage, "input does not satisfy Property I");
  const Int d = static_cast<Int>(cls.multiplicity);
  if (d == 1) {
    auto id = identity_covering(m, "p3: N3 -> N2");
    return {m, std::move(id), "single edge: the genus cover is the identity"};
  }
  std::vector<SeifertPiece> pieces(m.pieces().begin(), m.pieces().end());
  for (auto& p : pieces) p.genus = genus_cover_genus(d, p.genus);
  GraphManifold cover(m.name() + ".genus" + std::to_string(d), std::move(pieces),
                      {m.edges().begin(), m.edges().end()});
  CoveringDescriptor c;
  c.label = "p3: N3 -> N2";
  c.total_space = cover;
  c.base_space = m;
  c.characteristic = d;
  c.separable = true;
  for (const auto& p : m.pieces()) c.piece_map[p.id] = PieceCover{p.id, d, d, 1};
  for (const auto& e : m.edges()) c.edge_map[e.id] = EdgeCover{e.id, d, d};
  return {std::move(cover), std::move(c),
          "Z/d x Z/d cover: each boundary circle has order d, the fiber has order d"};
}

}  // namespace gm
