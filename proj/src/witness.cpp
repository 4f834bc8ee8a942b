#include "gm/witness.hpp"

#include <algorithm>

namespace gm {

std::string to_string(MapKind kind) {
  switch (kind) {
    case MapKind::vertical_pinch: return "vertical_pinch";
    case MapKind::cyclic_cover: return "cyclic_cover";
    case MapKind::degree_one_pinch_project: return "degree_one_pinch_project";
    case MapKind::degree_two_project: return "degree_two_project";
  }
  return "unknown";
}

namespace {

void require_two_products(const GraphManifold& m, const std::string& stage) {
  for (const auto& p : m.pieces())
    if (!p.is_product() || p.genus < 2)
      throw HypothesisError(stage, "piece " + p.id + " is not a product F x S^1 with genus(F) >= 2");
}

GraphManifold with_piece(const GraphManifold& m, const SeifertPiece& replacement) {
  std::vector<SeifertPiece> pieces(m.pieces().begin(), m.pieces().end());
  for (auto& p : pieces)
    if (p.id == replacement.id) p = replacement;
  return {m.name(), std::move(pieces), {m.edges().begin(), m.edges().end()}};
}

}  // namespace

PinchResult vertical_pinch(const GraphManifold& m, const std::string& piece, Int target_genus) {
  const std::string stage = "vertical pinch";
  const SeifertPiece& p = m.piece(piece);
  if (!p.is_product()) throw HypothesisError(stage, "piece " + piece + " is not a product F x S^1");
  if (target_genus < 2 || target_genus > p.genus)
    throw HypothesisError(stage, "target genus " + std::to_string(target_genus) + " must lie in [2, " +
                                     std::to_string(p.genus) + "]");
  SeifertPiece pinched = p;
  pinched.genus = target_genus;
  GraphManifold out = with_piece(m, pinched);
  MapDescriptor map{MapKind::vertical_pinch, 1, m, out, "pinch " + piece,
                    "genus " + std::to_string(p.genus) + " -> " + std::to_string(target_genus)};
  return {std::move(out), std::move(map)};
}

CoverResult rotation_cover(const GraphManifold& m) {
  const std::string stage = "rotation cover";
  Classification cls = classify(m);
  if (!cls.is_property_I) throw HypothesisError(stage, "input does not satisfy Property I");
  const Int d = static_cast<Int>(cls.multiplicity);
  GraphManifold total = orient_edges_from(m, cls.first_piece);
  std::vector<SeifertPiece> pieces;
  for (const auto& p : total.pieces()) {
    Int g1 = checked_sub(p.genus, 1);
    if (g1 % d != 0 || g1 / d < 1)
      throw HypothesisError(stage, "genus of piece " + p.id + " is " + std::to_string(p.genus) +
                                       ", not of the form a*" + std::to_string(d) + " + 1 with a >= 1");
    SeifertPiece q = p;
    q.genus = g1 / d + 1;
    q.boundary_count = 1;
    pieces.push_back(std::move(q));
  }
  if (d == 1) {
    auto id = identity_covering(total, "rotation (identity)");
    return {total, std::move(id), "single edge: the rotation quotient is the identity"};
  }
  const Edge& first = total.edges().front();
  Edge quotient_edge{first.id, {cls.first_piece, 0}, {cls.second_piece, 0}, first.matrix};
  GraphManifold base(m.name() + ".rot", std::move(pieces), {quotient_edge});

  CoveringDescriptor c;
  c.label = "rotation by 2pi/" + std::to_string(d);
  c.total_space = total;
  c.base_space = base;
  c.characteristic = 1;
  c.separable = true;
  for (const auto& p : total.pieces()) c.piece_map[p.id] = PieceCover{p.id, 1, d, 1};
  for (const auto& e : total.edges()) c.edge_map[e.id] = EdgeCover{first.id, 1, 1};
  return {std::move(base), std::move(c), "Z/d acts freely, permuting the d boundary circles of each piece"};
}

Projection project_to_psl(const GraphManifold& m) {
  const std::string stage = "projection";
  require_valid(m);
  if (m.pieces().size() != 2 || m.edges().size() != 1 || m.edges().front().is_self_edge())
    throw HypothesisError(stage, "expects two pieces joined by a single edge");
  require_two_products(m, stage);

  const Edge& e = m.edges().front();
  const SeifertPiece& src = m.piece(e.source.piece);
  const SeifertPiece& tgt = m.piece(e.target.piece);
  GluingMatrix a = e.matrix;

  Projection out;
  out.matrix = a;
  if (a.a != 0 && a.c != 0) {
    // Kill the source section: tau(s-) = a s+ + c h+ becomes the filling curve.
    out.branch = ProjectionBranch::fill_target;
    out.filled_piece = tgt.id;
    out.slope = Slope::normalized(a.a, a.c);
    out.target = make_closed_seifert(tgt.genus, {{out.slope.p, out.slope.q}});
    out.map = {MapKind::degree_one_pinch_project, 1, m, out.target, "projection",
               "pinch " + src.id + " to a solid torus; fill " + tgt.id + " along " + out.slope.to_string()};
    return out;
  }
  if (a.d != 0 && a.c != 0) {
    // tau^-1(s+) = -d s- + c h-
    out.branch = ProjectionBranch::fill_source;
    out.filled_piece = src.id;
    out.slope = Slope::normalized(checked_neg(a.d), a.c);
    out.target = make_closed_seifert(src.genus, {{out.slope.p, out.slope.q}});
    out.map = {MapKind::degree_one_pinch_project, 1, m, out.target, "projection",
               "pinch " + tgt.id + " to a solid torus; fill " + src.id + " along " + out.slope.to_string()};
    return out;
  }

  // c = 0 or a = d = 0: A = +-(1 b; 0 -1) or +-(0 1; 1 0).
  out.branch = ProjectionBranch::double_projection;
  if ((a.c == 0 && a.a == -1) || a == -GluingMatrix::swap()) {
    out.recoordinated = true;
    a = -a;  // re-coordinate the target piece by (-s, -h)
  }
  out.matrix = a;
  if (a.c == 0) {
    Int g = gcd(2, a.b);
    out.slope = Slope::normalized(a.b / g, -2 / g);
  } else {
    out.slope = Slope::normalized(1, -1);
  }
  const SeifertPiece& smaller = src.genus <= tgt.genus ? src : tgt;
  out.filled_piece = smaller.id;
  out.target = make_closed_seifert(smaller.genus, {{out.slope.p, out.slope.q}});
  std::string detail;
  if (out.recoordinated) detail += "re-coordinate " + tgt.id + " by (-s,-h); ";
  if (src.genus != tgt.genus)
    detail += "pinch the larger piece to genus " + std::to_string(smaller.genus) + "; ";
  detail += "fold both pieces onto F x S^1 (genus " + std::to_string(smaller.genus) + ") and fill along " +
            out.slope.to_string();
  out.map = {MapKind::degree_two_project, 2, m, out.target, "projection", detail};
  return out;
}

Int ChainLink::degree() const {
  if (const auto* c = std::get_if<CoveringDescriptor>(&link)) return c->degree();
  return std::get<MapDescriptor>(link).degree;
}

WitnessCertificate sv_witness(const GraphManifold& m) {
  Classification cls = classify(m);
  if (!cls.is_multiple_edge) throw HypothesisError("precondition", "not a multiple-edge graph manifold");
  if (!cls.is_pm_A) throw HypothesisError("precondition", "gluing matrices are not all +-A");
  if (!cls.all_pieces_product_genus2)
    throw HypothesisError("precondition", "pieces must be products F x S^1 with genus(F) >= 2");

  WitnessCertificate cert;
  cert.input = orient_edges_from(m, cls.first_piece);

  PropertyINormalization norm = property_i_normalize(cert.input);
  cert.chain.push_back({"p1: N1 -> N", norm.n1_to_base});
  cert.chain.push_back({"p2: N1 -> N2", norm.n1_to_n2});

  CoverResult genus = genus_cover(norm.n2);
  cert.chain.push_back({"p3: N3 -> N2", genus.descriptor});

  const Int d = static_cast<Int>(cls.multiplicity);
  Int min_genus = std::min(genus.cover.pieces()[0].genus, genus.cover.pieces()[1].genus);
  Int a = (min_genus - 1) / d;
  if (a < 1) throw HypothesisError("vertical pinch", "genus cover too small for a >= 1");
  cert.pinch_genus = checked_add(checked_mul(a, d), 1);

  GraphManifold current = genus.cover;
  Int map_degree = 1;
  for (const auto& p : genus.cover.pieces()) {
    PinchResult pinch = vertical_pinch(current, p.id, cert.pinch_genus);
    map_degree = checked_mul(map_degree, pinch.map.degree);
    cert.chain.push_back({"p4: vertical pinch of " + p.id, pinch.map});
    current = std::move(pinch.manifold);
  }

  CoverResult rotation = rotation_cover(current);
  map_degree = checked_mul(map_degree, rotation.descriptor.degree());
  cert.chain.push_back({"p4: rotation quotient", rotation.descriptor});

  Projection proj = project_to_psl(rotation.cover);
  map_degree = checked_mul(map_degree, proj.map.degree);
  cert.chain.push_back({"p4: projection", proj.map});

  cert.target = proj.target;
  cert.target_sv = proj.target.sv;
  cert.branch = proj.branch;
  cert.map_degree = map_degree;
  cert.sv_lower_bound = Rational(map_degree) * cert.target_sv;
  cert.cover_index_bound = checked_mul(norm.n1_to_n2.degree(), genus.descriptor.degree());
  cert.conclusion = "N admits a finite cover N~ (covering both N1 and N3, index over N2 at most " +
                    std::to_string(cert.cover_index_bound) + ") with SV(N~) >= SV(N3) >= " +
                    std::to_string(map_degree) + " * " + cert.target_sv.to_string() +
                    " > 0; N~ is not constructed";
  return cert;
}

std::vector<std::string> verify_certificate(const WitnessCertificate& cert) {
  std::vector<std::string> problems;
  auto covering = [&](std::size_t i) -> const CoveringDescriptor* {
    return i < cert.chain.size() ? std::get_if<CoveringDescriptor>(&cert.chain[i].link) : nullptr;
  };
  auto map_at = [&](std::size_t i) -> const MapDescriptor* {
    return i < cert.chain.size() ? std::get_if<MapDescriptor>(&cert.chain[i].link) : nullptr;
  };
  auto manifold = [](const Space& s) -> const GraphManifold* { return std::get_if<GraphManifold>(&s); };

  if (cert.chain.size() != 7) {
    problems.push_back("chain must have 7 links, has " + std::to_string(cert.chain.size()));
    return problems;
  }
  const auto* p1 = covering(0);
  const auto* p2 = covering(1);
  const auto* p3 = covering(2);
  const auto* pinch1 = map_at(3);
  const auto* pinch2 = map_at(4);
  const auto* rot = covering(5);
  const auto* proj = map_at(6);
  if (!p1 || !p2 || !p3 || !pinch1 || !pinch2 || !rot || !proj) {
    problems.push_back("chain links have the wrong kinds");
    return problems;
  }
  for (std::size_t i : {0u, 1u, 2u, 5u}) {
    auto report = check_covering(*covering(i));
    if (!report.passed()) problems.push_back(cert.chain[i].stage + ": " + report.summary());
  }
  if (!(p1->base_space == cert.input)) problems.push_back("p1 does not cover the input");
  if (!(p1->total_space == p2->total_space)) problems.push_back("p1 and p2 have different total spaces");
  if (!(p3->base_space == p2->base_space)) problems.push_back("p3 does not cover N2");
  const GraphManifold* s1 = manifold(pinch1->source);
  const GraphManifold* t1 = manifold(pinch1->target);
  const GraphManifold* s2 = manifold(pinch2->source);
  const GraphManifold* t2 = manifold(pinch2->target);
  if (!s1 || !(*s1 == p3->total_space)) problems.push_back("first pinch does not start at N3");
  if (!t1 || !s2 || !(*t1 == *s2)) problems.push_back("pinches do not compose");
  if (!t2 || !(*t2 == rot->total_space)) problems.push_back("rotation does not start at the pinched N3");
  const GraphManifold* sp = manifold(proj->source);
  if (!sp || !(*sp == rot->base_space)) problems.push_back("projection does not start at the rotation quotient");
  const auto* tp = std::get_if<ClosedSeifert>(&proj->target);
  if (!tp || !(*tp == cert.target)) problems.push_back("projection target differs from the recorded target");

  for (const auto* pinch : {pinch1, pinch2})
    if (pinch->kind != MapKind::vertical_pinch || pinch->degree != 1) problems.push_back("pinch must have degree 1");
  bool proj_ok = (proj->kind == MapKind::degree_one_pinch_project && proj->degree == 1) ||
                 (proj->kind == MapKind::degree_two_project && proj->degree == 2);
  if (!proj_ok) problems.push_back("projection degree must be 1 or 2 matching its kind");

  Int degree = checked_mul(checked_mul(pinch1->degree, pinch2->degree), checked_mul(rot->degree(), proj->degree));
  if (degree != cert.map_degree) problems.push_back("recorded N3 -> N4 degree is inconsistent");
  if (cert.target_sv != sv_closed(cert.target) || cert.target.sv != cert.target_sv)
    problems.push_back("target_sv is not sv(target)");
  if (cert.target_sv.sign() <= 0) problems.push_back("target_sv must be positive");
  if (cert.sv_lower_bound != Rational(cert.map_degree) * cert.target_sv)
    problems.push_back("lower bound is not degree * target_sv");
  if (cert.cover_index_bound != checked_mul(p2->degree(), p3->degree()))
    problems.push_back("cover index bound is not deg(p2) * deg(p3)");
  return problems;
}

}  // namespace gm
