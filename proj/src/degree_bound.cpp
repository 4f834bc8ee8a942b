#include "gm/degree_bound.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gm/coverings.hpp"

namespace gm {

std::string CanonicalSubmanifold::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < pieces.size(); ++i) out += (i ? "," : "") + pieces[i];
  out += " | edges:";
  for (std::size_t i = 0; i < retained_edges.size(); ++i) out += (i ? "," : "") + retained_edges[i];
  out += "}";
  return out;
}

CanonicalSubmanifold make_canonical_submanifold(const GraphManifold& m, std::vector<std::string> pieces,
                                                std::vector<std::string> retained_edges) {
  std::sort(pieces.begin(), pieces.end());
  pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
  std::sort(retained_edges.begin(), retained_edges.end());
  retained_edges.erase(std::unique(retained_edges.begin(), retained_edges.end()), retained_edges.end());
  if (pieces.empty()) throw Error("canonical submanifold needs at least one piece");
  std::set<std::string> in(pieces.begin(), pieces.end());
  for (const auto& id : pieces) m.piece(id);
  for (const auto& id : retained_edges) {
    const Edge& e = m.edge(id);
    if (!in.contains(e.source.piece) || !in.contains(e.target.piece))
      throw Error("retained edge " + id + " leaves the submanifold");
  }
  std::set<std::string> kept(retained_edges.begin(), retained_edges.end());
  CanonicalSubmanifold l{std::move(pieces), std::move(retained_edges), {}};
  for (const auto& id : l.pieces)
    for (const auto& inc : m.incidences(id))
      if (!kept.contains(inc.edge->id))
        l.cut_boundaries.push_back({{id, inc.boundary}, adjacent_fiber_slope(inc.edge->matrix, inc.side)});
  std::sort(l.cut_boundaries.begin(), l.cut_boundaries.end(),
            [](const CutBoundary& x, const CutBoundary& y) { return x.where < y.where; });
  return l;
}

std::vector<CanonicalSubmanifold> enumerate_canonical_submanifolds(const GraphManifold& m, std::size_t max_edges) {
  require_valid(m);
  if (m.edges().size() > max_edges)
    throw HypothesisError("enumeration", "edge count " + std::to_string(m.edges().size()) + " exceeds the cap of " +
                                             std::to_string(max_edges) + " edges");
  const std::size_t n = m.pieces().size();
  if (n >= 63) throw HypothesisError("enumeration", "too many pieces");
  // (S, R) is canonical for every nonempty piece set S and every set R of
  // edges inside S: cutting along all other edges leaves S a union of
  // components.
  std::vector<CanonicalSubmanifold> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::string> pieces;
    std::set<std::string> in;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) {
        pieces.push_back(m.pieces()[i].id);
        in.insert(m.pieces()[i].id);
      }
    std::vector<std::string> inside;
    for (const auto& e : m.edges())
      if (in.contains(e.source.piece) && in.contains(e.target.piece)) inside.push_back(e.id);
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << inside.size()); ++sub) {
      std::vector<std::string> retained;
      for (std::size_t j = 0; j < inside.size(); ++j)
        if (sub >> j & 1U) retained.push_back(inside[j]);
      out.push_back(make_canonical_submanifold(m, pieces, std::move(retained)));
    }
  }
  std::sort(out.begin(), out.end(), [](const CanonicalSubmanifold& x, const CanonicalSubmanifold& y) {
    if (x.pieces != y.pieces) return x.pieces < y.pieces;
    return x.retained_edges < y.retained_edges;
  });
  return out;
}

bool HatRecord::all_seifert() const {
  return std::all_of(components.begin(), components.end(),
                     [](const HatComponent& c) { return std::holds_alternative<ClosedSeifert>(c); });
}

std::optional<Rational> HatRecord::seifert_sv() const {
  if (!all_seifert()) return std::nullopt;
  Rational total(0);
  for (const auto& c : components) total += std::get<ClosedSeifert>(c).sv;
  return total;
}

HatRecord hat_submanifold(const GraphManifold& m, const CanonicalSubmanifold& l) {
  HatRecord out;
  out.abs_euler = Rational(0);
  out.abs_sv = Rational(0);
  std::set<std::string> kept(l.retained_edges.begin(), l.retained_edges.end());
  std::map<Endpoint, Slope> fill;
  for (const auto& cb : l.cut_boundaries) fill.emplace(cb.where, cb.slope);

  auto components = connected_components(m, l.pieces, l.retained_edges);
  for (std::size_t ci = 0; ci < components.size(); ++ci) {
    const auto& members = components[ci];
    std::set<std::string> member_set(members.begin(), members.end());
    std::vector<std::string> edge_ids;
    for (const auto& id : l.retained_edges)
      if (member_set.contains(m.edge(id).source.piece)) edge_ids.push_back(id);

    if (edge_ids.empty()) {
      const SeifertPiece& p = m.piece(members.front());
      std::vector<std::pair<Int, Int>> cone;
      for (const auto& f : p.fibers) cone.emplace_back(f.alpha, f.beta);
      for (int b = 0; b < p.boundary_count; ++b) {
        const Slope& s = fill.at(Endpoint{p.id, b});
        cone.emplace_back(s.p, s.q);
      }
      ClosedSeifert cs = make_closed_seifert(p.genus, std::move(cone));
      out.abs_euler += cs.euler_number.abs();
      out.abs_sv += cs.sv;
      out.components.emplace_back(std::move(cs));
      continue;
    }

    bool whole = members.size() == m.pieces().size() && edge_ids.size() == m.edges().size();
    if (whole) {
      out.abs_euler += abs_euler(m);
      out.abs_sv += abs_sv(m);
      out.components.emplace_back(m);
      continue;
    }

    // Retained boundaries are renumbered in their original order; each
    // filled boundary becomes a fiber (p >= 2) or an integral section shift
    // (p = 1) absorbed at the piece's new boundary 0.
    std::map<Endpoint, Endpoint> renumber;
    std::vector<SeifertPiece> pieces;
    std::map<std::string, Int> shifts;
    for (const auto& id : members) {
      SeifertPiece p = m.piece(id);
      int next = 0;
      for (int b = 0; b < p.boundary_count; ++b) {
        auto it = fill.find(Endpoint{id, b});
        if (it == fill.end()) {
          renumber[Endpoint{id, b}] = Endpoint{id, next++};
        } else if (it->second.p >= 2) {
          p.fibers.push_back({it->second.p, it->second.q});
        } else {
          shifts[id] = checked_add(shifts[id], it->second.q);
        }
      }
      p.boundary_count = next;
      pieces.push_back(std::move(p));
    }
    std::vector<Edge> edges;
    for (const auto& id : edge_ids) {
      Edge e = m.edge(id);
      e.source = renumber.at(e.source);
      e.target = renumber.at(e.target);
      edges.push_back(std::move(e));
    }
    GraphManifold hat(m.name() + ".hat" + std::to_string(ci), std::move(pieces), std::move(edges));
    for (const auto& [id, k] : shifts)
      if (k != 0) hat = twist_section(hat, Endpoint{id, 0}, k);
    hat = normalize_fibers(hat);
    // Fibers are sorted so that equal hats compare equal.
    std::vector<SeifertPiece> sorted(hat.pieces().begin(), hat.pieces().end());
    for (auto& p : sorted) std::sort(p.fibers.begin(), p.fibers.end());
    hat = GraphManifold(hat.name(), std::move(sorted), {hat.edges().begin(), hat.edges().end()});
    out.abs_euler += abs_euler(hat);
    out.abs_sv += abs_sv(hat);
    out.components.emplace_back(std::move(hat));
  }
  return out;
}

BoundReport degree_bound_report(const GraphManifold& source, const GraphManifold& target, std::size_t max_edges) {
  require_valid(source);
  require_valid(target);
  if (source.edges().size() > max_edges)
    throw HypothesisError("enumeration", "M has " + std::to_string(source.edges().size()) +
                                             " edges, over the cap of " + std::to_string(max_edges) + " edges");
  for (const auto& p : target.pieces())
    if (!p.is_product() || p.genus < 2)
      throw HypothesisError("reduction",
                            "piece " + p.id + " of N is not the product of a surface of genus at least 2 and the "
                            "circle; replace N by a finite separable characteristic cover with product pieces first");

  BoundReport r;
  r.assumptions.push_back(
      "M is one of the finitely many standard forms of M, so that f^-1(Q) is a canonical submanifold of M");
  r.target = target;
  bool has_loop =
      std::any_of(target.edges().begin(), target.edges().end(), [](const Edge& e) { return e.is_self_edge(); });
  if (has_loop) {
    r.target = separate_self_edges_cover(target).cover;
    r.reductions.push_back(
        "N replaced by its double cover in which every JSJ torus is shared by two distinct pieces "
        "(D(M,N) is finite whenever D(P,N~) is finite for every P)");
  }
  r.target_abs_euler = abs_euler(r.target);
  r.target_abs_sv = abs_sv(r.target);

  const auto submanifolds = enumerate_canonical_submanifolds(source, max_edges);

  if (!r.target_abs_euler.is_zero()) {
    r.path = BoundPath::abs_euler_nonzero;
    for (const auto& p : r.target.pieces()) {
      ClosedSeifert h = hat_piece(r.target, p.id);
      if (!r.q_hat || h.sv > r.q_hat->sv) {
        r.q_hat = h;
        r.q_piece = p.id;
      }
    }
    const Rational q_sv = r.q_hat->sv;
    for (const auto& l : submanifolds) {
      BoundCandidate c{l, hat_submanifold(source, l), std::nullopt};
      if (auto sv = c.hat.seifert_sv()) {
        c.ratio = *sv / q_sv;
        if (!r.numeric_bound_over_seifert_hats || *c.ratio > *r.numeric_bound_over_seifert_hats)
          r.numeric_bound_over_seifert_hats = c.ratio;
      }
      r.candidates.push_back(std::move(c));
    }
    r.finiteness_conclusion =
        "|deg f| <= max SV(L^)/SV(Q^) over the " + std::to_string(r.candidates.size()) +
        " canonical submanifolds L of M; finitely many L^, so D(M,N) is finite. Ratios are exact for Seifert hats; "
        "graph-manifold hats are listed without a ratio";
    return r;
  }

  r.path = BoundPath::abs_euler_zero;
  if (!classify(r.target).is_swap_normal_form)
    throw HypothesisError("reduction",
                          "|e|(N) = 0 but not every gluing matrix is +-(0 1; 1 0); pass to the finite cover in "
                          "which each gluing matrix is in that form first");
  const Edge* pick = nullptr;
  for (const auto& e : r.target.edges())
    if (!e.is_self_edge()) {
      pick = &e;
      break;
    }
  std::vector<std::string> pair{pick->source.piece, pick->target.piece};
  std::sort(pair.begin(), pair.end());
  std::vector<std::string> between;
  for (const auto& e : r.target.edges())
    if (!e.is_self_edge() && std::set<std::string>{e.source.piece, e.target.piece} ==
                                 std::set<std::string>(pair.begin(), pair.end()))
      between.push_back(e.id);
  auto q = make_canonical_submanifold(r.target, pair, between);
  HatRecord q_hat = hat_submanifold(r.target, q);
  r.q_pair = pair;
  r.q_pair_hat = std::get<GraphManifold>(q_hat.components.front());
  r.witness = sv_witness(*r.q_pair_hat);
  for (const auto& l : submanifolds) r.candidates.push_back({l, hat_submanifold(source, l), std::nullopt});
  r.finiteness_conclusion =
      "Q^ = " + pair[0] + " u " + pair[1] + " filled has a finite cover of nonzero SV (witness attached), so each "
      "D(L^, Q^) is finite; with finitely many canonical L in M, D(M,N) is finite. No numeric bound";
  return r;
}

}  // namespace gm
