#include "gm/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace gm {

GluingMatrix GluingMatrix::inverse() const {
  Int det = determinant();
  if (det != 1 && det != -1) throw Error("matrix " + to_string() + " is not invertible over Z");
  // (a b; c d)^-1 = det * (d -b; -c a) for det = +-1
  return {checked_mul(det, d), checked_mul(det, checked_neg(b)), checked_mul(det, checked_neg(c)),
          checked_mul(det, a)};
}

GluingMatrix operator*(const GluingMatrix& x, const GluingMatrix& y) {
  auto dot = [](Int p, Int q, Int r, Int s) { return checked_add(checked_mul(p, q), checked_mul(r, s)); };
  return {dot(x.a, y.a, x.b, y.c), dot(x.a, y.b, x.b, y.d), dot(x.c, y.a, x.d, y.c),
          dot(x.c, y.b, x.d, y.d)};
}

std::string GluingMatrix::to_string() const {
  std::ostringstream os;
  os << '[' << a << ',' << b << ';' << c << ',' << d << ']';
  return os.str();
}

GraphManifold::GraphManifold(std::string name, std::vector<SeifertPiece> pieces, std::vector<Edge> edges)
    : name_(std::move(name)), pieces_(std::move(pieces)), edges_(std::move(edges)) {
  std::stable_sort(pieces_.begin(), pieces_.end(),
                   [](const SeifertPiece& x, const SeifertPiece& y) { return x.id < y.id; });
  std::stable_sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) { return x.id < y.id; });
}

const SeifertPiece* GraphManifold::find_piece(const std::string& id) const {
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), id,
                             [](const SeifertPiece& p, const std::string& key) { return p.id < key; });
  return (it != pieces_.end() && it->id == id) ? &*it : nullptr;
}

const Edge* GraphManifold::find_edge(const std::string& id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const Edge& e, const std::string& key) { return e.id < key; });
  return (it != edges_.end() && it->id == id) ? &*it : nullptr;
}

const SeifertPiece& GraphManifold::piece(const std::string& id) const {
  if (const auto* p = find_piece(id)) return *p;
  throw UnknownIdError("piece", id);
}

const Edge& GraphManifold::edge(const std::string& id) const {
  if (const auto* e = find_edge(id)) return *e;
  throw UnknownIdError("edge", id);
}

std::vector<Incidence> GraphManifold::incidences(const std::string& piece) const {
  std::vector<Incidence> out;
  for (const auto& e : edges_) {
    if (e.source.piece == piece) out.push_back({&e, Side::source, e.source.boundary});
    if (e.target.piece == piece) out.push_back({&e, Side::target, e.target.boundary});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Incidence& x, const Incidence& y) { return x.boundary < y.boundary; });
  return out;
}

GraphManifold GraphManifold::with_name(std::string name) const {
  GraphManifold copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

namespace {

std::string join_report(const ValidationReport& report) {
  std::string out;
  for (const auto& v : report) {
    if (!out.empty()) out += "; ";
    out += v.to_string();
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(ValidationReport report)
    : Error("invalid manifold: " + join_report(report)), report_(std::move(report)) {}

ValidationReport validate(const GraphManifold& m) {
  ValidationReport out;
  const std::string manifold_subject = "manifold " + m.name();
  auto piece_subject = [](const std::string& id) { return "piece " + id; };
  auto edge_subject = [](const std::string& id) { return "edge " + id; };

  if (m.pieces().empty()) out.push_back({manifold_subject, "at least one piece required"});
  if (m.edges().empty()) out.push_back({manifold_subject, "at least one edge required (non-trivial JSJ decomposition)"});

  for (std::size_t i = 1; i < m.pieces().size(); ++i)
    if (m.pieces()[i].id == m.pieces()[i - 1].id)
      out.push_back({piece_subject(m.pieces()[i].id), "duplicate piece id"});
  for (std::size_t i = 1; i < m.edges().size(); ++i)
    if (m.edges()[i].id == m.edges()[i - 1].id)
      out.push_back({edge_subject(m.edges()[i].id), "duplicate edge id"});

  for (const auto& p : m.pieces()) {
    const auto subject = piece_subject(p.id);
    if (p.base == BaseKind::nonorientable)
      out.push_back({subject, "non-orientable base surfaces are not supported"});
    if (p.base == BaseKind::twisted_klein_bundle)
      out.push_back({subject, "I(K) pieces are not representable: N* must contain no pieces homeomorphic to I(K)"});
    if (p.genus < 0) out.push_back({subject, "genus must be >= 0"});
    if (p.boundary_count < 1) out.push_back({subject, "boundary_count must be >= 1"});
    for (const auto& f : p.fibers) {
      std::string tag = "fiber " + std::to_string(f.alpha) + "/" + std::to_string(f.beta) + ": ";
      if (f.alpha < 2) {
        out.push_back({subject, tag + "multiplicity alpha must be >= 2"});
        continue;
      }
      if (gcd(f.alpha, f.beta) != 1) out.push_back({subject, tag + "gcd(alpha, beta) must be 1"});
      if (f.beta < 1 || f.beta > f.alpha - 1) out.push_back({subject, tag + "beta must lie in [1, alpha-1]"});
    }
  }

  // Boundary matching: every (piece, boundary) used by exactly one endpoint.
  std::map<Endpoint, int> uses;
  for (const auto& e : m.edges()) {
    const auto subject = edge_subject(e.id);
    for (Side side : {Side::source, Side::target}) {
      const Endpoint& ep = e.endpoint(side);
      const auto* p = m.find_piece(ep.piece);
      if (p == nullptr) {
        out.push_back({subject, "dangling reference to piece '" + ep.piece + "'"});
        continue;
      }
      if (ep.boundary < 0 || ep.boundary >= p->boundary_count) {
        out.push_back({subject, "boundary index " + std::to_string(ep.boundary) + " out of range for piece " +
                                    ep.piece});
        continue;
      }
      if (++uses[ep] == 2)
        out.push_back({subject, "boundary index reused: " + ep.piece + ":" + std::to_string(ep.boundary)});
    }
    if (e.matrix.determinant() != -1) out.push_back({subject, "determinant must be -1"});
    if (e.matrix.b == 0) out.push_back({subject, "b != 0 required (fiber glued to fiber)"});
  }
  for (const auto& p : m.pieces()) {
    int attached = 0;
    for (const auto& e : m.edges()) {
      attached += e.source.piece == p.id;
      attached += e.target.piece == p.id;
    }
    if (attached != p.boundary_count && p.boundary_count >= 1)
      out.push_back({piece_subject(p.id), "boundary_count " + std::to_string(p.boundary_count) + " but " +
                                              std::to_string(attached) + " edge endpoints attached"});
    for (int b = 0; b < p.boundary_count; ++b)
      if (!uses.contains(Endpoint{p.id, b}))
        out.push_back({piece_subject(p.id), "boundary " + std::to_string(b) + " unmatched"});
  }

  if (!m.pieces().empty()) {
    std::vector<std::string> ids;
    std::vector<std::string> arcs;
    for (const auto& p : m.pieces()) ids.push_back(p.id);
    for (const auto& e : m.edges()) arcs.push_back(e.id);
    if (connected_components(m, ids, arcs).size() > 1)
      out.push_back({manifold_subject, "dual graph must be connected"});
  }
  return out;
}

void require_valid(const GraphManifold& m) {
  auto report = validate(m);
  if (!report.empty()) throw ValidationError(std::move(report));
}

GraphManifold recoordinate_piece(const GraphManifold& m, const std::string& piece) {
  m.piece(piece);
  std::vector<Edge> edges(m.edges().begin(), m.edges().end());
  for (auto& e : edges) {
    if (e.source.piece == piece) e.matrix = -e.matrix;
    if (e.target.piece == piece) e.matrix = -e.matrix;
  }
  return {m.name(), {m.pieces().begin(), m.pieces().end()}, std::move(edges)};
}

GraphManifold orient_edges_from(const GraphManifold& m, const std::string& piece) {
  m.piece(piece);
  std::vector<Edge> edges(m.edges().begin(), m.edges().end());
  for (auto& e : edges)
    if (e.target.piece == piece && e.source.piece != piece) e = e.reversed();
  return {m.name(), {m.pieces().begin(), m.pieces().end()}, std::move(edges)};
}

GraphManifold twist_section(const GraphManifold& m, const Endpoint& where, Int k) {
  std::vector<Edge> edges(m.edges().begin(), m.edges().end());
  bool found = false;
  for (auto& e : edges) {
    // "-" side: tau(s - k h, h) = (s+, h+) A (1 0; -k 1)
    if (e.source == where) {
      e.matrix = e.matrix * GluingMatrix{1, 0, checked_neg(k), 1};
      found = true;
    }
    // "+" side: s+ = s' + k h+, so A' = (1 0; k 1) A
    if (e.target == where) {
      e.matrix = GluingMatrix{1, 0, k, 1} * e.matrix;
      found = true;
    }
  }
  if (!found) throw Error("no edge attached to " + where.piece + ":" + std::to_string(where.boundary));
  return {m.name(), {m.pieces().begin(), m.pieces().end()}, std::move(edges)};
}

GraphManifold normalize_fibers(const GraphManifold& m) {
  GraphManifold out = m;
  for (const auto& p : m.pieces()) {
    if (p.boundary_count < 1) continue;
    Int shift = 0;
    SeifertPiece fixed = p;
    for (auto& f : fixed.fibers) {
      if (f.alpha < 2) continue;
      Int k = floor_div(f.beta, f.alpha);
      f.beta = floor_mod(f.beta, f.alpha);
      shift = checked_add(shift, k);
    }
    if (fixed == p) continue;
    // e = -(sum beta/alpha + sum q/p) is kept: beta lost k*alpha, so the
    // boundary-0 slope gains k*p.
    std::vector<SeifertPiece> pieces(out.pieces().begin(), out.pieces().end());
    for (auto& q : pieces)
      if (q.id == p.id) q = fixed;
    out = GraphManifold(out.name(), std::move(pieces), {out.edges().begin(), out.edges().end()});
    if (shift != 0) out = twist_section(out, Endpoint{p.id, 0}, shift);
  }
  return out;
}

std::size_t Multigraph::loop_count() const {
  return static_cast<std::size_t>(
      std::count_if(arcs.begin(), arcs.end(), [](const Arc& a) { return a.source == a.target; }));
}

Multigraph dual_graph(const GraphManifold& m) {
  Multigraph g;
  std::map<std::string, std::size_t> index;
  for (const auto& p : m.pieces()) {
    index.emplace(p.id, g.vertices.size());
    g.vertices.push_back(p.id);
  }
  for (const auto& e : m.edges()) {
    auto s = index.find(e.source.piece);
    auto t = index.find(e.target.piece);
    if (s == index.end() || t == index.end()) continue;
    g.arcs.push_back({e.id, s->second, t->second});
  }
  return g;
}

std::vector<std::vector<std::string>> connected_components(const GraphManifold& m,
                                                           const std::vector<std::string>& vertices,
                                                           const std::vector<std::string>& arc_ids) {
  std::map<std::string, std::string> parent;
  for (const auto& v : vertices) parent[v] = v;
  auto find = [&](std::string v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& id : arc_ids) {
    const auto* e = m.find_edge(id);
    if (e == nullptr || !parent.contains(e->source.piece) || !parent.contains(e->target.piece)) continue;
    auto a = find(e->source.piece);
    auto b = find(e->target.piece);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& [v, _] : parent) groups[find(v)].push_back(v);
  std::vector<std::vector<std::string>> out;
  for (auto& [_, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace gm
