#pragma once

// Shared helpers for the test binaries: fixture loading, seeded generators
// of valid manifolds, and oracles written independently of the library.

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gm/io.hpp"

namespace gmtest {

using gm::Int;

inline std::string fixture_path(const std::string& name) { return std::string(GM_FIXTURE_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline gm::GraphManifold load_fixture(const std::string& name) { return gm::parse(read_text(fixture_path(name))); }

// Every .gm fixture that parses to a valid manifold.
inline std::vector<std::string> valid_fixtures() {
  return {"worked.gm",   "swap.gm",      "selfloop.gm", "parallel2.gm", "pm_triple.gm",
          "property_i.gm", "chain3.gm",  "fibered.gm",  "theta.gm",     "mixed_loops.gm",
          "genus_cover_base.gm", "rotation_base.gm", "upper_triangular.gm"};
}

// Exact fraction on long long, kept apart from gm::Rational.
struct Frac {
  long long num = 0;
  long long den = 1;

  Frac(long long n = 0, long long d = 1) : num(n), den(d) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  friend Frac operator+(Frac x, Frac y) { return {x.num * y.den + y.num * x.den, x.den * y.den}; }
  friend Frac operator-(Frac x, Frac y) { return {x.num * y.den - y.num * x.den, x.den * y.den}; }
  friend Frac operator*(Frac x, Frac y) { return {x.num * y.num, x.den * y.den}; }
  friend Frac operator/(Frac x, Frac y) { return {x.num * y.den, x.den * y.num}; }
  friend bool operator==(Frac x, Frac y) { return x.num == y.num && x.den == y.den; }
  Frac abs() const { return {num < 0 ? -num : num, den}; }
  gm::Rational rational() const { return gm::Rational(num, den); }
};

// Fiber of the far piece, in the (s, h) coordinates of this side, by
// solving tau(x s + y h) = h' directly.
inline std::pair<Int, Int> oracle_far_fiber(const gm::GluingMatrix& a, gm::Side side) {
  Int p = 0;
  Int q = 0;
  if (side == gm::Side::source) {
    // tau(s-) = a s+ + c h+, tau(h-) = b s+ + d h+; want a x + b y = 0, c x + d y = 1.
    Int det = a.a * a.d - a.b * a.c;
    p = -a.b / det;
    q = a.a / det;
  } else {
    p = a.b;
    q = a.d;
  }
  if (p < 0 || (p == 0 && q < 0)) {
    p = -p;
    q = -q;
  }
  return {p, q};
}

struct OracleHat {
  Frac euler;
  Frac chi;
  Frac sv;
};

// Closed Seifert invariants straight from the definitions.
inline OracleHat oracle_closed(Int genus, const std::vector<std::pair<Int, Int>>& cone) {
  Frac e(0);
  Frac chi(2 - 2 * genus);
  for (auto [p, q] : cone) {
    e = e - Frac(q, p);
    if (p >= 2) chi = chi - (Frac(1) - Frac(1, p));
  }
  Frac sv(0);
  if (e.num != 0 && chi.num < 0) sv = chi * chi / e.abs();
  return {e, chi, sv};
}

inline OracleHat oracle_hat_piece(const gm::GraphManifold& m, const std::string& id) {
  const auto& piece = m.piece(id);
  std::vector<std::pair<Int, Int>> cone;
  for (const auto& f : piece.fibers) cone.emplace_back(f.alpha, f.beta);
  for (const auto& e : m.edges()) {
    if (e.source.piece == id) cone.push_back(oracle_far_fiber(e.matrix, gm::Side::source));
    if (e.target.piece == id) cone.push_back(oracle_far_fiber(e.matrix, gm::Side::target));
  }
  return oracle_closed(piece.genus, cone);
}

// (pieces, retained edges), both sorted.
using SubmanifoldKey = std::pair<std::vector<std::string>, std::vector<std::string>>;

// Cut along every subset T of edges, then take every nonempty union of
// components of what is left.
inline std::vector<SubmanifoldKey> brute_force_canonical(const gm::GraphManifold& m) {
  const auto& edges = m.edges();
  const auto& pieces = m.pieces();
  std::set<SubmanifoldKey> found;
  for (unsigned long cut = 0; cut < (1UL << edges.size()); ++cut) {
    std::map<std::string, std::string> parent;
    for (const auto& p : pieces) parent[p.id] = p.id;
    auto find = [&](std::string x) {
      while (parent[x] != x) x = parent[x];
      return x;
    };
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (!(cut >> i & 1UL)) parent[find(edges[i].source.piece)] = find(edges[i].target.piece);
    std::map<std::string, std::vector<std::string>> comps;
    for (const auto& p : pieces) comps[find(p.id)].push_back(p.id);
    std::vector<std::vector<std::string>> list;
    for (auto& [root, members] : comps) list.push_back(members);
    for (unsigned long pick = 1; pick < (1UL << list.size()); ++pick) {
      std::set<std::string> s;
      for (std::size_t c = 0; c < list.size(); ++c)
        if (pick >> c & 1UL) s.insert(list[c].begin(), list[c].end());
      std::vector<std::string> kept;
      for (std::size_t i = 0; i < edges.size(); ++i)
        if (!(cut >> i & 1UL) && s.contains(edges[i].source.piece)) kept.push_back(edges[i].id);
      std::sort(kept.begin(), kept.end());
      found.insert({{s.begin(), s.end()}, kept});
    }
  }
  return {found.begin(), found.end()};
}

// All matrices with det -1, b != 0 and entries in [-bound, bound].
inline const std::vector<gm::GluingMatrix>& gluing_matrices(Int bound = 9) {
  static std::map<Int, std::vector<gm::GluingMatrix>> cache;
  auto& out = cache[bound];
  if (out.empty())
    for (Int a = -bound; a <= bound; ++a)
      for (Int b = -bound; b <= bound; ++b)
        for (Int c = -bound; c <= bound; ++c)
          for (Int d = -bound; d <= bound; ++d)
            if (b != 0 && a * d - b * c == -1) out.push_back({a, b, c, d});
  return out;
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

inline Int uniform(std::mt19937_64& rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

inline std::vector<gm::ExceptionalFiber> random_fibers(std::mt19937_64& rng, int max_count) {
  std::vector<gm::ExceptionalFiber> out;
  int count = static_cast<int>(uniform(rng, 0, max_count));
  for (int i = 0; i < count; ++i) {
    Int alpha = uniform(rng, 2, 7);
    Int beta = 0;
    do beta = uniform(rng, 1, alpha - 1);
    while (std::gcd(alpha, beta) != 1);
    out.push_back({alpha, beta});
  }
  return out;
}

struct ManifoldShape {
  int max_pieces = 6;
  int max_edges = 10;
  int min_self_edges = 0;
  int min_genus = 0;
  int max_genus = 3;
  int max_fibers = 2;
  Int matrix_bound = 5;
};

// Connected and valid: a random spanning tree, then extra edges (self-edges
// included) up to the edge budget.
inline gm::GraphManifold random_manifold(std::mt19937_64& rng, const ManifoldShape& shape,
                                         const std::string& name = "R") {
  int n = static_cast<int>(uniform(rng, 1, shape.max_pieces));
  int tree = n - 1;
  int budget = std::max<int>(static_cast<int>(uniform(rng, tree + std::max(shape.min_self_edges, n == 1 ? 1 : 0),
                                                      shape.max_edges)),
                             tree + shape.min_self_edges);
  std::vector<std::pair<int, int>> ends;
  for (int i = 1; i < n; ++i) ends.emplace_back(static_cast<int>(uniform(rng, 0, i - 1)), i);
  for (int k = 0; k < shape.min_self_edges; ++k) {
    int v = static_cast<int>(uniform(rng, 0, n - 1));
    ends.emplace_back(v, v);
  }
  while (static_cast<int>(ends.size()) < budget)
    ends.emplace_back(static_cast<int>(uniform(rng, 0, n - 1)), static_cast<int>(uniform(rng, 0, n - 1)));
  std::shuffle(ends.begin(), ends.end(), rng);

  std::vector<int> next(n, 0);
  std::vector<gm::Edge> edges;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    auto [u, v] = ends[i];
    if (uniform(rng, 0, 1) == 1) std::swap(u, v);
    gm::Endpoint src{"P" + std::to_string(u), next[u]++};
    gm::Endpoint tgt{"P" + std::to_string(v), next[v]++};
    edges.push_back({"e" + std::to_string(i), src, tgt, pick(rng, gluing_matrices(shape.matrix_bound))});
  }
  std::vector<gm::SeifertPiece> pieces;
  for (int i = 0; i < n; ++i) {
    gm::SeifertPiece p;
    p.id = "P" + std::to_string(i);
    p.genus = uniform(rng, shape.min_genus, shape.max_genus);
    p.boundary_count = next[i];
    p.fibers = random_fibers(rng, shape.max_fibers);
    pieces.push_back(std::move(p));
  }
  return gm::GraphManifold(name, std::move(pieces), std::move(edges));
}

enum class Branch { any, fill_target, fill_source, double_projection };

inline Branch branch_of(const gm::GluingMatrix& a) {
  if (a.a != 0 && a.c != 0) return Branch::fill_target;
  if (a.c != 0 && a.d != 0) return Branch::fill_source;
  return Branch::double_projection;
}

// Two product pieces joined by d edges whose matrices, read from P1, are
// +-A; edges are stored in a random direction with shuffled boundaries.
inline gm::GraphManifold random_multiple_edge(std::mt19937_64& rng, int max_d, Int max_genus, Int matrix_bound,
                                              Branch branch = Branch::any, bool all_plus = false) {
  std::vector<gm::GluingMatrix> pool;
  for (const auto& a : gluing_matrices(matrix_bound))
    if (branch == Branch::any || branch_of(a) == branch) pool.push_back(a);
  gm::GluingMatrix a = pick(rng, pool);
  int d = static_cast<int>(uniform(rng, 1, max_d));
  std::vector<int> left(d);
  std::vector<int> right(d);
  std::iota(left.begin(), left.end(), 0);
  std::iota(right.begin(), right.end(), 0);
  std::shuffle(left.begin(), left.end(), rng);
  std::shuffle(right.begin(), right.end(), rng);
  std::vector<gm::Edge> edges;
  for (int i = 0; i < d; ++i) {
    gm::GluingMatrix m = (!all_plus && uniform(rng, 0, 1) == 1) ? -a : a;
    gm::Endpoint p1{"P1", left[i]};
    gm::Endpoint p2{"P2", right[i]};
    if (uniform(rng, 0, 1) == 1)
      edges.push_back({"e" + std::to_string(i), p1, p2, m});
    else
      edges.push_back({"e" + std::to_string(i), p2, p1, m.inverse()});
  }
  std::vector<gm::SeifertPiece> pieces{{"P1", uniform(rng, 2, max_genus), d, {}},
                                       {"P2", uniform(rng, 2, max_genus), d, {}}};
  return gm::GraphManifold("ME", std::move(pieces), std::move(edges));
}

}  // namespace gmtest
