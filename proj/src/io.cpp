#include "gm/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <set>
#include <sstream>
#include <string_view>

namespace gm {

namespace {

struct Token {
  enum class Kind { word, integer, punct, end };
  Kind kind = Kind::end;
  std::string text;
  std::size_t column = 0;
  Int value = 0;
};

class LineLexer {
 public:
  LineLexer(std::string_view line, std::size_t lineno) : line_(line), lineno_(lineno) {}

  Token next() {
    skip_space();
    Token t;
    t.column = pos_ + 1;
    if (pos_ >= line_.size()) return t;
    char c = line_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < line_.size() && is_word_char(line_[pos_])) ++pos_;
      t.kind = Token::Kind::word;
      t.text = std::string(line_.substr(start, pos_ - start));
      return t;
    }
    if (c == '-' && pos_ + 1 < line_.size() && line_[pos_ + 1] == '>') {
      pos_ += 2;
      t.kind = Token::Kind::punct;
      t.text = "->";
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
      std::size_t start = pos_;
      if (c == '-' || c == '+') ++pos_;
      std::size_t digits = pos_;
      while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) ++pos_;
      if (digits == pos_) fail(t.column, std::string("unexpected character '") + c + "'");
      std::string_view num = line_.substr(c == '+' ? start + 1 : start, pos_ - (c == '+' ? start + 1 : start));
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), t.value);
      if (ec != std::errc() || ptr != num.data() + num.size()) fail(t.column, "integer out of range");
      t.kind = Token::Kind::integer;
      t.text = std::string(line_.substr(start, pos_ - start));
      return t;
    }
    if (std::string_view("=[],;:/").find(c) != std::string_view::npos) {
      ++pos_;
      t.kind = Token::Kind::punct;
      t.text = std::string(1, c);
      return t;
    }
    fail(t.column, std::string("unexpected character '") + c + "'");
  }

  Token expect_word(const std::string& what) {
    Token t = next();
    if (t.kind != Token::Kind::word) fail(t.column, "expected " + what + ", found " + describe(t));
    return t;
  }

  Token expect_int(const std::string& what) {
    Token t = next();
    if (t.kind != Token::Kind::integer) fail(t.column, "expected " + what + ", found " + describe(t));
    return t;
  }

  Token expect_punct(const std::string& p) {
    Token t = next();
    if (t.kind != Token::Kind::punct || t.text != p) fail(t.column, "expected '" + p + "', found " + describe(t));
    return t;
  }

  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }

  bool peek_punct(const std::string& p) {
    std::size_t saved = pos_;
    Token t = next();
    pos_ = saved;
    return t.kind == Token::Kind::punct && t.text == p;
  }

  std::size_t column() {
    skip_space();
    return pos_ + 1;
  }

  [[noreturn]] void fail(std::size_t column, const std::string& message) const {
    throw ParseError(lineno_, column, message);
  }

  static std::string describe(const Token& t) {
    return t.kind == Token::Kind::end ? std::string("end of line") : "'" + t.text + "'";
  }

 private:
  static bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
  }
  void skip_space() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }

  std::string_view line_;
  std::size_t lineno_;
  std::size_t pos_ = 0;
};

struct EndpointRef {
  Endpoint endpoint;
  std::size_t line = 0;
  std::size_t piece_column = 0;
  std::size_t index_column = 0;
};

EndpointRef parse_endpoint(LineLexer& lex, std::size_t lineno) {
  EndpointRef ref;
  ref.line = lineno;
  Token piece = lex.expect_word("piece id");
  ref.piece_column = piece.column;
  lex.expect_punct(":");
  Token index = lex.expect_int("boundary index");
  ref.index_column = index.column;
  if (index.value < 0 || index.value > INT32_MAX) lex.fail(index.column, "boundary index out of range");
  ref.endpoint = {piece.text, static_cast<int>(index.value)};
  return ref;
}

std::string fibers_text(const SeifertPiece& p) {
  std::string out;
  for (std::size_t i = 0; i < p.fibers.size(); ++i)
    out += (i ? "," : "") + std::to_string(p.fibers[i].alpha) + "/" + std::to_string(p.fibers[i].beta);
  return out;
}

std::string base_text(BaseKind kind) {
  switch (kind) {
    case BaseKind::orientable: return "orientable";
    case BaseKind::nonorientable: return "nonorientable";
    case BaseKind::twisted_klein_bundle: return "IK";
  }
  return "orientable";
}

}  // namespace

std::vector<std::string> ManifoldDocument::annotated_report() const {
  std::vector<std::string> out;
  for (const auto& v : report) {
    std::size_t line = 0;
    auto lookup = [&](const std::map<std::string, std::size_t>& lines, const std::string& prefix) {
      if (v.subject.rfind(prefix, 0) == 0) {
        auto it = lines.find(v.subject.substr(prefix.size()));
        if (it != lines.end()) line = it->second;
      }
    };
    lookup(positions.piece_lines, "piece ");
    lookup(positions.edge_lines, "edge ");
    if (v.subject.rfind("manifold ", 0) == 0) line = positions.manifold_line;
    out.push_back((line ? "line " + std::to_string(line) + ": " : std::string()) + v.to_string());
  }
  return out;
}

ManifoldDocument parse_document(const std::string& text) {
  ManifoldDocument doc;
  doc.text = text;
  std::optional<std::string> name;
  std::vector<SeifertPiece> pieces;
  std::map<std::string, std::pair<std::size_t, std::size_t>> piece_pos;  // id -> (line, column)
  std::vector<Edge> edges;
  std::vector<std::pair<EndpointRef, EndpointRef>> refs;
  std::set<std::string> edge_ids;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    LineLexer lex(line, lineno);
    if (lex.at_end()) continue;
    Token keyword = lex.expect_word("'manifold', 'piece' or 'edge'");

    if (keyword.text == "manifold") {
      if (name) lex.fail(keyword.column, "duplicate 'manifold' line");
      name = lex.expect_word("manifold name").text;
      doc.positions.manifold_line = lineno;
    } else if (keyword.text == "piece") {
      if (!name) lex.fail(keyword.column, "'manifold <name>' must come first");
      Token id = lex.expect_word("piece id");
      if (piece_pos.contains(id.text)) lex.fail(id.column, "duplicate piece id '" + id.text + "'");
      SeifertPiece p;
      p.id = id.text;
      std::set<std::string> seen;
      while (!lex.at_end()) {
        Token key = lex.expect_word("attribute");
        if (!seen.insert(key.text).second) lex.fail(key.column, "duplicate attribute '" + key.text + "'");
        lex.expect_punct("=");
        if (key.text == "genus") {
          p.genus = lex.expect_int("genus").value;
        } else if (key.text == "fibers") {
          do {
            Int alpha = lex.expect_int("fiber multiplicity").value;
            lex.expect_punct("/");
            Int beta = lex.expect_int("fiber invariant").value;
            p.fibers.push_back({alpha, beta});
            if (!lex.peek_punct(",")) break;
            lex.expect_punct(",");
          } while (true);
        } else if (key.text == "base") {
          Token kind = lex.expect_word("base kind");
          if (kind.text == "orientable") p.base = BaseKind::orientable;
          else if (kind.text == "nonorientable") p.base = BaseKind::nonorientable;
          else if (kind.text == "IK") p.base = BaseKind::twisted_klein_bundle;
          else lex.fail(kind.column, "unknown base kind '" + kind.text + "'");
        } else {
          lex.fail(key.column, "unknown piece attribute '" + key.text + "'");
        }
      }
      if (!seen.contains("genus")) lex.fail(lex.column(), "piece requires genus=<int>");
      piece_pos[p.id] = {lineno, id.column};
      doc.positions.piece_lines[p.id] = lineno;
      pieces.push_back(std::move(p));
    } else if (keyword.text == "edge") {
      if (!name) lex.fail(keyword.column, "'manifold <name>' must come first");
      Token id = lex.expect_word("edge id");
      if (!edge_ids.insert(id.text).second) lex.fail(id.column, "duplicate edge id '" + id.text + "'");
      EndpointRef src = parse_endpoint(lex, lineno);
      lex.expect_punct("->");
      EndpointRef tgt = parse_endpoint(lex, lineno);
      Token key = lex.expect_word("'matrix'");
      if (key.text != "matrix") lex.fail(key.column, "expected 'matrix', found '" + key.text + "'");
      lex.expect_punct("=");
      lex.expect_punct("[");
      GluingMatrix a;
      a.a = lex.expect_int("matrix entry").value;
      lex.expect_punct(",");
      a.b = lex.expect_int("matrix entry").value;
      lex.expect_punct(";");
      a.c = lex.expect_int("matrix entry").value;
      lex.expect_punct(",");
      a.d = lex.expect_int("matrix entry").value;
      lex.expect_punct("]");
      if (!lex.at_end()) lex.fail(lex.column(), "unexpected text after matrix");
      doc.positions.edge_lines[id.text] = lineno;
      edges.push_back({id.text, src.endpoint, tgt.endpoint, a});
      refs.emplace_back(src, tgt);
    } else {
      lex.fail(keyword.column, "unknown keyword '" + keyword.text + "'");
    }
  }
  if (!name) throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing 'manifold <name>' line");

  // Resolve references and derive boundary counts.
  std::map<std::string, std::vector<const EndpointRef*>> by_piece;
  std::set<Endpoint> used;
  for (const auto& [src, tgt] : refs) {
    for (const EndpointRef* ref : {&src, &tgt}) {
      if (!piece_pos.contains(ref->endpoint.piece))
        throw ParseError(ref->line, ref->piece_column, "dangling reference to piece '" + ref->endpoint.piece + "'");
      if (!used.insert(ref->endpoint).second)
        throw ParseError(ref->line, ref->index_column,
                         "boundary index reused: " + ref->endpoint.piece + ":" + std::to_string(ref->endpoint.boundary));
      by_piece[ref->endpoint.piece].push_back(ref);
    }
  }
  for (auto& p : pieces) {
    const auto& mine = by_piece[p.id];
    p.boundary_count = static_cast<int>(mine.size());
    for (const EndpointRef* ref : mine)
      if (ref->endpoint.boundary >= p.boundary_count)
        throw ParseError(ref->line, ref->index_column,
                         "boundary index " + std::to_string(ref->endpoint.boundary) + " of piece " + p.id +
                             " out of range: its " + std::to_string(p.boundary_count) +
                             " boundaries must be numbered 0.." + std::to_string(p.boundary_count - 1));
  }

  doc.manifold = normalize_fibers(GraphManifold(*name, std::move(pieces), std::move(edges)));
  doc.report = validate(doc.manifold);
  return doc;
}

GraphManifold parse(const std::string& text) {
  ManifoldDocument doc = parse_document(text);
  if (!doc.report.empty()) {
    ValidationReport located;
    auto annotated = doc.annotated_report();
    for (std::size_t i = 0; i < doc.report.size(); ++i) {
      std::string prefix = annotated[i].substr(0, annotated[i].size() - doc.report[i].to_string().size());
      located.push_back({prefix + doc.report[i].subject, doc.report[i].rule});
    }
    throw ValidationError(std::move(located));
  }
  return doc.manifold;
}

std::string serialize(const GraphManifold& m) {
  std::ostringstream os;
  os << "manifold " << m.name() << '\n';
  for (const auto& p : m.pieces()) {
    os << "piece " << p.id << " genus=" << p.genus;
    if (!p.fibers.empty()) os << " fibers=" << fibers_text(p);
    if (p.base != BaseKind::orientable) os << " base=" << base_text(p.base);
    os << '\n';
  }
  for (const auto& e : m.edges())
    os << "edge " << e.id << ' ' << e.source.piece << ':' << e.source.boundary << " -> " << e.target.piece << ':'
       << e.target.boundary << " matrix=" << e.matrix.to_string() << '\n';
  return os.str();
}

std::string export_dot(const GraphManifold& m) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "digraph " << quote(m.name()) << " {\n";
  for (const auto& p : m.pieces()) {
    std::string fibers = p.fibers.empty() ? "none" : fibers_text(p);
    os << "  " << quote(p.id) << " [label=" << quote(p.id + " (g=" + std::to_string(p.genus) + ", fibers=" + fibers + ")")
       << "];\n";
  }
  for (const auto& e : m.edges())
    os << "  " << quote(e.source.piece) << " -> " << quote(e.target.piece)
       << " [label=" << quote(e.id + " " + e.matrix.to_string()) << "];\n";
  os << "}\n";
  return os.str();
}

namespace {

std::string cone_text(const std::vector<std::pair<Int, Int>>& cone) {
  std::string out;
  for (std::size_t i = 0; i < cone.size(); ++i)
    out += (i ? " " : "") + std::string("(") + std::to_string(cone[i].first) + "," + std::to_string(cone[i].second) + ")";
  return out.empty() ? "none" : out;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_invariants(const GraphManifold& m) {
  std::ostringstream human;
  std::ostringstream machine;
  human << "manifold " << m.name() << ": " << m.pieces().size() << " pieces, " << m.edges().size() << " edges\n";
  machine << "pieces=" << m.pieces().size() << "\nedges=" << m.edges().size() << '\n';
  for (const auto& p : m.pieces()) {
    ClosedSeifert h = hat_piece(m, p.id);
    human << "piece " << p.id << ": genus " << p.genus << ", cone data " << cone_text(h.cone_data) << '\n'
          << "  chi_orb = " << h.chi_orb << ", e = " << h.euler_number << ", sv = " << h.sv << '\n';
    machine << "piece." << p.id << ".chi_orb=" << h.chi_orb << '\n'
            << "piece." << p.id << ".euler=" << h.euler_number << '\n'
            << "piece." << p.id << ".sv=" << h.sv << '\n';
  }
  Rational e = abs_euler(m);
  Rational v = abs_sv(m);
  human << "|e| = " << e << "\n|SV| = " << v << '\n';
  machine << "abs_euler=" << e << "\nabs_sv=" << v << '\n';
  return human.str() + "---\n" + machine.str();
}

std::string format_cover(const CoverResult& result, const CheckReport& check) {
  std::ostringstream os;
  const auto& c = result.descriptor;
  os << "cover " << c.label << ": " << result.note << '\n'
     << "total space " << result.cover.name() << ": " << result.cover.pieces().size() << " pieces, "
     << result.cover.edges().size() << " edges\n"
     << "check: " << check.summary() << "\n---\n"
     << "degree=" << c.degree() << '\n'
     << "check=" << (check.passed() ? "pass" : "fail") << '\n'
     << "pieces=" << result.cover.pieces().size() << '\n'
     << "edges=" << result.cover.edges().size() << '\n'
     << "self_loops=" << dual_graph(result.cover).loop_count() << '\n'
     << "characteristic=" << (c.characteristic ? std::to_string(*c.characteristic) : "none") << '\n'
     << "separable=" << yes_no(c.separable) << '\n';
  return os.str();
}

std::string format_property_i(const PropertyINormalization& norm) {
  auto c1 = check_covering(norm.n1_to_base);
  auto c2 = check_covering(norm.n1_to_n2);
  std::ostringstream os;
  os << "A = " << norm.matrix.to_string() << ", edges carrying -A: " << norm.flipped_edges << '\n'
     << "N1 " << norm.n1.name() << ": " << norm.n1.pieces().size() << " pieces, " << norm.n1.edges().size()
     << " edges\n"
     << norm.n1_to_base.label << ": " << c1.summary() << '\n'
     << norm.n1_to_n2.label << ": " << c2.summary() << '\n'
     << "deck involution:";
  for (const auto& [from, to] : norm.deck_involution) os << ' ' << from << "<->" << to;
  os << "\n---\n"
     << "flipped_edges=" << norm.flipped_edges << '\n'
     << "p1_degree=" << norm.n1_to_base.degree() << '\n'
     << "p1_check=" << (c1.passed() ? "pass" : "fail") << '\n'
     << "p2_degree=" << norm.n1_to_n2.degree() << '\n'
     << "p2_check=" << (c2.passed() ? "pass" : "fail") << '\n'
     << "property_I=" << yes_no(classify(norm.n2).is_property_I) << '\n';
  return os.str();
}

std::string format_witness(const WitnessCertificate& cert) {
  std::ostringstream human;
  std::ostringstream machine;
  human << "nonzero-volume witness for " << cert.input.name() << '\n';
  std::string degrees;
  for (std::size_t i = 0; i < cert.chain.size(); ++i) {
    const auto& link = cert.chain[i];
    std::string check = "-";
    std::string kind;
    std::string detail;
    if (const auto* c = std::get_if<CoveringDescriptor>(&link.link)) {
      check = check_covering(*c).passed() ? "pass" : "fail";
      kind = "covering";
    } else {
      const auto& m = std::get<MapDescriptor>(link.link);
      kind = to_string(m.kind);
      detail = m.detail;
    }
    human << "  [" << i + 1 << "] " << link.stage << ": " << kind << ", degree " << link.degree()
          << (check == "-" ? "" : ", check " + check) << '\n';
    if (!detail.empty()) human << "      " << detail << '\n';
    machine << "link." << i + 1 << ".kind=" << kind << '\n'
            << "link." << i + 1 << ".degree=" << link.degree() << '\n';
    if (check != "-") machine << "link." << i + 1 << ".check=" << check << '\n';
    degrees += (i ? "," : "") + std::to_string(link.degree());
  }
  human << "N4: genus " << cert.target.genus << ", cone data " << cone_text(cert.target.cone_data)
        << ", chi_orb = " << cert.target.chi_orb << ", e = " << cert.target.euler_number << ", sv = " << cert.target_sv
        << '\n'
        << cert.conclusion << '\n';
  auto problems = verify_certificate(cert);
  for (const auto& p : problems) human << "problem: " << p << '\n';
  machine << "branch=" << static_cast<int>(cert.branch) << '\n'
          << "degrees=" << degrees << '\n'
          << "pinch_genus=" << cert.pinch_genus << '\n'
          << "target_genus=" << cert.target.genus << '\n'
          << "target_euler=" << cert.target.euler_number << '\n'
          << "target_chi_orb=" << cert.target.chi_orb << '\n'
          << "target_sv=" << cert.target_sv << '\n'
          << "map_degree=" << cert.map_degree << '\n'
          << "sv_lower_bound=" << cert.sv_lower_bound << '\n'
          << "cover_index_bound=" << cert.cover_index_bound << '\n'
          << "verified=" << yes_no(problems.empty()) << '\n';
  return human.str() + "---\n" + machine.str();
}

std::string format_bound(const BoundReport& r) {
  std::ostringstream human;
  std::ostringstream machine;
  const bool nonzero = r.path == BoundPath::abs_euler_nonzero;
  human << "target N: " << r.target.name() << ", |e| = " << r.target_abs_euler << ", |SV| = " << r.target_abs_sv
        << '\n';
  for (const auto& s : r.reductions) human << "reduction: " << s << '\n';
  for (const auto& s : r.assumptions) human << "assumption: " << s << '\n';
  machine << "path=" << (nonzero ? "abs_euler_nonzero" : "abs_euler_zero") << '\n'
          << "reductions=" << r.reductions.size() << '\n'
          << "target_abs_euler=" << r.target_abs_euler << '\n'
          << "target_abs_sv=" << r.target_abs_sv << '\n';
  if (nonzero) {
    human << "Q = " << r.q_piece << ", SV(Q^) = " << r.q_hat->sv << '\n';
    machine << "q_piece=" << r.q_piece << "\nq_sv=" << r.q_hat->sv << '\n';
  } else {
    human << "Q = " << r.q_pair[0] << " u " << r.q_pair[1] << '\n';
    machine << "q_pair=" << r.q_pair[0] << "," << r.q_pair[1] << '\n';
  }
  human << "canonical submanifolds of M: " << r.candidates.size() << '\n';
  machine << "candidates=" << r.candidates.size() << '\n';
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    const auto& c = r.candidates[i];
    std::string ratio = c.ratio ? c.ratio->to_string() : (nonzero ? "not computable: multi-piece hat" : "-");
    human << "  " << c.submanifold.to_string() << "  |e| = " << c.hat.abs_euler << ", |SV| = " << c.hat.abs_sv
          << ", ratio = " << ratio << '\n';
    machine << "candidate." << i + 1 << '=' << c.submanifold.to_string() << '\n'
            << "candidate." << i + 1 << ".ratio=" << (c.ratio ? c.ratio->to_string() : "none") << '\n';
  }
  std::string bound = r.numeric_bound_over_seifert_hats ? r.numeric_bound_over_seifert_hats->to_string() : "none";
  human << "bound over Seifert-hat candidates: " << bound << '\n';
  machine << "numeric_bound_over_seifert_hats=" << bound << '\n';
  if (r.witness) {
    human << "witness for Q^: target sv = " << r.witness->target_sv << '\n';
    machine << "witness_target_sv=" << r.witness->target_sv << '\n'
            << "witness_verified=" << yes_no(verify_certificate(*r.witness).empty()) << '\n';
  }
  human << r.finiteness_conclusion << '\n';
  return human.str() + "---\n" + machine.str();
}

}  // namespace gm
