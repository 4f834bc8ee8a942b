// gm: command-line front end for the graph manifold library.
//
// Exit codes: 0 ok, 1 validation, 2 parse, 3 hypothesis not met.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gm/io.hpp"

namespace {

enum Exit { ok = 0, validation = 1, parse_failure = 2, hypothesis = 3 };

struct UnreadableFile : gm::Error {
  using gm::Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableFile("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gm::Error("cannot write " + path);
  out << text;
}

gm::GraphManifold load(const std::string& path) { return gm::parse(read_file(path)); }

int run_validate(const std::string& path) {
  auto doc = gm::parse_document(read_file(path));
  if (doc.report.empty()) {
    std::cout << path << ": valid (" << doc.manifold.pieces().size() << " pieces, " << doc.manifold.edges().size()
              << " edges)\n---\nvalid=true\n";
    return ok;
  }
  for (const auto& line : doc.annotated_report()) std::cerr << path << ": " << line << '\n';
  std::cout << "---\nvalid=false\nviolations=" << doc.report.size() << '\n';
  return validation;
}

int run_cover(const std::string& kind, const std::string& path, const std::string& out_path) {
  gm::GraphManifold m = load(path);
  if (kind == "property-i") {
    auto norm = gm::property_i_normalize(m);
    write_file(out_path, gm::serialize(norm.n2));
    std::cout << gm::format_property_i(norm);
    return ok;
  }
  gm::CoverResult result = kind == "separate-self-edges" ? gm::separate_self_edges_cover(m) : gm::genus_cover(m);
  auto check = gm::check_covering(result.descriptor);
  write_file(out_path, gm::serialize(result.cover));
  std::cout << gm::format_cover(result, check);
  return check.passed() ? ok : validation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph manifolds: invariants, coverings, volume witnesses and degree bounds"};
  app.require_subcommand(1);

  std::string file;
  std::string second;
  std::string out_path;
  std::size_t max_edges = gm::kDefaultEdgeCap;
  std::string cover_kind;

  auto* validate_cmd = app.add_subcommand("validate", "Check a .gm file");
  validate_cmd->add_option("FILE", file)->required();
  auto* invariants_cmd = app.add_subcommand("invariants", "Per-piece hat invariants and totals |e|, |SV|");
  invariants_cmd->add_option("FILE", file)->required();
  auto* cover_cmd = app.add_subcommand("cover", "Build a finite cover and write it to OUT");
  cover_cmd->add_option("KIND", cover_kind)
      ->required()
      ->check(CLI::IsMember({"separate-self-edges", "property-i", "genus"}));
  cover_cmd->add_option("FILE", file)->required();
  cover_cmd->add_option("-o,--output", out_path, "Output .gm file")->required();
  auto* witness_cmd = app.add_subcommand("witness", "Certificate of a finite cover with positive volume");
  witness_cmd->add_option("FILE", file)->required();
  auto* bound_cmd = app.add_subcommand("bound", "Mapping degree bound from M to N");
  bound_cmd->add_option("M_FILE", file)->required();
  bound_cmd->add_option("N_FILE", second)->required();
  bound_cmd->add_option("--max-edges", max_edges, "Enumeration cap on the edges of M");
  auto* dot_cmd = app.add_subcommand("dot", "Dual graph in DOT");
  dot_cmd->add_option("FILE", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : parse_failure;
  }

  try {
    if (validate_cmd->parsed()) return run_validate(file);
    if (invariants_cmd->parsed()) {
      std::cout << gm::format_invariants(load(file));
    } else if (cover_cmd->parsed()) {
      return run_cover(cover_kind, file, out_path);
    } else if (witness_cmd->parsed()) {
      auto cert = gm::sv_witness(load(file));
      std::cout << gm::format_witness(cert);
      if (!gm::verify_certificate(cert).empty()) return validation;
    } else if (bound_cmd->parsed()) {
      gm::GraphManifold m = load(file);
      gm::GraphManifold n = load(second);
      std::cout << gm::format_bound(gm::degree_bound_report(m, n, max_edges));
    } else if (dot_cmd->parsed()) {
      std::cout << gm::export_dot(load(file));
    }
    return ok;
  } catch (const UnreadableFile& e) {
    std::cerr << "error: " << e.what() << '\n';
    return parse_failure;
  } catch (const gm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return parse_failure;
  } catch (const gm::ValidationError& e) {
    for (const auto& v : e.report()) std::cerr << "validation error: " << v.to_string() << '\n';
    return validation;
  } catch (const gm::HypothesisError& e) {
    std::cerr << "hypothesis not met: " << e.what() << '\n';
    return hypothesis;
  } catch (const gm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return validation;
  }
}
