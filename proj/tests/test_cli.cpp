#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "run.hpp"
#include "support.hpp"

using gmtest::fixture_path;
using gmtest::run_gm;

namespace {

std::string out_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gm_cli_test_" + name)).string();
}

bool contains(const std::string& text, const std::string& part) { return text.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("validate") {
  auto ok = run_gm("validate " + fixture_path("worked.gm"));
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.output, "valid=true"));

  auto det = run_gm("validate " + fixture_path("errors/det.gm"));
  CHECK(det.exit_code == 1);
  CHECK(contains(det.output, "line 4: edge e1: determinant must be -1"));

  auto reused = run_gm("validate " + fixture_path("errors/reused.gm"));
  CHECK(reused.exit_code == 2);
  CHECK(contains(reused.output, "line 3, column 20: boundary index reused"));

  auto syntax = run_gm("validate " + fixture_path("errors/syntax.gm"));
  CHECK(syntax.exit_code == 2);
  CHECK(contains(syntax.output, "line 4, column 37"));

  CHECK(run_gm("validate " + fixture_path("errors/dangling.gm")).exit_code == 2);
  CHECK(run_gm("validate " + fixture_path("errors/duplicate.gm")).exit_code == 2);
  CHECK(run_gm("validate /nonexistent/file.gm").exit_code == 2);
}

TEST_CASE("invariants") {
  auto r = run_gm("invariants " + fixture_path("worked.gm"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "\n---\n"));
  CHECK(contains(r.output, "abs_euler=1\n"));
  CHECK(contains(r.output, "abs_sv=4\n"));
  CHECK(run_gm("invariants " + fixture_path("errors/det.gm")).exit_code == 1);
}

TEST_CASE("covers write a valid manifold") {
  auto path = out_file("sep.gm");
  auto r = run_gm("cover separate-self-edges " + fixture_path("selfloop.gm") + " -o " + path);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "check=pass"));
  auto cover = gm::parse(gmtest::read_text(path));
  CHECK(cover.pieces().size() == 2);

  auto pi = out_file("pi.gm");
  auto p = run_gm("cover property-i " + fixture_path("pm_triple.gm") + " -o " + pi);
  CHECK(p.exit_code == 0);
  CHECK(gm::classify(gm::parse(gmtest::read_text(pi))).is_property_I);

  auto g = out_file("genus.gm");
  auto q = run_gm("cover genus " + fixture_path("property_i.gm") + " -o " + g);
  CHECK(q.exit_code == 0);
  CHECK(contains(q.output, "degree=4"));
  CHECK(gm::parse(gmtest::read_text(g)).piece("P1").genus == 4);

  CHECK(run_gm("cover genus " + fixture_path("pm_triple.gm") + " -o " + g).exit_code == 3);
  CHECK(run_gm("cover sideways " + fixture_path("pm_triple.gm") + " -o " + g).exit_code == 2);
}

TEST_CASE("witness and bound") {
  auto w = run_gm("witness " + fixture_path("swap.gm"));
  CHECK(w.exit_code == 0);
  CHECK(contains(w.output, "target_sv=4\n"));
  CHECK(contains(w.output, "verified=true\n"));
  CHECK(run_gm("witness " + fixture_path("chain3.gm")).exit_code == 3);

  auto b = run_gm("bound " + fixture_path("worked.gm") + " " + fixture_path("worked.gm"));
  CHECK(b.exit_code == 0);
  CHECK(contains(b.output, "numeric_bound_over_seifert_hats=1\n"));
  auto z = run_gm("bound " + fixture_path("worked.gm") + " " + fixture_path("swap.gm"));
  CHECK(z.exit_code == 0);
  CHECK(contains(z.output, "path=abs_euler_zero\n"));
  CHECK(contains(z.output, "witness_target_sv=4\n"));
  CHECK(run_gm("bound " + fixture_path("theta.gm") + " " + fixture_path("worked.gm") + " --max-edges 2").exit_code ==
        3);
  CHECK(run_gm("bound " + fixture_path("worked.gm") + " " + fixture_path("fibered.gm")).exit_code == 3);
}

TEST_CASE("dot") {
  auto r = run_gm("dot " + fixture_path("worked.gm"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "\"P1\" -> \"P2\" [label=\"e1 [1,1;1,0]\"];"));
}

TEST_CASE("usage errors") {
  CHECK(run_gm("").exit_code == 2);
  CHECK(run_gm("frobnicate").exit_code == 2);
  CHECK(run_gm("--help").exit_code == 0);
}

TEST_CASE("no floating point in any report") {
  for (const auto& args : {"invariants " + fixture_path("chain3.gm"), "witness " + fixture_path("pm_triple.gm"),
                           "bound " + fixture_path("chain3.gm") + " " + fixture_path("worked.gm")}) {
    auto r = run_gm(args);
    REQUIRE(r.exit_code == 0);
    auto machine = r.output.substr(r.output.find("\n---\n") + 5);
    std::istringstream in(machine);
    std::string line;
    while (std::getline(in, line)) {
      auto value = line.substr(line.find('=') + 1);
      bool numeric = !value.empty() && (std::isdigit(static_cast<unsigned char>(value[0])) || value[0] == '-');
      if (numeric) CHECK_MESSAGE(value.find('.') == std::string::npos, line);
    }
  }
}
