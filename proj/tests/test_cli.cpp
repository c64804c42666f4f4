#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "acg/catalog.hpp"
#include "acg/errors.hpp"
#include "acg/structure_io.hpp"
#include "acg/verify.hpp"

using namespace acg;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ACG_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const CheckRecord& find(const Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  FAIL("missing check " << name);
  return r.checks.front();
}

}  // namespace

TEST_CASE("tensor evaluation") {
  const auto h = catalog_structure("heisenberg3");
  const auto j = evaluate_tensor(h, "omega", {0, 0, 0});
  CHECK(j["components"] == nlohmann::ordered_json::parse("[[0.0,0.5],[-0.5,0.0]]"));

  const auto s = evaluate_tensor(h, "schouten", {0.3, 0.1, 0.0});
  CHECK(s["shape"] == nlohmann::ordered_json::parse("[2,2,2,2]"));
  for (const auto& a : s["components"])
    for (const auto& b : a)
      for (const auto& c : b)
        for (const auto& d : c) CHECK(d.get<double>() == 0.0);

  const auto w = catalog_structure("warped-heisenberg");
  CHECK(evaluate_tensor(w, "n_endo", {0, 0, 0})["components"] == nlohmann::ordered_json::parse("[[0.5,0.0],[0.0,0.5]]"));

  CHECK_THROWS_AS(evaluate_tensor(h, "torsion_of_nothing", {0, 0, 0}), UnknownTensor);
  CHECK_THROWS_AS(evaluate_tensor(h, "omega", {0, 0}), DimensionMismatch);
  CHECK_THROWS_AS(evaluate_tensor(h, "gtilde", {0, 0, 0}), DimensionMismatch);
  CHECK_THROWS_AS(evaluate_tensor(w, "h", {0, 0, 0}), PhiAbsent);

  // Every listed name evaluates on heisenberg3.
  for (const auto& name : tensor_names()) {
    const std::vector<double> p = tensor_on_prolonged(name) ? std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5}
                                                            : std::vector<double>{0.1, 0.2, 0.3};
    CHECK_NOTHROW(evaluate_tensor(h, name, p));
  }
}

TEST_CASE("point parsing") {
  CHECK(parse_point("0.5,-1,2e-3") == std::vector<double>{0.5, -1.0, 0.002});
  CHECK_THROWS_AS(parse_point("1,a"), ParseError);
  CHECK_THROWS_AS(parse_point(""), ParseError);
}

TEST_CASE("verification report") {
  const Report r = run_verification(catalog_structure("heisenberg3"), {});
  CHECK(r.pass());
  CHECK(r.points == 100);
  CHECK(r.seed == 42);
  for (const auto& c : r.checks) CHECK(c.verdict == Verdict::Pass);

  const Report w = run_verification(catalog_structure("warped-heisenberg"), {});
  CHECK(find(w, "k_contact_biconditional").verdict == Verdict::Pass);
  CHECK(find(w, "nijenhuis_components").verdict == Verdict::Skipped);
  CHECK(find(w, "almost_normal_biconditional").verdict == Verdict::Skipped);

  VerifyConfig printed;
  printed.printed_christoffel_signs = true;
  const Report p = run_verification(catalog_structure("curved-heisenberg"), printed);
  CHECK(find(p, "interior_metricity").verdict == Verdict::Fail);
  CHECK(find(p, "interior_metricity").max_residual > 1e-3);
  CHECK_FALSE(p.pass());

  VerifyConfig loose;
  loose.tol = 1e-3;
  for (const auto& c : run_verification(catalog_structure("heisenberg3"), loose).checks)
    if (c.name == "levi_civita_blocks") CHECK(c.tol == 1e-3);

  const auto j = report_to_json(r);
  CHECK(j["version"] == 1);
  CHECK(j["checks"][0].contains("paper_anchor"));
  CHECK(j["checks"][0].contains("max_residual"));
  CHECK(render_human(r).find("all checks passed") != std::string::npos);
}

TEST_CASE("structure files") {
  const StructureSpec s = load_structure(std::string(ACG_DATA_DIR) + "/heisenberg3.json");
  CHECK(s.name == "heisenberg3-file");
  CHECK(run_verification(s, {}).pass());
  CHECK_THROWS_AS(load_structure("/nonexistent/spec.json"), SpecMalformed);
}

TEST_CASE("command line") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("eval -s heisenberg3 -t nothing -p 0,0,0").code == 2);
  CHECK(run("eval -s heisenberg3 -t omega -p 0,0").code == 2);
  CHECK(run("verify -s heisenberg3 --points 0").code == 2);

  const Run cat = run("catalog");
  CHECK(cat.code == 0);
  for (const auto& name : catalog_names()) CHECK(cat.out.find(name) != std::string::npos);

  const Run ev = run("eval -s heisenberg3 -t omega -p 0,0,0");
  CHECK(ev.code == 0);
  CHECK(nlohmann::json::parse(ev.out)["components"] == nlohmann::json::parse("[[0.0,0.5],[-0.5,0.0]]"));

  CHECK(run("validate -s heisenberg3").code == 0);
  CHECK(run("verify -s heisenberg3 --points 20").code == 0);
  CHECK(run("verify -s warped-heisenberg --points 20").code == 0);
  CHECK(run("verify -s curved-heisenberg --points 20 --printed-christoffel-signs").code == 1);
  CHECK(run(std::string("verify -s ") + ACG_DATA_DIR + "/heisenberg3.json --points 10").code == 0);

  const Run human = run("verify -s heisenberg3 --points 5");
  CHECK(human.out.find("verdict") != std::string::npos);
  const Run json = run("verify -s heisenberg3 --points 5 --format json");
  CHECK(nlohmann::json::parse(json.out)["points"] == 5);
}

TEST_CASE("reports are byte-identical for a fixed seed") {
  const Run a = run("report -s curved-heisenberg --points 30 --seed 7");
  const Run b = run("report -s curved-heisenberg --points 30 --seed 7");
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
  const Run c = run("report -s curved-heisenberg --points 30 --seed 8");
  CHECK(a.out != c.out);
}
