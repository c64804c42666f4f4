// Command-line front end: list, validate and evaluate structures and run the
// verification suite.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "acg/catalog.hpp"
#include "acg/errors.hpp"
#include "acg/interior.hpp"
#include "acg/sampling.hpp"
#include "acg/structure_io.hpp"
#include "acg/verify.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int cmd_catalog() {
  for (const auto& name : acg::catalog_names()) {
    const acg::StructureSpec s = acg::catalog_structure(name);
    const auto pts = acg::sample_base(s, 50, 42);
    const bool k = acg::is_k_contact(s, pts);
    const bool flat = acg::is_zero_curvature(s, acg::interior_metric_connection(s), pts);
    std::cout << name << "  n=" << s.n << "  k_contact=" << (k ? "yes" : "no")
              << "  zero_curvature=" << (flat ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_validate(const acg::StructureSpec& spec, int points, std::uint64_t seed, double tol) {
  const acg::ValidationReport r = acg::validate_structure(spec, acg::sample_base(spec, points, seed), tol);
  for (const auto& a : r.axioms)
    std::cout << (a.pass ? "pass" : "FAIL") << "  " << a.name << "  residual " << a.residual
              << (a.structural ? "  (structural)" : "") << "\n";
  return r.pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for almost contact metric structures and their prolonged structures", "acg"};
  app.require_subcommand(1);

  std::string structure;
  std::string tensor;
  std::string point;
  std::string format;
  acg::VerifyConfig config;
  double tol = 0.0;

  app.add_subcommand("catalog", "List the built-in structures");

  auto add_structure = [&](CLI::App* sub) {
    sub->add_option("-s,--structure", structure, "Catalog name or path to a structure JSON file")->required();
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--points", config.points, "Number of sample points")->check(CLI::PositiveNumber);
    sub->add_option("--seed", config.seed, "Sampler seed");
    sub->add_option("--tol", tol, "Tolerance overriding the per-check defaults")->check(CLI::PositiveNumber);
  };

  CLI::App* validate = app.add_subcommand("validate", "Check the structure axioms");
  add_structure(validate);
  add_sampling(validate);

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a tensor at a point");
  add_structure(eval);
  eval->add_option("-t,--tensor", tensor, "Tensor name")->required();
  eval->add_option("-p,--point", point, "Comma-separated coordinates")->required();

  CLI::App* verify = app.add_subcommand("verify", "Run the verification suite");
  CLI::App* report = app.add_subcommand("report", "Run the verification suite and print the JSON report");
  for (CLI::App* sub : {verify, report}) {
    add_structure(sub);
    add_sampling(sub);
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "human"}));
    sub->add_flag("--printed-christoffel-signs", config.printed_christoffel_signs,
                  "Use the uncorrected sign pattern for the interior connection (debug)");
  }

  if (argc <= 1) {
    std::cout << app.help();
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("catalog")) return cmd_catalog();

    const acg::StructureSpec spec = acg::load_structure(structure);
    config.tol = tol;
    if (validate->parsed()) return cmd_validate(spec, config.points, config.seed, tol > 0.0 ? tol : 1e-9);

    if (eval->parsed()) {
      std::cout << acg::evaluate_tensor(spec, tensor, acg::parse_point(point)).dump(2) << "\n";
      return 0;
    }

    const acg::Report r = acg::run_verification(spec, config);
    const bool human = format.empty() ? verify->parsed() : format == "human";
    if (human)
      std::cout << acg::render_human(r);
    else
      std::cout << acg::report_to_json(r).dump(2) << "\n";
    return r.pass() ? 0 : kExitFail;
  } catch (const acg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
