// kahlerlab: verify / flow / eval front end.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kahler/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = kahler::cli;

  CLI::App app{"Kähler–Ricci flow and energy functionals on CP^n, radial ansatz"};
  app.require_subcommand(1);

  std::string config;
  std::string out_path;
  std::string phi;

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite and print the report");
  verify->add_option("--config", config, "config file")->required();

  CLI::App* flow = app.add_subcommand("flow", "run the normalized flow and write a trace");
  flow->add_option("--config", config, "config file")->required();
  flow->add_option("--out", out_path, "trace file")->required();

  CLI::App* eval = app.add_subcommand("eval", "evaluate every functional at one potential");
  eval->add_option("--config", config, "config file")->required();
  eval->add_option("--phi", phi, "monomial coefficients c0,c1,...")->required()->allow_extra_args(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitConfig;
  }

  try {
    if (*verify) return cli::cmd_verify(config, std::cout, std::cerr);
    if (*flow) return cli::cmd_flow(config, out_path, std::cout, std::cerr);
    return cli::cmd_eval(config, phi, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitFailure;
  }
}
