#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"berkline: splitting radii of rational maps on the Berkovich line"};
  app.require_subcommand(1);
  berkcli::Options opts;
  std::string path;
  long budget = 0;
  for (const char* name : {"eval", "skeleton", "verify", "charts", "oracle"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("problem", path, "problem file")->required();
    sub->add_option("--budget", budget, "adaptive refinement cap per edge")->check(CLI::PositiveNumber);
    sub->add_option("--svg", opts.svg, "write val f along skeleton edges as SVG");
    sub->add_option("--hints", opts.hints, "fiber root hints ([roots] block)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : berkcli::BadInput;
  }
  if (budget > 0) opts.budget = budget;
  const auto* sub = app.get_subcommands().front();
  return berkcli::run_file(sub->get_name(), path, opts, std::cout, std::cerr);
}
