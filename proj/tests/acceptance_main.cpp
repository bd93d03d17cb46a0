#include <CLI11.hpp>
#include <iostream>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  acool::AcceptOptions opt;
  app.add_flag("--quick", opt.quick, "fewer seeds");
  app.add_option("--seeds", opt.seeds, "seeds per grid point");
  app.add_option("--only", opt.only, "criteria to run")->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  return acool::run_acceptance(opt, std::cout) ? 0 : 1;
}
