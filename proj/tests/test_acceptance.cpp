#include <cstdlib>
#include <iostream>

#include "orelab/acceptance.hpp"

int main() {
  bool all = true;
  for (const auto& r : orelab::run_acceptance()) {
    std::cout << orelab::format_line(r) << std::endl;
    all = all && r.passed;
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
