#include <cstdlib>
#include <iostream>

#include "bakerlab/acceptance.hpp"
#include "bakerlab/parallel.hpp"

int main() {
  const unsigned threads = bakerlab::resolve_threads(0);
  int failed = 0;
  for (const auto& r : bakerlab::run_acceptance(threads)) {
    std::cout << bakerlab::format_line(r) << std::endl;
    failed += !r.pass;
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : std::string("acceptance: all criteria passed"))
            << std::endl;
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
