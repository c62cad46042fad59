// Escape-time picture of f(z) = z + e^{h(z)} for the doubling profile.
//
//   escape_image [out.ppm] [size]

#include <cstdlib>
#include <iostream>
#include <string>

#include "bakerlab/bakerlab.hpp"

int main(int argc, char** argv) {
  using namespace bakerlab;
  const std::string out = argc > 1 ? argv[1] : "doubling_escape.ppm";
  const auto size = static_cast<std::uint32_t>(argc > 2 ? std::atoi(argv[2]) : 512);

  const ParamSeq p = make_toy("doubling");
  OrbitOptions opt;
  opt.max_steps = 60;
  const EscapeGrid grid = classify_grid({{-20.0, -20.0}, {20.0, 20.0}}, size, size, p, opt, resolve_threads(0));
  write_ppm(out, render_escape(grid, "rainbow"));

  std::size_t escaped = 0;
  for (const GridCell& c : grid.cells) escaped += c.status == OrbitStatus::Escaped;
  std::cout << out << ": " << escaped << " of " << grid.cells.size() << " pixels escaped\n";
}
