#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "tysys/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20240601;
  if (argc > 1) seed = std::stoull(argv[1]);
  int failed = 0;
  for (const auto& c : tysys::acceptance::criteria()) {
    const auto o = tysys::acceptance::run(c, seed);
    std::cout << tysys::acceptance::format_line(o) << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
