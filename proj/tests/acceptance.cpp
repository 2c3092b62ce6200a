// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <iostream>

#include "acceptance.hpp"

int main() {
  nonrn::acceptance::Config cfg;
  bool ok = true;
  for (const auto& r : nonrn::acceptance::run(cfg)) {
    std::cout << nonrn::acceptance::format(r) << std::endl;
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
