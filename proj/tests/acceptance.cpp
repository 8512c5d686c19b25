// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "elimkit/reproduce.hpp"

int main(int argc, char** argv) {
  elimkit::ReproduceOptions o;
  if (argc > 1) o.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  for (const auto& c : elimkit::criteria()) {
    const auto r = elimkit::run_criterion(c, o);
    std::printf("%s criterion %2d: %s (%.2f s)\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
    if (!r.passed) {
      std::printf("  details: %s\n", r.details.dump().c_str());
      ++failed;
    }
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(elimkit::criteria().size()) - failed,
              elimkit::criteria().size());
  return failed == 0 ? 0 : 1;
}
