// runs every acceptance criterion and prints one line per criterion
#include <cstdio>
#include <cstdlib>

#include "k3/verify.hpp"

int main(int argc, char** argv) {
  k3::VerifyOptions o;
  if (argc > 1) o.data_dir = argv[1];
  if (const char* s = std::getenv("K3_SEED")) o.seed = std::strtoull(s, nullptr, 10);
  k3::Context ctx(o);
  auto rep = k3::verify_all(ctx, [](const k3::Claim& c) {
    bool ok = c.status != "failed";
    std::printf("%s criterion %2d %-16s %s (%.1fs)\n", ok ? "PASS" : "FAIL", c.number, c.id.c_str() + c.id.find('-') + 1,
                c.status.c_str(), c.seconds);
    if (!ok) std::printf("  measured: %s\n  expected: %s\n", c.measured.dump().c_str(), c.expected.dump().c_str());
    std::fflush(stdout);
  });
  std::printf("%d passed, %d failed, %d skipped\n", rep.passed(), rep.failed(), rep.skipped());
  return rep.failed() ? 1 : 0;
}
