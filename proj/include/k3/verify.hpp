#pragma once

#include <functional>
#include <memory>
#include <random>
#include <set>

#include "k3/chamber.hpp"
#include "k3/data.hpp"
#include "k3/linsys.hpp"

namespace k3 {

struct VerifyOptions {
  std::string data_dir;  // resolved through resolve_data_dir
  bool no_fixtures = false;
  int jobs = 1;
  std::uint64_t seed = 1;
};

// lazily computed objects shared by the criteria and the CLI
class Context {
 public:
  explicit Context(VerifyOptions o);
  ~Context();
  const VerifyOptions& options() const { return opt_; }

  const Fixtures& fixtures();
  const LineScan& scan();
  const std::vector<std::vector<int>>& intersections();
  const FrameResult& frame();
  const LineConfiguration& config();
  const std::vector<PGUGenerator>& pgu();
  const PermGroup& pgu_group();  // on lines, base starting at line 0
  const Gluing& gluing();
  const std::vector<LeechRoot>& leech_roots();
  const GeneratorSet& generators();
  const ChamberTables& tables();
  IntVec h0();
  IntVec vec22(const std::string& name);

 private:
  struct State;
  VerifyOptions opt_;
  std::unique_ptr<State> s_;
};

struct Claim {
  int number = 0;
  std::string id;
  std::string anchor;
  std::string status;  // exact-match | frame-invariant-match | failed | skipped
  nlohmann::json measured, expected;
  double seconds = 0;
};

struct Report {
  std::vector<Claim> claims;
  int count(const std::string& status) const;
  int passed() const { return count("exact-match") + count("frame-invariant-match"); }
  int failed() const { return count("failed"); }
  int skipped() const { return count("skipped"); }
  nlohmann::json to_json(bool timings) const;
};

constexpr int kCriteria = 13;
Claim run_criterion(int k, Context& ctx);
Report verify_all(Context& ctx, const std::function<void(const Claim&)>& progress = {});

// pseudo-random generator words used by the descent checks
// extended adds F and s₁ to {PGU, g₁, g₂}
GeneratorWord random_word(std::mt19937_64& rng, std::size_t max_len, bool extended, std::size_t pgu_count);

}  // namespace k3
