#include "support.hpp"

using namespace k3;
using k3test::imat;

TEST_CASE("Weyl vector of the glued lattice") {
  auto& ctx = k3test::ctx();
  const auto& g = ctx.gluing();
  const auto& fx = ctx.fixtures();
  IntVec w = to_int(g.in_L(fx.vec("w0")));
  IntVec wp = to_int(g.in_L(fx.vec("w0prime")));
  CHECK(g.L.norm(w) == 0);
  CHECK(g.L.pair(w, wp) == 1);
  auto c = is_weyl_vector(g.L, w, &wp);
  CHECK(c.weyl);
  CHECK(c.roots == 0);
  // without the printed witness one is found
  auto c2 = is_weyl_vector(g.L, w);
  CHECK(c2.weyl);
  CHECK(g.L.norm(c2.witness) == 0);
  CHECK(g.L.pair(w, c2.witness) == 1);
  IntVec bad = w;
  bad[0] += 1;
  if (g.L.norm(bad) != 0) CHECK_THROWS_AS(is_weyl_vector(g.L, bad), Error);
}

TEST_CASE("U + E8 is not a Weyl configuration") {
  // L = U ⊕ E8(-1); w, w' the hyperbolic pair, complement E8(-1) has roots
  IntMatrix G = block_diag(imat({{0, 1}, {1, 0}}), k3test::e8_negative());
  Lattice L(G);
  REQUIRE(L.is_unimodular());
  IntVec w(10), wp(10);
  w[0] = 1;
  wp[1] = 1;
  auto c = is_weyl_vector(L, w, &wp);
  CHECK(!c.weyl);
  CHECK(c.roots > 0);
  CHECK_THROWS_AS(is_weyl_vector(L, wp + wp + w), Error);
}

TEST_CASE("function Q on the complement") {
  auto& ctx = k3test::ctx();
  const auto& g = ctx.gluing();
  const auto& fx = ctx.fixtures();
  IntVec w = to_int(g.in_L(fx.vec("w0")));
  IntVec wp = to_int(g.in_L(fx.vec("w0prime")));
  auto c = is_weyl_vector(g.L, w, &wp);
  RatVec h0(26);
  for (int i = 0; i < 22; ++i) h0[i] = fx.vec("h0")[i];
  RatVec h = g.in_L(h0);
  auto Q = weyl_quadratic(g.L, c, w, h);
  CHECK(positive_quadratic_sublevel(Q, Rat(0), false).empty());
  auto zeros = positive_quadratic_sublevel(Q, Rat(0), true);
  CHECK(zeros.size() == 4);
  // independent evaluation from the defining formula
  const auto& E = c.complement.embedding.basis;
  for (const auto& z : zeros) {
    RatVec lam = to_rat(z) * to_rat(E);
    Rat ll = g.L.norm(lam);
    RatVec r = scale(Rat(-(2 + ll) / 2), to_rat(w)) + to_rat(wp) + lam;
    CHECK(g.L.norm(r) == -2);
    CHECK(g.L.pair(r, h) == 0);
    CHECK(Q(z) == 0);
  }
}

TEST_CASE("Leech roots and walls") {
  auto& ctx = k3test::ctx();
  const auto& g = ctx.gluing();
  const auto& fx = ctx.fixtures();
  const auto& lr = ctx.leech_roots();
  CHECK(lr.size() == 5944);
  RatVec wL = g.in_L(fx.vec("w0"));
  std::size_t lines = 0;
  for (const auto& r : lr) {
    RatVec rl = g.in_L(r.r);
    CHECK(is_integral(rl));
    CHECK(g.L.norm(rl) == -2);
    CHECK(g.L.pair(rl, wL) == 1);
    CHECK(g.s_part(r.r) == r.rS);
    lines += r.a == 1 && r.n == -2;
  }
  CHECK(lines == 112);
  std::vector<RatVec> cand;
  for (const auto& r : lr) cand.push_back(r.rS);
  // one duplicate is dropped
  cand.push_back(cand.front());
  const RatVec& h0 = fx.vec("h0");
  auto W = walls(g.S, cand, h0);
  CHECK(W.size() == 5944);
  auto one = walls(g.S, {cand[0]}, h0);
  CHECK(one.size() == 1);

  // every PGU generator preserves the wall set
  std::set<RatVec> ws(W.begin(), W.end());
  for (const auto& p : ctx.pgu()) {
    std::set<RatVec> moved;
    for (const auto& x : W) moved.insert(x * to_rat(p.isometry));
    CHECK(moved == ws);
  }
}

TEST_CASE("reflections") {
  auto& ctx = k3test::ctx();
  const auto& cfg = ctx.config();
  Lattice S(cfg.N);
  RatVec h0 = ctx.fixtures().vec("h0");
  RatVec l1 = to_rat(cfg.classes[cfg.basis[0]]);
  CHECK(reflect(S, l1, l1) == scale(Rat(-1), l1));
  CHECK(reflect(S, h0, l1) == h0 + l1);
  const auto& gens = ctx.generators();
  CHECK(gens.s1 * cfg.N * transpose(gens.s1) == cfg.N);
  CHECK(gens.s1 * gens.s1 == IntMatrix::identity(22));
  CHECK(gens.s1 == reflection_matrix(S, l1));
  // reflection in l1^τ is τ⁻¹ s1 τ
  std::mt19937_64 rng(17);
  for (int it = 0; it < 20; ++it) {
    IntMatrix tau = IntMatrix::identity(22);
    for (int k = 0; k < 6; ++k) {
      int i = static_cast<int>(rng() % gens.pgu.size());
      tau = tau * gens.pgu[i];
    }
    RatVec l = l1 * to_rat(tau);
    IntMatrix inv = to_int(inverse(to_rat(tau)));
    CHECK(reflection_matrix(S, l) == inv * gens.s1 * tau);
  }
}

TEST_CASE("descent into the chamber") {
  auto& ctx = k3test::ctx();
  const auto& gens = ctx.generators();
  const auto& tab = ctx.tables();
  IntVec h0 = ctx.h0();
  auto r0 = reduce_to_chamber(h0, tab, gens);
  CHECK(r0.word.empty());
  CHECK(r0.result == h0);

  IntVec h1 = ctx.vec22("h1");
  auto r1 = reduce_to_chamber(h1, tab, gens);
  CHECK(r1.result == h0);
  CHECK(h1 * evaluate(r1.word, gens) == h0);
  REQUIRE(r1.word.size() == 1);
  CHECK(r1.word[0].gen == Gen::G1);

  std::mt19937_64 rng(23);
  for (int it = 0; it < 30; ++it) {
    auto w = random_word(rng, 8, false, gens.pgu.size());
    IntVec v = h0 * evaluate(w, gens);
    auto r = reduce_to_chamber(v, tab, gens);
    CHECK(r.result == h0);
    CHECK(v * evaluate(r.word, gens) == h0);
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      CHECK(r.trace[k] > 0);
      if (k) CHECK(r.trace[k] < r.trace[k - 1]);
    }
  }
}

TEST_CASE("factorization over the generators") {
  auto& ctx = k3test::ctx();
  const auto& gens = ctx.generators();
  const auto& tab = ctx.tables();
  CHECK(factor_in_oplus(IntMatrix::identity(22), tab, gens).empty());
  IntMatrix AF = ctx.fixtures().matrices.at("AF");
  auto f = factor_in_oplus(AF, tab, gens);
  CHECK(evaluate(f, gens) == AF);
  bool has_frob = false;
  for (const auto& t : f) has_frob = has_frob || t.gen == Gen::Frobenius;
  CHECK(has_frob);
  IntMatrix s1A1 = gens.s1 * gens.g1;
  auto g = factor_in_oplus(s1A1, tab, gens);
  CHECK(g.size() >= 2);
  CHECK(evaluate(g, gens) == s1A1);
  std::mt19937_64 rng(31);
  for (int it = 0; it < 10; ++it) {
    IntMatrix M = evaluate(random_word(rng, 6, true, gens.pgu.size()), gens);
    auto w = factor_in_oplus(M, tab, gens);
    CHECK(evaluate(w, gens) == M);
    CHECK(evaluate(word_concat(w, word_inverse(w)), gens) == IntMatrix::identity(22));
  }
  CHECK(to_json(GeneratorWord{}).is_array());
}
