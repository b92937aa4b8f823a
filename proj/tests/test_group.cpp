#include "support.hpp"

using namespace k3;
using k3test::imat;

namespace {

Perm cycle(std::size_t n, std::vector<int> c) {
  Perm p = perm_identity(n);
  for (std::size_t k = 0; k < c.size(); ++k) p[c[k]] = static_cast<std::uint16_t>(c[(k + 1) % c.size()]);
  return p;
}

// closure by breadth-first multiplication, for small groups only
std::size_t brute_order(const std::vector<Perm>& gens, std::size_t n) {
  std::set<Perm> seen{perm_identity(n)};
  std::vector<Perm> todo{perm_identity(n)};
  while (!todo.empty()) {
    Perm x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      Perm y = perm_mul(x, g);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen.size();
}

// isometries of a definite lattice by brute force over images of the basis among short vectors
std::size_t brute_isometries(const Lattice& L) {
  std::size_t n = L.rank();
  std::vector<std::vector<RatVec>> cand(n);
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n);
    e[i] = 1;
    cand[i] = vectors_with_norm(L, RatVec(n), Rat(L.norm(e)), NormMode::Equal);
  }
  std::size_t count = 0;
  std::vector<RatVec> img(n);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      ++count;
      return;
    }
    for (const auto& v : cand[k]) {
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = L.pair(v, img[j]) == L.gram()(k, j);
      if (!ok) continue;
      img[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
  return count;
}

}  // namespace

TEST_CASE("permutation arithmetic") {
  Perm a = cycle(5, {0, 1, 2}), b = cycle(5, {2, 3});
  CHECK(perm_mul(a, perm_inv(a)) == perm_identity(5));
  CHECK(perm_order(a) == 3);
  CHECK(perm_pow(a, 3) == perm_identity(5));
  CHECK(perm_pow(a, -1) == perm_inv(a));
  // first a then b
  CHECK(perm_mul(a, b)[1] == 3);
}

TEST_CASE("schreier-sims on small groups") {
  auto c3 = PermGroup::schreier_sims({cycle(3, {0, 1, 2})}, 3);
  CHECK(c3.order() == 3);
  std::vector<Perm> s5{cycle(5, {0, 1, 2, 3, 4}), cycle(5, {0, 1})};
  CHECK(PermGroup::schreier_sims(s5, 5).order() == 120);
  std::mt19937_64 rng(9);
  for (int it = 0; it < 20; ++it) {
    std::size_t n = 3 + rng() % 5;
    std::vector<Perm> gens;
    for (int g = 0; g < 2; ++g) {
      Perm p = perm_identity(n);
      std::shuffle(p.begin(), p.end(), rng);
      gens.push_back(p);
    }
    auto G = PermGroup::schreier_sims(gens, n);
    CHECK(G.order() == brute_order(gens, n));
    Int prod = 1;
    for (auto l : G.fundamental_orbit_lengths()) prod *= l;
    CHECK(prod == G.order());
  }
}

TEST_CASE("membership words") {
  std::vector<Perm> gens{cycle(6, {0, 1, 2, 3, 4, 5}), cycle(6, {0, 1})};
  auto G = PermGroup::schreier_sims(gens, 6);
  for (const auto& g : gens) CHECK(G.membership(g).member);
  Perm x = perm_mul(gens[0], gens[1]);
  auto m = G.membership(x);
  REQUIRE(m.member);
  CHECK(evaluate_word(m.word, G.generators(), 6) == x);
  auto A = PermGroup::schreier_sims({cycle(4, {0, 1, 2}), cycle(4, {1, 2, 3})}, 4);
  CHECK(A.order() == 12);
  CHECK(!A.membership(cycle(4, {0, 1})).member);
}

TEST_CASE("line group of the Fermat quartic") {
  auto& ctx = k3test::ctx();
  const auto& G = ctx.pgu_group();
  CHECK(G.order() == Int("13063680"));
  CHECK(G.orbit(0).size() == 112);
  auto stab = PermGroup::schreier_sims(G.first_stabilizer_generators(), G.degree());
  CHECK(stab.order() == Int("116640"));
  CHECK(stab.order() * 112 == G.order());
  for (const auto& s : G.first_stabilizer_generators()) CHECK(s[G.base()[0]] == G.base()[0]);
  CHECK(!G.membership(frobenius_permutation(ctx.config())).member);
}

TEST_CASE("orbits of dual vectors") {
  auto& ctx = k3test::ctx();
  const auto& gens = ctx.generators();
  const auto& fx = ctx.fixtures();
  auto h = matrix_orbit(fx.vec("h0"), gens.pgu, 10);
  CHECK(h.elements.size() == 1);
  const auto& tab = ctx.tables();
  CHECK(tab.w648.elements.size() == 648);
  CHECK(tab.w5184.elements.size() == 5184);
  for (const auto* T : {&tab.w648, &tab.w5184}) {
    for (std::size_t e = 0; e < T->elements.size(); e += 7) {
      RatVec x = T->seed;
      for (const auto& l : T->word(static_cast<int>(e))) x = x * to_rat(l.exp > 0 ? gens.pgu[l.gen] : gens.pgu_inv[l.gen]);
      CHECK(x == T->elements[e]);
      CHECK(T->find(x) == std::optional<int>(static_cast<int>(e)));
    }
  }
  CHECK_THROWS_AS(matrix_orbit(fx.vec("b1"), gens.pgu, 100), Error);
}

TEST_CASE("isometry groups of small definite lattices") {
  Lattice r1(imat({{-2}}));
  CHECK(isometries_of_definite(r1).size() == 2);
  Lattice A2(k3test::a2());
  auto iso = isometries_of_definite(A2);
  CHECK(iso.size() == 12);
  CHECK(brute_isometries(A2) == 12);
  for (const auto& g : iso) CHECK(g * A2.gram() * transpose(g) == A2.gram());
  Lattice T(k3test::ctx().fixtures().T);
  CHECK(isometries_of_definite(T).size() == 288);
  CHECK(brute_isometries(T) == 288);
  std::mt19937_64 rng(4);
  for (int it = 0; it < 10; ++it) {
    Lattice L(k3test::random_definite(rng, 1 + rng() % 3, 1));
    CHECK(isometries_of_definite(L).size() == brute_isometries(L));
  }
}

TEST_CASE("discriminant action") {
  Lattice T(k3test::ctx().fixtures().T);
  auto iso = isometries_of_definite(T);
  auto da = discriminant_action(T, iso);
  CHECK(da.target_order == 8);
  CHECK(da.surjective);
  CHECK(288 % da.image_order == 0);
  Lattice e8(k3test::e8_negative());
  auto d1 = discriminant_action(e8, {IntMatrix::identity(8)});
  CHECK(d1.target_order == 1);
  CHECK(d1.surjective);
}
