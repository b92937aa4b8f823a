#include "support.hpp"

using namespace k3;
using k3test::imat;

namespace {

IntMatrix rows_of(const IntMatrix& m, std::size_t from, std::size_t to) {
  IntMatrix r(to - from, m.cols());
  for (std::size_t i = from; i < to; ++i) r.set_row(i - from, m.row(i));
  return r;
}

// all x in L∨/L by brute force over x = c·G⁻¹ with 0 ≤ c_i < |det|
std::set<RatVec> dual_cosets(const Lattice& L) {
  std::set<RatVec> out;
  RatMatrix Gi = L.gram_inverse();
  long d = Int(abs(L.det())).get_si();
  std::size_t n = L.rank();
  std::vector<long> c(n, 0);
  for (;;) {
    RatVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = c[i];
    x = x * Gi;
    for (auto& t : x) t = mod_rat(t, 1);
    out.insert(x);
    std::size_t k = 0;
    while (k < n && ++c[k] == d) c[k++] = 0;
    if (k == n) break;
  }
  return out;
}

}  // namespace

TEST_CASE("discriminant form of unimodular and A2+A2") {
  auto u = discriminant_form(Lattice(imat({{0, 1}, {1, 0}})));
  CHECK(u.order() == 1);
  CHECK(u.gens.empty());

  Lattice T(k3test::ctx().fixtures().T);
  auto df = discriminant_form(T);
  CHECK(df.order() == 9);
  REQUIRE(df.orders.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(df.orders[i] == 3);
    CHECK((df.q[i] == Rat(4, 3) || df.q[i] == Rat(2, 3)));
  }
  // brute force: nine cosets, q values {0, -2/3 (x4), -4/3 (x4)} mod 2
  auto cosets = dual_cosets(T);
  CHECK(cosets.size() == 9);
  std::map<Rat, int> qs;
  for (const auto& x : cosets) qs[mod_rat(T.norm(x), 2)]++;
  CHECK(qs == std::map<Rat, int>{{Rat(0), 1}, {Rat(2, 3), 4}, {Rat(4, 3), 4}});
  for (const auto& x : cosets) CHECK(df.coordinates(x).size() == 2);
}

TEST_CASE("discriminant group of S is (Z/3)^2") {
  auto df = discriminant_form(Lattice(k3test::ctx().fixtures().N));
  CHECK(df.orders == std::vector<Int>{3, 3});
}

TEST_CASE("overlattice construction") {
  Lattice M(k3test::a2());
  auto same = overlattice(M, {});
  CHECK(same.lattice.gram() == M.gram());

  // one coset of A2 with q = -2/3: not isotropic
  RatVec half = M.from_dual_coordinates(RatVec{Rat(1), Rat(0)});
  CHECK_THROWS_AS(overlattice(M, {half}), Error);

  const auto& gl = k3test::ctx().gluing();
  CHECK(gl.L.rank() == 26);
  CHECK(gl.L.is_even());
  CHECK(gl.L.is_unimodular());
  CHECK(gl.L.positive() == 1);
  CHECK(gl.L.negative() == 25);
  // [L : S+T]^2 = |det(S+T)| / |det L|
  CHECK(abs(gl.ST.det()) == 81 * abs(gl.L.det()));
  CHECK(discriminant_form(gl.L).order() == 1);
  // S+T ⊂ L ⊂ (S+T)∨
  for (std::size_t i = 0; i < 26; ++i) {
    RatVec e(26);
    e[i] = 1;
    CHECK(is_integral(gl.in_L(e)));
    CHECK(gl.ST.in_dual(gl.from_L(e)));
  }
}

TEST_CASE("complements inside the glued lattice") {
  const auto& gl = k3test::ctx().gluing();
  IntMatrix emb = gl.over.embedding.basis;
  auto s_emb = make_embedding(gl.L, rows_of(emb, 0, 22), &gl.S);
  CHECK(s_emb.primitive);
  auto c = orthogonal_complement(gl.L, s_emb);
  CHECK(c.lattice.rank() == 4);
  CHECK(c.lattice.negative() == 4);
  CHECK(abs(c.lattice.det()) == 9);
  CHECK(isometries_of_definite(c.lattice).size() == 288);
  CHECK(vectors_with_norm(c.lattice, RatVec(4), Rat(-2), NormMode::Equal).size() == 12);
  // complement of the complement contains S
  auto cc = orthogonal_complement(gl.L, c.embedding);
  CHECK(cc.lattice.rank() == 22);
  for (std::size_t i = 0; i < 22; ++i) {
    RatVec coords = project(gl.L, cc.embedding, to_rat(s_emb.basis.row(i)));
    CHECK(is_integral(coords));
  }

  auto full = orthogonal_complement(gl.L, make_embedding(gl.L, IntMatrix::identity(26)));
  CHECK(full.lattice.rank() == 0);
}

TEST_CASE("complement of U is a rank 24 unimodular definite lattice") {
  auto& ctx = k3test::ctx();
  const auto& gl = ctx.gluing();
  IntVec w = to_int(gl.in_L(ctx.fixtures().vec("w0")));
  IntVec wp = to_int(gl.in_L(ctx.fixtures().vec("w0prime")));
  auto chk = is_weyl_vector(gl.L, w, &wp);
  const auto& C = chk.complement.lattice;
  CHECK(C.rank() == 24);
  CHECK(C.negative() == 24);
  CHECK(C.is_unimodular());
  // LLL-reduced minimum is the Leech minimum
  IntMatrix B = lll_reduce(C.gram());
  IntMatrix R = B * C.gram() * transpose(B);
  Int mx = R(0, 0);
  for (std::size_t i = 0; i < 24; ++i) mx = std::max(mx, R(i, i));
  CHECK(mx <= -4);
  bool has4 = false;
  for (std::size_t i = 0; i < 24; ++i) has4 = has4 || R(i, i) == -4;
  CHECK(has4);
}

TEST_CASE("projection onto S") {
  auto& ctx = k3test::ctx();
  const auto& gl = ctx.gluing();
  const auto& fx = ctx.fixtures();
  auto s_emb = make_embedding(gl.L, rows_of(gl.over.embedding.basis, 0, 22), &gl.S);
  CHECK(project(gl.L, s_emb, gl.in_L(fx.vec("w0"))) == fx.vec("h0"));
  RatVec a1 = fx.vec("a1");
  CHECK(project(gl.L, s_emb, gl.in_L(a1)) == gl.s_part(a1));
  RatVec s3(26);
  s3[3] = 1;
  CHECK(project(gl.L, s_emb, gl.in_L(s3)) == RatVec(s3.begin(), s3.begin() + 22));
  RatVec t0(26);
  t0[22] = 1;
  CHECK(project(gl.L, s_emb, gl.in_L(t0)) == RatVec(22));
}

TEST_CASE("json round trip") {
  RatVec v{Rat(1, 3), Rat(-2, 3), Rat(0)};
  CHECK(vector_from_json(to_json_vector(v)) == v);
  IntMatrix m = imat({{1, -2}, {3, 4}});
  CHECK(int_matrix_from_json(to_json(m)) == m);
  CHECK(to_json(Lattice(imat({{2, 1}, {1, 2}})))["gram"] == nlohmann::json::parse("[[2,1],[1,2]]"));
}
