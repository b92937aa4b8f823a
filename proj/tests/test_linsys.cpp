#include "support.hpp"

using namespace k3;

namespace {

GF81 pw(GF81 x, int e) {
  GF81 r(kOne9);
  while (e-- > 0) r = r * x;
  return r;
}

GF81 eval_affine(const Poly& p, GF81 w, GF81 x, GF81 y) {
  GF81 s;
  for (const auto& [m, c] : p.terms()) s = s + GF81(c) * pw(w, Poly::ew(m)) * pw(x, Poly::ex(m)) * pw(y, Poly::ey(m));
  return s;
}

// p vanishes at every affine F81-point of the line
bool vanishes_on_line(const Poly& p, const ProjLine& l) {
  const auto& R = l.rows();
  for (int u = 0; u < 81; ++u)
    for (int v = 0; v < 81; ++v) {
      GF81 a = GF81::from_index(u), b = GF81::from_index(v);
      std::array<GF81, 4> pt;
      for (int k = 0; k < 4; ++k) pt[k] = a * GF81(R[0][k]) + b * GF81(R[1][k]);
      if (pt[3].is_zero()) continue;
      GF81 zi = pt[3].inverse();
      if (!eval_affine(p, pt[0] * zi, pt[1] * zi, pt[2] * zi).is_zero()) return false;
    }
  return true;
}

// formal partial derivative of a ternary form
TernaryForm partial(const TernaryForm& f, int var) {
  TernaryForm d;
  for (const auto& [e, c] : f.terms) {
    int k = e[var] % 3;
    if (k == 0) continue;
    auto e2 = e;
    e2[var] -= 1;
    d.terms[e2] = c * GF9::make(k, 0);
  }
  return d;
}

// all points of P²(F81) where f and its gradient vanish
std::set<std::array<GF81, 3>> brute_singular(const TernaryForm& f) {
  std::set<std::array<GF81, 3>> out;
  TernaryForm d[3] = {partial(f, 0), partial(f, 1), partial(f, 2)};
  auto test = [&](const std::array<GF81, 3>& p) {
    if (!f.eval(p).is_zero()) return;
    for (const auto& g : d)
      if (!g.terms.empty() && !g.eval(p).is_zero()) return;
    out.insert(p);
  };
  GF81 one(kOne9);
  for (int a = 0; a < 81; ++a)
    for (int b = 0; b < 81; ++b) test({one, GF81::from_index(a), GF81::from_index(b)});
  for (int b = 0; b < 81; ++b) test({GF81(), one, GF81::from_index(b)});
  test({GF81(), GF81(), one});
  return out;
}

Multiplicities base_locus_of(const std::vector<std::string>& names) {
  auto& ctx = k3test::ctx();
  HomogeneousMap m;
  for (const auto& n : names) m.push_back(homogenize(ctx.fixtures().poly(n)));
  Multiplicities a;
  for (int k : base_locus(ctx.config().lines, m)) a[k] = 1;
  return a;
}

std::vector<NFPoly> fixture_polys(const std::vector<std::string>& names) {
  std::vector<NFPoly> out;
  for (const auto& n : names) out.push_back(NFPoly::from_terms(k3test::ctx().fixtures().poly(n)));
  return out;
}

IntVec decomposition_sum(const Multiplicities& a) {
  const auto& cfg = k3test::ctx().config();
  IntVec s(22);
  for (const auto& [k, c] : a) s = s + scale(Int(c), cfg.classes[k]);
  return s;
}

Mat9 frob_t(const Mat9& m) {
  Mat9 t(m[0].size(), std::vector<GF9>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j].frob();
  return t;
}

Mat9 mul9(const Mat9& a, const Mat9& b) {
  Mat9 c(a.size(), std::vector<GF9>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

const TermList kSmooth = {{0, 0, 6, kOne9}, {0, 1, 5, kOne9}, {0, 6, 0, kOne9}, {5, 0, 1, kOne9}};

}  // namespace

TEST_CASE("polynomial arithmetic and normal forms") {
  Poly w = Poly::term(kOne9, 1, 0, 0), x = Poly::term(kOne9, 0, 1, 0);
  CHECK((w * x - x * w).is_zero());
  CHECK((w + x).degree() == 1);
  CHECK(Poly::greater(Poly::mono(0, 2, 0), Poly::mono(1, 0, 0)));
  CHECK(Poly::greater(Poly::mono(1, 1, 0), Poly::mono(0, 2, 0)));
  NFPoly w4 = NFPoly(w).pow(4);
  CHECK(w4 == NFPoly(w4.poly() + fermat_affine()));
  CHECK(w4.poly().w_degree() <= 3);
  CHECK(NFPoly(fermat_affine()).is_zero());
  Poly p = Poly::term(GF9::i(), 1, 0, 0) + Poly::constant(kOne9);
  CHECK(p.frobenius() == Poly::term(-GF9::i(), 1, 0, 0) + Poly::constant(kOne9));
}

TEST_CASE("groebner bases") {
  // (x² - y, xy - 1) in F9[w,x,y]
  Poly x = Poly::term(kOne9, 0, 1, 0), y = Poly::term(kOne9, 0, 0, 1);
  Poly f = x * x - y, g = x * y - Poly::constant(kOne9);
  auto gb = groebner_basis({f, g});
  CHECK(reduce(f, gb).is_zero());
  CHECK(reduce(g, gb).is_zero());
  CHECK(reduce(y * y * y - Poly::constant(kOne9), gb).is_zero());
  CHECK(!reduce(y - Poly::constant(kOne9), gb).is_zero());
  auto gb2 = groebner_basis({g, f, f * x});
  CHECK(gb2 == gb);
  for (const auto& b : gb) CHECK(b.lead_coef() == kOne9);
}

TEST_CASE("ideal of a line against point evaluation") {
  auto& ctx = k3test::ctx();
  const auto& lines = ctx.config().lines;
  std::mt19937_64 rng(41);
  for (int it = 0; it < 12; ++it) {
    const auto& l = lines[rng() % lines.size()];
    auto gb = line_power_ideal(l, 1);
    auto eq = l.equations();
    Poly e0 = Poly::affine_linear(eq[0]), e1 = Poly::affine_linear(eq[1]);
    CHECK(reduce(e0, gb).is_zero());
    CHECK(reduce(e1 * e1 * Poly::term(kOne9, 0, 1, 0), gb).is_zero());
    for (int s = 0; s < 6; ++s) {
      Poly p;
      for (int t = 0; t < 4; ++t) {
        int a = rng() % 3, b = rng() % 3, c = rng() % 3;
        p = p + Poly::term(GF9::from_index(static_cast<int>(rng() % 9)), a, b, c);
      }
      if (rng() % 2) p = p * e0;
      CHECK(reduce(p, gb).is_zero() == vanishes_on_line(p, l));
    }
    auto gb2 = line_power_ideal(l, 2);
    CHECK(reduce(e0 * e1, gb2).is_zero());
    CHECK(!reduce(e0, gb2).is_zero());
  }
}

TEST_CASE("trivial linear systems") {
  auto& ctx = k3test::ctx();
  const auto& cfg = ctx.config();
  CHECK(gamma_space(cfg.lines, 0, {}).dim() == 1);
  CHECK(gamma_space(cfg.lines, 1, {}).dim() == 4);
  CHECK(effective_decomposition(cfg, ctx.h0(), ctx.h0(), 1).empty());
  CHECK_THROWS_AS(effective_decomposition(cfg, ctx.h0(), scale(Int(2), ctx.h0()), 1), Error);
}

TEST_CASE("dimensions of linear systems") {
  auto& ctx = k3test::ctx();
  const auto& cfg = ctx.config();
  IntVec h0 = ctx.h0();
  struct Case {
    const char* name;
    int d;
    std::size_t dim;
  };
  for (const auto& c : {Case{"m1", 3, 3}, Case{"m2", 5, 3}, Case{"h1", 6, 4}, Case{"h2", 15, 4}}) {
    CAPTURE(c.name);
    IntVec v = ctx.vec22(c.name);
    auto a = effective_decomposition(cfg, h0, v, c.d);
    CHECK(decomposition_sum(a) == scale(Int(c.d), h0) - v);
    CHECK(gamma_space(cfg.lines, c.d, a).dim() == c.dim);
  }
  // a decomposition with multiplicities at most 4 exists and gives the same dimension
  auto a2 = effective_decompositions(cfg, h0, ctx.vec22("h2"), 15, 1, 4);
  REQUIRE(a2.size() == 1);
  int mx = 0;
  for (const auto& [k, m] : a2[0]) mx = std::max(mx, m);
  CHECK(mx == 4);
  CHECK(gamma_space(cfg.lines, 15, a2[0]).dim() == 4);
}

TEST_CASE("m1 space from the fixture base locus") {
  auto& ctx = k3test::ctx();
  const auto& cfg = ctx.config();
  auto a = base_locus_of({"F10", "F11", "F12"});
  CHECK(a.size() == 6);
  CHECK(decomposition_sum(a) == scale(Int(3), ctx.h0()) - ctx.vec22("m1"));
  auto sp = gamma_space(cfg.lines, 3, a);
  CHECK(sp.dim() == 3);
  for (const auto& f : fixture_polys({"F10", "F11", "F12"})) CHECK(sp.contains(f));
  Multiplicities a3, a6;
  for (const auto& [k, v] : a) a3[k] = 3 * v, a6[k] = 6 * v;
  CHECK(gamma_space(cfg.lines, 9, a3).dim() == 11);
  CHECK(gamma_space(cfg.lines, 18, a6).dim() == 38);
}

TEST_CASE("different decompositions give the same map") {
  auto& ctx = k3test::ctx();
  const auto& cfg = ctx.config();
  IntVec h0 = ctx.h0();
  for (auto [name, d] : std::vector<std::pair<std::string, int>>{{"m1", 3}, {"m2", 5}, {"h1", 6}}) {
    CAPTURE(name);
    auto all = effective_decompositions(cfg, h0, ctx.vec22(name), d, 3);
    REQUIRE(all.size() >= 2);
    auto s0 = gamma_space(cfg.lines, d, all[0]), s1 = gamma_space(cfg.lines, d, all[1]);
    CHECK(s0.dim() == s1.dim());
    CHECK(same_linear_system(s0, s1));
    CHECK(same_linear_system(s0, s0));
  }
  // spaces from different classes do not define the same map
  auto m1 = gamma_space(cfg.lines, 3, effective_decomposition(cfg, h0, ctx.vec22("m1"), 3));
  auto lin = gamma_space(cfg.lines, 1, {});
  LinSysSpace three = lin;
  three.basis.pop_back();
  CHECK(!same_linear_system(m1, three));
}

TEST_CASE("polarization tests") {
  auto& ctx = k3test::ctx();
  const auto& fx = ctx.fixtures();
  Lattice S(fx.N);
  const RatVec& h0 = fx.vec("h0");
  CHECK(polarization_test(S, h0, h0, 4));
  CHECK(polarization_test(S, h0, fx.vec("m1"), 2));
  CHECK(polarization_test(S, h0, fx.vec("m2"), 2));
  CHECK(polarization_test(S, h0, fx.vec("h1"), 4));
  CHECK(polarization_test(S, h0, fx.vec("h2"), 4));
  CHECK(!polarization_test(S, h0, h0, 2));
  RatVec l1 = to_rat(ctx.config().classes[0]);
  // h0 + l1 has square 4 but pairs negatively with l1
  CHECK(!polarization_test(S, h0, h0 + l1, 4));
}

TEST_CASE("contracted root systems") {
  auto& ctx = k3test::ctx();
  const auto& fx = ctx.fixtures();
  Lattice S(fx.N);
  auto c1 = contracted_classes(S, fx.vec("h0"), fx.vec("m1"));
  CHECK(c1.type.str() == "6A1+4A2");
  CHECK(c1.simple_count() == 14);
  CHECK(c1.type.rank() == 14);
  CHECK(c1.combination_property);
  CHECK(c1.positive_roots.size() == 18);
  auto c2 = contracted_classes(S, fx.vec("h0"), fx.vec("m2"));
  CHECK(c2.type.str() == "A1+A2+2A3+2A4");
  CHECK(c2.simple_count() == 17);
  CHECK(c2.combination_property);
  for (const auto* c : {&c1, &c2})
    for (const auto& chain : c->components)
      for (std::size_t k = 0; k + 1 < chain.size(); ++k) CHECK(S.pair(chain[k], chain[k + 1]) == 1);
}

TEST_CASE("double plane models") {
  auto& ctx = k3test::ctx();
  const auto& fx = ctx.fixtures();
  const auto& cfg = ctx.config();
  auto F = fixture_polys({"F10", "F11", "F12"});
  NFPoly G1 = NFPoly::from_terms(fx.poly("G1"));
  TernaryForm f1 = TernaryForm::from_terms(fx.poly("f1"));
  CHECK((G1 * G1 + substitute(f1, F)).is_zero());
  Multiplicities a3;
  for (const auto& [k, v] : base_locus_of({"F10", "F11", "F12"})) a3[k] = 3 * v;
  auto s3 = gamma_space(cfg.lines, 9, a3);
  CHECK(s3.contains(G1));
  auto dp = double_plane_model(F, s3);
  CHECK((dp.G * dp.G + substitute(dp.f, F)).is_zero());
  CHECK(proportional(dp.f, f1));

  // F ← F·C with C = [[1,1,0],[0,1,0],[0,i,1]]
  std::vector<NFPoly> Fc = {F[0], F[0] + F[1] + F[2].scaled(GF9::i()), F[2]};
  auto dc = double_plane_model(Fc, s3);
  CHECK((dc.G * dc.G + substitute(dc.f, Fc)).is_zero());
  // f′(x·C) = λ·f(x)
  GF81 ratio;
  bool ok = true;
  for (int a = 0; a < 81 && ok; a += 5)
    for (int b = 0; b < 81 && ok; b += 3) {
      std::array<GF81, 3> x{GF81(kOne9), GF81::from_index(a), GF81::from_index(b)};
      std::array<GF81, 3> y{x[0], x[0] + x[1] + GF81(GF9::i()) * x[2], x[2]};
      GF81 u = dc.f.eval(y), v = f1.eval(x);
      if (ratio.is_zero() && !v.is_zero()) ratio = u / v;
      ok = u == ratio * v;
    }
  CHECK(ok);

  auto F2 = fixture_polys({"F20", "F21", "F22"});
  Multiplicities b3;
  for (const auto& [k, v] : base_locus_of({"F20", "F21", "F22"})) b3[k] = 3 * v;
  auto t3 = gamma_space(cfg.lines, 15, b3);
  auto dp2 = double_plane_model(F2, t3);
  CHECK((dp2.G * dp2.G + substitute(dp2.f, F2)).is_zero());
  CHECK(proportional(dp2.f, TernaryForm::from_terms(fx.poly("f2"))));
}

TEST_CASE("singular points of sextics") {
  auto& ctx = k3test::ctx();
  const auto& fx = ctx.fixtures();
  TernaryForm smooth = TernaryForm::from_terms(kSmooth);
  CHECK(is_reduced(smooth));
  CHECK(brute_singular(smooth).empty());
  CHECK(singular_points_of_sextic(smooth).empty());

  for (auto [name, count] : std::vector<std::pair<std::string, std::size_t>>{{"f1", 10}, {"f2", 6}}) {
    TernaryForm f = TernaryForm::from_terms(fx.poly(name));
    CHECK(is_reduced(f));
    auto sp = singular_points_of_sextic(f);
    CHECK(sp.size() == count);
    std::set<std::array<GF81, 3>> got;
    for (const auto& p : sp) got.insert(p.point);
    CHECK(got == brute_singular(f));
  }
  std::map<std::string, int> t1;
  for (const auto& p : singular_points_of_sextic(TernaryForm::from_terms(fx.poly("f1")))) t1[p.type()]++;
  CHECK(t1 == std::map<std::string, int>{{"A1", 6}, {"A2", 4}});
  std::map<std::string, int> t2;
  for (const auto& p : singular_points_of_sextic(TernaryForm::from_terms(fx.poly("f2")))) t2[p.type()]++;
  CHECK(t2 == std::map<std::string, int>{{"A1", 1}, {"A2", 1}, {"A3", 2}, {"A4", 2}});

  // a square is not reduced
  TernaryForm cube = TernaryForm::from_terms({{6, 0, 0, kOne9}, {0, 6, 0, kOne9}, {0, 0, 6, kOne9}});
  CHECK(!is_reduced(cube));
  CHECK_THROWS_AS(singular_points_of_sextic(cube), Error);
}

TEST_CASE("isometry induced by a map") {
  auto& ctx = k3test::ctx();
  const auto& cfg = ctx.config();
  const auto& fx = ctx.fixtures();
  std::vector<NFPoly> id = {NFPoly(Poly::term(kOne9, 1, 0, 0)), NFPoly(Poly::term(kOne9, 0, 1, 0)),
                            NFPoly(Poly::term(kOne9, 0, 0, 1)), NFPoly(Poly::constant(kOne9))};
  CHECK(induced_isometry_of_map(cfg, id) == IntMatrix::identity(22));

  auto H = fixture_polys({"H10", "H11", "H12", "H13"});
  NFPoly s;
  for (const auto& h : H) s = s + h.pow(4);
  CHECK(s.is_zero());
  IntMatrix A = induced_isometry_of_map(cfg, H);
  IntVec h0 = ctx.h0();
  CHECK(A * A == IntMatrix::identity(22));
  CHECK(A * cfg.N * transpose(A) == cfg.N);
  CHECK(A == fx.matrices.at("A1"));
  RatVec b = scale(Rat(1, 3), to_rat(h0 * A) - to_rat(h0));
  CHECK(ctx.tables().w648.find(b).has_value());
  CHECK(Lattice(cfg.N).pair(h0 * A, h0) == 10);
  for (const auto& c : cfg.classes) CHECK(Lattice(cfg.N).norm(c * A) == -2);

  // a projective linear map permutes the line classes
  const auto& g = ctx.pgu()[0];
  std::vector<NFPoly> lin;
  for (int col = 0; col < 4; ++col) {
    std::array<GF9, 4> e;
    for (int r = 0; r < 4; ++r) e[r] = g.matrix[r][col];
    lin.push_back(NFPoly(Poly::affine_linear(e)));
  }
  IntMatrix M = induced_isometry_of_map(cfg, lin);
  std::set<IntVec> cls(cfg.classes.begin(), cfg.classes.end()), img;
  for (const auto& c : cfg.classes) img.insert(c * M);
  CHECK(img == cls);
  CHECK(M == g.isometry);
}

TEST_CASE("eigenspace involutions") {
  auto& ctx = k3test::ctx();
  const auto& fx = ctx.fixtures();
  Lattice S(fx.N);
  IntVec h0 = ctx.h0();
  for (auto [m, b, tbl, k] : std::vector<std::tuple<std::string, std::string, std::string, long>>{
           {"m1", "b1", "A1", 3}, {"m2", "b2", "A2", 9}}) {
    auto cc = contracted_classes(S, fx.vec("h0"), fx.vec(m));
    IntMatrix A = involution_from_eigenspaces(S, fx.vec(m), cc);
    CHECK(A == involution_from_eigenspaces(S, fx.vec(m), cc));
    CHECK(A * A == IntMatrix::identity(22));
    CHECK(A * fx.N * transpose(A) == fx.N);
    CHECK(fx.vec(b) * to_rat(A) == scale(Rat(-1), fx.vec(b)));
    CHECK(to_rat(h0 * A) == to_rat(h0) + scale(Rat(k), fx.vec(b)));
    CHECK(A == fx.matrices.at(tbl));
  }
}

TEST_CASE("hermitian normalization of a quartic relation") {
  auto& ctx = k3test::ctx();
  const auto& cfg = ctx.config();
  std::vector<NFPoly> id = {NFPoly(Poly::term(kOne9, 1, 0, 0)), NFPoly(Poly::term(kOne9, 0, 1, 0)),
                            NFPoly(Poly::term(kOne9, 0, 0, 1)), NFPoly(Poly::constant(kOne9))};
  auto t = hermitian_quartic_relation(id);
  Mat9 I(4, std::vector<GF9>(4));
  for (int k = 0; k < 4; ++k) I[k][k] = kOne9;
  CHECK(t.a == I);
  CHECK(t.B == I);

  // rescaling one element rescales a row by c and a column by c³, up to one scalar
  GF9 c = GF9::make(1, 1);
  auto sc = id;
  sc[1] = sc[1].scaled(c);
  auto u = hermitian_quartic_relation(sc);
  GF9 lam = u.a[0][0];
  REQUIRE(!lam.is_zero());
  GF9 ci = c.inverse();
  CHECK(u.a[1][1] == lam * ci * ci.frob());

  IntVec h0 = ctx.h0();
  IntVec h1 = ctx.vec22("h1");
  auto a = effective_decomposition(cfg, h0, h1, 6);
  auto sp = gamma_space(cfg.lines, 6, a);
  REQUIRE(sp.dim() == 4);
  auto r = hermitian_quartic_relation(sp.basis);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(r.a[j][i] == r.a[i][j].frob());
  CHECK(mul9(r.B, frob_t(r.B)) == r.a);
  NFPoly s;
  for (const auto& h : r.corrected) s = s + h.pow(4);
  CHECK(s.is_zero());
  for (std::size_t j = 0; j < 4; ++j) {
    NFPoly x;
    for (std::size_t i = 0; i < 4; ++i) x = x + sp.basis[i].scaled(r.B[i][j]);
    CHECK(x == r.corrected[j]);
  }
  IntMatrix A = induced_isometry_of_map(cfg, r.corrected);
  CHECK(A * cfg.N * transpose(A) == cfg.N);
  CHECK(h0 * to_int(inverse(to_rat(A))) == h1);
}
