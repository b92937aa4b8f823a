#include "support.hpp"

using namespace k3;

namespace {

// every F9-point of P³ as a normalized tuple
std::vector<Point3> all_points() {
  std::vector<Point3> out;
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b)
      for (int c = 0; c < 9; ++c)
        for (int d = 0; d < 9; ++d) {
          Point3 p{GF9::from_index(a), GF9::from_index(b), GF9::from_index(c), GF9::from_index(d)};
          if (a + b + c + d == 0 || normalize(p) != p) continue;
          out.push_back(p);
        }
  return out;
}

}  // namespace

TEST_CASE("F9 arithmetic") {
  GF9 i = GF9::i();
  CHECK(i * i == -kOne9);
  for (int e = 1; e < 9; ++e) {
    GF9 x = GF9::from_index(e);
    CHECK(x * x.inverse() == kOne9);
    CHECK(x.pow(8) == kOne9);
    CHECK(x.frob() == x.pow(3));
  }
  GF81 j(kZero9, kOne9);
  CHECK(j * j == GF81(kOne9 + i));
  for (int e = 1; e < 81; ++e) CHECK(GF81::from_index(e) * GF81::from_index(e).inverse() == GF81(kOne9));
}

TEST_CASE("line census by brute force") {
  auto sc = enumerate_lines_on_fermat();
  CHECK(sc.lines.size() == 112);
  CHECK(sc.scanned == 7462);
  CHECK(sc.scanned == (81 + 1) * (81 + 9 + 1));

  auto pts = all_points();
  CHECK(pts.size() == 820);
  std::vector<Point3> surf;
  for (const auto& p : pts) {
    GF9 s = kZero9;
    for (auto x : p) s += x.pow(4);
    if (s.is_zero()) surf.push_back(p);
  }
  CHECK(surf.size() == 280);
  CHECK(surface_points().size() == 280);
  for (const auto& l : sc.lines) {
    int on = 0;
    for (const auto& p : surf) on += l.contains(p);
    CHECK(on == 10);
  }
  std::size_t incidences = 0;
  for (const auto& p : surf) {
    int n = 0;
    for (const auto& l : sc.lines) n += l.contains(p);
    CHECK(n == 4);
    incidences += n;
  }
  CHECK(incidences == 112 * 10);
}

TEST_CASE("line canonical form does not depend on the spanning rows") {
  auto sc = enumerate_lines_on_fermat();
  std::mt19937_64 rng(5);
  for (const auto& l : sc.lines) {
    auto p = l.points();
    std::size_t a = rng() % 10, b = (a + 1 + rng() % 9) % 10;
    CHECK(ProjLine::from_rows(p[b], p[a]) == l);
    CHECK(ProjLine::from_rows(p[b], p[a]).key() == l.key());
  }
  auto again = enumerate_lines_on_fermat();
  CHECK(again.lines == sc.lines);
  CHECK(std::is_sorted(sc.lines.begin(), sc.lines.end()) == std::is_sorted(again.lines.begin(), again.lines.end()));
}

TEST_CASE("intersection matrix") {
  auto& ctx = k3test::ctx();
  const auto& I = ctx.intersections();
  RatMatrix M(112, 112);
  for (int a = 0; a < 112; ++a) {
    CHECK(I[a][a] == -2);
    for (int b = 0; b < 112; ++b) {
      CHECK(I[a][b] == I[b][a]);
      if (a != b) CHECK(I[a][b] == (lines_meet(ctx.scan().lines[a], ctx.scan().lines[b]) ? 1 : 0));
      M(a, b) = I[a][b];
    }
  }
  CHECK(rank(M) == 22);
}

TEST_CASE("frame and classes of lines") {
  auto& ctx = k3test::ctx();
  const auto& cfg = ctx.config();
  const auto& fx = ctx.fixtures();
  CHECK(ctx.frame().unique());
  CHECK(determinant(cfg.N) == -9);
  for (int i = 0; i < 22; ++i) {
    IntVec e(22);
    e[i] = 1;
    CHECK(class_of_line(cfg, cfg.basis[i]) == e);
  }
  Lattice S(cfg.N);
  RatVec h0 = fx.vec("h0");
  CHECK(h0 * to_rat(cfg.N) == RatVec(22, Rat(1)));
  RatVec sum(22);
  for (const auto& c : cfg.classes) {
    CHECK(S.norm(c) == -2);
    CHECK(S.pair(to_rat(c), h0) == 1);
    sum = sum + to_rat(c);
  }
  CHECK(scale(Rat(1, 28), sum) == h0);
  // the plane w + (1+i)z = 0 cuts out four lines summing to h0
  IntVec plane(22);
  int inplane = 0;
  for (std::size_t k = 0; k < cfg.lines.size(); ++k) {
    bool all = true;
    for (const auto& p : cfg.lines[k].points()) all = all && (p[0] + GF9::make(1, 1) * p[3]).is_zero();
    if (all) {
      ++inplane;
      plane = plane + cfg.classes[k];
    }
  }
  CHECK(inplane == 4);
  CHECK(to_rat(plane) == h0);
}

TEST_CASE("PGU generators act compatibly on lines and classes") {
  auto& ctx = k3test::ctx();
  const auto& cfg = ctx.config();
  IntVec h0 = ctx.h0();
  for (const auto& g : ctx.pgu()) {
    CHECK(is_unitary(g.matrix));
    CHECK(g.isometry * cfg.N * transpose(g.isometry) == cfg.N);
    CHECK(h0 * g.isometry == h0);
    for (int l = 0; l < 112; ++l) CHECK(cfg.classes[g.perm[l]] == cfg.classes[l] * g.isometry);
  }
  CHECK(ctx.pgu_group().order() == Int("13063680"));
}

TEST_CASE("Frobenius on lines") {
  auto& ctx = k3test::ctx();
  const auto& cfg = ctx.config();
  IntMatrix F = frobenius_isometry(cfg);
  CHECK(F * F == IntMatrix::identity(22));
  CHECK(F == ctx.fixtures().matrices.at("AF"));
  Perm p = frobenius_permutation(cfg);
  for (int l = 0; l < 112; ++l) {
    CHECK(cfg.lines[p[l]] == cfg.lines[l].frobenius());
    CHECK(cfg.classes[p[l]] == cfg.classes[l] * F);
  }
  // basis label 1 goes to label 6
  const auto& labels = ctx.fixtures().basis_labels;
  auto pos = [&](int label) { return std::find(labels.begin(), labels.end(), label) - labels.begin(); };
  if (pos(1) < 22 && pos(6) < 22) CHECK(p[cfg.basis[pos(1)]] == cfg.basis[pos(6)]);
}

TEST_CASE("base locus and contracted images") {
  auto& ctx = k3test::ctx();
  const auto& fx = ctx.fixtures();
  const auto& lines = ctx.config().lines;
  // identity map has no base locus
  HomogeneousMap id;
  for (int k = 0; k < 4; ++k) {
    HomogeneousPoly p;
    std::array<int, 4> e{};
    e[k] = 1;
    p.terms.push_back({e, kOne9});
    id.push_back(p);
  }
  CHECK(base_locus(lines, id).empty());
  for (const auto& l : lines) CHECK(!contracted_image(l, id).has_value());
  HomogeneousMap m1;
  for (auto n : {"F10", "F11", "F12"}) m1.push_back(homogenize(fx.poly(n)));
  CHECK(base_locus(lines, m1).size() == 6);
}
