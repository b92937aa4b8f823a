#include "k3/verify.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>

namespace k3 {

using nlohmann::json;

struct Context::State {
  std::optional<Fixtures> fx;
  std::optional<LineScan> scan;
  std::optional<std::vector<std::vector<int>>> I;
  std::optional<FrameResult> frame;
  std::optional<LineConfiguration> cfg, bare;
  std::optional<std::vector<PGUGenerator>> pgu;
  std::optional<PermGroup> G;
  std::optional<Gluing> glue;
  std::optional<std::vector<LeechRoot>> lr;
  std::optional<GeneratorSet> gens;
  std::optional<ChamberTables> tab;
};

Context::Context(VerifyOptions o) : opt_(std::move(o)), s_(std::make_unique<State>()) {
  opt_.data_dir = resolve_data_dir(opt_.data_dir);
}
Context::~Context() = default;

const Fixtures& Context::fixtures() {
  if (opt_.no_fixtures) throw Error(ErrorCode::BadInput, "fixtures disabled");
  if (!s_->fx) s_->fx = load_fixtures(opt_.data_dir);
  return *s_->fx;
}

const LineScan& Context::scan() {
  if (!s_->scan) s_->scan = enumerate_lines_on_fermat();
  return *s_->scan;
}

const std::vector<std::vector<int>>& Context::intersections() {
  if (!s_->I) s_->I = intersection_matrix(scan().lines);
  return *s_->I;
}

const FrameResult& Context::frame() {
  if (!s_->frame) {
    const auto& fx = fixtures();
    s_->frame = recover_frame(scan().lines, intersections(), fx.N, fx.basis_labels, fx.pins);
  }
  return *s_->frame;
}

const LineConfiguration& Context::config() {
  if (!s_->cfg) s_->cfg = make_configuration(scan().lines, intersections(), frame().basis, fixtures().N);
  return *s_->cfg;
}

const std::vector<PGUGenerator>& Context::pgu() {
  if (!s_->pgu) s_->pgu = pgu_generators(config());
  return *s_->pgu;
}

const PermGroup& Context::pgu_group() {
  if (!s_->G) {
    // line permutations need only the line list
    if (!s_->bare) {
      LineConfiguration b;
      b.lines = scan().lines;
      for (std::size_t k = 0; k < b.lines.size(); ++k) b.index[b.lines[k].key()] = static_cast<int>(k);
      s_->bare = std::move(b);
    }
    std::vector<Perm> ps;
    for (const auto& m : pgu_generator_matrices()) ps.push_back(line_permutation(*s_->bare, m));
    s_->G = PermGroup::schreier_sims(ps, scan().lines.size(), {0});
  }
  return *s_->G;
}

const Gluing& Context::gluing() {
  if (!s_->glue) {
    const auto& fx = fixtures();
    s_->glue = glue_lattices(fx.N, fx.T, {fx.vec("a1"), fx.vec("a2")});
  }
  return *s_->glue;
}

const std::vector<LeechRoot>& Context::leech_roots() {
  if (!s_->lr) s_->lr = leech_roots_restricted(gluing(), fixtures().vec("w0"), opt_.jobs);
  return *s_->lr;
}

const GeneratorSet& Context::generators() {
  if (!s_->gens) {
    const auto& fx = fixtures();
    s_->gens = make_generator_set(config(), fx.matrices.at("A1"), fx.matrices.at("A2"));
  }
  return *s_->gens;
}

const ChamberTables& Context::tables() {
  if (!s_->tab) {
    const auto& fx = fixtures();
    s_->tab = make_tables(config(), generators(), fx.vec("h0"), fx.vec("b1"), fx.vec("b2"));
  }
  return *s_->tab;
}

IntVec Context::h0() { return vec22("h0"); }

IntVec Context::vec22(const std::string& name) {
  const RatVec& v = fixtures().vec(name);
  if (v.size() != fixtures().N.rows()) throw Error(ErrorCode::DimensionMismatch, name + " is not a class of S");
  return to_int(v);
}

int Report::count(const std::string& status) const {
  int n = 0;
  for (const auto& c : claims) n += c.status == status;
  return n;
}

json Report::to_json(bool timings) const {
  json cl = json::array();
  for (const auto& c : claims) {
    json j{{"id", c.id}, {"anchor", c.anchor}, {"status", c.status}, {"measured", c.measured}, {"expected", c.expected}};
    if (timings) j["wall_clock"] = c.seconds;
    cl.push_back(j);
  }
  return {{"claims", cl}, {"summary", {{"passed", passed()}, {"failed", failed()}, {"skipped", skipped()}}}};
}

GeneratorWord random_word(std::mt19937_64& rng, std::size_t max_len, bool extended, std::size_t pgu_count) {
  std::size_t len = 1 + rng() % max_len;
  std::size_t kinds = pgu_count + (extended ? 4 : 2);
  GeneratorWord w;
  for (std::size_t k = 0; k < len; ++k) {
    std::size_t c = rng() % kinds;
    Token t;
    if (c < pgu_count) {
      t.gen = Gen::Pgu;
      t.index = static_cast<int>(c);
      t.exp = rng() % 2 ? 1 : -1;
    } else {
      static const Gen extra[] = {Gen::G1, Gen::G2, Gen::Frobenius, Gen::S1};
      t.gen = extra[c - pgu_count];
    }
    w.push_back(t);
  }
  return w;
}

namespace {

// measured/expected bookkeeping for one claim
struct Checks {
  json measured = json::object(), expected = json::object();
  bool ok = true;
  bool exact = false;  // compared against transcribed tables in the recovered frame

  void eq(const std::string& k, const json& m, const json& e) {
    measured[k] = m;
    expected[k] = e;
    ok = ok && m == e;
  }
  void flag(const std::string& k, bool v) { eq(k, v, true); }
  void info(const std::string& k, const json& m) { measured[k] = m; }
};

std::string point_str(const std::vector<GF9>& p) {
  std::string s = "[";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? ":" : "") + p[k].str();
  return s + "]";
}

IntVec add_scaled(const IntVec& a, long c, const IntVec& b) {
  IntVec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += c * b[i];
  return r;
}

Multiplicities base_locus_assignment(const LineConfiguration& cfg, const Fixtures& fx,
                                     const std::vector<std::string>& names) {
  HomogeneousMap m;
  for (const auto& n : names) m.push_back(homogenize(fx.poly(n)));
  Multiplicities a;
  for (int k : base_locus(cfg.lines, m)) a[k] = 1;
  return a;
}

IntVec assignment_sum(const LineConfiguration& cfg, const Multiplicities& a) {
  IntVec s(cfg.N.rows());
  for (const auto& [k, c] : a) s = add_scaled(s, c, cfg.classes[k]);
  return s;
}

std::vector<NFPoly> nf_list(const Fixtures& fx, const std::vector<std::string>& names) {
  std::vector<NFPoly> out;
  for (const auto& n : names) out.push_back(NFPoly::from_terms(fx.poly(n)));
  return out;
}

// ---------------------------------------------------------------- criteria

void c1_lines(Context& ctx, Checks& c) {
  const auto& sc = ctx.scan();
  auto pts = surface_points();
  int pmin = 99, pmax = 0;
  for (const auto& l : sc.lines) {
    int n = 0;
    for (const auto& p : l.points()) n += on_fermat(p);
    pmin = std::min(pmin, n);
    pmax = std::max(pmax, n);
  }
  int lmin = 999, lmax = 0;
  for (const auto& p : pts) {
    int n = 0;
    for (const auto& l : sc.lines) n += l.contains(p);
    lmin = std::min(lmin, n);
    lmax = std::max(lmax, n);
  }
  c.eq("lines", sc.lines.size(), 112);
  c.eq("surface_points", pts.size(), 280);
  c.eq("points_per_line", {pmin, pmax}, {10, 10});
  c.eq("lines_per_point", {lmin, lmax}, {4, 4});
  c.info("candidates_scanned", sc.scanned);
}

// the printed example automorphism; informational only, it is not a frame pin
void example_automorphism(Context& ctx, Checks& c) {
  std::ifstream in(ctx.options().data_dir + "/example_tau.json");
  if (!in) return;
  json j = json::parse(in);
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k) m[r][k] = gf9_from_json(j["matrix"][r][k]);
  const auto& cfg = ctx.config();
  const auto& labels = ctx.fixtures().basis_labels;
  std::map<int, int> pos;
  for (std::size_t k = 0; k < labels.size(); ++k) pos[labels[k]] = cfg.basis[k];
  Perm p = line_permutation(cfg, m);
  int checked = 0, agree = 0, agree_inv = 0;
  for (const auto& e : j["images"]) {
    int a = e[0].get<int>(), b = e[1].get<int>();
    if (!pos.count(a) || !pos.count(b)) continue;
    ++checked;
    agree += p[pos[a]] == pos[b];
    agree_inv += p[pos[b]] == pos[a];
  }
  c.info("example_unitary", is_unitary(m));
  c.info("example_images_between_basis_lines", checked);
  c.info("example_images_matching", agree);
  c.info("example_images_matching_inverse", agree_inv);
}

void c2_frame(Context& ctx, Checks& c) {
  const auto& fr = ctx.frame();
  const auto& cfg = ctx.config();
  const auto& I = ctx.intersections();
  c.info("frame_solutions", fr.solutions);
  c.info("frame_unique", fr.unique());
  bool gram = true;
  for (std::size_t i = 0; i < fr.basis.size(); ++i)
    for (std::size_t j = 0; j < fr.basis.size(); ++j) {
      long e = i == j ? -2 : I[fr.basis[i]][fr.basis[j]];
      gram = gram && cfg.N(i, j) == e;
    }
  c.flag("gram_equals_N", gram);
  c.eq("det_N", determinant(cfg.N).get_si(), -9);
  RatVec ones(cfg.N.rows(), Rat(1));
  RatVec h = ones * cfg.N_inv;
  c.flag("h0_integral", is_integral(h));
  c.flag("h0_matches_fixture", h == ctx.fixtures().vec("h0"));
  RatVec sum(cfg.N.rows());
  for (const auto& cl : cfg.classes) sum = sum + to_rat(cl);
  c.flag("class_average_is_h0", scale(Rat(1, 28), sum) == h);
  c.exact = fr.unique();
  example_automorphism(ctx, c);
}

void c3_groups(Context& ctx, Checks& c) {
  const auto& G = ctx.pgu_group();
  c.eq("order", G.order().get_str(), "13063680");
  c.eq("line_orbit", G.orbit(0).size(), 112);
  auto stab = PermGroup::schreier_sims(G.first_stabilizer_generators(), G.degree());
  c.eq("line_stabilizer", stab.order().get_str(), "116640");
}

void c4_gluing(Context& ctx, Checks& c) {
  const auto& g = ctx.gluing();
  c.flag("even", g.L.is_even());
  c.flag("unimodular", g.L.is_unimodular());
  c.eq("signature", {g.L.positive(), g.L.negative()}, {1, 25});
  auto iso = isometries_of_definite(g.T);
  c.eq("O_T", iso.size(), 288);
  auto da = discriminant_action(g.T, iso);
  c.eq("O_qT", da.target_order, 8);
  c.flag("surjective", da.surjective);
  c.exact = true;
}

RatVec extend26(const RatVec& v22, std::size_t n) {
  RatVec x(n);
  for (std::size_t i = 0; i < v22.size(); ++i) x[i] = v22[i];
  return x;
}

void c5_weyl(Context& ctx, Checks& c) {
  const auto& g = ctx.gluing();
  const auto& fx = ctx.fixtures();
  RatVec wl = g.in_L(fx.vec("w0")), wpl = g.in_L(fx.vec("w0prime"));
  c.flag("w0_in_L", is_integral(wl) && is_integral(wpl));
  IntVec w = to_int(wl), wp = to_int(wpl);
  auto chk = is_weyl_vector(g.L, w, &wp);
  c.eq("roots_in_U_perp", chk.roots, 0);
  RatVec h = g.in_L(extend26(fx.vec("h0"), g.ST.rank()));
  c.info("h0_w0", g.L.pair(h, to_rat(w)).get_str());
  auto Q = weyl_quadratic(g.L, chk, w, h);
  c.eq("Q_negative_values", positive_quadratic_sublevel(Q, Rat(0), false).size(), 0);
  c.eq("Q_zeros", positive_quadratic_sublevel(Q, Rat(0), true).size(), 4);
  c.exact = true;
}

void c6_walls(Context& ctx, Checks& c) {
  const auto& lr = ctx.leech_roots();
  const auto& fx = ctx.fixtures();
  const auto& S = ctx.gluing().S;
  c.eq("leech_roots", lr.size(), 5944);
  std::vector<RatVec> cand;
  std::map<std::pair<Rat, Rat>, std::set<RatVec>> parts;
  for (const auto& r : lr) {
    cand.push_back(r.rS);
    parts[{r.a, r.n}].insert(r.rS);
  }
  auto W = walls(S, cand, fx.vec("h0"), ctx.options().jobs);
  c.eq("walls", W.size(), 5944);
  std::vector<std::size_t> sizes;
  for (const auto& [k, v] : parts) sizes.push_back(v.size());
  std::sort(sizes.begin(), sizes.end());
  c.eq("partition", sizes, {112, 648, 5184});
  std::set<RatVec> lines, o648, o5184;
  for (const auto& cl : ctx.config().classes) lines.insert(to_rat(cl));
  const auto& tab = ctx.tables();
  o648.insert(tab.w648.elements.begin(), tab.w648.elements.end());
  o5184.insert(tab.w5184.elements.begin(), tab.w5184.elements.end());
  c.eq("orbit_sizes", {o648.size(), o5184.size()}, {648, 5184});
  bool line_part = false, p648 = false, p5184 = false;
  for (const auto& [k, v] : parts) {
    line_part = line_part || v == lines;
    p648 = p648 || v == o648;
    p5184 = p5184 || v == o5184;
  }
  c.flag("line_part_is_line_classes", line_part);
  c.flag("orbits_reproduce_partition", p648 && p5184);
  c.exact = true;
}

void c7_polarizations(Context& ctx, Checks& c) {
  Lattice S(ctx.fixtures().N);
  const auto& fx = ctx.fixtures();
  const RatVec& h0 = fx.vec("h0");
  for (auto [name, deg] : std::vector<std::pair<std::string, int>>{{"m1", 2}, {"m2", 2}, {"h1", 4}, {"h2", 4}})
    c.flag(name + "_polarization", polarization_test(S, h0, fx.vec(name), deg));
  c.eq("m1_type", contracted_classes(S, h0, fx.vec("m1")).type.str(), "6A1+4A2");
  c.eq("m2_type", contracted_classes(S, h0, fx.vec("m2")).type.str(), "A1+A2+2A3+2A4");
  c.exact = true;
}

void c8_linsys(Context& ctx, Checks& c) {
  const auto& cfg = ctx.config();
  const auto& fx = ctx.fixtures();
  IntVec h0 = ctx.h0();
  struct Case {
    std::string name;
    int d;
    long dim;
  };
  for (const auto& cs : std::vector<Case>{{"m1", 3, 3}, {"m2", 5, 3}, {"h1", 6, 4}}) {
    auto a = effective_decomposition(cfg, h0, ctx.vec22(cs.name), cs.d);
    c.eq("dim_" + cs.name, gamma_space(cfg.lines, cs.d, a).dim(), cs.dim);
  }
  auto a1 = base_locus_assignment(cfg, fx, {"F10", "F11", "F12"});
  c.flag("F1_base_locus_decomposes_m1", assignment_sum(cfg, a1) == add_scaled(scale(Int(3), h0), -1, ctx.vec22("m1")));
  auto sp = gamma_space(cfg.lines, 3, a1);
  auto F = nf_list(fx, {"F10", "F11", "F12"});
  LinSysSpace fs;
  fs.d = 3;
  fs.basis = F;
  bool spans = sp.dim() == 3;
  for (const auto& f : F) spans = spans && sp.contains(f);
  for (const auto& b : sp.basis) spans = spans && fs.contains(b);
  c.flag("F1_spans_m1_space", spans);
  Multiplicities a3, a6;
  for (const auto& [k, v] : a1) {
    a3[k] = 3 * v;
    a6[k] = 6 * v;
  }
  auto s3 = gamma_space(cfg.lines, 9, a3);
  c.eq("dim_3m1", s3.dim(), 11);
  c.eq("dim_6m1", gamma_space(cfg.lines, 18, a6).dim(), 38);
  NFPoly G1 = NFPoly::from_terms(fx.poly("G1"));
  TernaryForm f1 = TernaryForm::from_terms(fx.poly("f1"));
  c.flag("G1_squared_plus_f1_vanishes", (G1 * G1 + substitute(f1, F)).is_zero());
  auto dp = double_plane_model(F, s3);
  c.flag("double_plane_sextic_proportional_to_f1", proportional(dp.f, f1));
  c.exact = true;
}

void c9_sextics(Context& ctx, Checks& c) {
  const auto& fx = ctx.fixtures();
  const char* names[2] = {"f1", "f2"};
  for (int k = 0; k < 2; ++k) {
    std::map<std::vector<GF9>, int> count;
    for (const auto& [label, p] : fx.pins.images.at(k).images) count[p]++;
    std::vector<std::string> exp, got;
    for (const auto& [p, n] : count) exp.push_back("A" + std::to_string(n) + "@" + point_str(p));
    for (const auto& s : singular_points_of_sextic(TernaryForm::from_terms(fx.poly(names[k])))) {
      std::vector<GF9> p;
      bool rational = true;
      for (const auto& x : s.point) {
        rational = rational && x.in_gf9();
        p.push_back(x.c0());
      }
      got.push_back(s.type() + "@" + (rational ? point_str(p) : "F81"));
    }
    std::sort(exp.begin(), exp.end());
    std::sort(got.begin(), got.end());
    c.eq(std::string(names[k]) + "_singular_points", got, exp);
  }
  c.exact = true;
}

void c10_involutions(Context& ctx, Checks& c) {
  const auto& fx = ctx.fixtures();
  const auto& cfg = ctx.config();
  Lattice S(fx.N);
  IntMatrix I = IntMatrix::identity(S.rank());
  IntVec h0 = ctx.h0();
  IntMatrix A[2];
  for (int k = 0; k < 2; ++k) {
    std::string m = k ? "m2" : "m1", b = k ? "b2" : "b1", tbl = k ? "A2" : "A1";
    long mult = k ? 9 : 3;
    auto cc = contracted_classes(S, fx.vec("h0"), fx.vec(m));
    A[k] = involution_from_eigenspaces(S, fx.vec(m), cc);
    const RatVec& bv = fx.vec(b);
    RatMatrix Ar = to_rat(A[k]);
    c.flag(tbl + "_involution", A[k] * A[k] == I);
    c.flag(tbl + "_isometry", A[k] * cfg.N * transpose(A[k]) == cfg.N);
    c.flag(tbl + "_negates_" + b, bv * Ar == scale(Rat(-1), bv));
    c.flag(tbl + "_moves_h0", to_rat(h0) * Ar == to_rat(h0) + scale(Rat(mult), bv));
    c.flag(tbl + "_equals_table", A[k] == fx.matrices.at(tbl));
  }
  auto H = nf_list(fx, {"H10", "H11", "H12", "H13"});
  NFPoly s;
  for (const auto& h : H) s = s + h.pow(4);
  c.flag("quartic_identity_H1", s.is_zero());
  c.flag("map_matrix_equals_eigenspace_matrix", induced_isometry_of_map(cfg, H) == A[0]);
  c.exact = true;
}

void c11_frobenius(Context& ctx, Checks& c) {
  const auto& cfg = ctx.config();
  IntMatrix F = frobenius_isometry(cfg);
  IntVec h0 = ctx.h0();
  c.flag("F_squared_identity", F * F == IntMatrix::identity(F.rows()));
  c.flag("F_fixes_h0", h0 * F == h0);
  c.flag("F_isometry", F * cfg.N * transpose(F) == cfg.N);
  c.flag("F_not_in_PGU", !ctx.pgu_group().membership(frobenius_permutation(cfg)).member);
  c.flag("F_equals_table", F == ctx.fixtures().matrices.at("AF"));
  c.exact = true;
}

void c12_descent(Context& ctx, Checks& c) {
  const auto& gens = ctx.generators();
  const auto& tab = ctx.tables();
  IntVec h0 = ctx.h0();
  std::mt19937_64 rng(ctx.options().seed);
  int reduced = 0, monotone = 0;
  std::size_t longest = 0;
  for (int it = 0; it < 100; ++it) {
    auto w = random_word(rng, 8, false, gens.pgu.size());
    IntVec v = h0 * evaluate(w, gens);
    auto r = reduce_to_chamber(v, tab, gens);
    reduced += r.result == h0 && v * evaluate(r.word, gens) == h0;
    bool mono = true;
    for (std::size_t k = 1; k < r.trace.size(); ++k) mono = mono && r.trace[k] < r.trace[k - 1];
    monotone += mono;
    longest = std::max(longest, r.word.size());
  }
  c.eq("reduced_to_h0", reduced, 100);
  c.eq("monotone_traces", monotone, 100);
  c.info("longest_reduction_word", longest);
  int round = 0;
  for (int it = 0; it < 25; ++it) {
    auto w = random_word(rng, 8, true, gens.pgu.size());
    IntMatrix M = evaluate(w, gens);
    auto f = factor_in_oplus(M, tab, gens);
    round += evaluate(f, gens) == M;
  }
  c.eq("factor_round_trips", round, 25);
  c.exact = true;
}

// ---- property suites

long ipair(const std::vector<std::vector<long>>& G, const std::vector<long>& x) {
  long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) s += x[i] * G[i][j] * x[j];
  return s;
}

// box enumeration of {x : xGxᵗ ≤ R}; returns false if the box is too large
bool brute_short(const std::vector<std::vector<long>>& G, long R, std::vector<std::vector<long>>& out) {
  std::size_t n = G.size();
  IntMatrix Gi(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) Gi(i, j) = G[i][j];
  RatMatrix inv = inverse(to_rat(Gi));
  std::vector<long> B(n);
  double cells = 1;
  for (std::size_t i = 0; i < n; ++i) {
    double b = std::sqrt(static_cast<double>(R) * inv(i, i).get_d()) + 1e-9;
    B[i] = static_cast<long>(std::floor(b));
    cells *= 2 * B[i] + 1;
  }
  if (cells > 2e5) return false;
  std::vector<long> x(n);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      if (ipair(G, x) <= R) out.push_back(x);
      return;
    }
    for (long t = -B[k]; t <= B[k]; ++t) {
      x[k] = t;
      rec(k + 1);
    }
  };
  rec(0);
  return true;
}

void c13_properties(Context& ctx, Checks& c) {
  std::mt19937_64 rng(ctx.options().seed ^ 0x9e3779b97f4a7c15ULL);
  // enumeration against brute force
  int agree = 0, cases = 0;
  while (cases < 1000) {
    std::size_t n = 1 + rng() % 4;
    IntMatrix Bm(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) Bm(i, j) = static_cast<long>(rng() % 5) - 2;
    if (determinant(Bm) == 0) continue;
    IntMatrix Gm = Bm * transpose(Bm);
    std::vector<std::vector<long>> G(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) G[i][j] = Gm(i, j).get_si();
    long R = 1 + static_cast<long>(rng() % 12);
    std::vector<std::vector<long>> brute;
    if (!brute_short(G, R, brute)) continue;
    ++cases;
    Lattice L(Gm);
    bool negate = rng() % 2;
    std::set<std::vector<long>> fast, slow;
    for (const auto& x : brute) slow.insert(x);
    // Less on L, or the negated lattice with Greater; plus each exact norm shell
    std::vector<RatVec> got;
    if (negate) {
      IntMatrix Nm = Gm;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) Nm(i, j) = -Gm(i, j);
      got = vectors_with_norm(Lattice(Nm), RatVec(n), Rat(-R - 1), NormMode::Greater);
    } else {
      got = vectors_with_norm(L, RatVec(n), Rat(R + 1), NormMode::Less);
    }
    for (const auto& v : got) {
      std::vector<long> x;
      for (const auto& t : v) x.push_back(t.get_num().get_si());
      fast.insert(x);
    }
    bool shell = true;
    long k = 1 + static_cast<long>(rng() % R);
    std::size_t exact = 0;
    for (const auto& x : brute) exact += ipair(G, x) == k;
    shell = vectors_with_norm(L, RatVec(n), Rat(k), NormMode::Equal).size() == exact;
    agree += fast == slow && fast.size() == got.size() && shell;
  }
  c.eq("enumeration_vs_brute_force", agree, 1000);

  // reflections in roots of random bases of D4
  IntMatrix D4 = IntMatrix::from_rows({{-2, 1, 0, 0}, {1, -2, 1, 1}, {0, 1, -2, 0}, {0, 1, 0, -2}});
  int refl_ok = 0, refl_cases = 0;
  for (int it = 0; it < 10; ++it) {
    IntMatrix U = IntMatrix::identity(4);
    for (int s = 0; s < 6; ++s) {
      std::size_t i = rng() % 4, j = rng() % 4;
      if (i == j) continue;
      long f = static_cast<long>(rng() % 3) - 1;
      for (std::size_t col = 0; col < 4; ++col) U(i, col) += f * U(j, col);
    }
    Lattice L(U * D4 * transpose(U));
    for (const auto& r : vectors_with_norm(L, RatVec(4), Rat(-2), NormMode::Equal)) {
      ++refl_cases;
      IntMatrix R = reflection_matrix(L, r);
      bool ok = R * R == IntMatrix::identity(4) && R * L.gram() * transpose(R) == L.gram();
      ok = ok && to_rat(to_int(r) * R) == scale(Rat(-1), r);
      RatVec v(4);
      v[rng() % 4] = 1;
      ok = ok && reflect(L, reflect(L, v, r), r) == v && to_rat(to_int(v) * R) == reflect(L, v, r);
      refl_ok += ok;
    }
  }
  c.eq("reflection_identities", refl_ok, refl_cases);

  // transversal words of the line group
  const auto& G = ctx.pgu_group();
  int tw = 0;
  for (int it = 0; it < 200; ++it) {
    Perm g = perm_identity(G.degree());
    for (int s = 0; s < 12; ++s) {
      const Perm& x = G.generators()[rng() % G.generators().size()];
      g = perm_mul(g, rng() % 2 ? x : perm_inv(x));
    }
    auto m = G.membership(g);
    tw += m.member && evaluate_word(m.word, G.generators(), G.degree()) == g;
  }
  c.eq("sift_words_evaluate", tw, 200);
  if (!ctx.options().no_fixtures) {
    const auto& tab = ctx.tables();
    const auto& gens = ctx.generators();
    int ok = 0;
    for (int it = 0; it < 200; ++it) {
      int e = static_cast<int>(rng() % tab.w648.elements.size());
      RatVec x = tab.w648.seed;
      for (const auto& l : tab.w648.word(e)) x = x * to_rat(l.exp > 0 ? gens.pgu[l.gen] : gens.pgu_inv[l.gen]);
      ok += x == tab.w648.elements[e];
    }
    c.eq("orbit_transversal_words", ok, 200);
  }

  // determinism
  auto a = enumerate_lines_on_fermat(), b = enumerate_lines_on_fermat();
  c.flag("line_enumeration_repeatable", a.lines == b.lines && a.scanned == b.scanned);
  if (!ctx.options().no_fixtures) {
    const auto& fx = ctx.fixtures();
    auto fr = recover_frame(a.lines, intersection_matrix(a.lines), fx.N, fx.basis_labels, fx.pins);
    c.flag("frame_repeatable", fr.basis == ctx.frame().basis);
    const auto& cfg = ctx.config();
    auto d1 = effective_decomposition(cfg, ctx.h0(), ctx.vec22("m1"), 3);
    auto d2 = effective_decomposition(cfg, ctx.h0(), ctx.vec22("m1"), 3);
    auto s1 = gamma_space(cfg.lines, 3, d1), s2 = gamma_space(cfg.lines, 3, d2);
    bool same = d1 == d2 && s1.dim() == s2.dim();
    for (std::size_t k = 0; same && k < s1.dim(); ++k) same = s1.basis[k] == s2.basis[k];
    c.flag("linear_system_repeatable", same);
  }
}

struct Entry {
  const char* id;
  const char* anchor;
  bool fixtures;
  void (*fn)(Context&, Checks&);
};

const Entry kEntries[kCriteria] = {
    {"lines", "line census on the Fermat quartic over F9", false, c1_lines},
    {"frame", "22-line frame with Gram matrix N", true, c2_frame},
    {"groups", "PGU(4,9) acting on the lines", false, c3_groups},
    {"gluing", "even unimodular overlattice of S + 2A2", true, c4_gluing},
    {"weyl", "Weyl vector w0 and the function Q", true, c5_weyl},
    {"walls", "walls of the induced chamber", true, c6_walls},
    {"polarizations", "degree-2 and degree-4 polarizations", true, c7_polarizations},
    {"linear-systems", "linear systems and the double plane of m1", true, c8_linsys},
    {"branch-sextics", "singular points of the branch sextics", true, c9_sextics},
    {"involutions", "double-plane involutions g1, g2", true, c10_involutions},
    {"frobenius", "Frobenius action on the lines", true, c11_frobenius},
    {"descent", "chamber descent and factorization", true, c12_descent},
    {"properties", "property suites", false, c13_properties},
};

}  // namespace

Claim run_criterion(int k, Context& ctx) {
  if (k < 1 || k > kCriteria) throw Error(ErrorCode::BadInput, "criterion number out of range");
  const Entry& e = kEntries[k - 1];
  Claim cl;
  cl.number = k;
  cl.id = std::to_string(k) + "-" + e.id;
  cl.anchor = e.anchor;
  auto t0 = std::chrono::steady_clock::now();
  if (e.fixtures && ctx.options().no_fixtures) {
    cl.status = "skipped";
    cl.measured = json::object();
    cl.expected = json::object();
    return cl;
  }
  Checks c;
  try {
    e.fn(ctx, c);
    cl.status = !c.ok ? "failed" : c.exact ? "exact-match" : "frame-invariant-match";
  } catch (const std::exception& ex) {
    c.measured["error"] = ex.what();
    cl.status = "failed";
  }
  cl.measured = c.measured;
  cl.expected = c.expected;
  cl.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cl;
}

Report verify_all(Context& ctx, const std::function<void(const Claim&)>& progress) {
  Report r;
  for (int k = 1; k <= kCriteria; ++k) {
    r.claims.push_back(run_criterion(k, ctx));
    if (progress) progress(r.claims.back());
  }
  return r;
}

}  // namespace k3
