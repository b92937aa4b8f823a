#include "k3/fermat.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace k3 {

Point3 normalize(Point3 p) {
  for (int i = 0; i < 4; ++i)
    if (!p[i].is_zero()) {
      GF9 inv = p[i].inverse();
      for (auto& x : p) x *= inv;
      return p;
    }
  throw Error(ErrorCode::BadInput, "zero vector is not a projective point");
}

std::uint32_t point_key(const Point3& p) {
  std::uint32_t k = 0;
  for (auto x : p) k = k * 9 + static_cast<std::uint32_t>(x.index());
  return k;
}

bool on_fermat(const Point3& p) {
  GF9 s = kZero9;
  for (auto x : p) s += x.pow(4);
  return s.is_zero();
}

namespace {

// in-place RREF of a small matrix over F9, returns rank
template <std::size_t R>
int rref9(std::array<std::array<GF9, 4>, R>& m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < 4 && r < R; ++c) {
    std::size_t p = r;
    while (p < R && m[p][c].is_zero()) ++p;
    if (p == R) continue;
    std::swap(m[r], m[p]);
    GF9 inv = m[r][c].inverse();
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      GF9 f = m[i][c];
      for (std::size_t j = 0; j < 4; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

GF9 quartic(const Point3& p) {
  GF9 s = kZero9;
  for (auto x : p) s += x.pow(4);
  return s;
}

std::vector<GF9> all9() {
  std::vector<GF9> v;
  for (int e = 0; e < 9; ++e) v.push_back(GF9::from_index(e));
  return v;
}

}  // namespace

ProjLine ProjLine::from_rows(const std::array<GF9, 4>& r0, const std::array<GF9, 4>& r1) {
  std::array<std::array<GF9, 4>, 2> m{r0, r1};
  if (rref9(m) != 2) throw Error(ErrorCode::BadInput, "rows do not span a line");
  ProjLine l;
  l.rows_ = m;
  return l;
}

std::array<Point3, 10> ProjLine::points() const {
  std::array<Point3, 10> pts;
  for (int t = 0; t < 9; ++t) {
    GF9 tt = GF9::from_index(t);
    Point3 p;
    for (int k = 0; k < 4; ++k) p[k] = rows_[0][k] + tt * rows_[1][k];
    pts[t] = normalize(p);
  }
  pts[9] = normalize(rows_[1]);
  return pts;
}

bool ProjLine::contains(const Point3& p) const {
  for (const auto& e : equations()) {
    GF9 s = kZero9;
    for (int k = 0; k < 4; ++k) s += e[k] * p[k];
    if (!s.is_zero()) return false;
  }
  return true;
}

std::array<std::array<GF9, 4>, 2> ProjLine::equations() const {
  int piv[2] = {-1, -1};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 4; ++c)
      if (!rows_[r][c].is_zero()) {
        piv[r] = c;
        break;
      }
  std::array<std::array<GF9, 4>, 2> eq{};
  int n = 0;
  for (int f = 0; f < 4; ++f) {
    if (f == piv[0] || f == piv[1]) continue;
    std::array<GF9, 4> e{};
    e[f] = kOne9;
    for (int r = 0; r < 2; ++r) e[piv[r]] = -rows_[r][f];
    eq[n++] = e;
  }
  return eq;
}

std::uint32_t ProjLine::key() const {
  std::uint32_t k = 0;
  for (const auto& r : rows_)
    for (auto x : r) k = k * 9 + static_cast<std::uint32_t>(x.index());
  return k;
}

ProjLine ProjLine::transformed(const Mat4& m) const {
  std::array<std::array<GF9, 4>, 2> out{};
  for (int r = 0; r < 2; ++r)
    for (int j = 0; j < 4; ++j) {
      GF9 s = kZero9;
      for (int i = 0; i < 4; ++i) s += rows_[r][i] * m[i][j];
      out[r][j] = s;
    }
  return from_rows(out[0], out[1]);
}

ProjLine ProjLine::frobenius() const {
  auto r = rows_;
  for (auto& row : r)
    for (auto& x : row) x = x.frob();
  return from_rows(r[0], r[1]);
}

bool lines_meet(const ProjLine& a, const ProjLine& b) {
  std::array<std::array<GF9, 4>, 4> m{a.rows()[0], a.rows()[1], b.rows()[0], b.rows()[1]};
  return rref9(m) < 4;
}

LineScan enumerate_lines_on_fermat() {
  LineScan out;
  const auto F9 = all9();
  for (int p1 = 0; p1 < 4; ++p1)
    for (int p2 = p1 + 1; p2 < 4; ++p2) {
      std::vector<int> free1, free2;
      for (int c = 0; c < 4; ++c) {
        if (c > p1 && c != p2) free1.push_back(c);
        if (c > p2) free2.push_back(c);
      }
      std::size_t n1 = 1, n2 = 1;
      for (std::size_t k = 0; k < free1.size(); ++k) n1 *= 9;
      for (std::size_t k = 0; k < free2.size(); ++k) n2 *= 9;
      for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < n2; ++b) {
          ++out.scanned;
          std::array<GF9, 4> r0{}, r1{};
          r0[p1] = kOne9;
          r1[p2] = kOne9;
          // first free column varies slowest
          std::size_t x = a;
          for (std::size_t k = free1.size(); k-- > 0;) {
            r0[free1[k]] = F9[x % 9];
            x /= 9;
          }
          x = b;
          for (std::size_t k = free2.size(); k-- > 0;) {
            r1[free2[k]] = F9[x % 9];
            x /= 9;
          }
          ProjLine l = ProjLine::from_rows(r0, r1);
          bool on = true;
          for (const auto& p : l.points())
            if (!quartic(p).is_zero()) {
              on = false;
              break;
            }
          if (on) out.lines.push_back(l);
        }
    }
  return out;
}

std::vector<Point3> surface_points() {
  std::vector<Point3> pts;
  for (std::uint32_t k = 0; k < 9 * 9 * 9 * 9; ++k) {
    Point3 p;
    std::uint32_t x = k;
    for (int i = 3; i >= 0; --i) {
      p[i] = GF9::from_index(static_cast<int>(x % 9));
      x /= 9;
    }
    bool zero = true;
    for (auto c : p)
      if (!c.is_zero()) zero = false;
    if (zero || normalize(p) != p) continue;
    if (on_fermat(p)) pts.push_back(p);
  }
  return pts;
}

std::vector<std::vector<int>> intersection_matrix(const std::vector<ProjLine>& lines) {
  std::size_t n = lines.size();
  std::vector<std::vector<int>> I(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    I[i][i] = -2;
    for (std::size_t j = i + 1; j < n; ++j) I[i][j] = I[j][i] = lines_meet(lines[i], lines[j]) ? 1 : 0;
  }
  return I;
}

GF9 HomogeneousPoly::eval(const Point3& p) const {
  GF9 s = kZero9;
  for (const auto& [e, c] : terms) {
    GF9 t = c;
    for (int k = 0; k < 4; ++k) t *= p[k].pow(static_cast<unsigned>(e[k]));
    s += t;
  }
  return s;
}

int HomogeneousPoly::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
  return d;
}

std::vector<int> base_locus(const std::vector<ProjLine>& lines, const HomogeneousMap& f) {
  std::vector<int> out;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    bool all = true;
    for (const auto& p : lines[k].points()) {
      for (const auto& q : f)
        if (!q.eval(p).is_zero()) {
          all = false;
          break;
        }
      if (!all) break;
    }
    if (all) out.push_back(static_cast<int>(k));
  }
  return out;
}

std::optional<std::vector<GF9>> contracted_image(const ProjLine& line, const HomogeneousMap& f) {
  std::optional<std::vector<GF9>> img;
  for (const auto& p : line.points()) {
    std::vector<GF9> v;
    for (const auto& q : f) v.push_back(q.eval(p));
    auto nz = std::find_if(v.begin(), v.end(), [](GF9 x) { return !x.is_zero(); });
    if (nz == v.end()) continue;
    GF9 inv = nz->inverse();
    for (auto& x : v) x *= inv;
    if (!img) img = v;
    else if (*img != v) return std::nullopt;
  }
  return img;
}

int LineConfiguration::line_index(const ProjLine& l) const {
  auto it = index.find(l.key());
  if (it == index.end()) throw Error(ErrorCode::NotAutomorphism, "image is not a line on the surface");
  return it->second;
}

namespace {

std::vector<int> frobenius_on_lines(const std::vector<ProjLine>& lines) {
  std::unordered_map<std::uint32_t, int> idx;
  for (std::size_t k = 0; k < lines.size(); ++k) idx[lines[k].key()] = static_cast<int>(k);
  std::vector<int> f;
  for (const auto& l : lines) f.push_back(idx.at(l.frobenius().key()));
  return f;
}

}  // namespace

FrameResult recover_frame(const std::vector<ProjLine>& lines, const std::vector<std::vector<int>>& I,
                          const IntMatrix& N, const std::vector<int>& basis_labels, const FramePins& pins,
                          std::size_t solution_cap) {
  const int n = static_cast<int>(lines.size());
  const std::vector<int> frob = frobenius_on_lines(lines);
  // unary domains for every label mentioned anywhere
  std::map<int, std::set<int>> dom;
  std::set<int> everything;
  for (int k = 0; k < n; ++k) everything.insert(k);
  auto restrict = [&](int label, const std::vector<int>& allowed) {
    std::set<int> a(allowed.begin(), allowed.end());
    auto it = dom.find(label);
    if (it == dom.end()) {
      dom[label] = a;
      return;
    }
    std::set<int> r;
    std::set_intersection(it->second.begin(), it->second.end(), a.begin(), a.end(), std::inserter(r, r.begin()));
    it->second = r;
  };
  for (int L : basis_labels) dom[L] = everything;
  if (!pins.plane_labels.empty()) {
    std::vector<int> inplane;
    for (int k = 0; k < n; ++k) {
      bool ok = true;
      for (const auto& r : lines[k].rows()) {
        GF9 s = kZero9;
        for (int j = 0; j < 4; ++j) s += pins.plane[j] * r[j];
        if (!s.is_zero()) ok = false;
      }
      if (ok) inplane.push_back(k);
    }
    for (int L : pins.plane_labels) restrict(L, inplane);
  }
  for (const auto& bl : pins.base_loci) {
    auto geo = base_locus(lines, bl.map);
    for (int L : bl.labels) restrict(L, geo);
  }
  for (const auto& im : pins.images) {
    auto bl = base_locus(lines, im.map);
    std::set<int> in_bl(bl.begin(), bl.end());
    std::map<int, std::vector<GF9>> img;
    for (int k = 0; k < n; ++k) {
      if (in_bl.count(k)) continue;
      auto p = contracted_image(lines[k], im.map);
      if (p) img[k] = *p;
    }
    for (const auto& [L, pt] : im.images) {
      std::vector<int> ok;
      for (const auto& [k, q] : img)
        if (q == pt) ok.push_back(k);
      restrict(L, ok);
    }
  }
  for (const auto& [a, b] : pins.frobenius_pairs) {
    if (!dom.count(a)) dom[a] = everything;
    if (!dom.count(b)) dom[b] = everything;
  }
  for (const auto& c : pins.chains)
    for (int L : c)
      if (!dom.count(L)) dom[L] = everything;

  // binary constraints: (label a, label b, predicate on geometric indices)
  struct Bin {
    int a, b;
    std::function<bool(int, int)> ok;
  };
  std::map<int, std::vector<Bin>> adj;
  auto add_bin = [&](int a, int b, std::function<bool(int, int)> f) {
    adj[a].push_back({a, b, f});
    adj[b].push_back({b, a, [f](int x, int y) { return f(y, x); }});
  };
  std::map<int, int> pos;
  for (std::size_t i = 0; i < basis_labels.size(); ++i) pos[basis_labels[i]] = static_cast<int>(i);
  for (std::size_t x = 0; x < basis_labels.size(); ++x)
    for (std::size_t y = x + 1; y < basis_labels.size(); ++y) {
      int v = static_cast<int>(N(x, y).get_si());
      add_bin(basis_labels[x], basis_labels[y], [&I, v](int p, int q) { return I[p][q] == v; });
    }
  for (const auto& [a, b] : pins.frobenius_pairs)
    add_bin(a, b, [&frob](int p, int q) { return frob[p] == q; });
  for (const auto& c : pins.chains)
    for (std::size_t u = 0; u < c.size(); ++u)
      for (std::size_t w = u + 1; w < c.size(); ++w) {
        int want = w == u + 1 ? 1 : 0;
        add_bin(c[u], c[w], [&I, want](int p, int q) { return I[p][q] == want; });
      }

  std::map<int, int> assign;
  std::set<int> used;
  auto consistent = [&](int label, int v) {
    if (used.count(v)) return false;
    auto it = adj.find(label);
    if (it == adj.end()) return true;
    for (const auto& bc : it->second) {
      auto jt = assign.find(bc.b);
      if (jt != assign.end() && !bc.ok(v, jt->second)) return false;
    }
    return true;
  };
  // generic MRV backtracking over a set of labels; callback on full assignment returns true to stop
  std::function<bool(const std::vector<int>&, const std::function<bool()>&)> solve =
      [&](const std::vector<int>& vars, const std::function<bool()>& on_full) -> bool {
    int best = -1;
    std::vector<int> best_vals;
    for (int L : vars) {
      if (assign.count(L)) continue;
      std::vector<int> vals;
      for (int v : dom[L])
        if (consistent(L, v)) vals.push_back(v);
      if (best == -1 || vals.size() < best_vals.size()) {
        best = L;
        best_vals = vals;
      }
      if (vals.empty()) return false;
    }
    if (best == -1) return on_full();
    for (int v : best_vals) {
      assign[best] = v;
      used.insert(v);
      bool stop = solve(vars, on_full);
      used.erase(v);
      assign.erase(best);
      if (stop) return true;
    }
    return false;
  };
  std::vector<int> extra;
  for (const auto& [L, d] : dom)
    if (!pos.count(L)) extra.push_back(L);

  std::vector<std::vector<int>> found;
  FrameResult res;
  solve(basis_labels, [&]() {
    // the remaining pinned labels must admit an injective placement on other lines
    bool extends = extra.empty() || solve(extra, []() { return true; });
    if (extends) {
      std::vector<int> t;
      for (int L : basis_labels) t.push_back(assign.at(L));
      found.push_back(t);
      if (found.size() >= solution_cap) {
        res.truncated = true;
        return true;
      }
    }
    return false;
  });
  if (found.empty()) throw Error(ErrorCode::NoFrameFound, "no basis tuple satisfies the pins");
  std::sort(found.begin(), found.end());
  res.basis = found.front();
  res.solutions = found.size();
  return res;
}

FrameResult first_frame(const std::vector<ProjLine>& lines, const std::vector<std::vector<int>>& I,
                        const IntMatrix& N) {
  const int n = static_cast<int>(lines.size());
  const std::size_t r = N.rows();
  std::vector<int> t;
  std::vector<bool> used(n, false);
  std::function<bool()> rec = [&]() {
    if (t.size() == r) return true;
    std::size_t x = t.size();
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (std::size_t y = 0; y < x && ok; ++y)
        if (I[t[y]][v] != N(y, x)) ok = false;
      if (!ok) continue;
      t.push_back(v);
      used[v] = true;
      if (rec()) return true;
      used[v] = false;
      t.pop_back();
    }
    return false;
  };
  if (!rec()) throw Error(ErrorCode::NoFrameFound, "no tuple realizes the Gram matrix");
  FrameResult res;
  res.basis = t;
  res.solutions = 0;  // not counted: the frame is only determined up to automorphisms
  res.truncated = true;
  return res;
}

LineConfiguration make_configuration(const std::vector<ProjLine>& lines, const std::vector<std::vector<int>>& I,
                                     const std::vector<int>& basis, const IntMatrix& N) {
  LineConfiguration cfg;
  cfg.lines = lines;
  cfg.intersection = I;
  cfg.basis = basis;
  cfg.N = N;
  cfg.N_inv = inverse(to_rat(N));
  for (std::size_t x = 0; x < basis.size(); ++x)
    for (std::size_t y = 0; y < basis.size(); ++y)
      if (I[basis[x]][basis[y]] != N(x, y)) throw Error(ErrorCode::NoFrameFound, "basis Gram differs from N");
  for (std::size_t k = 0; k < lines.size(); ++k) cfg.index[lines[k].key()] = static_cast<int>(k);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    RatVec p(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) p[j] = I[k][basis[j]];
    RatVec c = p * cfg.N_inv;
    if (!is_integral(c)) throw Error(ErrorCode::NonIntegralClass, "line class is not integral");
    cfg.classes.push_back(to_int(c));
  }
  return cfg;
}

IntVec class_of_line(const LineConfiguration& cfg, int line) { return cfg.classes.at(line); }

Mat4 mat4_mul(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      GF9 s = kZero9;
      for (int k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

Mat4 mat4_conj_transpose(const Mat4& a) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c[i][j] = a[j][i].frob();
  return c;
}

bool is_unitary(const Mat4& m) {
  Mat4 p = mat4_mul(m, mat4_conj_transpose(m));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (p[i][j] != (i == j ? kOne9 : kZero9)) return false;
  return true;
}

Perm line_permutation(const LineConfiguration& cfg, const Mat4& m) {
  Perm p(cfg.lines.size());
  for (std::size_t k = 0; k < cfg.lines.size(); ++k)
    p[k] = static_cast<std::uint16_t>(cfg.line_index(cfg.lines[k].transformed(m)));
  return p;
}

IntMatrix isometry_from_permutation(const LineConfiguration& cfg, const Perm& p) {
  std::size_t r = cfg.basis.size();
  IntMatrix M(r, r);
  for (std::size_t j = 0; j < r; ++j) M.set_row(j, cfg.classes[p[cfg.basis[j]]]);
  return M;
}

std::vector<Mat4> pgu_generator_matrices() {
  const GF9 o = kZero9, l = kOne9, i = GF9::i(), m = -kOne9;
  const GF9 a = GF9::make(1, 1);  // 1+i
  Mat4 cyc{{{o, l, o, o}, {o, o, l, o}, {o, o, o, l}, {i, o, o, o}}};
  Mat4 blk{{{a, a, o, o}, {a, -a, o, o}, {o, o, l, o}, {o, o, o, m}}};
  return {cyc, blk};
}

std::vector<PGUGenerator> pgu_generators(const LineConfiguration& cfg) {
  std::vector<PGUGenerator> out;
  for (const auto& M : pgu_generator_matrices()) {
    if (!is_unitary(M)) throw Error(ErrorCode::NotAutomorphism, "generator is not unitary");
    Perm p = line_permutation(cfg, M);
    IntMatrix iso = isometry_from_permutation(cfg, p);
    if (iso * cfg.N * transpose(iso) != cfg.N) throw Error(ErrorCode::NotAutomorphism, "induced map is not an isometry");
    out.push_back({M, p, iso});
  }
  return out;
}

Perm frobenius_permutation(const LineConfiguration& cfg) {
  Perm p(cfg.lines.size());
  for (std::size_t k = 0; k < cfg.lines.size(); ++k)
    p[k] = static_cast<std::uint16_t>(cfg.line_index(cfg.lines[k].frobenius()));
  return p;
}

IntMatrix frobenius_isometry(const LineConfiguration& cfg) {
  return isometry_from_permutation(cfg, frobenius_permutation(cfg));
}

}  // namespace k3
