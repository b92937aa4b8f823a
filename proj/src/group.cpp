#include "k3/group.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

#include "k3/enumeration.hpp"

namespace k3 {

Perm perm_identity(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_mul(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
  return c;
}

Perm perm_inv(const Perm& a) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<std::uint16_t>(i);
  return c;
}

bool perm_is_identity(const Perm& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != i) return false;
  return true;
}

Perm perm_pow(const Perm& a, long e) {
  Perm base = e < 0 ? perm_inv(a) : a;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  Perm r = perm_identity(a.size());
  while (n) {
    if (n & 1) r = perm_mul(r, base);
    base = perm_mul(base, base);
    n >>= 1;
  }
  return r;
}

std::size_t perm_order(const Perm& a) {
  std::size_t o = 1;
  std::vector<bool> seen(a.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = a[j];
      ++len;
    }
    o = std::lcm(o, len);
  }
  return o;
}

Word word_inverse(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->gen, -it->exp});
  return r;
}

Word word_concat(const Word& a, const Word& b) {
  Word r = a;
  for (const auto& l : b) {
    if (!r.empty() && r.back().gen == l.gen && r.back().exp == -l.exp) r.pop_back();
    else r.push_back(l);
  }
  return r;
}

Perm evaluate_word(const Word& w, const std::vector<Perm>& gens, std::size_t degree) {
  std::vector<Perm> inv(gens.size());
  Perm r = perm_identity(degree);
  for (const auto& l : w) {
    if (l.exp > 0) {
      r = perm_mul(r, gens[l.gen]);
    } else {
      if (inv[l.gen].empty()) inv[l.gen] = perm_inv(gens[l.gen]);
      r = perm_mul(r, inv[l.gen]);
    }
  }
  return r;
}

void PermGroup::rebuild_orbit(Level& lvl) const {
  lvl.via.assign(degree_, -1);
  lvl.parent.assign(degree_, -1);
  lvl.orbit.clear();
  lvl.via[lvl.point] = -2;
  lvl.orbit.push_back(lvl.point);
  for (std::size_t k = 0; k < lvl.orbit.size(); ++k) {
    int p = lvl.orbit[k];
    for (int s : lvl.gens) {
      int q = strong_[s].p[p];
      if (lvl.via[q] != -1) continue;
      lvl.via[q] = s;
      lvl.parent[q] = p;
      lvl.orbit.push_back(q);
    }
  }
}

Word PermGroup::transversal_word(const Level& lvl, int p) const {
  std::vector<int> path;
  while (lvl.via[p] != -2) {
    path.push_back(lvl.via[p]);
    p = lvl.parent[p];
  }
  Word w;
  for (auto it = path.rbegin(); it != path.rend(); ++it) w = word_concat(w, strong_[*it].w);
  return w;
}

Perm PermGroup::transversal(const Level& lvl, int p) const {
  std::vector<int> path;
  while (lvl.via[p] != -2) {
    path.push_back(lvl.via[p]);
    p = lvl.parent[p];
  }
  Perm u = perm_identity(degree_);
  for (auto it = path.rbegin(); it != path.rend(); ++it) u = perm_mul(u, strong_[*it].p);
  return u;
}

std::pair<Perm, std::size_t> PermGroup::strip(Perm g, std::size_t start, Word* w) const {
  for (std::size_t i = start; i < levels_.size(); ++i) {
    const Level& lvl = levels_[i];
    int b = g[lvl.point];
    if (lvl.via[b] == -1) return {g, i};
    if (w) *w = word_concat(*w, word_inverse(transversal_word(lvl, b)));
    while (lvl.via[b] != -2) {
      g = perm_mul(g, strong_[lvl.via[b]].inv);
      b = lvl.parent[b];
    }
  }
  return {g, levels_.size()};
}

PermGroup PermGroup::schreier_sims(const std::vector<Perm>& gens, std::size_t degree,
                                   const std::vector<int>& base_prefix) {
  PermGroup G;
  G.degree_ = degree;
  G.gens_ = gens;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].size() != degree) throw Error(ErrorCode::DimensionMismatch, "permutation degree");
    if (perm_is_identity(gens[i])) continue;
    G.strong_.push_back({gens[i], perm_inv(gens[i]), Word{{static_cast<int>(i), 1}}});
  }
  auto moved_point = [&](const Perm& p) {
    for (std::size_t i = 0; i < degree; ++i)
      if (p[i] != i) return static_cast<int>(i);
    return -1;
  };
  for (int b : base_prefix) {
    Level l;
    l.point = b;
    G.levels_.push_back(l);
  }
  auto fixes_prefix = [&](const Perm& p, std::size_t upto) {
    for (std::size_t j = 0; j < upto; ++j)
      if (p[G.levels_[j].point] != G.levels_[j].point) return false;
    return true;
  };
  for (std::size_t s = 0; s < G.strong_.size(); ++s) {
    bool moves = false;
    for (const auto& l : G.levels_)
      if (G.strong_[s].p[l.point] != l.point) moves = true;
    if (!moves) {
      Level l;
      l.point = moved_point(G.strong_[s].p);
      G.levels_.push_back(l);
    }
  }
  auto assign_gens = [&](std::size_t i) {
    G.levels_[i].gens.clear();
    for (std::size_t s = 0; s < G.strong_.size(); ++s)
      if (fixes_prefix(G.strong_[s].p, i)) G.levels_[i].gens.push_back(static_cast<int>(s));
    G.rebuild_orbit(G.levels_[i]);
  };
  for (std::size_t i = 0; i < G.levels_.size(); ++i) assign_gens(i);

  long i = static_cast<long>(G.levels_.size()) - 1;
  while (i >= 0) {
    bool modified = false;
    Level& lvl = G.levels_[i];
    for (std::size_t k = 0; !modified && k < lvl.orbit.size(); ++k) {
      int p = lvl.orbit[k];
      Perm up = G.transversal(lvl, p);
      for (std::size_t gi = 0; !modified && gi < lvl.gens.size(); ++gi) {
        int s = lvl.gens[gi];
        int q = G.strong_[s].p[p];
        if (lvl.via[q] == s && lvl.parent[q] == p) continue;  // tree edge gives the identity
        Perm g = perm_mul(perm_mul(up, G.strong_[s].p), perm_inv(G.transversal(lvl, q)));
        auto [h, j] = G.strip(g, i + 1, nullptr);
        if (perm_is_identity(h)) continue;
        Word w = word_concat(word_concat(G.transversal_word(lvl, p), G.strong_[s].w),
                             word_inverse(G.transversal_word(lvl, q)));
        auto [h2, j2] = G.strip(g, i + 1, &w);
        (void)h2;
        (void)j2;
        G.strong_.push_back({h, perm_inv(h), w});
        if (j == G.levels_.size()) {
          Level l;
          l.point = moved_point(h);
          G.levels_.push_back(l);
        }
        for (std::size_t l = i + 1; l <= j; ++l) assign_gens(l);
        i = static_cast<long>(j);
        modified = true;
      }
    }
    if (!modified) --i;
  }
  return G;
}

std::vector<int> PermGroup::base() const {
  std::vector<int> b;
  for (const auto& l : levels_) b.push_back(l.point);
  return b;
}

std::vector<std::size_t> PermGroup::fundamental_orbit_lengths() const {
  std::vector<std::size_t> o;
  for (const auto& l : levels_) o.push_back(l.orbit.size());
  return o;
}

Int PermGroup::order() const {
  Int o = 1;
  for (const auto& l : levels_) o *= static_cast<unsigned long>(l.orbit.size());
  return o;
}

PermGroup::SiftResult PermGroup::membership(const Perm& g) const {
  if (g.size() != degree_) return {};
  Word w;
  auto [h, j] = strip(g, 0, &w);
  (void)j;
  if (!perm_is_identity(h)) return {};
  // strip computed h = g·(inverse transversals); g = word_inverse(w)
  return {true, word_inverse(w)};
}

std::vector<int> PermGroup::orbit(int point) const {
  std::vector<bool> seen(degree_, false);
  std::vector<int> orb{point};
  seen[point] = true;
  for (std::size_t k = 0; k < orb.size(); ++k)
    for (const auto& g : gens_) {
      int q = g[orb[k]];
      if (!seen[q]) {
        seen[q] = true;
        orb.push_back(q);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

std::vector<Perm> PermGroup::first_stabilizer_generators() const {
  std::vector<Perm> out;
  if (levels_.size() < 2) return out;
  for (int s : levels_[1].gens) out.push_back(strong_[s].p);
  return out;
}

std::optional<int> OrbitTable::find(const RatVec& v) const {
  auto it = index.find(v);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Word OrbitTable::word(int e) const {
  Word w;
  while (parent[e] != -1) {
    w.push_back({via[e], 1});
    e = parent[e];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

OrbitTable matrix_orbit(const RatVec& seed, const std::vector<IntMatrix>& gens, std::size_t bound) {
  OrbitTable t;
  t.seed = seed;
  std::vector<RatMatrix> rg;
  for (const auto& g : gens) rg.push_back(to_rat(g));
  t.elements.push_back(seed);
  t.parent.push_back(-1);
  t.via.push_back(-1);
  t.index[seed] = 0;
  for (std::size_t k = 0; k < t.elements.size(); ++k)
    for (std::size_t gi = 0; gi < rg.size(); ++gi) {
      RatVec img = t.elements[k] * rg[gi];
      if (t.index.count(img)) continue;
      if (t.elements.size() >= bound) throw Error(ErrorCode::OrbitOverflow, "orbit exceeds bound");
      t.index[img] = static_cast<int>(t.elements.size());
      t.elements.push_back(img);
      t.parent.push_back(static_cast<int>(k));
      t.via.push_back(static_cast<int>(gi));
    }
  return t;
}

std::vector<IntMatrix> isometries_of_definite(const Lattice& T, std::size_t fanout_limit, std::size_t result_limit) {
  std::size_t n = T.rank();
  std::vector<IntMatrix> out;
  if (n == 0) {
    out.push_back(IntMatrix(0, 0));
    return out;
  }
  const IntMatrix& G = T.gram();
  std::map<Int, std::vector<IntVec>> by_norm;
  for (std::size_t i = 0; i < n; ++i) {
    if (by_norm.count(G(i, i))) continue;
    auto vs = vectors_with_norm(T, RatVec(n), Rat(G(i, i)), NormMode::Equal);
    if (vs.size() > fanout_limit) throw Error(ErrorCode::TooLarge, "short-vector fan-out exceeds the limit");
    std::vector<IntVec> iv;
    for (const auto& v : vs) iv.push_back(to_int(v));
    by_norm[G(i, i)] = iv;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return by_norm[G(a, a)].size() < by_norm[G(b, b)].size(); });
  std::vector<IntVec> img(n);
  std::vector<IntVec> imgG(n);  // img·G
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      IntMatrix M(n, n);
      for (std::size_t i = 0; i < n; ++i) M.set_row(i, img[i]);
      out.push_back(M);
      if (out.size() > result_limit) throw Error(ErrorCode::TooLarge, "isometry count exceeds the limit");
      return;
    }
    std::size_t i = order[k];
    for (const auto& x : by_norm[G(i, i)]) {
      bool ok = true;
      for (std::size_t a = 0; a < k && ok; ++a) {
        std::size_t j = order[a];
        if (dot(imgG[j], x) != G(j, i)) ok = false;
      }
      if (!ok) continue;
      img[i] = x;
      imgG[i] = x * G;
      rec(k + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const IntMatrix& a, const IntMatrix& b) {
    auto ra = a.to_rows(), rb = b.to_rows();
    return ra < rb;
  });
  return out;
}

DiscriminantAction discriminant_action(const Lattice& T, const std::vector<IntMatrix>& isometries) {
  DiscriminantForm df = discriminant_form(T);
  std::size_t k = df.gens.size();
  DiscriminantAction r;
  if (k == 0) {
    r.target_order = 1;
    r.image_order = 1;
    r.surjective = true;
    return r;
  }
  std::vector<long> ord;
  for (const auto& d : df.orders) ord.push_back(d.get_si());
  std::vector<std::vector<long>> elems{{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::vector<long>> next;
    for (const auto& e : elems)
      for (long a = 0; a < ord[i]; ++a) {
        auto f = e;
        f.push_back(a);
        next.push_back(f);
      }
    elems = next;
  }
  auto q_of = [&](const std::vector<long>& a) {
    Rat s = 0;
    for (std::size_t i = 0; i < k; ++i) {
      s += Rat(a[i] * a[i]) * df.q[i];
      for (std::size_t j = i + 1; j < k; ++j) s += Rat(2 * a[i] * a[j]) * df.b(i, j);
    }
    return mod_rat(s, 2);
  };
  auto b_of = [&](const std::vector<long>& a, const std::vector<long>& c) {
    Rat s = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) s += Rat(a[i] * c[j]) * df.b(i, j);
    return mod_rat(s, 1);
  };
  auto combine = [&](const std::vector<std::vector<long>>& ims, const std::vector<long>& a) {
    std::vector<long> s(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) s[j] = (s[j] + a[i] * ims[i][j]) % ord[j];
    return s;
  };
  std::set<std::vector<std::vector<long>>> autos;
  std::vector<std::vector<long>> ims(k);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      std::set<std::vector<long>> image;
      for (const auto& e : elems) image.insert(combine(ims, e));
      if (image.size() == elems.size()) autos.insert(ims);
      return;
    }
    for (const auto& x : elems) {
      bool ok = true;
      for (std::size_t j = 0; j < k; ++j)
        if ((ord[i] * x[j]) % ord[j] != 0) ok = false;
      if (!ok || q_of(x) != df.q[i]) continue;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (b_of(ims[j], x) != df.b(j, i)) ok = false;
      if (!ok) continue;
      ims[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  r.target_order = autos.size();
  std::set<std::vector<std::vector<long>>> image;
  RatVec dummy;
  for (const auto& M : isometries) {
    RatMatrix Mr = to_rat(M);
    std::vector<std::vector<long>> im(k);
    for (std::size_t i = 0; i < k; ++i) {
      auto c = df.coordinates(df.gens[i] * Mr);
      for (const auto& x : c) im[i].push_back(x.get_si());
    }
    if (!autos.count(im)) throw Error(ErrorCode::NotIsometry, "isometry does not preserve the discriminant form");
    image.insert(im);
  }
  r.image_order = image.size();
  r.surjective = r.image_order == r.target_order;
  return r;
}

}  // namespace k3
