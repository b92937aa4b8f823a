#include "k3/linsys.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace k3 {

namespace {

// F9 index arithmetic for dense elimination
struct Tables9 {
  std::uint8_t add[9][9], mul[9][9], neg[9], inv[9];
  Tables9() {
    for (int a = 0; a < 9; ++a) {
      GF9 x = GF9::from_index(a);
      neg[a] = static_cast<std::uint8_t>((-x).index());
      inv[a] = a ? static_cast<std::uint8_t>(x.inverse().index()) : 0;
      for (int b = 0; b < 9; ++b) {
        GF9 y = GF9::from_index(b);
        add[a][b] = static_cast<std::uint8_t>((x + y).index());
        mul[a][b] = static_cast<std::uint8_t>((x * y).index());
      }
    }
  }
};

const Tables9& T9() {
  static const Tables9 t;
  return t;
}

using Row = std::vector<std::uint8_t>;

// row echelon form of linear functionals on Fⁿ, pivot = first nonzero entry
class Echelon {
 public:
  explicit Echelon(std::size_t n) : n_(n) {}

  bool insert(Row v) {
    const auto& t = T9();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::size_t p = piv_[r];
      std::uint8_t c = v[p];
      if (!c) continue;
      std::uint8_t f = t.neg[c];
      const Row& R = rows_[r];
      for (std::size_t k = p; k < n_; ++k)
        if (R[k]) v[k] = t.add[v[k]][t.mul[f][R[k]]];
    }
    std::size_t p = 0;
    while (p < n_ && !v[p]) ++p;
    if (p == n_) return false;
    std::uint8_t f = t.inv[v[p]];
    for (std::size_t k = p; k < n_; ++k) v[k] = t.mul[f][v[k]];
    rows_.push_back(std::move(v));
    piv_.push_back(p);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

  // basis of {x : f·x = 0 for every stored f}, one vector per free column in increasing order
  std::vector<Row> kernel() const {
    const auto& t = T9();
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return piv_[a] < piv_[b]; });
    std::vector<Row> R;
    std::vector<std::size_t> P;
    for (auto i : order) {
      R.push_back(rows_[i]);
      P.push_back(piv_[i]);
    }
    for (std::size_t i = R.size(); i-- > 0;)
      for (std::size_t j = 0; j < i; ++j) {
        std::uint8_t c = R[j][P[i]];
        if (!c) continue;
        std::uint8_t f = t.neg[c];
        for (std::size_t k = P[i]; k < n_; ++k)
          if (R[i][k]) R[j][k] = t.add[R[j][k]][t.mul[f][R[i][k]]];
      }
    std::vector<bool> is_piv(n_, false);
    for (auto p : P) is_piv[p] = true;
    std::vector<Row> out;
    for (std::size_t f = 0; f < n_; ++f) {
      if (is_piv[f]) continue;
      Row x(n_, 0);
      x[f] = 1;
      for (std::size_t i = 0; i < R.size(); ++i) x[P[i]] = t.neg[R[i][f]];
      out.push_back(std::move(x));
    }
    return out;
  }

 private:
  std::size_t n_;
  std::vector<Row> rows_;
  std::vector<std::size_t> piv_;
};

// linear relations Σ c_i p_i = 0
std::vector<std::vector<GF9>> relations(const std::vector<Poly>& ps) {
  std::map<Poly::Mono, std::size_t> col;
  for (const auto& p : ps)
    for (const auto& [m, c] : p.terms()) col.emplace(m, 0);
  std::size_t M = 0;
  for (auto& [m, k] : col) k = M++;
  std::size_t k = ps.size();
  // columns of the transposed system: one functional per monomial on the coefficient vector c
  Echelon e(k);
  for (const auto& [m, idx] : col) {
    Row r(k, 0);
    for (std::size_t i = 0; i < k; ++i) r[i] = static_cast<std::uint8_t>(ps[i].coef(m).index());
    e.insert(std::move(r));
  }
  std::vector<std::vector<GF9>> out;
  for (const auto& x : e.kernel()) {
    std::vector<GF9> v;
    for (auto c : x) v.push_back(GF9::from_index(c));
    out.push_back(v);
  }
  return out;
}

// independent-set test over polynomials by leading-term reduction
class PolySpan {
 public:
  // reduces p against stored rows; stores and returns true if independent
  bool insert(Poly p) {
    p = residue(p);
    if (p.is_zero()) return false;
    p = p.scaled(p.lead_coef().inverse());
    rows_.emplace(p.lead(), p);
    return true;
  }
  Poly residue(Poly p) const {
    Poly rem;
    while (!p.is_zero()) {
      auto it = rows_.find(p.lead());
      if (it == rows_.end()) {
        rem = rem + Poly::term(p.lead_coef(), Poly::ew(p.lead()), Poly::ex(p.lead()), Poly::ey(p.lead()));
        p = p - Poly::term(p.lead_coef(), Poly::ew(p.lead()), Poly::ex(p.lead()), Poly::ey(p.lead()));
      } else {
        p = p - it->second.scaled(p.lead_coef());
      }
    }
    return rem;
  }
  std::size_t size() const { return rows_.size(); }

 private:
  std::map<Poly::Mono, Poly> rows_;
};

bool divides(Poly::Mono a, Poly::Mono b) {
  return Poly::ew(a) <= Poly::ew(b) && Poly::ex(a) <= Poly::ex(b) && Poly::ey(a) <= Poly::ey(b);
}

Poly::Mono mono_lcm(Poly::Mono a, Poly::Mono b) {
  return Poly::mono(std::max(Poly::ew(a), Poly::ew(b)), std::max(Poly::ex(a), Poly::ex(b)),
                    std::max(Poly::ey(a), Poly::ey(b)));
}

Poly::Mono mono_div(Poly::Mono a, Poly::Mono b) {
  return Poly::mono(Poly::ew(a) - Poly::ew(b), Poly::ex(a) - Poly::ex(b), Poly::ey(a) - Poly::ey(b));
}

Poly monic(const Poly& p) { return p.scaled(p.lead_coef().inverse()); }

}  // namespace

// ---------------------------------------------------------------- Poly

bool Poly::greater(Mono a, Mono b) {
  int da = mdeg(a), db = mdeg(b);
  if (da != db) return da > db;
  if (ey(a) != ey(b)) return ey(a) < ey(b);
  return ex(a) < ex(b);
}

Poly Poly::from_accumulator(std::vector<std::pair<Mono, GF9>> raw) {
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Poly p;
  for (std::size_t i = 0; i < raw.size();) {
    GF9 c = kZero9;
    std::size_t j = i;
    for (; j < raw.size() && raw[j].first == raw[i].first; ++j) c += raw[j].second;
    if (!c.is_zero()) p.t_.emplace_back(raw[i].first, c);
    i = j;
  }
  std::sort(p.t_.begin(), p.t_.end(), [](const auto& a, const auto& b) { return greater(a.first, b.first); });
  return p;
}

Poly Poly::constant(GF9 c) { return term(c, 0, 0, 0); }

Poly Poly::term(GF9 c, int a, int b, int d) {
  Poly p;
  if (!c.is_zero()) p.t_.emplace_back(mono(a, b, d), c);
  return p;
}

Poly Poly::from_terms(const TermList& t) {
  std::vector<std::pair<Mono, GF9>> raw;
  for (const auto& [a, b, c, co] : t) {
    if (a < 0 || b < 0 || c < 0 || a > 255 || b > 255 || c > 255) throw Error(ErrorCode::BadInput, "exponent range");
    raw.emplace_back(mono(a, b, c), co);
  }
  return from_accumulator(std::move(raw));
}

Poly Poly::affine_linear(const std::array<GF9, 4>& e) {
  return from_accumulator({{mono(1, 0, 0), e[0]}, {mono(0, 1, 0), e[1]}, {mono(0, 0, 1), e[2]}, {mono(0, 0, 0), e[3]}});
}

int Poly::degree() const { return t_.empty() ? -1 : mdeg(t_.front().first); }

int Poly::w_degree() const {
  int d = -1;
  for (const auto& [m, c] : t_) d = std::max(d, ew(m));
  return d;
}

GF9 Poly::coef(Mono m) const {
  for (const auto& [mm, c] : t_)
    if (mm == m) return c;
  return kZero9;
}

TermList Poly::to_terms() const {
  TermList t;
  for (const auto& [m, c] : t_) t.emplace_back(ew(m), ex(m), ey(m), c);
  return t;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : t_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")";
    const char* v = "wxy";
    int e[3] = {ew(m), ex(m), ey(m)};
    for (int k = 0; k < 3; ++k)
      if (e[k]) s += std::string("*") + v[k] + (e[k] > 1 ? "^" + std::to_string(e[k]) : "");
  }
  return s;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  std::size_t i = 0, j = 0;
  const auto &x = a.t_, &y = b.t_;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && Poly::greater(x[i].first, y[j].first))) {
      r.t_.push_back(x[i++]);
    } else if (i == x.size() || Poly::greater(y[j].first, x[i].first)) {
      r.t_.push_back(y[j++]);
    } else {
      GF9 c = x[i].second + y[j].second;
      if (!c.is_zero()) r.t_.emplace_back(x[i].first, c);
      ++i;
      ++j;
    }
  }
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  std::unordered_map<Poly::Mono, std::uint8_t> acc;
  const auto& t = T9();
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) {
      auto& slot = acc[ma + mb];
      slot = t.add[slot][t.mul[ca.index()][cb.index()]];
    }
  std::vector<std::pair<Poly::Mono, GF9>> raw;
  raw.reserve(acc.size());
  for (const auto& [m, c] : acc)
    if (c) raw.emplace_back(m, GF9::from_index(c));
  return Poly::from_accumulator(std::move(raw));
}

Poly Poly::scaled(GF9 c) const {
  if (c.is_zero()) return Poly();
  Poly r = *this;
  for (auto& [m, x] : r.t_) x *= c;
  return r;
}

Poly Poly::times_mono(GF9 c, Mono m) const {
  if (c.is_zero()) return Poly();
  Poly r = *this;
  for (auto& [mm, x] : r.t_) {
    mm += m;
    x *= c;
  }
  return r;
}

Poly Poly::frobenius() const {
  Poly r = *this;
  for (auto& [m, x] : r.t_) x = x.frob();
  return r;
}

Poly fermat_affine() {
  return Poly::from_terms({{4, 0, 0, kOne9}, {0, 4, 0, kOne9}, {0, 0, 4, kOne9}, {0, 0, 0, kOne9}});
}

// ---------------------------------------------------------------- NFPoly

NFPoly::NFPoly(const Poly& p) {
  std::vector<std::pair<Poly::Mono, GF9>> raw, stack(p.terms().begin(), p.terms().end());
  while (!stack.empty()) {
    auto [m, c] = stack.back();
    stack.pop_back();
    int a = Poly::ew(m);
    if (a < 4) {
      raw.emplace_back(m, c);
      continue;
    }
    int b = Poly::ex(m), d = Poly::ey(m);
    stack.emplace_back(Poly::mono(a - 4, b + 4, d), -c);
    stack.emplace_back(Poly::mono(a - 4, b, d + 4), -c);
    stack.emplace_back(Poly::mono(a - 4, b, d), -c);
  }
  TermList t;
  for (const auto& [m, c] : raw) t.emplace_back(Poly::ew(m), Poly::ex(m), Poly::ey(m), c);
  p_ = Poly::from_terms(t);
}

NFPoly NFPoly::pow(unsigned e) const {
  NFPoly r(Poly::constant(kOne9)), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

// ---------------------------------------------------------------- Gröbner bases

Poly reduce(const Poly& p, const std::vector<Poly>& gb) {
  std::map<Poly::Mono, GF9, decltype(&Poly::greater)> work(&Poly::greater);
  for (const auto& [m, c] : p.terms()) work[m] = c;
  std::vector<std::pair<Poly::Mono, GF9>> rem;
  while (!work.empty()) {
    auto it = work.begin();
    auto [m, c] = *it;
    const Poly* g = nullptr;
    for (const auto& q : gb)
      if (divides(q.lead(), m)) {
        g = &q;
        break;
      }
    if (!g) {
      rem.emplace_back(m, c);
      work.erase(it);
      continue;
    }
    GF9 f = -(c / g->lead_coef());
    Poly::Mono s = mono_div(m, g->lead());
    for (const auto& [gm, gc] : g->terms()) {
      auto& slot = work[gm + s];
      slot += f * gc;
      if (slot.is_zero()) work.erase(gm + s);
    }
  }
  TermList t;
  for (const auto& [m, c] : rem) t.emplace_back(Poly::ew(m), Poly::ex(m), Poly::ey(m), c);
  return Poly::from_terms(t);
}

std::vector<Poly> groebner_basis(std::vector<Poly> gens) {
  std::vector<Poly> G;
  for (auto& g : gens)
    if (!g.is_zero()) G.push_back(monic(g));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  while (!pairs.empty()) {
    // smallest lcm first
    auto best = pairs.begin();
    for (auto it = pairs.begin(); it != pairs.end(); ++it)
      if (Poly::greater(mono_lcm(G[best->first].lead(), G[best->second].lead()),
                        mono_lcm(G[it->first].lead(), G[it->second].lead())))
        best = it;
    auto [i, j] = *best;
    pairs.erase(best);
    Poly::Mono a = G[i].lead(), b = G[j].lead(), l = mono_lcm(a, b);
    if (l == a + b) continue;  // coprime leading terms
    // chain criterion
    bool skip = false;
    for (std::size_t k = 0; k < G.size() && !skip; ++k) {
      if (k == i || k == j || !divides(G[k].lead(), l)) continue;
      auto has = [&](std::size_t x, std::size_t y) {
        if (x > y) std::swap(x, y);
        return std::find(pairs.begin(), pairs.end(), std::make_pair(x, y)) != pairs.end();
      };
      if (!has(i, k) && !has(j, k)) skip = true;
    }
    if (skip) continue;
    Poly s = G[i].times_mono(kOne9, mono_div(l, a)) - G[j].times_mono(kOne9, mono_div(l, b));
    Poly r = reduce(s, G);
    if (r.is_zero()) continue;
    G.push_back(monic(r));
    for (std::size_t k = 0; k + 1 < G.size(); ++k) pairs.emplace_back(k, G.size() - 1);
  }
  // minimal, then reduced
  std::vector<Poly> min;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < G.size() && !drop; ++j) {
      if (i == j || !divides(G[j].lead(), G[i].lead())) continue;
      drop = G[j].lead() != G[i].lead() || j < i;
    }
    if (!drop) min.push_back(G[i]);
  }
  std::vector<Poly> out;
  for (std::size_t i = 0; i < min.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < min.size(); ++j)
      if (j != i) others.push_back(min[j]);
    Poly lt = Poly::term(kOne9, Poly::ew(min[i].lead()), Poly::ex(min[i].lead()), Poly::ey(min[i].lead()));
    out.push_back(lt + reduce(min[i] - lt, others));
  }
  std::sort(out.begin(), out.end(), [](const Poly& x, const Poly& y) { return Poly::greater(y.lead(), x.lead()); });
  return out;
}

std::vector<Poly> line_power_ideal(const ProjLine& l, int nu) {
  if (nu < 1) throw Error(ErrorCode::BadInput, "multiplicity must be positive");
  auto eq = l.equations();
  Poly L1 = Poly::affine_linear(eq[0]), L2 = Poly::affine_linear(eq[1]);
  std::vector<Poly> p1{Poly::constant(kOne9)}, p2{Poly::constant(kOne9)};
  for (int k = 0; k < nu; ++k) {
    p1.push_back(p1.back() * L1);
    p2.push_back(p2.back() * L2);
  }
  std::vector<Poly> gens{fermat_affine()};
  for (int a = 0; a <= nu; ++a) gens.push_back(p1[a] * p2[nu - a]);
  return groebner_basis(gens);
}

// ---------------------------------------------------------------- linear systems

bool LinSysSpace::contains(const NFPoly& p) const {
  if (p.degree() > d) return false;
  PolySpan s;
  for (const auto& b : basis) s.insert(b.poly());
  return s.residue(p.poly()).is_zero();
}

LinSysSpace gamma_space(const std::vector<ProjLine>& lines, int d, const Multiplicities& mults) {
  if (d < 0) throw Error(ErrorCode::BadInput, "negative degree");
  std::vector<Poly::Mono> monos;
  for (int a = 0; a <= std::min(3, d); ++a)
    for (int b = 0; a + b <= d; ++b)
      for (int c = 0; a + b + c <= d; ++c) monos.push_back(Poly::mono(a, b, c));
  std::sort(monos.begin(), monos.end(), [](auto x, auto y) { return Poly::greater(y, x); });
  std::size_t n = monos.size();
  Echelon ech(n);
  for (const auto& [li, nu] : mults) {
    if (nu <= 0) continue;
    if (li < 0 || static_cast<std::size_t>(li) >= lines.size()) throw Error(ErrorCode::BadInput, "line index");
    auto gb = line_power_ideal(lines[li], nu);
    // monomials come in increasing order, so m / var is already known
    std::unordered_map<Poly::Mono, Poly> nf;
    std::map<Poly::Mono, std::size_t> col;
    std::vector<Poly> images(n);
    for (std::size_t k = 0; k < n; ++k) {
      Poly::Mono m = monos[k];
      Poly img;
      if (m == 0) {
        img = reduce(Poly::constant(kOne9), gb);
      } else {
        int v = Poly::ey(m) ? 0 : Poly::ex(m) ? 1 : 2;
        Poly::Mono step = v == 0 ? Poly::mono(0, 0, 1) : v == 1 ? Poly::mono(0, 1, 0) : Poly::mono(1, 0, 0);
        img = reduce(nf.at(m - step).times_mono(kOne9, step), gb);
      }
      for (const auto& [mm, c] : img.terms()) col.emplace(mm, 0);
      nf[m] = img;
      images[k] = std::move(img);
    }
    std::size_t C = 0;
    for (auto& [mm, idx] : col) idx = C++;
    std::vector<Row> rows(C, Row(n, 0));
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& [mm, c] : images[k].terms()) rows[col[mm]][k] = static_cast<std::uint8_t>(c.index());
    for (auto& r : rows) ech.insert(std::move(r));
  }
  LinSysSpace out;
  out.d = d;
  out.mults = mults;
  for (const auto& x : ech.kernel()) {
    std::vector<std::pair<Poly::Mono, GF9>> t;
    TermList tl;
    for (std::size_t k = 0; k < n; ++k)
      if (x[k]) tl.emplace_back(Poly::ew(monos[k]), Poly::ex(monos[k]), Poly::ey(monos[k]), GF9::from_index(x[k]));
    out.basis.push_back(NFPoly::from_terms(tl));
  }
  return out;
}


// ---------------------------------------------------------------- decompositions

namespace {

struct DecompositionSearch {
  std::size_t L, n, limit;
  int max_mult;
  std::vector<std::vector<long>> cls, pr;  // class and class·N of each line
  std::vector<std::vector<long>> gram;
  std::set<std::vector<int>> visited;
  std::vector<Multiplicities> sols;
  std::size_t nodes = 0;

  void run(std::vector<long>& R, long remaining, std::vector<int>& a) {
    if (sols.size() >= limit) return;
    if (remaining == 0) {
      if (std::all_of(R.begin(), R.end(), [](long x) { return x == 0; })) {
        Multiplicities m;
        for (std::size_t j = 0; j < L; ++j)
          if (a[j]) m[static_cast<int>(j)] = a[j];
        sols.push_back(m);
      }
      return;
    }
    if (remaining < 0 || !visited.insert(a).second) return;
    if (++nodes > 2000000) throw Error(ErrorCode::TooLarge, "decomposition search exceeded node budget");
    std::vector<long> p(L, 0);
    for (std::size_t j = 0; j < L; ++j)
      for (std::size_t i = 0; i < n; ++i) p[j] += R[i] * pr[j][i];
    auto take = [&](std::size_t j) {
      ++a[j];
      for (std::size_t i = 0; i < n; ++i) R[i] -= cls[j][i];
      run(R, remaining - 1, a);
      for (std::size_t i = 0; i < n; ++i) R[i] += cls[j][i];
      --a[j];
    };
    // a line meeting the residual negatively lies in every decomposition of it
    for (std::size_t j = 0; j < L; ++j)
      if (p[j] < 0) {
        if (a[j] < max_mult) take(j);
        return;
      }
    long R2 = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) R2 += R[i] * gram[i][k] * R[k];
    if (R2 < 0) return;
    for (std::size_t j = 0; j < L && sols.size() < limit; ++j)
      if (a[j] < max_mult) take(j);
  }
};

}  // namespace

bool same_linear_system(const LinSysSpace& a, const LinSysSpace& b) {
  const std::size_t k = a.dim();
  if (k != b.dim()) return false;
  if (k == 0) return true;
  // unknown M (k×k), φ(a_r) = Σ_l M_rl b_l; conditions a_i·φ(a_j) − a_j·φ(a_i) = 0
  std::vector<std::vector<Poly>> ab(k, std::vector<Poly>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l) ab[i][l] = (a.basis[i] * b.basis[l]).poly();
  Echelon e(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      std::map<Poly::Mono, Row> rows;
      auto put = [&](std::size_t r, std::size_t l, const Poly& p, bool neg) {
        for (const auto& [m, c] : p.terms()) {
          auto [it, fresh] = rows.try_emplace(m, Row(k * k, 0));
          GF9 v = neg ? -c : c;
          auto& slot = it->second[r * k + l];
          slot = static_cast<std::uint8_t>((GF9::from_index(slot) + v).index());
        }
      };
      for (std::size_t l = 0; l < k; ++l) {
        put(j, l, ab[i][l], false);
        put(i, l, ab[j][l], true);
      }
      for (auto& [m, r] : rows) e.insert(std::move(r));
    }
  for (const auto& x : e.kernel()) {
    Mat9 M(k, std::vector<GF9>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t l = 0; l < k; ++l) M[r][l] = GF9::from_index(x[r * k + l]);
    // invertible?
    bool ok = true;
    for (std::size_t c = 0; c < k && ok; ++c) {
      std::size_t p = c;
      while (p < k && M[p][c].is_zero()) ++p;
      if (p == k) {
        ok = false;
        break;
      }
      std::swap(M[p], M[c]);
      GF9 f = M[c][c].inverse();
      for (std::size_t r = c + 1; r < k; ++r) {
        GF9 g = M[r][c] * f;
        for (std::size_t q = c; q < k; ++q) M[r][q] -= g * M[c][q];
      }
    }
    if (ok) return true;
  }
  return false;
}

std::vector<Multiplicities> effective_decompositions(const LineConfiguration& cfg, const IntVec& h0, const IntVec& v,
                                                     int d, std::size_t limit, int max_mult) {
  const std::size_t L = cfg.lines.size(), n = cfg.N.rows();
  if (h0.size() != n || v.size() != n) throw Error(ErrorCode::DimensionMismatch, "effective_decompositions");
  Lattice S(cfg.N);
  DecompositionSearch s{L, n, limit, max_mult, {}, {}, {}, {}, {}, 0};
  s.gram.assign(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) s.gram[i][k] = cfg.N(i, k).get_si();
  for (std::size_t j = 0; j < L; ++j) {
    if (S.pair(cfg.classes[j], h0) != 1) throw Error(ErrorCode::BadInput, "h0 is not the hyperplane class");
    std::vector<long> c(n), q(n, 0);
    for (std::size_t i = 0; i < n; ++i) c[i] = cfg.classes[j][i].get_si();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) q[i] += s.gram[i][k] * c[k];
    s.cls.push_back(c);
    s.pr.push_back(q);
  }
  std::vector<long> R(n);
  IntVec D(n);
  for (std::size_t i = 0; i < n; ++i) {
    D[i] = d * h0[i] - v[i];
    R[i] = D[i].get_si();
  }
  Int total = S.pair(D, h0);
  std::vector<int> a(L, 0);
  if (total >= 0) s.run(R, total.get_si(), a);
  return s.sols;
}

Multiplicities effective_decomposition(const LineConfiguration& cfg, const IntVec& h0, const IntVec& v, int d) {
  auto sols = effective_decompositions(cfg, h0, v, d, 1);
  if (sols.empty()) throw Error(ErrorCode::NoDecomposition, "no effective line decomposition in degree " + std::to_string(d));
  return sols.front();
}

bool polarization_test(const Lattice& S, const RatVec& h0, const RatVec& v, int degree) {
  if (S.norm(v) != degree) return false;
  return separating_roots(S, h0, v).empty() && isotropic_with_pairing(S, v, Rat(1)).empty();
}

// ---------------------------------------------------------------- root systems

std::string RootSystemType::str() const {
  // A before D before E, then by rank
  std::vector<std::pair<std::pair<char, int>, int>> parts;
  for (const auto& [k, c] : counts) parts.push_back({{k[0], std::stoi(k.substr(1))}, c});
  std::sort(parts.begin(), parts.end());
  std::string s;
  for (const auto& [t, c] : parts) {
    if (!s.empty()) s += "+";
    if (c > 1) s += std::to_string(c);
    s += t.first + std::to_string(t.second);
  }
  return s.empty() ? "0" : s;
}

std::size_t RootSystemType::rank() const {
  std::size_t r = 0;
  for (const auto& [k, c] : counts) r += static_cast<std::size_t>(std::stoi(k.substr(1)) * c);
  return r;
}

std::size_t ContractedClasses::simple_count() const {
  std::size_t s = 0;
  for (const auto& c : components) s += c.size();
  return s;
}

ContractedClasses contracted_classes(const Lattice& S, const RatVec& h0, const RatVec& m) {
  ContractedClasses out;
  std::vector<IntVec> simple;
  for (const auto& r : roots_orthogonal_to(S, m)) {
    Rat a = S.pair(r, h0);
    if (a <= 0) continue;
    IntVec ri = to_int(r);
    out.positive_roots.push_back(ri);
    if (a == 1) simple.push_back(ri);
  }
  std::size_t k = simple.size();
  std::vector<std::vector<int>> adj(k);
  bool simply_laced = true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      Int p = S.pair(simple[i], simple[j]);
      if (p == 1) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      } else if (p != 0) {
        simply_laced = false;
      }
    }
  std::vector<int> comp(k, -1);
  for (std::size_t s0 = 0; s0 < k; ++s0) {
    if (comp[s0] >= 0) continue;
    std::vector<int> verts{static_cast<int>(s0)};
    comp[s0] = static_cast<int>(s0);
    for (std::size_t q = 0; q < verts.size(); ++q)
      for (int u : adj[verts[q]])
        if (comp[u] < 0) {
          comp[u] = static_cast<int>(s0);
          verts.push_back(u);
        }
    std::size_t edges = 0;
    std::vector<int> branch;
    for (int u : verts) {
      edges += adj[u].size();
      if (adj[u].size() >= 3) branch.push_back(u);
    }
    edges /= 2;
    std::size_t nv = verts.size();
    std::string name;
    std::vector<IntVec> ordered;
    if (!simply_laced || edges != nv - 1) {
      name = "X" + std::to_string(nv);
    } else if (branch.empty()) {
      // path: walk from the lowest endpoint
      int start = -1;
      for (int u : verts)
        if (adj[u].size() <= 1 && (start < 0 || u < start)) start = u;
      int prev = -1, cur = start;
      while (cur >= 0) {
        ordered.push_back(simple[cur]);
        int nxt = -1;
        for (int u : adj[cur])
          if (u != prev) nxt = u;
        prev = cur;
        cur = nxt;
      }
      name = "A" + std::to_string(nv);
    } else if (branch.size() == 1 && adj[branch[0]].size() == 3) {
      std::vector<int> arms;
      for (int u : adj[branch[0]]) {
        int len = 1, prev = branch[0], cur = u;
        while (adj[cur].size() == 2) {
          int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
          prev = cur;
          cur = nxt;
          ++len;
        }
        arms.push_back(len);
      }
      std::sort(arms.begin(), arms.end());
      if (arms[0] == 1 && arms[1] == 1) name = "D" + std::to_string(nv);
      else if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) name = "E" + std::to_string(nv);
      else name = "X" + std::to_string(nv);
    } else {
      name = "X" + std::to_string(nv);
    }
    if (ordered.empty())
      for (int u : verts) ordered.push_back(simple[u]);
    out.type.counts[name]++;
    out.components.push_back(ordered);
  }
  // every positive root is a nonnegative integral combination of the simple ones
  out.combination_property = true;
  if (k > 0) {
    RatMatrix B(k, S.rank());
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < S.rank(); ++j) B(i, j) = simple[i][j];
    if (rank(B) != k) {
      out.combination_property = false;
    } else {
      RatMatrix target(out.positive_roots.size(), S.rank());
      for (std::size_t i = 0; i < out.positive_roots.size(); ++i)
        for (std::size_t j = 0; j < S.rank(); ++j) target(i, j) = out.positive_roots[i][j];
      try {
        RatMatrix X = solve_left(B, target);
        for (std::size_t i = 0; i < X.rows(); ++i)
          for (std::size_t j = 0; j < X.cols(); ++j)
            if (X(i, j) < 0 || X(i, j).get_den() != 1) out.combination_property = false;
      } catch (const Error&) {
        out.combination_property = false;
      }
    }
  } else {
    out.combination_property = out.positive_roots.empty();
  }
  return out;
}

IntMatrix involution_from_eigenspaces(const Lattice& S, const RatVec& m, const ContractedClasses& c) {
  const std::size_t n = S.rank();
  std::vector<RatVec> plus{m};
  for (const auto& chain : c.components) {
    if (chain.size() > 1)
      for (std::size_t j = 1; j < chain.size(); ++j)
        if (S.pair(chain[j - 1], chain[j]) != 1) throw Error(ErrorCode::BadInput, "component is not an A-chain");
    std::size_t r = chain.size();
    for (std::size_t j = 0; j < (r + 1) / 2; ++j) plus.push_back(to_rat(chain[j]) + to_rat(chain[r - 1 - j]));
  }
  RatMatrix Pp = RatMatrix::from_rows(plus);
  if (rank(Pp) != plus.size()) throw Error(ErrorCode::Singular, "+1 eigenspace generators are dependent");
  RatMatrix minus = left_kernel(S.gram_rat() * transpose(Pp));
  if (plus.size() + minus.rows() != n) throw Error(ErrorCode::Singular, "eigenspaces do not span");
  RatMatrix P(n, n), D(n, n);
  for (std::size_t i = 0; i < plus.size(); ++i) {
    P.set_row(i, plus[i]);
    D(i, i) = 1;
  }
  for (std::size_t i = 0; i < minus.rows(); ++i) {
    P.set_row(plus.size() + i, minus.row(i));
    D(plus.size() + i, plus.size() + i) = -1;
  }
  RatMatrix A = inverse(P) * D * P;
  if (!is_integral(A)) throw Error(ErrorCode::NonIntegralInvolution, "eigenspace involution is not integral");
  return to_int(A);
}

// ---------------------------------------------------------------- ternary forms

TernaryForm TernaryForm::from_terms(const TermList& t) {
  TernaryForm f;
  for (const auto& [a, b, c, co] : t) {
    auto& slot = f.terms[{a, b, c}];
    slot += co;
    if (slot.is_zero()) f.terms.erase({a, b, c});
  }
  return f;
}

int TernaryForm::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

GF81 TernaryForm::eval(const std::array<GF81, 3>& p) const {
  GF81 s;
  for (const auto& [e, c] : terms) s += GF81(c) * p[0].pow(e[0]) * p[1].pow(e[1]) * p[2].pow(e[2]);
  return s;
}

TernaryForm TernaryForm::scaled(GF9 c) const {
  TernaryForm f;
  if (c.is_zero()) return f;
  for (const auto& [e, x] : terms) f.terms[e] = x * c;
  return f;
}

namespace {

TernaryForm tmul(const TernaryForm& a, const TernaryForm& b) {
  TernaryForm r;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::array<int, 3> e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      auto& slot = r.terms[e];
      slot += ca * cb;
      if (slot.is_zero()) r.terms.erase(e);
    }
  return r;
}

TernaryForm tsub(const TernaryForm& a, const TernaryForm& b) {
  TernaryForm r = a;
  for (const auto& [e, c] : b.terms) {
    auto& slot = r.terms[e];
    slot -= c;
    if (slot.is_zero()) r.terms.erase(e);
  }
  return r;
}

std::vector<std::array<int, 3>> ternary_monomials(int d) {
  std::vector<std::array<int, 3>> out;
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
  return out;
}

TernaryForm partial(const TernaryForm& f, int v) {
  TernaryForm r;
  for (const auto& [e, c] : f.terms) {
    if (e[v] == 0 || e[v] % 3 == 0) continue;
    auto e2 = e;
    --e2[v];
    r.terms[e2] = c * GF9::make(e[v], 0);
  }
  return r;
}

}  // namespace

NFPoly substitute(const TernaryForm& f, const std::vector<NFPoly>& F) {
  if (F.size() != 3) throw Error(ErrorCode::DimensionMismatch, "substitute needs three polynomials");
  int d = std::max(f.degree(), 0);
  std::vector<std::vector<NFPoly>> pw(3);
  for (int v = 0; v < 3; ++v) {
    pw[v].push_back(NFPoly(Poly::constant(kOne9)));
    for (int k = 1; k <= d; ++k) pw[v].push_back(pw[v].back() * F[v]);
  }
  Poly acc;
  for (const auto& [e, c] : f.terms) acc = acc + (pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]]).poly().scaled(c);
  return NFPoly(acc);
}

bool proportional(const TernaryForm& f, const TernaryForm& g) {
  if (f.terms.empty() || g.terms.empty()) return f.terms.empty() && g.terms.empty();
  const auto& [e, c] = *g.terms.begin();
  auto it = f.terms.find(e);
  if (it == f.terms.end()) return false;
  return f == g.scaled(it->second / c);
}

DoublePlane double_plane_model(const std::vector<NFPoly>& F, const LinSysSpace& space3) {
  if (F.size() != 3) throw Error(ErrorCode::DimensionMismatch, "double plane needs a basis of three sections");
  auto cub = ternary_monomials(3);
  std::vector<NFPoly> cubics;
  PolySpan span;
  for (const auto& e : cub) {
    TernaryForm t;
    t.terms[e] = kOne9;
    cubics.push_back(substitute(t, F));
    if (!space3.contains(cubics.back())) throw Error(ErrorCode::BadInput, "cubic in the sections leaves the 3m space");
    if (!span.insert(cubics.back().poly())) throw Error(ErrorCode::Singular, "cubics in the sections are dependent");
  }
  if (space3.dim() != cubics.size() + 1)
    throw Error(ErrorCode::DimensionMismatch, "3m space has dimension " + std::to_string(space3.dim()));
  const NFPoly* G = nullptr;
  for (const auto& b : space3.basis)
    if (!span.residue(b.poly()).is_zero()) {
      G = &b;
      break;
    }
  // G², G·cubics, sextics: 39 sections of 6m
  std::vector<Poly> sec{(*G * *G).poly()};
  for (const auto& c : cubics) sec.push_back((*G * c).poly());
  auto sex = ternary_monomials(6);
  for (const auto& e : sex) {
    TernaryForm t;
    t.terms[e] = kOne9;
    sec.push_back(substitute(t, F).poly());
  }
  auto rel = relations(sec);
  if (rel.empty()) throw Error(ErrorCode::NoRelation, "no relation among the degree-6 sections");
  if (rel.size() > 1) throw Error(ErrorCode::NoRelation, "relation among the degree-6 sections is not unique");
  auto r = rel.front();
  if (r[0].is_zero()) throw Error(ErrorCode::DegenerateSquare, "relation has no G² term");
  GF9 n = r[0].inverse();
  TernaryForm C, Sx;
  for (std::size_t k = 0; k < cub.size(); ++k)
    if (!r[1 + k].is_zero()) C.terms[cub[k]] = r[1 + k] * n;
  for (std::size_t k = 0; k < sex.size(); ++k)
    if (!r[1 + cub.size() + k].is_zero()) Sx.terms[sex[k]] = r[1 + cub.size() + k] * n;
  // G² + G·C + S = (G − C)² − C² + S in characteristic 3
  DoublePlane out;
  out.G = *G - substitute(C, F);
  out.f = tsub(Sx, tmul(C, C));
  if (!(out.G * out.G + substitute(out.f, F)).is_zero()) throw Error(ErrorCode::NoRelation, "completed square fails");
  return out;
}

// ---------------------------------------------------------------- sextic singularities

namespace {

using UPoly = std::vector<GF81>;  // ascending coefficients

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

UPoly umod(UPoly a, const UPoly& b) {
  trim(a);
  GF81 li = b.back().inverse();
  while (a.size() >= b.size()) {
    GF81 f = a.back() * li;
    std::size_t s = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[s + k] -= f * b[k];
    trim(a);
  }
  return a;
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = umod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// f(P + tQ)
UPoly restrict_form(const TernaryForm& f, const std::array<GF81, 3>& P, const std::array<GF81, 3>& Q) {
  int d = std::max(f.degree(), 0);
  std::vector<std::vector<UPoly>> pw(3);
  for (int v = 0; v < 3; ++v) {
    pw[v].push_back({GF81(kOne9)});
    UPoly lin{P[v], Q[v]};
    trim(lin);
    for (int k = 1; k <= d; ++k) pw[v].push_back(umul(pw[v].back(), lin));
  }
  UPoly r;
  for (const auto& [e, c] : f.terms) {
    UPoly t = umul(umul(pw[0][e[0]], pw[1][e[1]]), pw[2][e[2]]);
    if (r.size() < t.size()) r.resize(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) r[k] += GF81(c) * t[k];
  }
  trim(r);
  return r;
}

std::vector<std::array<GF81, 3>> plane_points81() {
  std::vector<std::array<GF81, 3>> pts;
  GF81 one(kOne9), zero;
  for (int a = 0; a < 81; ++a)
    for (int b = 0; b < 81; ++b) pts.push_back({one, GF81::from_index(a), GF81::from_index(b)});
  for (int b = 0; b < 81; ++b) pts.push_back({zero, one, GF81::from_index(b)});
  pts.push_back({zero, zero, one});
  return pts;
}

constexpr int kSeries = 24;
using Series = std::vector<GF81>;  // truncated at kSeries

Series smul(const Series& a, const Series& b) {
  Series r(kSeries);
  for (int i = 0; i < kSeries; ++i)
    if (!a[i].is_zero())
      for (int j = 0; i + j < kSeries; ++j) r[i + j] += a[i] * b[j];
  return r;
}

// dense bivariate g[i][j] x^i y^j of f(P + x·α + y·β)
std::vector<std::vector<GF81>> local_expansion(const TernaryForm& f, const std::array<GF81, 3>& P,
                                               const std::array<GF81, 3>& al, const std::array<GF81, 3>& be) {
  int d = std::max(f.degree(), 0);
  using B = std::vector<std::vector<GF81>>;
  auto bmul = [&](const B& a, const B& b) {
    B r(d + 1, std::vector<GF81>(d + 1));
    for (int i = 0; i <= d; ++i)
      for (int j = 0; i + j <= d; ++j)
        if (!a[i][j].is_zero())
          for (int k = 0; i + k <= d; ++k)
            for (int l = 0; i + k + j + l <= d; ++l) r[i + k][j + l] += a[i][j] * b[k][l];
    return r;
  };
  std::vector<std::vector<B>> pw(3);
  for (int v = 0; v < 3; ++v) {
    B one(d + 1, std::vector<GF81>(d + 1)), lin = one;
    one[0][0] = GF81(kOne9);
    lin[0][0] = P[v];
    if (d >= 1) {
      lin[1][0] = al[v];
      lin[0][1] = be[v];
    }
    pw[v].push_back(one);
    for (int k = 1; k <= d; ++k) pw[v].push_back(bmul(pw[v].back(), lin));
  }
  B g(d + 1, std::vector<GF81>(d + 1));
  for (const auto& [e, c] : f.terms) {
    B t = bmul(bmul(pw[0][e[0]], pw[1][e[1]]), pw[2][e[2]]);
    for (int i = 0; i <= d; ++i)
      for (int j = 0; i + j <= d; ++j) g[i][j] += GF81(c) * t[i][j];
  }
  return g;
}

int a_type(const TernaryForm& f, const std::array<GF81, 3>& P) {
  int k = 0;
  while (P[k].is_zero()) ++k;
  std::array<GF81, 3> e1{}, e2{};
  int a = (k + 1) % 3, b = (k + 2) % 3;
  if (a > b) std::swap(a, b);
  e1[a] = GF81(kOne9);
  e2[b] = GF81(kOne9);
  auto g = local_expansion(f, P, e1, e2);
  GF81 q20 = g[2][0], q11 = g[1][1], q02 = g[0][2];
  if (q20.is_zero() && q11.is_zero() && q02.is_zero()) return 0;
  if (!(q11 * q11 - GF81(GF9::make(4, 0)) * q20 * q02).is_zero()) return 1;
  // rank one: rotate so the quadratic part is c·Y²
  std::array<GF81, 3> al = e1, be = e2;
  if (!q02.is_zero()) {
    GF81 t = q11 / (GF81(GF9::make(2, 0)) * q02);
    for (int v = 0; v < 3; ++v) al[v] = e1[v] - t * e2[v];
  } else {
    std::swap(al, be);
  }
  g = local_expansion(f, P, al, be);
  int d = static_cast<int>(g.size()) - 1;
  GF81 ci = g[0][2].inverse();
  for (auto& row : g)
    for (auto& x : row) x *= ci;
  // Y = φ(x) solving ∂g/∂Y = 0, then g(x, φ(x)) has order n+1
  GF81 half = GF81(GF9::make(2, 0)).inverse();
  Series phi(kSeries);
  for (int it = 0; it < kSeries + 2; ++it) {
    Series gy(kSeries), yp(kSeries);
    yp[0] = GF81(kOne9);
    std::vector<Series> pows{yp};
    for (int j = 1; j <= d; ++j) pows.push_back(smul(pows.back(), phi));
    for (int i = 0; i <= d; ++i)
      for (int j = 1; i + j <= d; ++j) {
        if (g[i][j].is_zero()) continue;
        GF81 c = g[i][j] * GF81(GF9::make(j, 0));
        for (int s = 0; s + i < kSeries; ++s) gy[s + i] += c * pows[j - 1][s];
      }
    for (int s = 0; s < kSeries; ++s) phi[s] -= half * gy[s];
  }
  Series h(kSeries), yp(kSeries);
  yp[0] = GF81(kOne9);
  std::vector<Series> pows{yp};
  for (int j = 1; j <= d; ++j) pows.push_back(smul(pows.back(), phi));
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) {
      if (g[i][j].is_zero()) continue;
      for (int s = 0; s + i < kSeries; ++s) h[s + i] += g[i][j] * pows[j][s];
    }
  for (int s = 0; s < kSeries; ++s)
    if (!h[s].is_zero()) return s - 1;
  return 0;
}

}  // namespace

bool is_reduced(const TernaryForm& f) {
  if (f.terms.empty()) return false;
  auto pts = plane_points81();
  std::size_t tries = 0;
  for (std::size_t qi = 0; qi < pts.size() && tries < 4000; ++qi) {
    const auto& Q = pts[qi];
    if (f.eval(Q).is_zero()) continue;
    for (std::size_t pi = 0; pi < pts.size() && tries < 4000; pi += 97, ++tries) {
      if (pi == qi) continue;
      UPoly r = restrict_form(f, pts[pi], Q);
      UPoly dr;
      for (std::size_t k = 1; k < r.size(); ++k) dr.push_back(r[k] * GF81(GF9::make(static_cast<int>(k), 0)));
      trim(dr);
      if (dr.empty()) continue;
      if (ugcd(r, dr).size() == 1) return true;
    }
  }
  return false;
}

std::vector<SingularPoint> singular_points_of_sextic(const TernaryForm& f) {
  if (!is_reduced(f)) throw Error(ErrorCode::NonReduced, "curve is not reduced");
  TernaryForm d[3] = {partial(f, 0), partial(f, 1), partial(f, 2)};
  std::vector<SingularPoint> out;
  for (const auto& p : plane_points81()) {
    if (!f.eval(p).is_zero()) continue;
    if (!d[0].eval(p).is_zero() || !d[1].eval(p).is_zero() || !d[2].eval(p).is_zero()) continue;
    out.push_back({p, a_type(f, p)});
  }
  return out;
}

// ---------------------------------------------------------------- maps of the surface

namespace {

using BForm = std::vector<GF9>;  // binary form, coefficient k of u^k v^(deg-k); size deg+1

BForm bmul(const BForm& a, const BForm& b) {
  BForm r(a.size() + b.size() - 1, kZero9);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

bool bzero(const BForm& a) {
  return std::all_of(a.begin(), a.end(), [](GF9 x) { return x.is_zero(); });
}

using U9 = std::vector<GF9>;

void trim9(U9& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

U9 umod9(U9 a, const U9& b) {
  trim9(a);
  GF9 li = b.back().inverse();
  while (a.size() >= b.size()) {
    GF9 f = a.back() * li;
    std::size_t s = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[s + k] -= f * b[k];
    trim9(a);
  }
  return a;
}

U9 ugcd9(U9 a, U9 b) {
  trim9(a);
  trim9(b);
  while (!b.empty()) {
    U9 r = umod9(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    GF9 li = a.back().inverse();
    for (auto& x : a) x *= li;
  }
  return a;
}

// multiplicity of v as a factor; form must be nonzero
int v_mult(const BForm& a) {
  int top = static_cast<int>(a.size()) - 1;
  while (a[top].is_zero()) --top;
  return static_cast<int>(a.size()) - 1 - top;
}

// gcd of nonzero binary forms, as (v-power, monic u-part in ascending coefficients)
std::pair<int, U9> bgcd(const std::vector<BForm>& fs) {
  int vm = -1;
  U9 g;
  for (const auto& f : fs) {
    if (bzero(f)) continue;
    int m = v_mult(f);
    U9 u(f.begin(), f.end());
    g = vm < 0 ? ugcd9(u, {}) : ugcd9(g, u);
    vm = vm < 0 ? m : std::min(vm, m);
  }
  return {vm, g};
}

// exact division of a binary form by v^k·g(u,v), g given by ascending u-coefficients (dehomogenized at v = 1)
BForm bdiv(const BForm& a, int k, const U9& g) {
  std::size_t deg = a.size() - 1, dg = g.size() - 1;
  U9 u(a.begin(), a.end());
  trim9(u);
  // quotient q with u = q·g; deg_form(result) = deg − k − dg
  U9 q(u.size() >= g.size() ? u.size() - g.size() + 1 : 0, kZero9);
  U9 r = u;
  GF9 li = g.back().inverse();
  while (r.size() >= g.size() && !r.empty()) {
    std::size_t s = r.size() - g.size();
    GF9 f = r.back() * li;
    q[s] = f;
    for (std::size_t j = 0; j < g.size(); ++j) r[s + j] -= f * g[j];
    trim9(r);
  }
  if (!r.empty()) throw Error(ErrorCode::BadInput, "binary form division is not exact");
  BForm out(deg - k - dg + 1, kZero9);
  for (std::size_t j = 0; j < q.size() && j < out.size(); ++j) out[j] = q[j];
  return out;
}

int intersection_degree(const BForm& p1, const BForm& p2) {
  auto [vm, g] = bgcd({p1, p2});
  return vm + static_cast<int>(g.size()) - 1;
}

}  // namespace

IntMatrix induced_isometry_of_map(const LineConfiguration& cfg, const std::vector<NFPoly>& H) {
  if (H.size() != 4) throw Error(ErrorCode::DimensionMismatch, "map needs four components");
  {
    NFPoly s;
    for (const auto& h : H) s = s + h.pow(4);
    if (!s.is_zero()) throw Error(ErrorCode::QuarticIdentityFails, "components do not satisfy the Fermat identity");
  }
  int D = 0;
  for (const auto& h : H) D = std::max(D, h.degree());
  std::vector<HomogeneousPoly> hom;
  for (const auto& h : H) hom.push_back(homogenize(h.poly().to_terms(), D));
  const std::size_t L = cfg.lines.size(), n = cfg.N.rows();
  std::vector<IntVec> src, dst;
  for (std::size_t k = 0; k < L; ++k) {
    const auto& rows = cfg.lines[k].rows();
    std::array<BForm, 4> X;
    for (int i = 0; i < 4; ++i) X[i] = {rows[1][i], rows[0][i]};  // u·R0 + v·R1
    std::array<std::vector<BForm>, 4> pw;
    for (int i = 0; i < 4; ++i) {
      pw[i].push_back({kOne9});
      for (int e = 1; e <= D; ++e) pw[i].push_back(bmul(pw[i].back(), X[i]));
    }
    std::vector<BForm> Lj;
    for (const auto& hp : hom) {
      BForm acc(D + 1, kZero9);
      for (const auto& [e, c] : hp.terms) {
        BForm t = bmul(bmul(pw[0][e[0]], pw[1][e[1]]), bmul(pw[2][e[2]], pw[3][e[3]]));
        for (std::size_t s = 0; s < t.size(); ++s) acc[s] += c * t[s];
      }
      Lj.push_back(acc);
    }
    if (std::all_of(Lj.begin(), Lj.end(), bzero)) continue;  // base locus
    auto [vm, g] = bgcd(Lj);
    std::vector<BForm> rho;
    for (const auto& f : Lj) rho.push_back(bzero(f) ? BForm(D + 1 - vm - (g.size() - 1), kZero9) : bdiv(f, vm, g));
    std::vector<long> pairing(L);
    for (std::size_t kk = 0; kk < L; ++kk) {
      auto E = cfg.lines[kk].equations();
      BForm p1(rho[0].size(), kZero9), p2 = p1;
      for (int i = 0; i < 4; ++i)
        for (std::size_t s = 0; s < p1.size(); ++s) {
          p1[s] += E[0][i] * rho[i][s];
          p2[s] += E[1][i] * rho[i][s];
        }
      pairing[kk] = bzero(p1) && bzero(p2) ? -2 : intersection_degree(p1, p2);
    }
    RatVec pb(n);
    for (std::size_t i = 0; i < n; ++i) pb[i] = pairing[cfg.basis[i]];
    RatVec cls = pb * cfg.N_inv;
    if (!is_integral(cls)) throw Error(ErrorCode::NonIntegralImage, "image class of line " + std::to_string(k));
    IntVec ci = to_int(cls);
    IntVec cN = ci * cfg.N;
    for (std::size_t kk = 0; kk < L; ++kk)
      if (dot(cN, cfg.classes[kk]) != pairing[kk])
        throw Error(ErrorCode::NotAutomorphism, "intersection numbers of an image curve are inconsistent");
    src.push_back(cfg.classes[k]);
    dst.push_back(ci);
  }
  // 22 independent source rows
  std::vector<RatVec> rows_src, rows_dst;
  for (std::size_t k = 0; k < src.size() && rows_src.size() < n; ++k) {
    auto trial = rows_src;
    trial.push_back(to_rat(src[k]));
    if (rank(RatMatrix::from_rows(trial)) == trial.size()) {
      rows_src.push_back(to_rat(src[k]));
      rows_dst.push_back(to_rat(dst[k]));
    }
  }
  if (rows_src.size() < n) throw Error(ErrorCode::BaseLocusTooLarge, "usable lines do not span");
  RatMatrix A = inverse(RatMatrix::from_rows(rows_src)) * RatMatrix::from_rows(rows_dst);
  if (!is_integral(A)) throw Error(ErrorCode::NonIntegralImage, "induced matrix is not integral");
  IntMatrix Ai = to_int(A);
  for (std::size_t k = 0; k < src.size(); ++k)
    if (src[k] * Ai != dst[k]) throw Error(ErrorCode::NotAutomorphism, "line images are not linear");
  if (Ai * cfg.N * transpose(Ai) != cfg.N) throw Error(ErrorCode::NotIsometry, "induced matrix is not an isometry");
  return Ai;
}

// ---------------------------------------------------------------- hermitian relation

namespace {

Mat9 mat9(std::size_t n) { return Mat9(n, std::vector<GF9>(n, kZero9)); }

Mat9 mat9_inverse(Mat9 a) {
  std::size_t n = a.size();
  Mat9 inv = mat9(n);
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = kOne9;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) throw Error(ErrorCode::SingularHermitian, "matrix is singular");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    GF9 f = a[c][c].inverse();
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] *= f;
      inv[c][k] *= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      GF9 g = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= g * a[c][k];
        inv[r][k] -= g * inv[c][k];
      }
    }
  }
  return inv;
}

// h(x,y) = x·A·y*, y* = conjugate transpose
GF9 herm(const Mat9& A, const std::vector<GF9>& x, const std::vector<GF9>& y) {
  GF9 s = kZero9;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * A[i][j] * y[j].frob();
  return s;
}

}  // namespace

HermitianRelation hermitian_quartic_relation(const std::vector<NFPoly>& H) {
  const std::size_t n = H.size();
  if (n != 4) throw Error(ErrorCode::DimensionMismatch, "hermitian relation needs four polynomials");
  std::vector<Poly> prods;
  std::vector<NFPoly> cubes;
  for (const auto& h : H) cubes.push_back(h.pow(3));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prods.push_back((H[i] * cubes[j]).poly());
  auto rel = relations(prods);
  if (rel.empty()) throw Error(ErrorCode::NoRelation, "no relation Σ a_ij H_i H_j³");
  if (rel.size() > 1) throw Error(ErrorCode::NoRelation, "relation Σ a_ij H_i H_j³ is not unique");
  Mat9 a = mat9(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = rel[0][i * n + j];
  // rescale to a hermitian matrix, first nonzero entry of least index
  bool found = false;
  Mat9 best;
  int best_key = 99;
  for (int li = 1; li < 9; ++li) {
    GF9 l = GF9::from_index(li);
    Mat9 b = a;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n; ++j) b[i][j] = a[i][j] * l;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) ok = b[j][i] == b[i][j].frob();
    if (!ok) continue;
    int key = 0;
    for (std::size_t i = 0; i < n * n; ++i)
      if (!b[i / n][i % n].is_zero()) {
        key = b[i / n][i % n].index();
        break;
      }
    if (key < best_key) {
      best_key = key;
      best = b;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::SingularHermitian, "relation is not hermitian up to scalar");
  a = best;
  // Gram–Schmidt: rows p_k with h(p_k, p_l) = δ
  std::vector<std::vector<GF9>> V, P;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<GF9> e(n, kZero9);
    e[i] = kOne9;
    V.push_back(e);
  }
  while (!V.empty()) {
    std::size_t pick = V.size();
    for (std::size_t i = 0; i < V.size(); ++i)
      if (!herm(a, V[i], V[i]).is_zero()) {
        pick = i;
        break;
      }
    if (pick == V.size()) {
      // all isotropic: combine a non-orthogonal pair
      for (std::size_t i = 0; i < V.size() && pick == V.size(); ++i)
        for (std::size_t j = i + 1; j < V.size() && pick == V.size(); ++j) {
          if (herm(a, V[i], V[j]).is_zero()) continue;
          for (int li = 1; li < 9; ++li) {
            std::vector<GF9> w = V[i];
            for (std::size_t k = 0; k < n; ++k) w[k] += GF9::from_index(li) * V[j][k];
            if (!herm(a, w, w).is_zero()) {
              V[i] = w;
              pick = i;
              break;
            }
          }
        }
      if (pick == V.size()) throw Error(ErrorCode::SingularHermitian, "hermitian matrix is degenerate");
    }
    std::vector<GF9> v = V[pick];
    V.erase(V.begin() + static_cast<long>(pick));
    GF9 s = herm(a, v, v), c = kZero9;
    for (int ci = 1; ci < 9; ++ci)
      if (GF9::from_index(ci).pow(4) == s) {
        c = GF9::from_index(ci);
        break;
      }
    if (c.is_zero()) throw Error(ErrorCode::SingularHermitian, "norm is not attained");
    GF9 ci = c.inverse();
    for (auto& x : v) x *= ci;
    for (auto& u : V) {
      GF9 al = herm(a, u, v);
      for (std::size_t k = 0; k < n; ++k) u[k] -= al * v[k];
    }
    P.push_back(v);
  }
  HermitianRelation out;
  out.a = a;
  out.B = mat9_inverse(P);
  for (std::size_t j = 0; j < n; ++j) {
    NFPoly s;
    for (std::size_t i = 0; i < n; ++i) s = s + H[i].scaled(out.B[i][j]);
    out.corrected.push_back(s);
  }
  NFPoly chk;
  for (const auto& h : out.corrected) chk = chk + h.pow(4);
  if (!chk.is_zero()) throw Error(ErrorCode::QuarticIdentityFails, "corrected map fails the Fermat identity");
  return out;
}

}  // namespace k3
