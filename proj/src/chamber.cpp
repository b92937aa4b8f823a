#include "k3/chamber.hpp"

#include <algorithm>
#include <thread>

namespace k3 {

RatVec Gluing::s_part(const RatVec& x) const { return RatVec(x.begin(), x.begin() + S.rank()); }
RatVec Gluing::t_part(const RatVec& x) const { return RatVec(x.begin() + S.rank(), x.end()); }

Gluing glue_lattices(const IntMatrix& N, const IntMatrix& T, const std::vector<RatVec>& glue) {
  Gluing g;
  g.S = Lattice(N);
  g.T = Lattice(T);
  g.ST = Lattice(block_diag(N, T));
  g.over = overlattice(g.ST, glue);
  g.L = g.over.lattice;
  g.to_L = inverse(g.over.basis);
  g.glue = glue;
  return g;
}

namespace {

Int gcd_of(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

// x with y·x = 1 when gcd(y) = 1
IntVec unit_pairing(const IntVec& y) {
  IntVec x(y.size());
  Int g = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    if (g == 0) {
      g = y[i];
      x[i] = 1;
      continue;
    }
    Int s, t, d;
    mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), y[i].get_mpz_t());
    for (auto& c : x) c *= s;
    x[i] = t;
    g = d;
  }
  if (g < 0) {
    for (auto& c : x) c = -c;
    g = -g;
  }
  if (g != 1) throw Error(ErrorCode::NotPrimitive, "no lattice vector pairs to 1 with w");
  return x;
}

}  // namespace

WeylCheck is_weyl_vector(const Lattice& L, const IntVec& w, const IntVec* witness) {
  if (L.norm(w) != 0) throw Error(ErrorCode::NotIsotropic, "Weyl vector candidate is not isotropic");
  if (gcd_of(w) != 1) throw Error(ErrorCode::NotPrimitive, "Weyl vector candidate is not primitive");
  WeylCheck c;
  if (witness) {
    if (L.pair(w, *witness) != 1 || L.norm(*witness) != 0)
      throw Error(ErrorCode::BadInput, "witness must satisfy ⟨w,w′⟩ = 1 and ⟨w′,w′⟩ = 0");
    c.witness = *witness;
  } else {
    IntVec y(L.rank());
    for (std::size_t j = 0; j < L.rank(); ++j)
      for (std::size_t i = 0; i < L.rank(); ++i) y[j] += w[i] * L.gram()(i, j);
    IntVec x = unit_pairing(y);
    Int n = L.norm(x);
    if (n % 2 != 0) throw Error(ErrorCode::BadInput, "odd ambient lattice");
    Int k = n / 2;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= k * w[i];
    c.witness = x;
  }
  IntMatrix U = IntMatrix::from_rows({w, c.witness});
  c.complement = orthogonal_complement(L, make_embedding(L, U));
  std::size_t n = c.complement.lattice.rank();
  c.roots = vectors_with_norm(c.complement.lattice, RatVec(n), Rat(-2), NormMode::Equal).size();
  c.weyl = c.roots == 0;
  return c;
}

InhomogeneousQuadratic weyl_quadratic(const Lattice& L, const WeylCheck& c, const IntVec& w, const RatVec& h) {
  const IntMatrix& K = c.complement.embedding.basis;
  RatVec wr = to_rat(w), wp = to_rat(c.witness);
  Rat hw = L.pair(h, wr), hwp = L.pair(h, wp);
  InhomogeneousQuadratic Q;
  Q.A = to_rat(c.complement.lattice.gram());
  for (std::size_t i = 0; i < Q.A.rows(); ++i)
    for (std::size_t j = 0; j < Q.A.cols(); ++j) Q.A(i, j) *= -hw / 2;
  RatVec hG = h * L.gram_rat();
  Q.b = hG * transpose(to_rat(K));
  Q.c = hwp - hw;
  return Q;
}

std::vector<LeechRoot> leech_roots_restricted(const Gluing& g, const RatVec& w, int jobs) {
  RatVec wS = g.s_part(w), wT = g.t_part(w);
  if (std::all_of(wT.begin(), wT.end(), [](const Rat& x) { return x == 0; }))
    throw Error(ErrorCode::ZeroTProjection, "w_T = 0");
  // glue group L/(S⊕T) as representatives
  auto frac = [](RatVec v) {
    for (auto& x : v) x = mod_rat(x, Rat(1));
    return v;
  };
  std::vector<RatVec> group{RatVec(g.ST.rank())};
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t k = 0; k < group.size(); ++k)
      for (const auto& a : g.glue) {
        RatVec s = frac(group[k] + a);
        if (std::find(group.begin(), group.end(), s) == group.end()) {
          group.push_back(s);
          grew = true;
        }
      }
  }
  auto VT = dual_vectors_with_norm(g.T, Rat(-2), NormMode::Greater);
  std::vector<std::vector<LeechRoot>> parts(VT.size());
  auto work = [&](std::size_t k) {
    const RatVec& v = VT[k];
    const RatVec* coset = nullptr;
    for (const auto& e : group)
      if (is_integral(g.t_part(e) - v)) coset = &e;
    if (!coset) return;
    Rat a = 1 - g.T.pair(wT, v);
    Rat n = -2 - g.T.norm(v);
    for (auto& u : affine_slice_coset(g.S, g.s_part(*coset), wS, a, n)) {
      LeechRoot r;
      r.rS = u;
      r.rT = v;
      r.r = u;
      r.r.insert(r.r.end(), v.begin(), v.end());
      r.a = a;
      r.n = n;
      parts[k].push_back(std::move(r));
    }
  };
  std::size_t nj = static_cast<std::size_t>(std::max(1, jobs));
  if (nj == 1) {
    for (std::size_t k = 0; k < VT.size(); ++k) work(k);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nj; ++t)
      pool.emplace_back([&, t]() {
        for (std::size_t k = t; k < VT.size(); k += nj) work(k);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<LeechRoot> out;
  for (auto& p : parts)
    for (auto& r : p) out.push_back(std::move(r));
  std::sort(out.begin(), out.end(), [](const LeechRoot& x, const LeechRoot& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.n != y.n) return x.n > y.n;
    return x.r < y.r;
  });
  return out;
}

std::vector<RatVec> walls(const Lattice& S, const std::vector<RatVec>& candidates, const RatVec& interior, int jobs) {
  std::vector<RatVec> c = candidates;
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  std::size_t m = c.size(), n = S.rank();
  Int D = 1;
  for (const auto& r : c) D = lcm(D, common_denominator(r));
  Int E = common_denominator(interior);
  std::vector<std::vector<long long>> R(m, std::vector<long long>(n)), Y(m, std::vector<long long>(n));
  std::vector<__int128> A(m), M(m);
  IntVec P = to_int(scale(Rat(E), interior));
  for (std::size_t k = 0; k < m; ++k) {
    IntVec rk = to_int(scale(Rat(D), c[k]));
    IntVec yk(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) yk[j] += rk[i] * S.gram()(i, j);
    Int a = 0, nn = 0;
    for (std::size_t j = 0; j < n; ++j) {
      a += P[j] * yk[j];
      nn += rk[j] * yk[j];
      if (!rk[j].fits_slong_p() || !yk[j].fits_slong_p()) throw Error(ErrorCode::TooLarge, "wall entries too large");
      R[k][j] = rk[j].get_si();
      Y[k][j] = yk[j].get_si();
    }
    if (a <= 0) throw Error(ErrorCode::InteriorViolation, "interior point fails a candidate half-space");
    if (nn >= 0) throw Error(ErrorCode::BadInput, "wall candidates must have negative norm");
    if (!a.fits_slong_p() || !nn.fits_slong_p()) throw Error(ErrorCode::TooLarge, "wall pairing too large");
    A[k] = a.get_si();
    M[k] = nn.get_si();
  }
  // r_k is a wall iff for all j ≠ k: a_j·n_k − a_k·⟨r_k,r_j⟩ < 0 (all terms scaled alike)
  std::vector<char> keep(m, 1);
  auto work = [&](std::size_t k) {
    for (std::size_t j = 0; j < m; ++j) {
      if (j == k) continue;
      __int128 p = 0;
      for (std::size_t i = 0; i < n; ++i) p += static_cast<__int128>(R[k][i]) * Y[j][i];
      if (A[j] * M[k] - A[k] * p >= 0) {
        keep[k] = 0;
        return;
      }
    }
  };
  std::size_t nj = static_cast<std::size_t>(std::max(1, jobs));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < nj; ++t)
    pool.emplace_back([&, t]() {
      for (std::size_t k = t; k < m; k += nj) work(k);
    });
  for (auto& th : pool) th.join();
  std::vector<RatVec> out;
  for (std::size_t k = 0; k < m; ++k)
    if (keep[k]) out.push_back(c[k]);
  return out;
}

RatVec reflect(const Lattice& S, const RatVec& v, const RatVec& r) {
  Rat rr = S.norm(r);
  if (rr == 0) throw Error(ErrorCode::BadInput, "reflection in an isotropic vector");
  Rat c = 2 * S.pair(v, r) / rr;
  RatVec out = v - scale(c, r);
  if (is_integral(v) && !is_integral(out)) throw Error(ErrorCode::NonIntegralImage, "reflection leaves the lattice");
  return out;
}

IntMatrix reflection_matrix(const Lattice& S, const RatVec& r) {
  std::size_t n = S.rank();
  IntMatrix M(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    RatVec e(n);
    e[i] = 1;
    M.set_row(i, to_int(reflect(S, e, r)));
  }
  return M;
}

const IntMatrix& GeneratorSet::matrix(const Token& t) const {
  switch (t.gen) {
    case Gen::Pgu:
      return t.exp > 0 ? pgu.at(t.index) : pgu_inv.at(t.index);
    case Gen::G1:
      return g1;
    case Gen::G2:
      return g2;
    case Gen::Frobenius:
      return F;
    case Gen::S1:
      return s1;
  }
  throw Error(ErrorCode::BadInput, "unknown generator");
}

GeneratorSet make_generator_set(const LineConfiguration& cfg, const IntMatrix& A1, const IntMatrix& A2) {
  GeneratorSet g;
  for (const auto& p : pgu_generators(cfg)) {
    g.pgu.push_back(p.isometry);
    g.pgu_inv.push_back(to_int(inverse(to_rat(p.isometry))));
    g.pgu_perm.push_back(p.perm);
  }
  Lattice S(cfg.N);
  std::size_t n = cfg.N.rows();
  RatVec l1(n);
  l1[0] = 1;
  g.g1 = A1;
  g.g2 = A2;
  g.F = frobenius_isometry(cfg);
  g.F_perm = frobenius_permutation(cfg);
  g.s1 = reflection_matrix(S, l1);
  for (const IntMatrix* m : {&g.g1, &g.g2, &g.F, &g.s1}) {
    if ((*m) * cfg.N * transpose(*m) != cfg.N) throw Error(ErrorCode::NotIsometry, "generator does not preserve N");
    if ((*m) * (*m) != IntMatrix::identity(n)) throw Error(ErrorCode::NotIsometry, "generator is not an involution");
  }
  g.basis = cfg.basis;
  g.classes = cfg.classes;
  return g;
}

namespace {

bool involutive(Gen g) { return g != Gen::Pgu; }

bool cancels(const Token& a, const Token& b) {
  if (a.gen != b.gen || a.index != b.index) return false;
  return involutive(a.gen) || a.exp == -b.exp;
}

IntVec apply_vec(const IntVec& v, const IntMatrix& M) {
  IntVec out(M.cols());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < M.cols(); ++j) out[j] += v[i] * M(i, j);
  }
  return out;
}

}  // namespace

GeneratorWord word_inverse(const GeneratorWord& w) {
  GeneratorWord out(w.rbegin(), w.rend());
  for (auto& t : out) t.exp = -t.exp;
  return out;
}

GeneratorWord word_concat(const GeneratorWord& a, const GeneratorWord& b) {
  GeneratorWord out = a;
  for (const auto& t : b) {
    if (!out.empty() && cancels(out.back(), t)) out.pop_back();
    else out.push_back(t);
  }
  return out;
}

IntMatrix evaluate(const GeneratorWord& w, const GeneratorSet& gens) {
  std::size_t n = gens.g1.rows();
  IntMatrix M = IntMatrix::identity(n);
  std::size_t k = 0;
  while (k < w.size()) {
    if (w[k].gen == Gen::Pgu || w[k].gen == Gen::Frobenius) {
      Perm p = perm_identity(gens.F_perm.size());
      std::size_t run = 0;
      for (; k < w.size() && (w[k].gen == Gen::Pgu || w[k].gen == Gen::Frobenius); ++k, ++run) {
        const Token& t = w[k];
        if (t.gen == Gen::Frobenius) p = perm_mul(p, gens.F_perm);
        else p = perm_mul(p, t.exp > 0 ? gens.pgu_perm[t.index] : perm_inv(gens.pgu_perm[t.index]));
      }
      IntMatrix P(n, n);
      for (std::size_t j = 0; j < n; ++j) P.set_row(j, gens.classes[p[gens.basis[j]]]);
      M = M * P;
    } else {
      M = M * gens.matrix(w[k]);
      ++k;
    }
  }
  return M;
}

std::string token_name(const Token& t) {
  std::string s;
  switch (t.gen) {
    case Gen::Pgu:
      s = "pgu" + std::to_string(t.index);
      break;
    case Gen::G1:
      s = "g1";
      break;
    case Gen::G2:
      s = "g2";
      break;
    case Gen::Frobenius:
      s = "frobenius";
      break;
    case Gen::S1:
      s = "s1";
      break;
  }
  if (t.exp < 0 && t.gen == Gen::Pgu) s += "^-1";
  return s;
}

nlohmann::json to_json(const GeneratorWord& w) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& t : w) j.push_back(token_name(t));
  return j;
}

ChamberTables make_tables(const LineConfiguration& cfg, const GeneratorSet& gens, const RatVec& h0,
                          const RatVec& b1, const RatVec& b2) {
  ChamberTables t;
  t.S = Lattice(cfg.N);
  t.h0 = to_int(h0);
  t.line_classes = cfg.classes;
  for (std::size_t k = 0; k < cfg.classes.size(); ++k) t.line_index[cfg.classes[k]] = static_cast<int>(k);
  t.lines = matrix_orbit(to_rat(cfg.classes[cfg.basis[0]]), gens.pgu, 1120);
  t.w648 = matrix_orbit(b1, gens.pgu, 6480);
  t.w5184 = matrix_orbit(b2, gens.pgu, 51840);
  std::vector<Perm> sg = gens.pgu_perm;
  sg.push_back(gens.F_perm);
  t.stabilizer = PermGroup::schreier_sims(sg, cfg.lines.size());
  auto pairings = [&](const std::vector<RatVec>& rs) {
    std::vector<IntVec> out;
    for (const auto& r : rs) out.push_back(to_int(scale(Rat(3), RatVec(r * t.S.gram_rat()))));
    return out;
  };
  t.pair_lines = pairings(t.lines.elements);
  t.pair648 = pairings(t.w648.elements);
  t.pair5184 = pairings(t.w5184.elements);
  return t;
}

namespace {

Int dot_int(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Violation {
  int family = -1;  // 0 lines, 1 the 648-orbit, 2 the 5184-orbit
  int element = -1;
  Int value;  // 3⟨v,r⟩
};

Violation most_violated(const IntVec& v, const ChamberTables& t, bool with_lines) {
  Violation best;
  const std::vector<IntVec>* fam[3] = {&t.pair_lines, &t.pair648, &t.pair5184};
  const OrbitTable* orb[3] = {&t.lines, &t.w648, &t.w5184};
  for (int f = with_lines ? 0 : 1; f < 3; ++f)
    for (std::size_t e = 0; e < fam[f]->size(); ++e) {
      Int x = dot_int(v, (*fam[f])[e]);
      if (x >= 0) continue;
      bool better = best.family < 0 || x < best.value ||
                    (x == best.value && orb[f]->elements[e] < orb[best.family]->elements[best.element]);
      if (better) best = {f, static_cast<int>(e), x};
    }
  return best;
}

GeneratorWord pgu_word(const Word& w) {
  GeneratorWord out;
  for (const auto& l : w) out.push_back({Gen::Pgu, l.gen, l.exp});
  return out;
}

IntVec apply_word(IntVec v, const GeneratorWord& w, const GeneratorSet& gens) {
  for (const auto& t : w) v = apply_vec(v, gens.matrix(t));
  return v;
}

// one descent step across the given wall; returns the letters applied
GeneratorWord step(const Violation& x, const ChamberTables& t) {
  const OrbitTable* orb[3] = {&t.lines, &t.w648, &t.w5184};
  GeneratorWord tau = pgu_word(orb[x.family]->word(x.element));
  GeneratorWord w = word_inverse(tau);
  if (x.family == 0) {
    w.push_back({Gen::S1, 0, 1});
    w = word_concat(w, tau);
  } else {
    w.push_back({x.family == 1 ? Gen::G1 : Gen::G2, 0, 1});
  }
  return w;
}

}  // namespace

Reduction reduce_to_chamber(const IntVec& v, const ChamberTables& tab, const GeneratorSet& gens) {
  for (const auto& l : tab.line_classes)
    if (tab.S.pair(v, l) < 0) throw Error(ErrorCode::NotNef, "vector is negative on a line class");
  Reduction r;
  r.result = v;
  r.trace.push_back(tab.S.pair(r.result, tab.h0));
  for (;;) {
    Violation x = most_violated(r.result, tab, false);
    if (x.family < 0) break;
    GeneratorWord s = step(x, tab);
    r.result = apply_word(r.result, s, gens);
    r.word = word_concat(r.word, s);
    r.trace.push_back(tab.S.pair(r.result, tab.h0));
    if (r.trace.back() >= r.trace[r.trace.size() - 2])
      throw Error(ErrorCode::InteriorViolation, "descent failed to decrease the degree");
  }
  return r;
}

GeneratorWord factor_in_oplus(const IntMatrix& gamma, const ChamberTables& tab, const GeneratorSet& gens) {
  const IntMatrix& N = tab.S.gram();
  if (gamma.rows() != N.rows() || gamma * N * transpose(gamma) != N)
    throw Error(ErrorCode::NotIsometry, "matrix does not preserve N");
  IntVec v = apply_vec(tab.h0, gamma);
  if (tab.S.pair(v, tab.h0) <= 0) throw Error(ErrorCode::NotIsometry, "matrix does not preserve the positive cone");
  GeneratorWord delta;
  for (Int prev = tab.S.pair(v, tab.h0);;) {
    Violation x = most_violated(v, tab, true);
    if (x.family < 0) break;
    GeneratorWord s = step(x, tab);
    v = apply_word(v, s, gens);
    delta = word_concat(delta, s);
    Int cur = tab.S.pair(v, tab.h0);
    if (cur >= prev) throw Error(ErrorCode::InteriorViolation, "descent failed to decrease the degree");
    prev = cur;
  }
  IntMatrix rho = gamma * evaluate(delta, gens);
  if (apply_vec(tab.h0, rho) != tab.h0) throw Error(ErrorCode::SiftFailure, "residual does not fix h0");
  Perm p(tab.line_classes.size());
  for (std::size_t k = 0; k < tab.line_classes.size(); ++k) {
    auto it = tab.line_index.find(apply_vec(tab.line_classes[k], rho));
    if (it == tab.line_index.end()) throw Error(ErrorCode::SiftFailure, "residual does not permute the lines");
    p[k] = static_cast<std::uint16_t>(it->second);
  }
  auto sift = tab.stabilizer.membership(p);
  if (!sift.member) throw Error(ErrorCode::SiftFailure, "residual is not in the stabilizer group");
  const int npgu = static_cast<int>(gens.pgu.size());
  GeneratorWord w;
  for (const auto& l : sift.word) {
    if (l.gen == npgu) w = word_concat(w, {{Gen::Frobenius, 0, l.exp}});
    else w = word_concat(w, {{Gen::Pgu, l.gen, l.exp}});
  }
  w = word_concat(w, word_inverse(delta));
  if (evaluate(w, gens) != gamma) throw Error(ErrorCode::SiftFailure, "factorization does not reproduce the matrix");
  return w;
}

}  // namespace k3
