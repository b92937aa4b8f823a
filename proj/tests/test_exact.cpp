#include "support.hpp"

using namespace k3;
using k3test::imat;

namespace {

bool unimodular(const IntMatrix& U) { return abs(determinant(U)) == 1; }

void check_snf(const IntMatrix& M) {
  auto s = smith_normal_form(M);
  CHECK(unimodular(s.U));
  CHECK(unimodular(s.V));
  CHECK(s.U * M * s.V == s.D);
  auto d = s.diagonal();
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (d[i + 1] != 0) CHECK(d[i + 1] % d[i] == 0);
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) CHECK(s.D(i, j) == 0);
}

void check_lll(const IntMatrix& G, const IntMatrix& B) {
  CHECK(unimodular(B));
  RatMatrix R = to_rat(B * G * transpose(B));
  // Gram–Schmidt in the reduced basis, checked entry by entry
  std::size_t n = R.rows();
  std::vector<Rat> bstar(n);
  RatMatrix mu(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rat s = R(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= mu(j, k) * mu(i, k) * bstar[k];
      mu(i, j) = s / bstar[j];
    }
    Rat s = R(i, i);
    for (std::size_t k = 0; k < i; ++k) s -= mu(i, k) * mu(i, k) * bstar[k];
    bstar[i] = s;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) CHECK(abs(mu(i, j)) <= Rat(1, 2));
  for (std::size_t i = 1; i < n; ++i) {
    Rat lhs = abs(bstar[i]), rhs = (Rat(99, 100) - mu(i, i - 1) * mu(i, i - 1)) * abs(bstar[i - 1]);
    CHECK(lhs >= rhs);
  }
}

}  // namespace

TEST_CASE("smith form of small matrices") {
  auto s = smith_normal_form(IntMatrix::identity(2));
  CHECK(s.D == IntMatrix::identity(2));
  auto a = smith_normal_form(k3test::a2());
  CHECK(a.diagonal() == IntVec{1, 3});
  check_snf(k3test::a2());
  check_snf(imat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  check_snf(imat({{0, 0}, {0, 5}}));
  check_snf(imat({{1, 2, 3}}));
}

TEST_CASE("smith form of N has two entries 3") {
  const auto& N = k3test::ctx().fixtures().N;
  auto d = smith_normal_form(N).diagonal();
  int threes = 0, ones = 0;
  for (const auto& x : d) {
    threes += abs(x) == 3;
    ones += abs(x) == 1;
  }
  CHECK(threes == 2);
  CHECK(ones == 20);
  check_snf(N);
}

TEST_CASE("smith form on random integer matrices") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 60; ++it) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % 41) - 20;
    check_snf(m);
  }
}

TEST_CASE("lll on reduced and skewed Grams") {
  IntMatrix I3 = IntMatrix::identity(3);
  CHECK(lll_reduce(I3) == I3);
  IntMatrix G = imat({{1, 1000}, {1000, 1000000 + 1}});
  IntMatrix B = lll_reduce(G);
  IntMatrix R = B * G * transpose(B);
  CHECK(R(0, 0) < G(1, 1));
  check_lll(G, B);
  check_lll(k3test::negated(G), lll_reduce(k3test::negated(G)));
  CHECK_THROWS_AS(lll_reduce(imat({{0, 1}, {1, 0}})), Error);
}

TEST_CASE("lll conditions on random definite Grams") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 40; ++it) {
    auto G = k3test::random_definite(rng, 2 + rng() % 5, 4);
    check_lll(G, lll_reduce(G));
  }
}

TEST_CASE("exact inverse round trip") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 50; ++it) {
    std::size_t n = 1 + rng() % 6;
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = Rat(static_cast<long>(rng() % 19) - 9, 1 + rng() % 4);
        m(i, j).canonicalize();
      }
    if (determinant(m) == 0) {
      CHECK_THROWS_AS(inverse(m), Error);
      continue;
    }
    CHECK(m * inverse(m) == RatMatrix::identity(n));
    CHECK(inverse(m) * m == RatMatrix::identity(n));
  }
  const auto& N = k3test::ctx().fixtures().N;
  CHECK(to_rat(N) * inverse(to_rat(N)) == RatMatrix::identity(22));
}

TEST_CASE("kernels and solves") {
  RatMatrix a = to_rat(imat({{1, 2}, {2, 4}, {0, 1}}));
  RatMatrix k = left_kernel(a);
  CHECK(k.rows() == 1);
  CHECK(k * a == RatMatrix(1, 2));
  RatMatrix b = to_rat(imat({{3, 7}}));
  RatMatrix x = solve_left(a, b);
  CHECK(x * a == b);
  CHECK(rank(a) == 2);
  CHECK(determinant(imat({{2, 1}, {1, 2}})) == 3);
  CHECK(signature(to_rat(imat({{0, 1}, {1, 0}}))) == std::pair<int, int>{1, 1});
  CHECK(definiteness(to_rat(k3test::a2())) == -1);
}
