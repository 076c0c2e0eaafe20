// Tests for the SL2 matrix-set machinery. The bucket statistics have an
// independent oracle here: every ordered pair of set elements is multiplied
// out with mat_mul and bucketed by the first three entries of the product,
// which is exactly what the parametrized counting is supposed to reproduce.

#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include <ffgrowth/field.hpp>
#include <ffgrowth/fset.hpp>
#include <ffgrowth/matgrp.hpp>
#include <ffgrowth/setalg.hpp>

using namespace ffgrowth;

namespace {

struct Lcg {
  u64 state;
  explicit Lcg(u64 s) : state(s) {}
  u64 next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 33;
  }
};

FSet random_set(const FieldCtx& ctx, std::size_t size, Lcg& rng,
                bool allow_zero) {
  std::set<Elem> pick;
  while (pick.size() < size) {
    Elem e = rng.next() % ctx.q();
    if (!allow_zero && e == 0) continue;
    pick.insert(e);
  }
  return FSet(ctx, std::vector<Elem>(pick.begin(), pick.end()));
}

// Exhaustive membership oracle: R(A) is exactly the set of SL2 matrices
// whose first three entries lie in A.
std::set<u64> oracle_R_keys(const FieldCtx& ctx, const FSet& A) {
  const u64 p = ctx.p();
  std::set<u64> keys;
  for (Elem a = 0; a < p; ++a)
    for (Elem b = 0; b < p; ++b)
      for (Elem c = 0; c < p; ++c)
        for (Elem d = 0; d < p; ++d) {
          if (ctx.sub(ctx.mul(a, d), ctx.mul(b, c)) != 1) continue;
          if (!A.contains(a) || !A.contains(b) || !A.contains(c)) continue;
          keys.insert(((a * p + b) * p + c) * p + d);
        }
  return keys;
}

}  // namespace

TEST_CASE("matrix constructors validate the determinant") {
  FieldCtx F = FieldCtx::make_prime(5);
  MatSL2 m = make_sl2(F, 1, 1, 1, 2);
  CHECK(m.a11 == 1);
  CHECK(m.a22 == 2);
  CHECK_THROWS_AS((void)make_sl2(F, 1, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)make_sl2(F, 0, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)make_sl2(F, 7, 0, 0, 1), std::invalid_argument);
}

TEST_CASE("matrix product and inverse on a fixed example") {
  FieldCtx F = FieldCtx::make_prime(5);
  MatSL2 m = make_sl2(F, 1, 1, 1, 2);
  MatSL2 sq = mat_mul(F, m, m);
  CHECK(sq == make_sl2(F, 2, 3, 3, 0));
  MatSL2 inv = mat_inverse(F, m);
  CHECK(mat_mul(F, m, inv) == sl2_identity());
  CHECK(mat_mul(F, inv, m) == sl2_identity());
}

TEST_CASE("matrix algebra satisfies group laws on random elements") {
  FieldCtx F = FieldCtx::make_prime(101);
  Lcg rng(5);
  auto random_sl2 = [&]() {
    for (;;) {
      Elem a = rng.next() % 101, b = rng.next() % 101, c = rng.next() % 101;
      if (a != 0) {
        Elem d = F.div(F.add(1, F.mul(b, c)), a);
        return make_sl2(F, a, b, c, d);
      }
    }
  };
  for (int trial = 0; trial < 50; ++trial) {
    MatSL2 x = random_sl2(), y = random_sl2(), z = random_sl2();
    CHECK(mat_mul(F, mat_mul(F, x, y), z) == mat_mul(F, x, mat_mul(F, y, z)));
    CHECK(mat_mul(F, x, sl2_identity()) == x);
    CHECK(mat_mul(F, sl2_identity(), x) == x);
    CHECK(mat_mul(F, x, mat_inverse(F, x)) == sl2_identity());
    // Product against the literal entry formulas.
    MatSL2 p = mat_mul(F, x, y);
    CHECK(p.a11 == F.add(F.mul(x.a11, y.a11), F.mul(x.a12, y.a21)));
    CHECK(p.a12 == F.add(F.mul(x.a11, y.a12), F.mul(x.a12, y.a22)));
    CHECK(p.a21 == F.add(F.mul(x.a21, y.a11), F.mul(x.a22, y.a21)));
    CHECK(p.a22 == F.add(F.mul(x.a21, y.a12), F.mul(x.a22, y.a22)));
  }
}

TEST_CASE("matrix set keys round-trip and stay sorted") {
  FieldCtx F = FieldCtx::make_prime(7);
  FSet A = FSet::of_ints(F, {1, 2});
  MatSet R = build_R(A);
  CHECK(std::is_sorted(R.keys().begin(), R.keys().end()));
  for (size_t i = 0; i < R.size(); ++i) {
    MatSL2 m = R.at(i);
    CHECK(MatSet::key_of(F, m) == R.keys()[i]);
    CHECK(R.contains(m));
  }
  CHECK_FALSE(R.contains(sl2_identity()));
}

TEST_CASE("R-set sizes on fixed generating sets") {
  FieldCtx F5 = FieldCtx::make_prime(5);
  FieldCtx F7 = FieldCtx::make_prime(7);
  FieldCtx F101 = FieldCtx::make_prime(101);

  MatSet R1 = build_R(FSet::of_ints(F5, {1}));
  CHECK(R1.size() == 1);
  CHECK(R1.at(0) == make_sl2(F5, 1, 1, 1, 2));
  CHECK(product_set(R1, R1).size() == 1);

  MatSet R2 = build_R(FSet::of_ints(F7, {1, 2}));
  CHECK(R2.size() == 8);
  CHECK(product_set(R2, R2).size() == 56);

  MatSet R0 = build_R(FSet::of_ints(F5, {0, 1}));
  CHECK(R0.size() == 4);
  CHECK(product_set(R0, R0).size() == 12);

  MatSet R3 = build_R(FSet::of_ints(F101, {1, 2, 3}));
  CHECK(R3.size() == 27);
  CHECK(product_set(R3, R3).size() == 690);
}

TEST_CASE("R-set matches the exhaustive determinant-filter oracle") {
  Lcg rng(17);
  for (u64 p : {5ULL, 7ULL}) {
    FieldCtx F = FieldCtx::make_prime(p);
    for (int trial = 0; trial < 12; ++trial) {
      FSet A = random_set(F, 1 + rng.next() % 4, rng, /*allow_zero=*/true);
      MatSet R = build_R(A);
      auto expect = oracle_R_keys(F, A);
      CHECK(R.size() == expect.size());
      std::set<u64> got(R.keys().begin(), R.keys().end());
      CHECK(got == expect);
    }
  }
  // A set where the zero top-left branch actually produces matrices.
  FieldCtx F5 = FieldCtx::make_prime(5);
  FSet withzero = FSet::of_ints(F5, {0, 1, 4});
  MatSet R = build_R(withzero);
  auto expect = oracle_R_keys(F5, withzero);
  std::set<u64> got(R.keys().begin(), R.keys().end());
  CHECK(got == expect);
  // 1*4 = 4 = -1, so pairs (1,4) and (4,1) each contribute 5 matrices.
  CHECK(R.size() == 2 * 9 + 10);
}

TEST_CASE("product of matrix sets matches a std::set oracle") {
  FieldCtx F = FieldCtx::make_prime(7);
  Lcg rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    FSet A = random_set(F, 1 + rng.next() % 3, rng, /*allow_zero=*/false);
    MatSet R = build_R(A);
    MatSet RR = product_set(R, R);
    std::set<u64> expect;
    for (size_t i = 0; i < R.size(); ++i)
      for (size_t j = 0; j < R.size(); ++j)
        expect.insert(MatSet::key_of(F, mat_mul(F, R.at(i), R.at(j))));
    std::set<u64> got(RR.keys().begin(), RR.keys().end());
    CHECK(got == expect);
  }
}

TEST_CASE("product of matrix sets enforces the pair budget") {
  FieldCtx F = FieldCtx::make_prime(7);
  MatSet R = build_R(FSet::of_ints(F, {1, 2}));
  CHECK_THROWS_AS((void)product_set(R, R, 63), budget_error);
  CHECK(product_set(R, R, 64).size() == 56);
}

namespace {

struct OracleBuckets {
  std::map<u64, u64> nu;  // (t*p+alpha)*p+beta -> count, t != 0
  u64 zero_total = 0;
  std::set<u64> zero_products;
  std::map<Elem, u128> omega;
};

// Multiply every ordered pair out and bucket by the product's first three
// entries. The t = 0 bucket keeps full product keys instead.
OracleBuckets oracle_buckets(const FieldCtx& F, const MatSet& R) {
  const u64 p = F.p();
  OracleBuckets out;
  for (size_t i = 0; i < R.size(); ++i)
    for (size_t j = 0; j < R.size(); ++j) {
      MatSL2 prod = mat_mul(F, R.at(i), R.at(j));
      if (prod.a11 == 0) {
        out.zero_total++;
        out.zero_products.insert(MatSet::key_of(F, prod));
      } else {
        out.nu[(prod.a11 * p + prod.a12) * p + prod.a21]++;
      }
    }
  for (auto& [key, c] : out.nu) out.omega[key / (p * p)] += u128(c) * c;
  return out;
}

}  // namespace

TEST_CASE("bucket statistics agree with the pairwise multiplication oracle") {
  Lcg rng(31);
  for (u64 p : {5ULL, 7ULL, 11ULL}) {
    FieldCtx F = FieldCtx::make_prime(p);
    for (int trial = 0; trial < 6; ++trial) {
      FSet A = random_set(F, 1 + rng.next() % 3, rng, /*allow_zero=*/false);
      MatSet R = build_R(A);
      NuStats st = nu_statistics(A);
      OracleBuckets ob = oracle_buckets(F, R);

      std::vector<std::pair<u64, u64>> expect_nu(ob.nu.begin(), ob.nu.end());
      CHECK(st.nu == expect_nu);
      CHECK(st.zero_t_total == ob.zero_total);
      CHECK(st.zero_t_distinct_products == ob.zero_products.size());

      u128 T = 0;
      u64 sum = 0;
      for (auto& [k, c] : ob.nu) {
        T += u128(c) * c;
        sum += c;
      }
      CHECK(st.T == T);
      CHECK(st.sum_nu_nonzero_t == sum);
      std::vector<std::pair<Elem, u128>> expect_omega(ob.omega.begin(),
                                                      ob.omega.end());
      CHECK(st.omega == expect_omega);
      CHECK(st.sum_nu_nonzero_t + st.zero_t_total ==
            u64(R.size()) * u64(R.size()));
    }
  }
}

TEST_CASE("bucket statistics on fixed sets") {
  FieldCtx F5 = FieldCtx::make_prime(5);
  NuStats one = nu_statistics(FSet::of_ints(F5, {1}));
  REQUIRE(one.nu.size() == 1);
  // The only product is [[2,3],[3,0]]: key (2*5+3)*5+3.
  CHECK(one.nu[0].first == 68);
  CHECK(one.nu[0].second == 1);
  CHECK(one.T == 1);
  CHECK(one.zero_t_total == 0);

  FieldCtx F7 = FieldCtx::make_prime(7);
  NuStats st = nu_statistics(FSet::of_ints(F7, {1, 2}));
  CHECK(st.sum_nu_nonzero_t == 64);
  CHECK(st.zero_t_total == 0);
  CHECK(st.T == 86);
  CHECK(st.distinct_nonzero_t() == 56);
}

TEST_CASE("distinct product count splits across the t buckets") {
  Lcg rng(37);
  FieldCtx F = FieldCtx::make_prime(101);
  for (int trial = 0; trial < 8; ++trial) {
    FSet A = random_set(F, 1 + rng.next() % 5, rng, /*allow_zero=*/false);
    MatSet R = build_R(A);
    NuStats st = nu_statistics(A);
    CHECK(product_set(R, R).size() ==
          st.distinct_nonzero_t() + st.zero_t_distinct_products);
  }
}

TEST_CASE("lower-bound certificate is exact and holds on random sets") {
  FieldCtx F7 = FieldCtx::make_prime(7);
  auto cert = cs_lower_bound_certificate(FSet::of_ints(F7, {1, 2}));
  CHECK(cert.lhs == 56);
  CHECK(cert.sum_nu == 64);
  CHECK(cert.T == 86);
  CHECK(cert.rhs.num == u128(64) * 64);
  CHECK(cert.rhs.den == 86);
  CHECK(cert.ok);

  Lcg rng(41);
  FieldCtx F = FieldCtx::make_prime(101);
  for (int trial = 0; trial < 15; ++trial) {
    FSet A = random_set(F, 1 + rng.next() % 6, rng, /*allow_zero=*/false);
    auto c = cs_lower_bound_certificate(A);
    CHECK(c.ok);
    // lhs * T >= sum^2 exactly.
    CHECK(u128(c.lhs) * c.T >= c.sum_nu * c.sum_nu);
  }
}

TEST_CASE("containment certificate is exact and holds on random sets") {
  FieldCtx F7 = FieldCtx::make_prime(7);
  auto cert = containment_certificate(FSet::of_ints(F7, {1, 2}));
  CHECK(cert.lhs == 56);
  CHECK(cert.image_nonzero == 6);
  CHECK(cert.rhs == u128(6) * 4);
  CHECK(cert.ok);

  Lcg rng(43);
  FieldCtx F = FieldCtx::make_prime(101);
  for (int trial = 0; trial < 15; ++trial) {
    FSet A = random_set(F, 1 + rng.next() % 6, rng, /*allow_zero=*/false);
    auto c = containment_certificate(A);
    CHECK(c.ok);
    // Recompute the right side from set algebra.
    FSet AA = product_set(A, A);
    FSet im = sumset(AA, AA);
    u64 nonzero = im.size() - (im.contains(0) ? 1 : 0);
    CHECK(c.image_nonzero == nonzero);
    CHECK(c.rhs == u128(nonzero) * A.size() * A.size());
  }
}

TEST_CASE("matrix machinery rejects unsupported field contexts") {
  FieldCtx big = FieldCtx::make_prime(65537);
  FSet Abig = FSet::of_ints(big, {1, 2});
  CHECK_THROWS_AS((void)build_R(Abig), std::invalid_argument);

  FieldCtx ext = FieldCtx::make(3, 2);
  FSet Aext = FSet::of_ints(ext, {1, 2});
  CHECK_THROWS_AS((void)build_R(Aext), std::invalid_argument);

  FieldCtx F = FieldCtx::make_prime(7);
  FSet withzero = FSet::of_ints(F, {0, 1});
  CHECK_THROWS_AS((void)nu_statistics(withzero), std::invalid_argument);
  CHECK_THROWS_AS((void)cs_lower_bound_certificate(withzero),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)containment_certificate(withzero),
                  std::invalid_argument);
}
