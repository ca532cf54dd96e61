#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "kmt/rootsys.hpp"

using namespace kmt;

namespace {

// closure of the simple roots under s_i(v) = v - (sum_j v_j a_ij) a_i
std::set<RootVector> reflection_closure(const Gcm& a) {
  int n = a.size();
  std::set<RootVector> seen;
  std::vector<RootVector> todo;
  for (int i = 0; i < n; ++i) {
    RootVector v(n, 0);
    v[i] = 1;
    seen.insert(v);
    todo.push_back(v);
  }
  while (!todo.empty()) {
    RootVector v = todo.back();
    todo.pop_back();
    for (int i = 0; i < n; ++i) {
      long p = 0;
      for (int j = 0; j < n; ++j) p += v[j] * a(i, j);
      RootVector w = v;
      w[i] -= p;
      if (seen.insert(w).second) todo.push_back(w);
    }
  }
  return seen;
}

std::set<RootVector> as_set(const RealRootSet& s) { return {s.roots().begin(), s.roots().end()}; }

// alpha + k delta with alpha a root of A_l on nodes 1..l
std::set<RootVector> untwisted_a_roots(int l, long H) {
  int n = l + 1;
  std::set<RootVector> out;
  for (int i = 1; i <= l; ++i)
    for (int j = i; j <= l; ++j)
      for (int sgn : {1, -1})
        for (long k = -H; k <= H; ++k) {
          RootVector v(n, k);
          for (int t = i; t <= j; ++t) v[t] += sgn;
          if (height(v) <= H) out.insert(v);
        }
  return out;
}

}  // namespace

TEST_CASE("finite root counts") {
  CHECK(enumerate_real_roots(finite_gcm("A2"), 10).size() == 6);
  CHECK(enumerate_real_roots(finite_gcm("B3"), 10).size() == 18);
  CHECK(enumerate_real_roots(finite_gcm("C3"), 10).size() == 18);
  for (const char* t : {"A2", "B3", "C3", "A4"}) {
    Gcm a = finite_gcm(t);
    CHECK(as_set(enumerate_real_roots(a, 20)) == reflection_closure(a));
  }
}

TEST_CASE("untwisted A roots are finite roots plus multiples of delta") {
  for (int l = 2; l <= 4; ++l)
    for (long H : {3L, 7L, 12L}) {
      CAPTURE(l);
      CAPTURE(H);
      CHECK(as_set(enumerate_real_roots(affine_gcm(AffineFamily::A1t, l), H)) == untwisted_a_roots(l, H));
    }
}

TEST_CASE("null roots") {
  CHECK(null_root(affine_gcm(AffineFamily::A1t, 3)) == RootVector{1, 1, 1, 1});
  CHECK(null_root(affine_gcm(AffineFamily::A2odd, 3)) == RootVector{1, 1, 2, 1});
  CHECK(null_root(affine_gcm(AffineFamily::A2odd, 5)) == RootVector{1, 1, 2, 2, 2, 1});
  CHECK_FALSE(null_root(finite_gcm("A2")).has_value());
  // delta is annihilated by the matrix
  for (AffineFamily f : all_families()) {
    Gcm a = affine_gcm(f, min_rank(f) + 1);
    auto d = null_root(a);
    REQUIRE(d);
    for (int i = 0; i < a.size(); ++i) {
      long s = 0;
      for (int j = 0; j < a.size(); ++j) s += a(i, j) * (*d)[j];
      CHECK(s == 0);
    }
  }
}

TEST_CASE("theta sets and root words") {
  Gcm c3 = finite_gcm("C3");
  RealRootSet set = enumerate_real_roots(c3, 10);
  auto th = theta_pair(set, {0, 1, 0}, {0, 0, 1});
  CHECK(th == std::vector<RootVector>{{0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {0, 1, 2}});
  CHECK(theta_pair(set, {1, 0, 0}, {0, 0, 1}) == std::vector<RootVector>{{0, 0, 1}, {1, 0, 0}});

  Gcm a = affine_gcm(AffineFamily::A2odd, 4);
  RealRootSet big = enumerate_real_roots(a, 10);
  for (const auto& v : big.sorted()) {
    RootWord w = root_word(a, v);
    CHECK(apply_word(a, w.word, simple_root(a.size(), w.node)) == v);
  }
}

TEST_CASE("membership, signs and caps") {
  Gcm a = affine_gcm(AffineFamily::A1t, 2);
  RealRootSet set = enumerate_real_roots(a, 6);
  CHECK(is_real_root(set, {1, 1, 0}) == Verdict::Yes);
  CHECK(is_real_root(set, {1, 1, 1}) == Verdict::No);  // delta is imaginary
  CHECK(is_real_root(set, {0, 0, 0}) == Verdict::No);
  CHECK(is_real_root(set, {7, 7, 6}) == Verdict::Unknown);
  CHECK(sign_of_root({0, 2, 1}) == RootSign::Positive);
  CHECK(sign_of_root({-1, 0, 0}) == RootSign::Negative);
  CHECK_THROWS_AS(sign_of_root({1, -1, 0}), MixedSigns);
  CHECK_THROWS_AS(enumerate_real_roots(affine_gcm(AffineFamily::A2odd, 5), 30, -1, 100), ResourceLimit);
  CHECK_THROWS_AS(theta_pair(set, {0, 1, 0}, {1, 0, 1}), HeightBoundTooSmall);  // n delta +- a_1 is unbounded
}

TEST_CASE("prenilpotency") {
  Gcm a = affine_gcm(AffineFamily::A1t, 2);
  RealRootSet set = enumerate_real_roots(a, 12);
  auto yes = is_prenilpotent_pair(set, {0, 1, 0}, {0, 0, 1}, 8);
  CHECK(yes.verdict == Verdict::Yes);
  REQUIRE(yes.negative.found);
  for (const RootVector& v : {RootVector{0, 1, 0}, RootVector{0, 0, 1}})
    CHECK(sign_of_root(apply_word(a, yes.negative.word, v)) == RootSign::Negative);
  CHECK(is_prenilpotent_pair(set, {0, 1, 0}, {0, -1, 0}, 8).verdict == Verdict::No);
  // a_1 and delta - a_1 are never simultaneously negative
  CHECK(is_prenilpotent_pair(set, {0, 1, 0}, {1, 0, 1}, 8).verdict == Verdict::No);

  RealRootSet c3 = enumerate_real_roots(finite_gcm("C3"), 10);
  auto th = theta_pair(c3, {0, 1, 0}, {0, 0, 1});
  CHECK(is_nilpotent_set(c3, th, 8).verdict == Verdict::Yes);
  auto missing = is_nilpotent_set(c3, {{0, 1, 0}, {0, 0, 1}}, 8);
  CHECK(missing.verdict == Verdict::No);
  CHECK_FALSE(missing.missing_sums.empty());
}
