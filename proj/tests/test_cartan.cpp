#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "kmt/cartan.hpp"

using namespace kmt;

namespace {

// cofactor expansion, exact
mpz_class det(const IntMatrix& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  mpz_class total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    IntMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<int> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    mpz_class term = m[0][c] * det(minor);
    total += (c % 2 == 0) ? term : mpz_class(-term);
  }
  return total;
}

IntMatrix principal(const IntMatrix& m, const std::vector<int>& keep) {
  IntMatrix out;
  for (int i : keep) {
    std::vector<int> row;
    for (int j : keep) row.push_back(m[i][j]);
    out.push_back(row);
  }
  return out;
}

}  // namespace

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(Gcm::validate({{2, -1}, {-1}}), GcmError);
  try {
    Gcm::validate({{2, -1}, {0, 2}});
    FAIL("accepted");
  } catch (const GcmError& e) {
    CHECK(e.kind == GcmError::Kind::ZeroAsymmetry);
    CHECK(e.i == 0);
    CHECK(e.j == 1);
  }
  try {
    Gcm::validate({{2, 1}, {1, 2}});
    FAIL("accepted");
  } catch (const GcmError& e) {
    CHECK(e.kind == GcmError::Kind::PositiveOffDiagonal);
  }
  try {
    Gcm::validate({{3, -1}, {-1, 2}});
    FAIL("accepted");
  } catch (const GcmError& e) {
    CHECK(e.kind == GcmError::Kind::DiagonalNotTwo);
  }
}

TEST_CASE("json round trip is byte exact") {
  for (AffineFamily f : all_families()) {
    Gcm a = affine_gcm(f, min_rank(f) + 1);
    std::string s = a.to_json();
    CHECK(Gcm::from_json(s).to_json() == s);
    CHECK(s.find(' ') == std::string::npos);
  }
  CHECK_THROWS_AS(Gcm::from_json("{\"size\":2}"), GcmError);
}

TEST_CASE("affine families against a cofactor determinant") {
  for (AffineFamily f : all_families())
    for (int l = min_rank(f); l <= 6; ++l) {
      Gcm a = affine_gcm(f, l);
      CAPTURE(family_tag(f));
      CAPTURE(l);
      CHECK(a.size() == node_count(f, l));
      CHECK(det(a.entries()) == 0);
      // maximal proper principal minors
      for (int drop = 0; drop < a.size(); ++drop) {
        std::vector<int> keep;
        for (int i = 0; i < a.size(); ++i)
          if (i != drop) keep.push_back(i);
        CHECK(det(principal(a.entries(), keep)) > 0);
      }
      CHECK(affinity_check(a));
    }
  for (const char* t : {"A2", "B3", "C3"}) {
    Gcm a = finite_gcm(t);
    CHECK(det(a.entries()) > 0);
    CHECK_FALSE(affinity_check(a));
  }
}

TEST_CASE("classification under relabeling") {
  std::mt19937_64 rng(3);
  for (AffineFamily f : all_families())
    for (int l = min_rank(f); l <= 6; ++l) {
      Gcm a = affine_gcm(f, l);
      std::vector<int> p(a.size());
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      IntMatrix b(a.size(), std::vector<int>(a.size()));
      for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) b[i][j] = a(p[i], p[j]);
      Gcm g = Gcm::validate(b);
      auto c = classify_affine(g);
      REQUIRE(c.has_value());
      CHECK(c->type == AffineType{f, l});
      for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j) CHECK(g(i, j) == a(c->perm[i], c->perm[j]));
    }
  CHECK_FALSE(classify_affine(finite_gcm("A2")).has_value());
  CHECK_FALSE(classify_affine(Gcm::validate({{2, -3}, {-3, 2}})).has_value());
}

TEST_CASE("names and exponents") {
  CHECK(family_display_name(AffineFamily::A2odd, 3) == "A_{5}^{(2)}");
  CHECK(parse_family("D1t") == AffineFamily::D1t);
  CHECK_THROWS(parse_family("E8"));
  CHECK(coxeter_exponent(finite_gcm("A2"), 0, 1) == 3);
  CHECK(coxeter_exponent(finite_gcm("B3"), 1, 2) == 4);
  CHECK(coxeter_exponent(finite_gcm("B3"), 0, 2) == 2);
  CHECK(coxeter_exponent(Gcm::validate({{2, -2}, {-2, 2}}), 0, 1) == 0);
  CHECK(coxeter_exponent(Gcm::validate({{2, -1}, {-3, 2}}), 0, 1) == 6);
}
