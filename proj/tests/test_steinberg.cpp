#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kmt/steinberg.hpp"

using namespace kmt;

namespace {

// exp(rX) has halves in B3/C3, so integer words are evaluated over Q
RMatrix word_matrix(const TablePtr& t, const Ring& ring, const std::vector<Factor>& fs) {
  Ring eval = ring.name() == "Z" ? Ring::parse("Q") : ring;
  RMatrix m = RMatrix::identity(t->algebra().matrix_size(), eval.one());
  for (const auto& [i, r] : fs) m = m * exp_matrix(t->matrix(i), ring_reduce(eval, r));
  return m;
}

RMatrix normal_form_matrix(const UnipotentWord& u) {
  std::vector<Factor> fs;
  for (int i = 0; i < u.table()->size(); ++i) fs.push_back({i, u.coefficients()[i]});
  return word_matrix(u.table(), u.ring(), fs);
}

std::vector<Factor> random_word(std::mt19937_64& rng, const TablePtr& t, const Ring& ring, int len) {
  std::uniform_int_distribution<int> idx(0, t->size() - 1);
  std::uniform_int_distribution<long> c(-3, 3);
  std::vector<Factor> fs;
  for (int k = 0; k < len; ++k) fs.push_back({idx(rng), ring.from_int(c(rng))});
  return fs;
}

}  // namespace

TEST_CASE("positive systems") {
  auto a2 = StructureTable::positive_system(Algebra::build("A2"));
  auto b3 = StructureTable::positive_system(Algebra::build("B3"));
  auto c3 = StructureTable::positive_system(Algebra::build("C3"));
  CHECK(a2->size() == 3);
  CHECK(b3->size() == 9);
  CHECK(c3->size() == 9);
  CHECK(a2->max_abs_constant() == 1);
  CHECK(b3->max_abs_constant() == 2);
  CHECK(c3->max_abs_constant() == 2);
  // root matrices are normalized to a positive leading entry
  for (int i = 0; i < c3->size(); ++i) CHECK(c3->matrix(i).entries().begin()->second > 0);
}

TEST_CASE("collection agrees with matrix products, all two-letter words") {
  for (const char* t : {"A2", "B3", "C3"}) {
    auto table = StructureTable::positive_system(Algebra::build(t));
    for (const char* rs : {"Z", "zmod:5"}) {
      Ring ring = Ring::parse(rs);
      CAPTURE(t);
      CAPTURE(rs);
      for (int i = 0; i < table->size(); ++i)
        for (int j = 0; j < table->size(); ++j)
          for (long r = -2; r <= 2; ++r)
            for (long s = -2; s <= 2; ++s) {
              std::vector<Factor> fs{{i, ring.from_int(r)}, {j, ring.from_int(s)}};
              UnipotentWord u = collect(table, ring, fs);
              CHECK(normal_form_matrix(u) == word_matrix(table, ring, fs));
            }
    }
  }
}

TEST_CASE("collection agrees with matrix products, random words") {
  std::mt19937_64 rng(20240601);
  for (const char* t : {"A2", "B3", "C3"}) {
    auto table = StructureTable::positive_system(Algebra::build(t));
    for (const char* rs : {"Z", "Q", "zmod:5"}) {
      Ring ring = Ring::parse(rs);
      for (int k = 0; k < 40; ++k) {
        auto fs = random_word(rng, table, ring, 6);
        UnipotentWord u = collect(table, ring, fs);
        CHECK(normal_form_matrix(u) == word_matrix(table, ring, fs));
        CHECK(u == matrix_collect(table, ring, fs));
      }
    }
  }
}

TEST_CASE("group laws") {
  std::mt19937_64 rng(4);
  auto table = StructureTable::positive_system(Algebra::build("C3"));
  Ring ring = Ring::parse("Z");
  for (int k = 0; k < 30; ++k) {
    UnipotentWord u = collect(table, ring, random_word(rng, table, ring, 4));
    UnipotentWord v = collect(table, ring, random_word(rng, table, ring, 4));
    UnipotentWord w = collect(table, ring, random_word(rng, table, ring, 4));
    CHECK((u * u.inverse()).is_identity());
    CHECK((u * v) * w == u * (v * w));
  }
}

TEST_CASE("commutator identities in rank two subsystems") {
  Ring p = Ring::parse("poly:Q:r,s");
  RingValue r = p.var("r"), s = p.var("s");
  auto a2 = StructureTable::positive_system(Algebra::build("A2"));
  UnipotentWord u = unipotent_commutator(a2, {1, 0}, p.one(), {0, 1}, r);
  RingValue c = u.coefficient({1, 1});
  CHECK((c == r || c == -r));
  CHECK(u.coefficient({1, 0}).is_zero());

  // [x_a(r), x_b(s)] for a short, b long in C3: e2+e3 with r s, e2+2e3 with r^2 s
  auto c3 = StructureTable::positive_system(Algebra::build("C3"));
  UnipotentWord v = unipotent_commutator(c3, {0, 0, 1}, r, {0, 1, 0}, s);
  RingValue c1 = v.coefficient({0, 1, 1}), c2 = v.coefficient({0, 1, 2});
  CHECK((c1 == r * s || c1 == -(r * s)));
  CHECK((c2 == r * r * s || c2 == -(r * r * s)));
  // commuting roots
  CHECK(unipotent_commutator(c3, {1, 0, 0}, r, {0, 0, 1}, s).is_identity());
}

TEST_CASE("naturality of reduction") {
  std::mt19937_64 rng(12);
  Ring z = Ring::parse("Z");
  for (const char* t : {"A2", "C3"}) {
    auto table = StructureTable::positive_system(Algebra::build(t));
    for (const char* target : {"zmod:2", "zmod:3", "zmod:7"}) {
      Ring tr = Ring::parse(target);
      for (int k = 0; k < 20; ++k) {
        UnipotentWord u = collect(table, z, random_word(rng, table, z, 5));
        UnipotentWord v = collect(table, z, random_word(rng, table, z, 5));
        CHECK(naturality_check(u, v, tr).passed());
      }
    }
  }
}

TEST_CASE("a corrupted table is detected") {
  std::mt19937_64 rng(13);
  Ring z = Ring::parse("Z");
  auto table = StructureTable::positive_system(Algebra::build("C3"));
  auto bad = table->corrupted();
  for (const char* target : {"zmod:3", "zmod:7"}) {
    Ring tr = Ring::parse(target);
    int failures = 0;
    for (int k = 0; k < 50; ++k) {
      UnipotentWord u = collect(table, z, random_word(rng, table, z, 6));
      UnipotentWord v = collect(table, z, random_word(rng, table, z, 6));
      if (!naturality_check(u, v, tr, bad).passed()) ++failures;
    }
    CHECK(failures > 0);
  }
}

TEST_CASE("affine tables") {
  auto g = Algebra::build("A1t", 2);
  RealRootSet set = enumerate_real_roots(g->gcm(), 12);
  auto table = StructureTable::build(g, set, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
  Ring p = Ring::parse("poly:Q:r,s");
  UnipotentWord u = unipotent_commutator(table, {1, 0, 0}, p.var("r"), {0, 1, 0}, p.var("s"));
  RingValue c = u.coefficient({1, 1, 0});
  CHECK((c == p.var("r") * p.var("s") || c == -(p.var("r") * p.var("s"))));
  // not nilpotent
  CHECK_THROWS_AS(StructureTable::build(g, set, {{0, 1, 0}, {0, -1, 0}}), SteinbergError);
}

TEST_CASE("torus action") {
  Gcm a2 = finite_gcm("A2");
  Ring f5 = Ring::parse("zmod:5");
  TorusElement t = TorusElement::coroot_power(f5, 2, 0, f5.from_int(2));
  CHECK(torus_character(a2, t, {1, 0}).to_integer() == 4);
  CHECK(torus_character(a2, t, {0, 1}).to_integer() == 3);  // 2^-1
  CHECK(torus_character(a2, t, {1, 1}).to_integer() == 2);
  CHECK(torus_conjugate(a2, t, 0, f5.from_int(3)).to_integer() == 2);
  // conjugation is a homomorphism on the unipotent group
  auto table = StructureTable::positive_system(Algebra::build("A2"));
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    UnipotentWord u = collect(table, f5, random_word(rng, table, f5, 4));
    UnipotentWord v = collect(table, f5, random_word(rng, table, f5, 4));
    CHECK(torus_conjugate(t, u * v) == torus_conjugate(t, u) * torus_conjugate(t, v));
  }
}
