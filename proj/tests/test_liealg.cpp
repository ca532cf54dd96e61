#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "kmt/liealg.hpp"

using namespace kmt;

TEST_CASE("defining relations hold for every handle") {
  std::vector<std::pair<std::string, int>> handles = {{"A2", 0}, {"B3", 0}, {"C3", 0}, {"A1t", 2},
                                                      {"A1t", 3}, {"A2odd", 3}, {"A2odd", 4}};
  for (const auto& [t, l] : handles) {
    CAPTURE(t);
    CAPTURE(l);
    auto g = Algebra::build(t, l);
    Report r = verify_defining_relations(*g);
    CHECK(r.passed());
    for (int i = 0; i < g->rank(); ++i) {
      CHECK(bracket(g->e(i), g->f(i)).value == g->h(i).value);
      for (int j = 0; j < g->rank(); ++j) {
        // [h_i, e_j] = a_ij e_j
        CHECK(bracket(g->h(i), g->e(j)).value == g->e(j).value.scaled(g->gcm()(i, j)));
      }
    }
  }
}

TEST_CASE("wrong generators are rejected") {
  auto g = Algebra::build("A2odd", 3);
  std::vector<Element> e, f, h;
  for (int i = 0; i < g->rank(); ++i) e.push_back(g->e(i)), f.push_back(g->f(i)), h.push_back(g->h(i));
  std::swap(e[2], e[3]);
  Report r = verify_relations(g->gcm(), e, f, h, "swapped");
  CHECK(r.status == Status::Fail);
  CHECK_FALSE(r.witnesses.empty());
}

TEST_CASE("central term of the loop bracket") {
  QMatrix x(2), y(2);
  x.add(0, 1, 1, mpq_class(1));
  y.add(1, 0, -1, mpq_class(1));
  LoopElement c = loop_bracket({x, 0}, {y, 0});
  CHECK(c.central == 1);
  LoopElement d = loop_bracket({y, 0}, {x, 0});
  CHECK(d.central == -1);
}

TEST_CASE("s' moves weights by the simple reflection") {
  for (const auto& [t, l] : std::vector<std::pair<std::string, int>>{{"B3", 0}, {"A1t", 3}, {"A2odd", 3}}) {
    auto g = Algebra::build(t, l);
    int n = g->rank();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Element y = s_prime_action(*g, i, g->e(j));
        WeightResult w = weight_of(*g, y);
        REQUIRE(w.homogeneous);
        CHECK(w.weight == simple_reflection(g->gcm(), i, simple_root(n, j)));
      }
    // s'_i squares to a sign on root vectors
    for (int j = 0; j < n; ++j) {
      Element y = s_prime_word(*g, {0, 0}, g->e(j));
      CHECK(same_up_to_sign(y, g->e(j)));
    }
  }
}

TEST_CASE("root vector pairs") {
  auto g = Algebra::build("A2odd", 3);
  Gcm a = g->gcm();
  RealRootSet set = enumerate_real_roots(a, 6);
  for (const auto& v : set.sorted()) {
    RootVectorPair p = root_vector_pair(*g, v);
    WeightResult w = weight_of(*g, p.x);
    REQUIRE(w.homogeneous);
    CHECK(w.weight == v);
    CHECK_FALSE(p.x.is_zero());
  }
  // independent of the word chosen
  RootVectorPair p1 = root_vector_pair(*g, {1, 2}, 3);
  RootVector target = apply_word(a, {1, 2}, simple_root(4, 3));
  CHECK(p1 == root_vector_pair(*g, target));
}

TEST_CASE("realization weights agree with the combinatorial roots") {
  for (const auto& [t, l] : std::vector<std::pair<std::string, int>>{{"A1t", 2}, {"A1t", 3}, {"A2odd", 3}}) {
    auto g = Algebra::build(t, l);
    auto real = realization_real_roots(*g, 8);
    std::set<RootVector> a(real.begin(), real.end());
    RealRootSet set = enumerate_real_roots(g->gcm(), 8);
    std::set<RootVector> b(set.roots().begin(), set.roots().end());
    CHECK(a == b);
  }
}

TEST_CASE("embedding re-evaluates expressions") {
  auto g = Algebra::build("A2odd", 3);
  GeneratorImages id;
  for (int i = 0; i < g->rank(); ++i) id.e.push_back(g->e(i)), id.f.push_back(g->f(i));
  Element x = bracket(bracket(g->e(2), g->e(3)), g->e(2));
  CHECK(embed(id, x).value == x.value);
  // swapping e/f images is the Chevalley involution up to sign
  GeneratorImages sw;
  for (int i = 0; i < g->rank(); ++i) sw.e.push_back(-g->f(i)), sw.f.push_back(-g->e(i));
  WeightResult w = weight_of(*g, embed(sw, x));
  REQUIRE(w.homogeneous);
  CHECK(w.weight == RootVector{0, 0, -2, -1});
  CHECK_THROWS(embed(id, g->raw(x.value)));
}
