// One line per acceptance criterion; exit status is nonzero if any criterion fails.
#include <algorithm>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "kmt/cartan.hpp"
#include "kmt/liealg.hpp"
#include "kmt/rootsys.hpp"
#include "kmt/steinberg.hpp"
#include "kmt/tower.hpp"
#include "kmt/weyl.hpp"

using namespace kmt;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string first_witness(const Report& r) {
  if (r.witnesses.empty()) return status_name(r.status);
  return r.witnesses.front().dump();
}

Outcome gcm_round_trip() {
  Outcome o;
  for (AffineFamily f : all_families())
    for (int l = min_rank(f); l <= 8; ++l) {
      Gcm a = affine_gcm(f, l);
      auto c = classify_affine(a);
      std::string tag = family_tag(f) + " l=" + std::to_string(l);
      o.require(c && c->type == AffineType{f, l}, "classify " + tag);
      if (c)
        for (int i = 0; i < a.size(); ++i)
          for (int j = 0; j < a.size(); ++j)
            if (a(i, j) != a(c->perm[i], c->perm[j])) o.require(false, "permutation " + tag);
      o.require(affinity_check(a), "affinity " + tag);
    }
  for (const char* t : {"A2", "B3", "C3"}) o.require(!affinity_check(finite_gcm(t)), std::string("finite ") + t);
  return o;
}

Outcome root_counts() {
  Outcome o;
  std::vector<std::pair<const char*, std::size_t>> want{{"A2", 6}, {"B3", 18}, {"C3", 18}};
  for (auto [t, n] : want) {
    std::size_t got = enumerate_real_roots(finite_gcm(t), 10).size();
    o.require(got == n, std::string(t) + " has " + std::to_string(got));
  }
  std::vector<std::pair<std::string, int>> affine{{"A1t", 2}, {"A1t", 3}, {"A1t", 4}, {"A2odd", 3}, {"A2odd", 4}};
  for (const auto& [t, l] : affine) {
    auto g = Algebra::build(t, l);
    auto real = realization_real_roots(*g, 12);
    std::set<RootVector> a(real.begin(), real.end());
    RealRootSet set = enumerate_real_roots(g->gcm(), 12);
    std::set<RootVector> b(set.roots().begin(), set.roots().end());
    o.require(a == b, t + " l=" + std::to_string(l) + " weight oracle " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
  return o;
}

Outcome serre() {
  Outcome o;
  std::vector<std::pair<std::string, int>> handles{{"A2", 0}, {"B3", 0}, {"C3", 0}};
  for (int l = 2; l <= 5; ++l) handles.push_back({"A1t", l});
  for (int l = 3; l <= 5; ++l) handles.push_back({"A2odd", l});
  for (const auto& [t, l] : handles) {
    Report r = verify_defining_relations(*Algebra::build(t, l));
    o.require(r.passed(), t + " " + std::to_string(l) + ": " + first_witness(r));
  }
  return o;
}

bool equal_up_to_sign(const RingValue& x, const RingValue& y) { return x == y || x == -y; }

Outcome commutator_identities() {
  Outcome o;
  Ring p = Ring::parse("poly:Q:r");
  RingValue r = p.var("r");

  auto a2 = StructureTable::positive_system(Algebra::build("A2"));
  UnipotentWord u = unipotent_commutator(a2, {1, 0}, p.one(), {0, 1}, r);
  o.require(equal_up_to_sign(u.coefficient({1, 1}), r), "A2 coefficient " + u.coefficient({1, 1}).to_string());
  o.require(a2->max_abs_constant() == 1, "A2 constant magnitude");

  // printed: [x_{e3}(r), x_{e2}(1)] = x_{e2+e3}(-r) x_{e2+2e3}(-r)
  auto c3 = StructureTable::positive_system(Algebra::build("C3"));
  UnipotentWord v = unipotent_commutator(c3, {0, 0, 1}, r, {0, 1, 0}, p.one());
  RingValue c1 = v.coefficient({0, 1, 1}), c2 = v.coefficient({0, 1, 2});
  o.require(equal_up_to_sign(c1, -r), "C3 e2+e3 coefficient " + c1.to_string() + ", printed -r");
  o.require(equal_up_to_sign(c2, -r), "C3 e2+2e3 coefficient " + c2.to_string() + ", printed -r");
  for (const auto& c : v.coefficients())
    for (const auto& [m, k] : c.terms())
      o.require(k.to_rational() == 1 || k.to_rational() == -1, "C3 constant " + k.to_string());

  // matrix oracle over zmod:5 and Z
  for (const char* rs : {"zmod:5", "Z"}) {
    Ring ring = Ring::parse(rs);
    for (long x = -2; x <= 2; ++x) {
      RingValue rv = ring.from_int(x);
      for (auto [t, a, b] : {std::tuple{a2, RootVector{1, 0}, RootVector{0, 1}},
                             std::tuple{c3, RootVector{0, 0, 1}, RootVector{0, 1, 0}}}) {
        int ia = t->index_of(a), ib = t->index_of(b);
        UnipotentWord col = unipotent_commutator(t, a, rv, b, ring.one());
        UnipotentWord mat = matrix_collect(t, ring, {{ia, rv}, {ib, ring.one()}, {ia, -rv}, {ib, -ring.one()}});
        o.require(col == mat, std::string("matrix oracle over ") + rs);
      }
    }
  }
  return o;
}

Outcome generator_relations() {
  Outcome o;
  for (int l = 3; l <= 5; ++l) {
    Report r = verify_lemma_3_1(l);
    o.require(r.passed(), "l=" + std::to_string(l) + ": " + first_witness(r));
  }
  return o;
}

Outcome root_vector_transport() {
  Outcome o;
  for (int l = 3; l <= 4; ++l) {
    Report r = verify_lemma_3_2(AffineFamily::A2odd, l, 8);
    o.require(r.passed(), "l=" + std::to_string(l) + ": " + first_witness(r));
  }
  return o;
}

Outcome block_commutation() {
  Outcome o;
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
    Report r = verify_thm_3_5(m, n);
    std::string tag = "(" + std::to_string(m) + "," + std::to_string(n) + ")";
    for (const auto& w : r.witnesses) {
      if (w.contains("identity"))
        o.require(false, tag + " identity " + w["identity"].get<std::string>().substr(0, 1));
      else
        o.require(false, tag + " " + w.dump());
    }
    o.require(r.status != Status::Unknown, tag + " unknown");
  }
  return o;
}

Outcome shadow_conditions() {
  Outcome o;
  Report r = verify_thm_1_2_conditions(6);
  o.require(r.passed(), first_witness(r));
  return o;
}

Outcome wbar() {
  Outcome o;
  std::string names;
  for (int l = 2; l <= 8; ++l) {
    Report r = verify_wbar_presentation(l, wbar_candidates(l));
    o.require(r.passed() && !r.params["satisfied_by"].empty(), "l=" + std::to_string(l));
    if (l == 8)
      for (const auto& s : r.params["satisfied_by"]) names += (names.empty() ? "" : ", ") + s.get<std::string>();
  }
  if (o.ok) o.detail = "at l=8 satisfied by " + names;
  return o;
}

Outcome naturality() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  Ring z = Ring::parse("Z");
  for (const char* t : {"A2", "C3"}) {
    auto table = StructureTable::positive_system(Algebra::build(t));
    std::uniform_int_distribution<int> idx(0, table->size() - 1);
    std::uniform_int_distribution<long> c(-5, 5);
    auto word = [&] {
      std::vector<Factor> fs;
      for (int k = 0; k < 6; ++k) fs.push_back({idx(rng), z.from_int(c(rng))});
      return collect(table, z, fs);
    };
    for (const char* target : {"zmod:2", "zmod:3", "zmod:7"}) {
      Ring tr = Ring::parse(target);
      int bad = 0;
      for (int k = 0; k < 200; ++k)
        if (!naturality_check(word(), word(), tr).passed()) ++bad;
      o.require(bad == 0, std::string(t) + " to " + target + ": " + std::to_string(bad) + " failures");
    }
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "GCM round trip and affinity", gcm_round_trip},
      {2, "root counts and weight-space oracle", root_counts},
      {3, "defining relations self-test", serre},
      {4, "rank-two commutator identities", commutator_identities},
      {5, "tower generator relations, l = 3..5", generator_relations},
      {6, "root vector transport, l = 3, 4, height <= 8", root_vector_transport},
      {7, "block commutation and printed Weyl identities", block_commutation},
      {8, "shadow conditions", shadow_conditions},
      {9, "signed-permutation presentation, l <= 8", wbar},
      {10, "Steinberg naturality Z -> zmod:p", naturality},
  };
  int failures = 0;
  for (const auto& c : all) {
    Stopwatch sw;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    long ms = sw.ms();
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << ms << " ms)";
    if (!o.detail.empty()) std::cout << " -- " << o.detail;
    std::cout << std::endl;
  }
  std::cout << (10 - failures) << "/10 criteria pass" << std::endl;
  return failures == 0 ? 0 : 1;
}
