#ifndef KMT_TOWER_HPP
#define KMT_TOWER_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmt/cartan.hpp"
#include "kmt/liealg.hpp"
#include "kmt/report.hpp"
#include "kmt/rootsys.hpp"
#include "kmt/weyl.hpp"

namespace kmt {

class TowerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// e'_i = s'_word(e_target) in the next algebra; the identity rule is {{}, i}.
struct GeneratorRule {
  WeylWord word;
  int target = 0;
};

// The embedding g_l -> g_{l+1} at the levels of roots, coweights, Weyl groups and generators.
struct TowerMap {
  AffineFamily family;
  int l = 0;
  Gcm source, target;
  std::vector<RootVector> root_map;          // tau(a_i), target coordinates
  std::vector<CoweightVector> coweight_map;  // omega(h_i)
  std::vector<WeylWord> weyl_rule;           // w(s_i)
  std::vector<GeneratorRule> generator_rule;
  bool generators_verified = false;  // matrix-level support exists for the family
};

// Throws TowerError if tau(a_i) is not a positive root or pairing is not preserved.
TowerMap build_tower_map(AffineFamily family, int l);
RootVector tau_apply(const TowerMap& t, const RootVector& v);
CoweightVector omega_apply(const TowerMap& t, const CoweightVector& h);
WeylWord w_embed_apply(const TowerMap& t, const WeylWord& w);

// Algebra tag for families with a matrix realization, empty otherwise.
std::string algebra_tag(AffineFamily family);
// Images of the generators of g_l inside g_{l+1}; word_override replaces the rule for node l.
GeneratorImages tower_images(const TowerMap& t, const Algebra& big,
                             const std::optional<WeylWord>& word_override = std::nullopt);

struct ThetaSets {
  int m = 0, n = 0;
  int l = 0;                     // 2m + 2n
  WeylWord s_nm, s_mn;           // Weyl words of the block-swap elements, rightmost first
  RootVector theta_long;         // (s_{2m-1} ... s_{2m+2n-1})(a_{2m+2n})
  RootVector y;                  // generator of the second long element before s_nm acts
  std::string y_reading;
  std::vector<RootVector> theta;        // with both signs
  std::vector<RootVector> theta_prime;  // s_nm of the displayed set
};

// y_reading: "smn_top" (default), "literal", "alt" (s_{2m-1} ...), "mirror" (s_{2n-1} s_{2n} ...)
ThetaSets theta_sets(int m, int n, const std::string& y_reading = "smn_top");

Report verify_lemma_2_8();
Report verify_lemma_3_1(int l, const std::optional<WeylWord>& word_override = std::nullopt);
Report verify_lemma_3_2(AffineFamily family, int l, long H);
Report verify_structure_transport(AffineFamily family, int l, const std::vector<RootVector>& theta);
// Throws TowerError if m + n exceeds max_mn.
Report verify_thm_3_5(int m, int n, long H = 12, int depth = 8, int max_mn = 4);
Report verify_thm_1_2_conditions(int max_mn);
// Always out_of_scope; carries the lemma-2.8 evidence.
Report thm_1_2_condition_3();

// Roots of a finite-type matrix grouped by squared length; transitive means one Weyl orbit per length.
struct OrbitSummary {
  mpq_class norm;
  std::size_t roots = 0;
  std::size_t orbit = 0;
};
std::vector<OrbitSummary> weyl_orbits_by_length(const Gcm& a);

}  // namespace kmt

#endif
