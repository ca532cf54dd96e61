#ifndef KMT_WEYL_HPP
#define KMT_WEYL_HPP

#include <optional>
#include <string>
#include <vector>

#include "kmt/cartan.hpp"
#include "kmt/report.hpp"
#include "kmt/rootsys.hpp"

namespace kmt {

using WeylWord = std::vector<int>;
using CoweightVector = std::vector<long>;

// act_root(gcm, {i, j}, v) = s_i(s_j(v))
RootVector act_root(const Gcm& a, const WeylWord& w, const RootVector& v);
// s_i(h) = h - <h, a_i> h_i
CoweightVector act_coweight(const Gcm& a, const WeylWord& w, const CoweightVector& h);
// <h, v> with <h_i, a_j> = a_ij
long pairing(const Gcm& a, const CoweightVector& h, const RootVector& v);

// m_table overrides coxeter_exponent (negative controls); entries indexed [i][j].
Report verify_braid_relations(const Gcm& a, const std::optional<IntMatrix>& m_table = std::nullopt);

class SignedPermutation {
 public:
  struct Image {
    int target;  // 0-based
    int sign;    // +1 / -1
    bool operator==(const Image& o) const { return target == o.target && sign == o.sign; }
  };

  explicit SignedPermutation(std::vector<Image> images);
  static SignedPermutation identity(int l);

  int dim() const { return static_cast<int>(images_.size()); }
  const std::vector<Image>& images() const { return images_; }
  // (p * q)(e_i) = p(q(e_i))
  SignedPermutation operator*(const SignedPermutation& q) const;
  SignedPermutation inverse() const;
  SignedPermutation pow(int e) const;
  bool is_identity() const;
  bool operator==(const SignedPermutation& o) const { return images_ == o.images_; }
  bool operator!=(const SignedPermutation& o) const { return !(*this == o); }
  // [[target, sign], ...] 1-based
  ojson to_json() const;

 private:
  std::vector<Image> images_;
};

// rbar_i (1-based, 1 <= i <= l-1): e_i -> -e_{i+1}, e_{i+1} -> e_i
SignedPermutation signed_generator(int l, int i);
// rbar_{w1} * rbar_{w2} * ...
SignedPermutation signed_word(int l, const std::vector<int>& word);

struct WbarCandidate {
  std::string name;
  IntMatrix a;  // (l-1) x (l-1), node k <-> rbar_{k+1}
};
std::vector<WbarCandidate> wbar_candidates(int l);
// Checks both relation families of the signed-permutation presentation for each candidate.
Report verify_wbar_presentation(int l, const std::vector<WbarCandidate>& candidates);

// Torus-conjugation exponent: the proof's reading h_i - 2a_ij h_i against
// the coweight action s_j(h_i) = h_i - a_ij h_j, compared in the signed-permutation
// shadow ((-1)^{h_k} -> rbar_k^2) and as characters mod 2 on the simple roots of gcm.
Report check_torus_exponent(const Gcm& a, int l);

class BlockPermutation {
 public:
  explicit BlockPermutation(std::vector<int> images);  // 0-based images
  static BlockPermutation identity(int n);
  static BlockPermutation transposition(int n, int i);  // swaps i, i+1 (1-based)

  int degree() const { return static_cast<int>(p_.size()); }
  int operator()(int i) const { return p_[i]; }
  const std::vector<int>& images() const { return p_; }
  // (p * q)(i) = p(q(i))
  BlockPermutation operator*(const BlockPermutation& q) const;
  BlockPermutation inverse() const;
  bool is_identity() const;
  bool operator==(const BlockPermutation& o) const { return p_ == o.p_; }
  // adjacent transpositions t_{i1}, t_{i2}, ... (1-based) with p = t_{i1} * t_{i2} * ...
  std::vector<int> adjacent_word() const;

 private:
  std::vector<int> p_;
};

BlockPermutation block_sum(const BlockPermutation& s, const BlockPermutation& t);
// c(m,n): i -> n+i for i <= m, m+j -> j for j <= n
BlockPermutation cross_perm(int m, int n);

// The rbar-word for S_i (1-based block index).
std::vector<int> s_block_word(int i);
// Block swap w_i in the signed-permutation group on 2n coordinates.
SignedPermutation block_swap(int n, int i);
// varsigma_n(sigma) realized in the signed-permutation group on 2n coordinates.
SignedPermutation sigma_image(int n, const BlockPermutation& sigma);
// The same element as a letter sequence (rbar_k, equivalently s_k).
std::vector<int> sigma_word(int n, const BlockPermutation& sigma);
// word_override replaces the S_1 word (negative controls).
Report verify_sigma_hom(int n, const std::optional<std::vector<int>>& word_override = std::nullopt);

}  // namespace kmt

#endif
