#ifndef KMT_ROOTSYS_HPP
#define KMT_ROOTSYS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "kmt/cartan.hpp"

namespace kmt {

using RootVector = std::vector<long>;

struct RootHash {
  std::size_t operator()(const RootVector& v) const noexcept;
};

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MixedSigns : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HeightBoundTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Verdict { Yes, No, Unknown };
std::string verdict_name(Verdict v);

long height(const RootVector& v);
RootVector simple_root(int n, int i);
RootVector negate(RootVector v);
RootVector add(const RootVector& a, const RootVector& b, long k = 1);
bool is_zero(const RootVector& v);
std::string root_to_string(const RootVector& v, const std::string& letter = "a", int offset = 0);

// Ascending height, ties broken lexicographically.
bool root_order_less(const RootVector& a, const RootVector& b);

RootVector simple_reflection(const Gcm& a, int i, const RootVector& v);
// Rightmost letter acts first.
RootVector apply_word(const Gcm& a, const std::vector<int>& word, const RootVector& v);

enum class RootSign { Positive, Negative };
RootSign sign_of_root(const RootVector& v);  // throws MixedSigns

class RealRootSet {
 public:
  RealRootSet(Gcm gcm, long height_bound, std::unordered_set<RootVector, RootHash> roots)
      : gcm_(std::move(gcm)), h_(height_bound), roots_(std::move(roots)) {}

  const Gcm& gcm() const { return gcm_; }
  long height_bound() const { return h_; }
  std::size_t size() const { return roots_.size(); }
  bool contains(const RootVector& v) const { return roots_.count(v) != 0; }
  const std::unordered_set<RootVector, RootHash>& roots() const { return roots_; }
  std::vector<RootVector> sorted() const;  // lexicographic
  std::vector<RootVector> positive_sorted() const;  // root_order_less

  // {"gcm":ref,"height_bound":H,"roots":[...]}
  std::string to_json(const std::string& gcm_ref) const;

 private:
  Gcm gcm_;
  long h_;
  std::unordered_set<RootVector, RootHash> roots_;
};

// slack < 0 selects the default 2 * max|a_ij| * H.
RealRootSet enumerate_real_roots(const Gcm& a, long H, long slack = -1, std::size_t max_roots = 5'000'000);

Verdict is_real_root(const RealRootSet& set, const RootVector& v);

// Word w and node i with apply_word(w, a_i) = v, found by height descent.
struct RootWord {
  std::vector<int> word;
  int node;
};
RootWord root_word(const Gcm& a, const RootVector& v);

// Primitive positive null vector of an affine matrix.
std::optional<RootVector> null_root(const Gcm& a);

// All ma+nb (m,n >= 0, not both 0) in the set, in root order.
std::vector<RootVector> theta_pair(const RealRootSet& set, const RootVector& a, const RootVector& b);

struct SignWitness {
  bool found = false;
  std::vector<int> word;
  int depth = -1;
};

struct PrenilpotencyResult {
  Verdict verdict = Verdict::Unknown;
  SignWitness positive;
  SignWitness negative;
  std::string reason;
};

// Both witnesses searched best-first over Weyl words of length <= depth.
PrenilpotencyResult is_prenilpotent_set(const RealRootSet& set, const std::vector<RootVector>& theta, int depth,
                                        std::size_t max_states = 200000);
PrenilpotencyResult is_prenilpotent_pair(const RealRootSet& set, const RootVector& a, const RootVector& b,
                                         int depth, std::size_t max_states = 200000);

struct NilpotencyResult {
  Verdict verdict = Verdict::Unknown;
  PrenilpotencyResult prenilpotent;
  std::vector<std::pair<RootVector, RootVector>> missing_sums;
  std::string reason;
};

NilpotencyResult is_nilpotent_set(const RealRootSet& set, const std::vector<RootVector>& theta, int depth);

}  // namespace kmt

#endif
