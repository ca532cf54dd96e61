#ifndef KMT_LIEALG_HPP
#define KMT_LIEALG_HPP

#include <gmpxx.h>

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmt/cartan.hpp"
#include "kmt/laurent_matrix.hpp"
#include "kmt/report.hpp"
#include "kmt/rootsys.hpp"

namespace kmt {

class LieError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NilpotenceBoundExceeded : public LieError {
 public:
  using LieError::LieError;
};

using QMatrix = LaurentMatrix<mpq_class>;

// Matrix part plus the coefficient of the central element c.
struct LoopElement {
  QMatrix m;
  mpq_class central = 0;

  bool is_zero() const { return m.is_zero() && central == 0; }
  bool operator==(const LoopElement& o) const { return m == o.m && central == o.central; }
  bool operator!=(const LoopElement& o) const { return !(*this == o); }
  LoopElement operator+(const LoopElement& o) const { return {m + o.m, central + o.central}; }
  LoopElement operator-(const LoopElement& o) const { return {m - o.m, central - o.central}; }
  LoopElement operator-() const { return {-m, -central}; }
  LoopElement scaled(const mpq_class& s) const { return {m.scaled(s), central * s}; }
};

// [X t^a, Y t^b] = [X, Y] t^{a+b} + a delta_{a+b,0} tr(XY) c
LoopElement loop_bracket(const LoopElement& x, const LoopElement& y);

// Construction history of an element, in terms of the generators.
struct Expr {
  enum class Kind { Gen, Bracket, Linear, Raw };
  Kind kind = Kind::Raw;
  char gen = 0;  // 'e', 'f', 'h'
  int index = -1;
  std::shared_ptr<const Expr> lhs, rhs;
  std::vector<std::pair<mpq_class, std::shared_ptr<const Expr>>> terms;
};
using ExprPtr = std::shared_ptr<const Expr>;

struct Element {
  std::size_t algebra_id = 0;
  LoopElement value;
  ExprPtr expr;

  bool is_zero() const { return value.is_zero(); }
  bool has_expression() const;
};

Element operator+(const Element& x, const Element& y);
Element operator-(const Element& x, const Element& y);
Element operator-(const Element& x);
Element operator*(const mpq_class& s, const Element& x);
bool same_up_to_sign(const Element& x, const Element& y);

class Algebra {
 public:
  // "A2" (or any "An"), "B3", "C3" finite; "A1t" with l >= 2; "A2odd" with l >= 3.
  static std::shared_ptr<const Algebra> build(const std::string& tag, int l = 0);

  std::size_t id() const { return id_; }
  const std::string& tag() const { return tag_; }
  int l() const { return l_; }
  const Gcm& gcm() const { return gcm_; }
  int rank() const { return gcm_.size(); }
  int matrix_size() const { return n_; }
  bool affine() const { return affine_; }
  bool twisted() const { return twisted_; }
  std::string display_name() const;

  const Element& e(int i) const { return e_.at(i); }
  const Element& f(int i) const { return f_.at(i); }
  const Element& h(int i) const { return h_.at(i); }

  // Unchecked: no generator expression is attached.
  Element raw(LoopElement v) const;
  Element zero() const { return raw(LoopElement{QMatrix(n_), 0}); }

  // Checks trace zero and, for twisted handles, the parity constraint.
  bool in_realization(const LoopElement& x) const;

 private:
  Algebra() = default;
  std::size_t id_ = 0;
  std::string tag_;
  int l_ = 0;
  Gcm gcm_;
  int n_ = 0;
  bool affine_ = false;
  bool twisted_ = false;
  std::vector<Element> e_, f_, h_;
  friend struct AlgebraBuilder;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

std::shared_ptr<const Algebra> build_algebra(const std::string& tag, int l = 0);

Element bracket(const Element& x, const Element& y);
bool commutes(const Element& x, const Element& y);
// (ad x)^k y
Element ad_power(const Element& x, const Element& y, int k);
// sum_{n} (ad x)^n y / n!; throws NilpotenceBoundExceeded unless (ad x)^k y = 0 for some k <= bound
Element ad_exp(const Element& x, const Element& y, int bound = 16);
// s'_i = exp(ad e_i) exp(-ad f_i) exp(ad e_i)
Element s_prime_action(const Algebra& g, int i, const Element& y);
// letters applied rightmost first
Element s_prime_word(const Algebra& g, const std::vector<int>& word, const Element& y);

// Representative x of E_a = w'{e_i, -e_i}; the pair is {x, -x}.
struct RootVectorPair {
  Element x;
  Element negated() const { return -x; }
  bool operator==(const RootVectorPair& o) const { return same_up_to_sign(x, o.x); }
};
RootVectorPair root_vector_pair(const Algebra& g, const std::vector<int>& word, int i);
// Uses root_word to pick the Weyl word for a.
RootVectorPair root_vector_pair(const Algebra& g, const RootVector& a);

struct WeightResult {
  bool homogeneous = false;
  RootVector weight;
};
WeightResult weight_of(const Algebra& g, const Element& x);

// Checks all relation families of the presentation for the given generator triples,
// with exponent sharpness. Names the first violated relation in the witnesses.
Report verify_relations(const Gcm& a, const std::vector<Element>& e, const std::vector<Element>& f,
                        const std::vector<Element>& h, const std::string& check_id);
Report verify_defining_relations(const Algebra& g);

// Images of the generators of a source algebra.
struct GeneratorImages {
  std::vector<Element> e, f;
};
// Re-evaluates x's construction with generators replaced by their images.
Element embed(const GeneratorImages& images, const Element& x);

// Real-root weights of the matrix realization: one-dimensional weight spaces g_a with
// a(h) != 0 for h = [x, y], y spanning g_{-a}. Truncated to height <= H.
std::vector<RootVector> realization_real_roots(const Algebra& g, long H);

std::string element_to_string(const Element& x);
ojson element_to_json(const Element& x);

}  // namespace kmt

#endif
