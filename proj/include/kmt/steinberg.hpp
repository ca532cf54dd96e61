#ifndef KMT_STEINBERG_HPP
#define KMT_STEINBERG_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kmt/liealg.hpp"
#include "kmt/report.hpp"
#include "kmt/rootsys.hpp"
#include "kmt/scalars.hpp"

namespace kmt {

class SteinbergError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using RMatrix = LaurentMatrix<RingValue>;

// [x_a(r), x_b(r')] contributes x_c(k r^m r'^n).
struct ConstantEntry {
  RootVector c;
  long m = 0;
  long n = 0;
  long k = 0;
};

struct PairConstants {
  RootVector a, b;
  std::vector<RootVector> theta;  // theta(a, b) in root order
  std::vector<ConstantEntry> constants;
};

// Sign-normalized matrix of E_c: first nonzero entry in row-major order is positive.
QMatrix root_matrix(const Algebra& g, const RootVector& c);

// exp(r X) with X nilpotent, entries mapped into r's ring.
RMatrix exp_matrix(const QMatrix& x, const RingValue& r);

// Commutator constants read off the defining representation over Q[r, s].
PairConstants structure_constants(const Algebra& g, const RealRootSet& set, const RootVector& a,
                                  const RootVector& b, int depth = 32);

class StructureTable {
 public:
  // theta must be nilpotent; it is sorted into root order.
  static std::shared_ptr<const StructureTable> build(std::shared_ptr<const Algebra> g, const RealRootSet& set,
                                                     std::vector<RootVector> theta, int depth = 32);
  // Whole positive system of a finite-type handle.
  static std::shared_ptr<const StructureTable> positive_system(std::shared_ptr<const Algebra> g);

  const Algebra& algebra() const { return *g_; }
  const std::vector<RootVector>& order() const { return order_; }
  int size() const { return static_cast<int>(order_.size()); }
  int index_of(const RootVector& v) const;  // -1 if absent
  const std::vector<ConstantEntry>& entries(int a, int b) const { return table_[a][b]; }
  const QMatrix& matrix(int i) const { return mats_[i]; }
  long max_abs_constant() const;

  // Copy with one constant used by collection negated (negative controls).
  std::shared_ptr<const StructureTable> corrupted() const;

 private:
  StructureTable() = default;
  std::shared_ptr<const Algebra> g_;
  std::vector<RootVector> order_;
  std::vector<QMatrix> mats_;
  std::vector<std::vector<std::vector<ConstantEntry>>> table_;
};

using TablePtr = std::shared_ptr<const StructureTable>;

// Normal form: one coefficient per root of the table's order.
class UnipotentWord {
 public:
  UnipotentWord(TablePtr table, Ring ring, std::vector<RingValue> coeffs);
  static UnipotentWord identity(TablePtr table, const Ring& ring);
  static UnipotentWord single(TablePtr table, const RootVector& a, const RingValue& r);

  const TablePtr& table() const { return table_; }
  const Ring& ring() const { return ring_; }
  const std::vector<RingValue>& coefficients() const { return c_; }
  RingValue coefficient(const RootVector& a) const;

  UnipotentWord operator*(const UnipotentWord& o) const;
  UnipotentWord inverse() const;
  bool operator==(const UnipotentWord& o) const;
  bool operator!=(const UnipotentWord& o) const { return !(*this == o); }
  bool is_identity() const;

  // [[root, coeff], ...] for nonzero coefficients
  ojson to_json() const;

 private:
  TablePtr table_;
  Ring ring_;
  std::vector<RingValue> c_;
};

using Factor = std::pair<int, RingValue>;  // (root index, coefficient)

// Collection into the fixed order by adjacent interchange.
UnipotentWord collect(const TablePtr& table, const Ring& ring, std::vector<Factor> factors);
// Multiplies exponentials in the defining representation and peels the product into the fixed order.
// Z-valued input is computed over Q and must come back integral.
UnipotentWord matrix_collect(const TablePtr& table, const Ring& ring, const std::vector<Factor>& factors);

UnipotentWord unipotent_commutator(const TablePtr& table, const RootVector& a, const RingValue& r,
                                   const RootVector& b, const RingValue& rp);

// Coefficientwise ring map (e.g. Z -> zmod:p).
UnipotentWord reduce(const UnipotentWord& u, const Ring& target, const TablePtr& table_override = nullptr);

// t(lambda_j) for the dual basis of the coroot lattice.
struct TorusElement {
  std::vector<RingValue> values;
  static TorusElement identity(const Ring& ring, int rank);
  // r^{h_i}
  static TorusElement coroot_power(const Ring& ring, int rank, int i, const RingValue& r);
};
// t(a) = prod_i t(alpha_i)^{a_i}, t(alpha_i) = prod_j t(lambda_j)^{a_ji}
RingValue torus_character(const Gcm& a, const TorusElement& t, const RootVector& root);
// t x_i(r) t^-1 = x_i(t(alpha_i) r): returns the new coefficient.
RingValue torus_conjugate(const Gcm& a, const TorusElement& t, int i, const RingValue& r);
UnipotentWord torus_conjugate(const TorusElement& t, const UnipotentWord& u);

// reduce(u v) == reduce(u) reduce(v), with the right side optionally using another table.
Report naturality_check(const UnipotentWord& u, const UnipotentWord& v, const Ring& target,
                        const TablePtr& target_table = nullptr);

}  // namespace kmt

#endif
