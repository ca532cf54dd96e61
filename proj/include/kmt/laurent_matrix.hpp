#ifndef KMT_LAURENT_MATRIX_HPP
#define KMT_LAURENT_MATRIX_HPP

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "kmt/scalars.hpp"

namespace kmt {

inline bool scalar_is_zero(const mpq_class& x) { return x == 0; }
inline bool scalar_is_zero(const RingValue& x) { return x.is_zero(); }

// Square matrix with entries in S[t, t^-1], stored sparsely.
template <class S>
class LaurentMatrix {
 public:
  struct Key {
    int row;
    int col;
    int deg;
    bool operator<(const Key& o) const { return std::tie(row, col, deg) < std::tie(o.row, o.col, o.deg); }
    bool operator==(const Key& o) const { return row == o.row && col == o.col && deg == o.deg; }
  };

  LaurentMatrix() = default;
  explicit LaurentMatrix(int n) : n_(n) {}

  static LaurentMatrix identity(int n, const S& one) {
    LaurentMatrix m(n);
    for (int i = 0; i < n; ++i) m.add(i, i, 0, one);
    return m;
  }

  int size() const { return n_; }
  const std::map<Key, S>& entries() const { return e_; }
  bool is_zero() const { return e_.empty(); }

  // Accumulates v into entry (r, c) at t^d.
  void add(int r, int c, int d, const S& v) {
    if (r < 0 || c < 0 || r >= n_ || c >= n_) throw std::out_of_range("matrix index out of range");
    if (scalar_is_zero(v)) return;
    Key k{r, c, d};
    auto it = e_.find(k);
    if (it == e_.end()) {
      e_.emplace(k, v);
    } else {
      it->second += v;
      if (scalar_is_zero(it->second)) e_.erase(it);
    }
  }

  const S* find(int r, int c, int d) const {
    auto it = e_.find(Key{r, c, d});
    return it == e_.end() ? nullptr : &it->second;
  }

  LaurentMatrix operator+(const LaurentMatrix& o) const {
    check(o);
    LaurentMatrix m(*this);
    for (const auto& [k, v] : o.e_) m.add(k.row, k.col, k.deg, v);
    return m;
  }

  LaurentMatrix operator-(const LaurentMatrix& o) const {
    check(o);
    LaurentMatrix m(*this);
    for (const auto& [k, v] : o.e_) m.add(k.row, k.col, k.deg, -v);
    return m;
  }

  LaurentMatrix operator-() const {
    LaurentMatrix m(n_);
    for (const auto& [k, v] : e_) m.e_.emplace(k, -v);
    return m;
  }

  LaurentMatrix scaled(const S& s) const {
    LaurentMatrix m(n_);
    for (const auto& [k, v] : e_) m.add(k.row, k.col, k.deg, v * s);
    return m;
  }

  LaurentMatrix operator*(const LaurentMatrix& o) const {
    check(o);
    std::vector<std::vector<std::pair<Key, const S*>>> by_row(n_);
    for (const auto& [k, v] : o.e_) by_row[k.row].push_back({k, &v});
    LaurentMatrix m(n_);
    for (const auto& [k, v] : e_)
      for (const auto& [k2, v2] : by_row[k.col]) m.add(k.row, k2.col, k.deg + k2.deg, v * *v2);
    return m;
  }

  // Coefficients of tr(X) by t-degree.
  std::map<int, S> trace() const {
    std::map<int, S> t;
    for (const auto& [k, v] : e_) {
      if (k.row != k.col) continue;
      auto it = t.find(k.deg);
      if (it == t.end())
        t.emplace(k.deg, v);
      else
        it->second += v;
    }
    for (auto it = t.begin(); it != t.end();) it = scalar_is_zero(it->second) ? t.erase(it) : std::next(it);
    return t;
  }

  bool operator==(const LaurentMatrix& o) const {
    if (n_ != o.n_ || e_.size() != o.e_.size()) return false;
    for (auto i = e_.begin(), j = o.e_.begin(); i != e_.end(); ++i, ++j)
      if (!(i->first == j->first) || !(i->second == j->second)) return false;
    return true;
  }
  bool operator!=(const LaurentMatrix& o) const { return !(*this == o); }

  // Entry-wise map into another scalar type.
  template <class T, class F>
  LaurentMatrix<T> map(F f) const {
    LaurentMatrix<T> m(n_);
    for (const auto& [k, v] : e_) m.add(k.row, k.col, k.deg, f(v));
    return m;
  }

 private:
  void check(const LaurentMatrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("matrix size mismatch");
  }

  int n_ = 0;
  std::map<Key, S> e_;
};

}  // namespace kmt

#endif
