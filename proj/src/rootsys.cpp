#include "kmt/rootsys.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <map>
#include <queue>
#include <unordered_map>

namespace kmt {

std::size_t RootHash::operator()(const RootVector& v) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (long x : v) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

long height(const RootVector& v) {
  long h = 0;
  for (long x : v) h += std::labs(x);
  return h;
}

RootVector simple_root(int n, int i) {
  RootVector v(n, 0);
  v.at(i) = 1;
  return v;
}

RootVector negate(RootVector v) {
  for (auto& x : v) x = -x;
  return v;
}

RootVector add(const RootVector& a, const RootVector& b, long k) {
  RootVector v(a);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += k * b[i];
  return v;
}

bool is_zero(const RootVector& v) {
  return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

std::string root_to_string(const RootVector& v, const std::string& letter, int offset) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    long c = v[i];
    if (c == 0) continue;
    std::string name = letter + std::to_string(static_cast<int>(i) + offset);
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (std::labs(c) != 1) s += std::to_string(std::labs(c)) + "*";
    s += name;
  }
  return s.empty() ? "0" : s;
}

bool root_order_less(const RootVector& a, const RootVector& b) {
  long ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  return a < b;
}

RootVector simple_reflection(const Gcm& a, int i, const RootVector& v) {
  if (i < 0 || i >= a.size()) throw std::out_of_range("reflection index " + std::to_string(i) + " out of range");
  long s = 0;
  for (int j = 0; j < a.size(); ++j) s += static_cast<long>(a(i, j)) * v[j];
  RootVector w(v);
  w[i] -= s;
  return w;
}

RootVector apply_word(const Gcm& a, const std::vector<int>& word, const RootVector& v) {
  RootVector w(v);
  for (auto it = word.rbegin(); it != word.rend(); ++it) w = simple_reflection(a, *it, w);
  return w;
}

RootSign sign_of_root(const RootVector& v) {
  bool pos = false, neg = false;
  for (long x : v) {
    pos |= x > 0;
    neg |= x < 0;
  }
  if (pos && neg) throw MixedSigns("mixed signs in " + root_to_string(v));
  if (!pos && !neg) throw MixedSigns("zero vector has no sign");
  return pos ? RootSign::Positive : RootSign::Negative;
}

std::vector<RootVector> RealRootSet::sorted() const {
  std::vector<RootVector> v(roots_.begin(), roots_.end());
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<RootVector> RealRootSet::positive_sorted() const {
  std::vector<RootVector> v;
  for (const auto& r : roots_)
    if (sign_of_root(r) == RootSign::Positive) v.push_back(r);
  std::sort(v.begin(), v.end(), root_order_less);
  return v;
}

std::string RealRootSet::to_json(const std::string& gcm_ref) const {
  nlohmann::ordered_json j;
  j["gcm"] = gcm_ref;
  j["height_bound"] = h_;
  j["roots"] = sorted();
  return j.dump();
}

RealRootSet enumerate_real_roots(const Gcm& a, long H, long slack, std::size_t max_roots) {
  if (H < 1) throw std::invalid_argument("height bound must be >= 1");
  if (slack < 0) slack = 2L * a.max_abs_entry() * H;
  const long explore = H + slack;
  const int n = a.size();
  std::unordered_set<RootVector, RootHash> seen;
  std::vector<RootVector> frontier;
  for (int i = 0; i < n; ++i) {
    for (long s : {1L, -1L}) {
      RootVector v(n, 0);
      v[i] = s;
      seen.insert(v);
      frontier.push_back(v);
    }
  }
  while (!frontier.empty()) {
    std::vector<RootVector> next;
    for (const auto& v : frontier) {
      for (int i = 0; i < n; ++i) {
        RootVector w = simple_reflection(a, i, v);
        if (height(w) > explore) continue;
        if (seen.insert(w).second) {
          if (seen.size() > max_roots)
            throw ResourceLimit("root enumeration exceeded " + std::to_string(max_roots) + " vectors");
          next.push_back(std::move(w));
        }
      }
    }
    frontier = std::move(next);
  }
  std::unordered_set<RootVector, RootHash> kept;
  for (auto& v : seen)
    if (height(v) <= H) kept.insert(v);
  return RealRootSet(a, H, std::move(kept));
}

Verdict is_real_root(const RealRootSet& set, const RootVector& v) {
  if (height(v) > set.height_bound()) return Verdict::Unknown;
  return set.contains(v) ? Verdict::Yes : Verdict::No;
}

RootWord root_word(const Gcm& a, const RootVector& v) {
  RootSign sign = sign_of_root(v);
  RootVector u = sign == RootSign::Positive ? v : negate(v);
  std::vector<int> word;
  const int n = a.size();
  for (int guard = 0; height(u) > 1; ++guard) {
    if (guard > 100000) throw std::runtime_error("root_word descent did not terminate");
    int pick = -1;
    long best = 0;
    for (int j = 0; j < n; ++j) {
      long p = 0;
      for (int k = 0; k < n; ++k) p += static_cast<long>(a(j, k)) * u[k];
      if (p > best && u[j] - p >= 0) {
        best = p;
        pick = j;
      }
    }
    if (pick < 0) throw std::runtime_error(root_to_string(u) + " is not a real root (no descent)");
    u = simple_reflection(a, pick, u);
    word.push_back(pick);
  }
  int node = static_cast<int>(std::find(u.begin(), u.end(), 1) - u.begin());
  if (node >= n || height(u) != 1) throw std::runtime_error(root_to_string(v) + " is not a real root");
  if (sign == RootSign::Negative) word.push_back(node);
  return {word, node};
}

std::optional<RootVector> null_root(const Gcm& a) {
  const int n = a.size();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = a(i, j);
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int p = row;
    while (p < n && m[p][col] == 0) ++p;
    if (p == n) continue;
    std::swap(m[row], m[p]);
    for (int j = 0; j < n; ++j)
      if (j != col) m[row][j] /= m[row][col];
    m[row][col] = 1;
    for (int i = 0; i < n; ++i) {
      if (i == row || m[i][col] == 0) continue;
      mpq_class f = m[i][col];
      for (int j = 0; j < n; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (row != n - 1) return std::nullopt;  // need corank exactly one
  int free_col = 0;
  while (std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end()) ++free_col;
  std::vector<mpq_class> x(n);
  x[free_col] = 1;
  for (int r = 0; r < row; ++r) x[pivot_col[r]] = -m[r][free_col];
  mpz_class lcm = 1;
  for (auto& q : x) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  RootVector v(n);
  mpz_class g = 0;
  std::vector<mpz_class> z(n);
  for (int i = 0; i < n; ++i) {
    mpq_class t = x[i] * lcm;
    z[i] = t.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  bool neg = false;
  for (int i = 0; i < n; ++i) {
    z[i] /= g;
    if (z[i] < 0) neg = true;
  }
  for (int i = 0; i < n; ++i) {
    if (neg) z[i] = -z[i];
    if (z[i] <= 0) return std::nullopt;
    v[i] = z[i].get_si();
  }
  return v;
}

std::vector<RootVector> theta_pair(const RealRootSet& set, const RootVector& a, const RootVector& b) {
  if (!set.contains(a) || !set.contains(b))
    throw std::invalid_argument("theta_pair needs two cached real roots");
  const long H = set.height_bound();
  const long hmin = std::min(height(a), height(b));
  const long N = (H + hmin - 1) / hmin;
  std::map<std::pair<long, long>, int> state;  // 1 member, 0 not, -1 beyond cache
  for (long m = 0; m <= N + 1; ++m)
    for (long k = 0; k <= N + 1; ++k) {
      if (m == 0 && k == 0) continue;
      RootVector c = add(add(RootVector(a.size(), 0), a, m), b, k);
      Verdict v = is_real_root(set, c);
      state[{m, k}] = v == Verdict::Yes ? 1 : v == Verdict::No ? 0 : -1;
    }
  std::vector<RootVector> out;
  for (const auto& [mk, s] : state) {
    auto [m, k] = mk;
    if (s == 1) {
      if (m > N || k > N)
        throw HeightBoundTooSmall("theta scan reached its bound while still finding roots");
      out.push_back(add(add(RootVector(a.size(), 0), a, m), b, k));
    } else if (s == -1) {
      auto member = [&](long x, long y) {
        if (x < 0 || y < 0 || (x == 0 && y == 0)) return false;
        auto it = state.find({x, y});
        return it != state.end() && it->second == 1;
      };
      if (member(m - 1, k) || member(m, k - 1))
        throw HeightBoundTooSmall("candidate " + std::to_string(m) + "*a + " + std::to_string(k) +
                                  "*b exceeds height bound " + std::to_string(H) + " next to a found root");
    }
  }
  std::sort(out.begin(), out.end(), root_order_less);
  return out;
}

namespace {

long wrong_sign_cost(const std::vector<RootVector>& s, bool want_positive) {
  long cost = 0;
  for (const auto& v : s) {
    bool pos = sign_of_root(v) == RootSign::Positive;
    if (pos != want_positive) cost += height(v);
  }
  return cost;
}

SignWitness search_sign(const Gcm& a, const std::vector<RootVector>& theta, bool want_positive, int depth,
                        std::size_t max_states) {
  struct Node {
    long cost;
    std::size_t len;
    std::size_t id;
    bool operator>(const Node& o) const {
      if (cost != o.cost) return cost > o.cost;
      if (len != o.len) return len > o.len;
      return id > o.id;
    }
  };
  struct State {
    std::vector<RootVector> roots;
    std::vector<int> word;
  };
  std::vector<State> states{{theta, {}}};
  std::unordered_set<RootVector, RootHash> visited;
  auto key = [](const std::vector<RootVector>& s) {
    RootVector k;
    for (const auto& v : s) k.insert(k.end(), v.begin(), v.end());
    return k;
  };
  visited.insert(key(theta));
  std::priority_queue<Node, std::vector<Node>, std::greater<Node>> pq;
  pq.push({wrong_sign_cost(theta, want_positive), 0, 0});
  while (!pq.empty()) {
    Node cur = pq.top();
    pq.pop();
    if (cur.cost == 0) {
      SignWitness w;
      w.found = true;
      w.word = states[cur.id].word;
      w.depth = static_cast<int>(w.word.size());
      return w;
    }
    if (static_cast<int>(cur.len) >= depth) continue;
    for (int i = 0; i < a.size(); ++i) {
      std::vector<RootVector> next;
      next.reserve(theta.size());
      for (const auto& v : states[cur.id].roots) next.push_back(simple_reflection(a, i, v));
      if (!visited.insert(key(next)).second) continue;
      if (states.size() >= max_states) return {};
      std::vector<int> word{i};
      const auto& prev = states[cur.id].word;
      word.insert(word.end(), prev.begin(), prev.end());
      long cost = wrong_sign_cost(next, want_positive);
      states.push_back({std::move(next), std::move(word)});
      pq.push({cost, cur.len + 1, states.size() - 1});
    }
  }
  return {};
}

}  // namespace

PrenilpotencyResult is_prenilpotent_set(const RealRootSet& set, const std::vector<RootVector>& theta, int depth,
                                        std::size_t max_states) {
  PrenilpotencyResult r;
  const Gcm& a = set.gcm();
  for (const auto& v : theta) sign_of_root(v);
  auto delta = null_root(a);
  for (std::size_t i = 0; i < theta.size(); ++i)
    for (std::size_t j = i + 1; j < theta.size(); ++j) {
      RootVector s = add(theta[i], theta[j]);
      if (is_zero(s)) {
        r.verdict = Verdict::No;
        r.reason = "contains a root and its negative";
        return r;
      }
      if (delta) {
        // a + b = k*delta with k != 0 can never be made all-positive and all-negative
        long k = s[0] / (*delta)[0];
        if (s == add(RootVector(s.size(), 0), *delta, k) && k != 0) {
          r.verdict = Verdict::No;
          r.reason = "sum of two members is a nonzero multiple of the null root";
          return r;
        }
      }
    }
  r.positive = search_sign(a, theta, true, depth, max_states);
  r.negative = search_sign(a, theta, false, depth, max_states);
  if (r.positive.found && r.negative.found) {
    r.verdict = Verdict::Yes;
    r.reason = "witness words found";
  } else {
    r.verdict = Verdict::Unknown;
    r.reason = "no witness within depth " + std::to_string(depth);
  }
  return r;
}

PrenilpotencyResult is_prenilpotent_pair(const RealRootSet& set, const RootVector& a, const RootVector& b, int depth,
                                         std::size_t max_states) {
  return is_prenilpotent_set(set, {a, b}, depth, max_states);
}

NilpotencyResult is_nilpotent_set(const RealRootSet& set, const std::vector<RootVector>& theta, int depth) {
  NilpotencyResult r;
  std::unordered_set<RootVector, RootHash> members(theta.begin(), theta.end());
  bool unknown_sum = false;
  for (const auto& x : theta)
    for (const auto& y : theta) {
      if (!(x < y)) continue;
      RootVector s = add(x, y);
      Verdict v = is_real_root(set, s);
      if (v == Verdict::Unknown) unknown_sum = true;
      if (v == Verdict::Yes && !members.count(s)) r.missing_sums.emplace_back(x, y);
    }
  if (!r.missing_sums.empty()) {
    r.verdict = Verdict::No;
    r.reason = "not closed under root sums";
    return r;
  }
  r.prenilpotent = is_prenilpotent_set(set, theta, depth);
  if (r.prenilpotent.verdict == Verdict::No) {
    r.verdict = Verdict::No;
    r.reason = r.prenilpotent.reason;
  } else if (r.prenilpotent.verdict == Verdict::Unknown || unknown_sum) {
    r.verdict = Verdict::Unknown;
    r.reason = unknown_sum ? "a pairwise sum exceeds the height bound" : r.prenilpotent.reason;
  } else {
    r.verdict = Verdict::Yes;
    r.reason = "prenilpotent and closed";
  }
  return r;
}

}  // namespace kmt
