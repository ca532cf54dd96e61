#include "kmt/steinberg.hpp"

#include <algorithm>
#include <cstdlib>

namespace kmt {

namespace {

const Ring& poly_rs() {
  static const Ring r = Ring::parse("poly:Q:r,s");
  return r;
}

RingValue ipow(const RingValue& x, long e) {
  if (e >= 0) return x.pow(static_cast<unsigned>(e));
  return x.invert().pow(static_cast<unsigned>(-e));
}

RMatrix to_ring(const QMatrix& m, const Ring& ring) {
  return m.map<RingValue>([&](const mpq_class& q) { return ring.from_rational(q); });
}

RMatrix ring_identity(int n, const Ring& ring) { return RMatrix::identity(n, ring.one()); }

// Entry used to read off the coefficient of x_c in a product.
struct Pivot {
  int row, col, deg;
  mpq_class value;
};

Pivot pivot_of(const QMatrix& x) {
  if (x.is_zero()) throw SteinbergError("zero root matrix");
  for (const auto& [k, v] : x.entries())
    if (abs(v) == 1) return {k.row, k.col, k.deg, v};
  const auto& [k, v] = *x.entries().begin();
  return {k.row, k.col, k.deg, v};
}

RingValue entry(const RMatrix& m, const Pivot& p, const Ring& ring) {
  const RingValue* v = m.find(p.row, p.col, p.deg);
  return v ? *v : ring.zero();
}

// Writes g = prod_{i} exp(u_i X_i) in the given order; throws if something is left over.
std::vector<RingValue> peel(RMatrix g, const std::vector<QMatrix>& mats, const Ring& ring) {
  const RMatrix id = ring_identity(g.size(), ring);
  std::vector<RingValue> out;
  out.reserve(mats.size());
  for (const QMatrix& x : mats) {
    Pivot p = pivot_of(x);
    RingValue d = entry(g - id, p, ring);
    RingValue u = d * ring.from_rational(mpq_class(1) / p.value);
    if (!u.is_zero()) g = exp_matrix(x, -u) * g;
    out.push_back(u);
  }
  if (g != id) throw SteinbergError("product does not factor over the given roots");
  return out;
}

// Matches peeled coefficients against k r^m s^n with c = ma + nb.
std::vector<ConstantEntry> read_constants(const RootVector& a, const RootVector& b,
                                          const std::vector<RootVector>& closure, const std::vector<RingValue>& u) {
  std::vector<ConstantEntry> out;
  for (std::size_t q = 0; q < closure.size(); ++q) {
    if (u[q].is_zero()) continue;
    const RootVector& c = closure[q];
    if (c == a || c == b) throw SteinbergError("commutator has a component along " + root_to_string(c));
    auto terms = u[q].terms();
    if (terms.size() != 1) throw SteinbergError("constant for " + root_to_string(c) + " is not a monomial");
    const auto& [mono, coef] = terms.front();
    long m = mono.size() > 0 ? mono[0] : 0, n = mono.size() > 1 ? mono[1] : 0;
    if (add(add(RootVector(a.size(), 0), a, m), b, n) != c)
      throw SteinbergError("degree mismatch for " + root_to_string(c));
    mpq_class k = coef.to_rational();
    if (k.get_den() != 1) throw SteinbergError("non-integral constant for " + root_to_string(c));
    out.push_back({c, m, n, k.get_num().get_si()});
  }
  return out;
}

}  // namespace

QMatrix root_matrix(const Algebra& g, const RootVector& c) {
  RootVectorPair p = root_vector_pair(g, c);
  QMatrix m = p.x.value.m;
  if (m.is_zero()) throw SteinbergError("root vector has no matrix part");
  if (m.entries().begin()->second < 0) m = -m;
  return m;
}

RMatrix exp_matrix(const QMatrix& x, const RingValue& r) {
  const Ring& ring = r.ring();
  RMatrix out = ring_identity(x.size(), ring);
  QMatrix term = QMatrix::identity(x.size(), mpq_class(1));
  RingValue rk = ring.one();
  for (int k = 1;; ++k) {
    term = (term * x).scaled(mpq_class(1, k));
    if (term.is_zero()) break;
    if (k > 64) throw NilpotenceBoundExceeded("root matrix is not nilpotent");
    rk = rk * r;
    out = out + to_ring(term, ring).scaled(rk);
  }
  return out;
}

PairConstants structure_constants(const Algebra& g, const RealRootSet& set, const RootVector& a,
                                  const RootVector& b, int depth) {
  PrenilpotencyResult pre = is_prenilpotent_pair(set, a, b, depth);
  if (pre.verdict != Verdict::Yes)
    throw SteinbergError("pair " + root_to_string(a) + ", " + root_to_string(b) + " is not known to be prenilpotent (" +
                         verdict_name(pre.verdict) + ")");
  PairConstants out;
  out.a = a;
  out.b = b;
  out.theta = theta_pair(set, a, b);

  const Ring& P = poly_rs();
  RingValue r = P.var("r"), s = P.var("s");
  QMatrix xa = root_matrix(g, a), xb = root_matrix(g, b);
  RMatrix comm = exp_matrix(xa, r) * exp_matrix(xb, s) * exp_matrix(xa, -r) * exp_matrix(xb, -s);

  std::vector<QMatrix> mats;
  for (const auto& c : out.theta) mats.push_back(root_matrix(g, c));
  bool mixed = (sign_of_root(a) != sign_of_root(b));
  if (mixed && out.theta.size() > 2)
    throw SteinbergError("mixed-sign pair with a non-trivial closure is not supported");
  std::vector<RingValue> u = peel(comm, mats, P);

  out.constants = read_constants(a, b, out.theta, u);
  return out;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const StructureTable> StructureTable::build(std::shared_ptr<const Algebra> g, const RealRootSet& set,
                                                            std::vector<RootVector> theta, int depth) {
  std::sort(theta.begin(), theta.end(), root_order_less);
  theta.erase(std::unique(theta.begin(), theta.end()), theta.end());
  if (theta.empty()) throw SteinbergError("empty root set");
  NilpotencyResult nil = is_nilpotent_set(set, theta, depth);
  if (nil.verdict != Verdict::Yes)
    throw SteinbergError("root set is not known to be nilpotent (" + verdict_name(nil.verdict) + ")" +
                         (nil.reason.empty() ? "" : ": " + nil.reason));

  auto t = std::shared_ptr<StructureTable>(new StructureTable());
  t->g_ = g;
  t->order_ = theta;
  for (const auto& c : theta) t->mats_.push_back(root_matrix(*g, c));
  int n = static_cast<int>(theta.size());
  t->table_.assign(n, std::vector<std::vector<ConstantEntry>>(n));

  const Ring& P = poly_rs();
  RingValue r = P.var("r"), s = P.var("s");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const RootVector &a = theta[i], &b = theta[j];
      std::vector<RootVector> closure = theta_pair(set, a, b);
      std::vector<QMatrix> mats;
      for (const auto& c : closure) {
        int k = t->index_of(c);
        if (k < 0) throw SteinbergError("closure of " + root_to_string(a) + ", " + root_to_string(b) + " leaves the set");
        mats.push_back(t->mats_[k]);
      }
      bool mixed = sign_of_root(a) != sign_of_root(b);
      if (mixed && closure.size() > 2) throw SteinbergError("mixed-sign set must be abelian");
      RMatrix comm = exp_matrix(t->mats_[i], r) * exp_matrix(t->mats_[j], s) * exp_matrix(t->mats_[i], -r) *
                     exp_matrix(t->mats_[j], -s);
      std::vector<RingValue> u = peel(comm, mats, P);
      t->table_[i][j] = read_constants(a, b, closure, u);
    }
  return t;
}

std::shared_ptr<const StructureTable> StructureTable::positive_system(std::shared_ptr<const Algebra> g) {
  if (g->affine()) throw SteinbergError("positive system is infinite for affine handles");
  RealRootSet set = enumerate_real_roots(g->gcm(), 64);
  std::vector<RootVector> pos;
  for (const auto& v : set.positive_sorted())
    if (sign_of_root(v) == RootSign::Positive) pos.push_back(v);
  return build(g, set, pos, 64);
}

int StructureTable::index_of(const RootVector& v) const {
  for (std::size_t i = 0; i < order_.size(); ++i)
    if (order_[i] == v) return static_cast<int>(i);
  return -1;
}

long StructureTable::max_abs_constant() const {
  long m = 0;
  for (const auto& row : table_)
    for (const auto& cell : row)
      for (const auto& e : cell) m = std::max(m, std::labs(e.k));
  return m;
}

std::shared_ptr<const StructureTable> StructureTable::corrupted() const {
  auto t = std::shared_ptr<StructureTable>(new StructureTable(*this));
  // collection only reads cells [x_b, x_a] with b later than a
  for (std::size_t i = 0; i < t->table_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      auto& cell = t->table_[i][j];
      if (!cell.empty()) {
        cell.front().k = -cell.front().k;
        return t;
      }
    }
  throw SteinbergError("table has no constants to corrupt");
}

// ---------------------------------------------------------------------------

UnipotentWord::UnipotentWord(TablePtr table, Ring ring, std::vector<RingValue> coeffs)
    : table_(std::move(table)), ring_(std::move(ring)), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != table_->size()) throw SteinbergError("coefficient count does not match the context");
  for (const auto& v : c_)
    if (v.ring() != ring_) throw SteinbergError("coefficient ring mismatch");
}

UnipotentWord UnipotentWord::identity(TablePtr table, const Ring& ring) {
  std::vector<RingValue> c(table->size(), ring.zero());
  return UnipotentWord(std::move(table), ring, std::move(c));
}

UnipotentWord UnipotentWord::single(TablePtr table, const RootVector& a, const RingValue& r) {
  int i = table->index_of(a);
  if (i < 0) throw SteinbergError("root " + root_to_string(a) + " is not in the context");
  UnipotentWord u = identity(table, r.ring());
  u.c_[i] = r;
  return u;
}

RingValue UnipotentWord::coefficient(const RootVector& a) const {
  int i = table_->index_of(a);
  if (i < 0) throw SteinbergError("root " + root_to_string(a) + " is not in the context");
  return c_[i];
}

UnipotentWord UnipotentWord::operator*(const UnipotentWord& o) const {
  if (table_ != o.table_ || ring_ != o.ring_) throw SteinbergError("context mismatch");
  std::vector<Factor> f;
  for (int i = 0; i < table_->size(); ++i) f.push_back({i, c_[i]});
  for (int i = 0; i < table_->size(); ++i) f.push_back({i, o.c_[i]});
  return collect(table_, ring_, std::move(f));
}

UnipotentWord UnipotentWord::inverse() const {
  std::vector<Factor> f;
  for (int i = table_->size() - 1; i >= 0; --i) f.push_back({i, -c_[i]});
  return collect(table_, ring_, std::move(f));
}

bool UnipotentWord::operator==(const UnipotentWord& o) const {
  return table_->order() == o.table_->order() && ring_ == o.ring_ && c_ == o.c_;
}

bool UnipotentWord::is_identity() const {
  return std::all_of(c_.begin(), c_.end(), [](const RingValue& v) { return v.is_zero(); });
}

ojson UnipotentWord::to_json() const {
  ojson out = ojson::array();
  for (int i = 0; i < table_->size(); ++i)
    if (!c_[i].is_zero()) out.push_back(ojson::array({table_->order()[i], c_[i].to_string()}));
  return out;
}

UnipotentWord collect(const TablePtr& table, const Ring& ring, std::vector<Factor> f) {
  for (const auto& [i, v] : f)
    if (i < 0 || i >= table->size() || v.ring() != ring) throw SteinbergError("factor outside the context");
  std::size_t steps = 0;
  for (;;) {
    f.erase(std::remove_if(f.begin(), f.end(), [](const Factor& x) { return x.second.is_zero(); }), f.end());
    std::size_t i = 0;
    while (i + 1 < f.size() && f[i].first < f[i + 1].first) ++i;
    if (i + 1 >= f.size()) break;
    if (++steps > 1'000'000) throw SteinbergError("collection did not terminate");
    if (f[i].first == f[i + 1].first) {
      f[i].second += f[i + 1].second;
      f.erase(f.begin() + static_cast<long>(i) + 1);
      continue;
    }
    // x_b(s) x_a(r) = x_a(r) x_b(s) [x_b(-s), x_a(-r)]
    Factor fb = f[i], fa = f[i + 1];
    std::vector<Factor> rep{fa, fb};
    RingValue ms = -fb.second, mr = -fa.second;
    for (const auto& e : table->entries(fb.first, fa.first)) {
      int c = table->index_of(e.c);
      rep.push_back({c, ring.from_int(e.k) * ms.pow(static_cast<unsigned>(e.m)) * mr.pow(static_cast<unsigned>(e.n))});
    }
    f.erase(f.begin() + static_cast<long>(i), f.begin() + static_cast<long>(i) + 2);
    f.insert(f.begin() + static_cast<long>(i), rep.begin(), rep.end());
  }
  std::vector<RingValue> c(table->size(), ring.zero());
  for (const auto& [i, v] : f) c[i] = v;
  return UnipotentWord(table, ring, std::move(c));
}

UnipotentWord matrix_collect(const TablePtr& table, const Ring& ring, const std::vector<Factor>& factors) {
  bool integral = ring.spec().kind == RingSpec::Kind::Integers;
  Ring work = integral ? Ring(RingSpec::rationals()) : ring;
  int n = table->algebra().matrix_size();
  RMatrix g = ring_identity(n, work);
  for (const auto& [i, v] : factors) {
    RingValue w = integral ? work.from_int(v.to_integer()) : v;
    g = g * exp_matrix(table->matrix(i), w);
  }
  std::vector<QMatrix> mats;
  for (int i = 0; i < table->size(); ++i) mats.push_back(table->matrix(i));
  std::vector<RingValue> u = peel(g, mats, work);
  if (integral) {
    for (auto& v : u) {
      mpq_class q = v.to_rational();
      if (q.get_den() != 1) throw SteinbergError("refactored coefficient is not integral");
      v = ring.from_int(mpz_class(q.get_num()));
    }
  }
  return UnipotentWord(table, ring, std::move(u));
}

UnipotentWord unipotent_commutator(const TablePtr& table, const RootVector& a, const RingValue& r,
                                   const RootVector& b, const RingValue& rp) {
  int ia = table->index_of(a), ib = table->index_of(b);
  if (ia < 0 || ib < 0) throw SteinbergError("root outside the context");
  if (r.ring() != rp.ring()) throw SteinbergError("coefficient ring mismatch");
  return collect(table, r.ring(), {{ia, r}, {ib, rp}, {ia, -r}, {ib, -rp}});
}

UnipotentWord reduce(const UnipotentWord& u, const Ring& target, const TablePtr& table_override) {
  std::vector<RingValue> c;
  for (const auto& v : u.coefficients()) c.push_back(ring_reduce(target, v));
  return UnipotentWord(table_override ? table_override : u.table(), target, std::move(c));
}

// ---------------------------------------------------------------------------

TorusElement TorusElement::identity(const Ring& ring, int rank) { return {std::vector<RingValue>(rank, ring.one())}; }

TorusElement TorusElement::coroot_power(const Ring& ring, int rank, int i, const RingValue& r) {
  if (!r.try_invert()) throw NotAUnit(r.to_string() + " is not a unit");
  TorusElement t = identity(ring, rank);
  t.values.at(i) = r;
  return t;
}

RingValue torus_character(const Gcm& a, const TorusElement& t, const RootVector& root) {
  int n = a.size();
  if (static_cast<int>(t.values.size()) != n || static_cast<int>(root.size()) != n)
    throw SteinbergError("torus element rank mismatch");
  const Ring& ring = t.values.front().ring();
  RingValue out = ring.one();
  for (int i = 0; i < n; ++i) {
    if (root[i] == 0) continue;
    RingValue ti = ring.one();
    for (int j = 0; j < n; ++j) ti *= ipow(t.values[j], a(j, i));
    out *= ipow(ti, root[i]);
  }
  return out;
}

RingValue torus_conjugate(const Gcm& a, const TorusElement& t, int i, const RingValue& r) {
  if (t.values.empty() || t.values.front().ring() != r.ring()) throw SteinbergError("torus ring mismatch");
  return torus_character(a, t, simple_root(a.size(), i)) * r;
}

UnipotentWord torus_conjugate(const TorusElement& t, const UnipotentWord& u) {
  if (t.values.empty() || t.values.front().ring() != u.ring()) throw SteinbergError("torus ring mismatch");
  const Gcm& a = u.table()->algebra().gcm();
  std::vector<RingValue> c;
  for (int i = 0; i < u.table()->size(); ++i)
    c.push_back(torus_character(a, t, u.table()->order()[i]) * u.coefficients()[i]);
  return UnipotentWord(u.table(), u.ring(), std::move(c));
}

Report naturality_check(const UnipotentWord& u, const UnipotentWord& v, const Ring& target,
                        const TablePtr& target_table) {
  Stopwatch sw;
  Report rep("steinberg.naturality", "Definition 2.5");
  rep.params = {{"source", u.ring().name()}, {"target", target.name()}, {"u", u.to_json()}, {"v", v.to_json()}};
  UnipotentWord lhs = reduce(u * v, target);
  TablePtr tt = target_table ? target_table : u.table();
  UnipotentWord rhs = reduce(u, target, tt) * reduce(v, target, tt);
  if (lhs.coefficients() != rhs.coefficients())
    rep.fail({{"reduce_of_product", lhs.to_json()}, {"product_of_reductions", rhs.to_json()}});
  rep.elapsed_ms = sw.ms();
  return rep;
}

}  // namespace kmt
