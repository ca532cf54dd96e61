#include "kmt/liealg.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace kmt {

LoopElement loop_bracket(const LoopElement& x, const LoopElement& y) {
  LoopElement out;
  out.m = x.m * y.m - y.m * x.m;
  // central term: sum over a of a * tr(X_a Y_{-a})
  const int n = x.m.size();
  std::vector<std::vector<std::pair<QMatrix::Key, const mpq_class*>>> y_by_row(n);
  for (const auto& [k, v] : y.m.entries()) y_by_row[k.row].push_back({k, &v});
  for (const auto& [k, v] : x.m.entries()) {
    if (k.deg == 0) continue;
    for (const auto& [k2, v2] : y_by_row[k.col])
      if (k2.col == k.row && k2.deg == -k.deg) out.central += k.deg * v * *v2;
  }
  return out;
}

// ---------------------------------------------------------------- elements

namespace {

ExprPtr raw_expr() {
  static const ExprPtr r = std::make_shared<const Expr>();
  return r;
}

bool is_raw(const ExprPtr& e) { return !e || e->kind == Expr::Kind::Raw; }

ExprPtr gen_expr(char g, int i) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Gen;
  e->gen = g;
  e->index = i;
  return e;
}

ExprPtr linear_expr(std::vector<std::pair<mpq_class, ExprPtr>> terms) {
  for (const auto& t : terms)
    if (is_raw(t.second)) return raw_expr();
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Linear;
  e->terms = std::move(terms);
  return e;
}

void check_same(const Element& x, const Element& y) {
  if (x.algebra_id != y.algebra_id) throw LieError("elements belong to different algebra handles");
}

}  // namespace

bool Element::has_expression() const { return !is_raw(expr); }

Element operator+(const Element& x, const Element& y) {
  check_same(x, y);
  return {x.algebra_id, x.value + y.value, linear_expr({{1, x.expr}, {1, y.expr}})};
}

Element operator-(const Element& x, const Element& y) {
  check_same(x, y);
  return {x.algebra_id, x.value - y.value, linear_expr({{1, x.expr}, {-1, y.expr}})};
}

Element operator-(const Element& x) { return {x.algebra_id, -x.value, linear_expr({{-1, x.expr}})}; }

Element operator*(const mpq_class& s, const Element& x) {
  return {x.algebra_id, x.value.scaled(s), linear_expr({{s, x.expr}})};
}

bool same_up_to_sign(const Element& x, const Element& y) {
  return x.algebra_id == y.algebra_id && (x.value == y.value || x.value == -y.value);
}

Element bracket(const Element& x, const Element& y) {
  check_same(x, y);
  ExprPtr e;
  if (is_raw(x.expr) || is_raw(y.expr)) {
    e = raw_expr();
  } else {
    auto b = std::make_shared<Expr>();
    b->kind = Expr::Kind::Bracket;
    b->lhs = x.expr;
    b->rhs = y.expr;
    e = b;
  }
  return {x.algebra_id, loop_bracket(x.value, y.value), e};
}

bool commutes(const Element& x, const Element& y) {
  check_same(x, y);
  return loop_bracket(x.value, y.value).is_zero();
}

Element ad_power(const Element& x, const Element& y, int k) {
  Element cur = y;
  for (int i = 0; i < k && !cur.is_zero(); ++i) cur = bracket(x, cur);
  return cur;
}

Element ad_exp(const Element& x, const Element& y, int bound) {
  check_same(x, y);
  std::vector<std::pair<mpq_class, ExprPtr>> terms{{1, y.expr}};
  LoopElement sum = y.value;
  Element cur = y;
  mpz_class fact = 1;
  for (int n = 1;; ++n) {
    if (n > bound) throw NilpotenceBoundExceeded("ad-exponential did not terminate within " + std::to_string(bound));
    cur = bracket(x, cur);
    if (cur.is_zero()) break;
    fact *= n;
    mpq_class c(1, fact);
    c.canonicalize();
    sum = sum + cur.value.scaled(c);
    terms.emplace_back(c, cur.expr);
  }
  return {x.algebra_id, sum, linear_expr(std::move(terms))};
}

Element s_prime_action(const Algebra& g, int i, const Element& y) {
  Element minus_f = -g.f(i);
  Element y1 = ad_exp(g.e(i), y);
  Element y2 = ad_exp(minus_f, y1);
  return ad_exp(g.e(i), y2);
}

Element s_prime_word(const Algebra& g, const std::vector<int>& word, const Element& y) {
  Element cur = y;
  for (auto it = word.rbegin(); it != word.rend(); ++it) cur = s_prime_action(g, *it, cur);
  return cur;
}

RootVectorPair root_vector_pair(const Algebra& g, const std::vector<int>& word, int i) {
  return {s_prime_word(g, word, g.e(i))};
}

RootVectorPair root_vector_pair(const Algebra& g, const RootVector& a) {
  RootWord rw = root_word(g.gcm(), a);
  return root_vector_pair(g, rw.word, rw.node);
}

// ---------------------------------------------------------------- realizations

namespace {

std::atomic<std::size_t> next_algebra_id{1};

QMatrix unit(int n, int r, int c, int d = 0, const mpq_class& v = 1) {
  QMatrix m(n);
  m.add(r, c, d, v);
  return m;
}

}  // namespace

struct AlgebraBuilder {
  static std::shared_ptr<Algebra> make(const std::string& tag, int l, Gcm gcm, int n, bool affine, bool twisted,
                                       const std::vector<QMatrix>& e, const std::vector<QMatrix>& f) {
    std::shared_ptr<Algebra> g(new Algebra());
    g->id_ = next_algebra_id++;
    g->tag_ = tag;
    g->l_ = l;
    g->gcm_ = std::move(gcm);
    g->n_ = n;
    g->affine_ = affine;
    g->twisted_ = twisted;
    for (std::size_t i = 0; i < e.size(); ++i) {
      Element ei{g->id_, {e[i], 0}, gen_expr('e', static_cast<int>(i))};
      Element fi{g->id_, {f[i], 0}, gen_expr('f', static_cast<int>(i))};
      Element hi{g->id_, loop_bracket(ei.value, fi.value), gen_expr('h', static_cast<int>(i))};
      g->e_.push_back(ei);
      g->f_.push_back(fi);
      g->h_.push_back(hi);
    }
    return g;
  }
};

namespace {

// Transpose with t -> t^-1.
QMatrix opposite(const QMatrix& x) {
  QMatrix m(x.size());
  for (const auto& [k, v] : x.entries()) m.add(k.col, k.row, -k.deg, v);
  return m;
}

struct Twist {
  int n;
  int half;
  int prime(int i) const { return n - 1 - i; }
  int sign(int i) const { return i < half ? 1 : -1; }
  // sigma(E_ij) = -s_i s_j E_{j'i'}
  QMatrix apply(const QMatrix& x) const {
    QMatrix m(n);
    for (const auto& [k, v] : x.entries())
      m.add(prime(k.col), prime(k.row), k.deg, -sign(k.row) * sign(k.col) * v);
    return m;
  }
};

}  // namespace

std::shared_ptr<const Algebra> Algebra::build(const std::string& tag, int l) {
  std::vector<QMatrix> e, f;
  if (tag == "B3" || tag == "C3") {
    Gcm a = finite_gcm(tag);
    if (tag == "C3") {
      // 7x7 orthogonal model, i' = 6 - i (0-based)
      const int n = 7;
      for (int i = 0; i < 3; ++i) {
        QMatrix x = unit(n, i, i + 1) - unit(n, 5 - i, 6 - i);
        e.push_back(x);
        QMatrix y = opposite(x);
        f.push_back(i == 2 ? y.scaled(2) : y);
      }
      return AlgebraBuilder::make(tag, 3, a, n, false, false, e, f);
    }
    // 6x6 symplectic model, i' = 5 - i (0-based)
    const int n = 6;
    for (int i = 0; i < 2; ++i) e.push_back(unit(n, i, i + 1) - unit(n, 4 - i, 5 - i));
    e.push_back(unit(n, 2, 3));
    for (const auto& x : e) f.push_back(opposite(x));
    return AlgebraBuilder::make(tag, 3, a, n, false, false, e, f);
  }
  if (!tag.empty() && tag[0] == 'A' && tag != "A1t" && tag != "A2odd") {
    Gcm a = finite_gcm(tag);
    const int n = a.size() + 1;
    for (int i = 0; i + 1 < n; ++i) {
      e.push_back(unit(n, i, i + 1));
      f.push_back(unit(n, i + 1, i));
    }
    return AlgebraBuilder::make(tag, a.size(), a, n, false, false, e, f);
  }
  if (tag == "A1t") {
    Gcm a = affine_gcm(AffineFamily::A1t, l);
    const int n = l + 1;
    e.push_back(unit(n, n - 1, 0, 1));
    for (int i = 0; i < l; ++i) e.push_back(unit(n, i, i + 1));
    for (const auto& x : e) f.push_back(opposite(x));
    return AlgebraBuilder::make(tag, l, a, n, true, false, e, f);
  }
  if (tag == "A2odd") {
    Gcm a = affine_gcm(AffineFamily::A2odd, l);
    const int n = 2 * l;
    Twist tw{n, l};
    e.push_back(unit(n, n - 1, 1, 1) - unit(n, n - 2, 0, 1));
    for (int i = 0; i + 1 < l; ++i) e.push_back(unit(n, i, i + 1) - unit(n, tw.prime(i + 1), tw.prime(i)));
    e.push_back(unit(n, l - 1, l));
    for (const auto& x : e) f.push_back(opposite(x));
    return AlgebraBuilder::make(tag, l, a, n, true, true, e, f);
  }
  throw LieError("unsupported algebra '" + tag + "' (matrix realizations: An, B3, C3, A1t, A2odd)");
}

std::shared_ptr<const Algebra> build_algebra(const std::string& tag, int l) { return Algebra::build(tag, l); }

std::string Algebra::display_name() const {
  if (tag_ == "A1t") return family_display_name(AffineFamily::A1t, l_);
  if (tag_ == "A2odd") return family_display_name(AffineFamily::A2odd, l_);
  return tag_;
}

Element Algebra::raw(LoopElement v) const {
  if (v.m.size() != n_) throw LieError("raw element has the wrong matrix size");
  return {id_, std::move(v), raw_expr()};
}

bool Algebra::in_realization(const LoopElement& x) const {
  if (x.m.size() != n_) return false;
  if (!x.m.trace().empty()) return false;
  if (!affine_) {
    for (const auto& [k, v] : x.m.entries())
      if (k.deg != 0) return false;
    if (x.central != 0) return false;
  }
  if (twisted_) {
    Twist tw{n_, l_};
    QMatrix s = tw.apply(x.m);
    QMatrix expect(n_);
    for (const auto& [k, v] : x.m.entries()) expect.add(k.row, k.col, k.deg, k.deg % 2 == 0 ? v : mpq_class(-v));
    if (s != expect) return false;
  }
  return true;
}

// ---------------------------------------------------------------- weights

namespace {

std::optional<std::vector<mpq_class>> solve(std::vector<std::vector<mpq_class>> m, std::vector<mpq_class> b) {
  const int n = static_cast<int>(m.size());
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(b[p], b[c]);
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  for (int i = 0; i < n; ++i) b[i] /= m[i][i];
  return b;
}

std::vector<std::vector<mpq_class>> h_diagonals(const Algebra& g) {
  std::vector<std::vector<mpq_class>> d(g.rank(), std::vector<mpq_class>(g.matrix_size(), 0));
  for (int i = 0; i < g.rank(); ++i)
    for (const auto& [k, v] : g.h(i).value.m.entries()) d[i][k.row] = v;
  return d;
}

}  // namespace

WeightResult weight_of(const Algebra& g, const Element& x) {
  if (x.algebra_id != g.id()) throw LieError("element does not belong to this handle");
  if (x.is_zero()) throw LieError("weight_of(0) is undefined");
  const int r = g.rank();
  auto hd = h_diagonals(g);
  std::optional<std::pair<std::vector<mpq_class>, int>> common;
  auto consider = [&](const std::vector<mpq_class>& lambda, int deg) {
    if (!common) {
      common = {lambda, deg};
      return true;
    }
    return common->first == lambda && common->second == deg;
  };
  for (const auto& [k, v] : x.value.m.entries()) {
    std::vector<mpq_class> lambda(r);
    for (int i = 0; i < r; ++i) lambda[i] = hd[i][k.row] - hd[i][k.col];
    if (!consider(lambda, k.deg)) return {};
  }
  if (x.value.central != 0 && !consider(std::vector<mpq_class>(r, 0), 0)) return {};
  const auto& [lambda, deg] = *common;
  const Gcm& a = g.gcm();
  std::vector<mpq_class> c(r, 0);
  if (!g.affine()) {
    std::vector<std::vector<mpq_class>> m(r, std::vector<mpq_class>(r));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) m[i][j] = a(i, j);
    auto sol = solve(m, lambda);
    if (!sol) throw LieError("singular weight system");
    c = *sol;
  } else {
    // the t-degree fixes the coefficient of a_0; the finite block is invertible
    c[0] = deg;
    std::vector<std::vector<mpq_class>> m(r - 1, std::vector<mpq_class>(r - 1));
    std::vector<mpq_class> b(r - 1);
    for (int i = 1; i < r; ++i) {
      for (int j = 1; j < r; ++j) m[i - 1][j - 1] = a(i, j);
      b[i - 1] = lambda[i] - a(i, 0) * deg;
    }
    auto sol = solve(m, b);
    if (!sol) throw LieError("singular weight system");
    for (int i = 1; i < r; ++i) c[i] = (*sol)[i - 1];
    mpq_class row0 = 0;
    for (int j = 0; j < r; ++j) row0 += a(0, j) * c[j];
    if (row0 != lambda[0]) return {};
  }
  WeightResult out;
  out.homogeneous = true;
  for (const auto& q : c) {
    if (q.get_den() != 1) return {};
    out.weight.push_back(q.get_num().get_si());
  }
  return out;
}

// ---------------------------------------------------------------- relations

Report verify_relations(const Gcm& a, const std::vector<Element>& e, const std::vector<Element>& f,
                        const std::vector<Element>& h, const std::string& check_id) {
  Report r(check_id, "defining relations");
  const int n = a.size();
  auto bad = [&](const std::string& rel, int i, int j, const Element& value) {
    r.fail({{"relation", rel}, {"i", i}, {"j", j}, {"value", element_to_string(value)}});
  };
  int checked = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Element hh = bracket(h[i], h[j]);
      if (!hh.is_zero()) bad("[h_i,h_j] = 0", i, j, hh);
      Element ef = bracket(e[i], f[j]);
      Element want = i == j ? h[i] : ef - ef;
      if (ef.value != want.value) bad("[e_i,f_j] = delta_ij h_i", i, j, ef);
      Element he = bracket(h[i], e[j]);
      if (he.value != e[j].value.scaled(a(i, j))) bad("[h_i,e_j] = a_ij e_j", i, j, he);
      Element hf = bracket(h[i], f[j]);
      if (hf.value != f[j].value.scaled(-a(i, j))) bad("[h_i,f_j] = -a_ij f_j", i, j, hf);
      checked += 4;
      if (i == j) continue;
      int k = 1 - a(i, j);
      Element se = ad_power(e[i], e[j], k);
      if (!se.is_zero()) bad("(ad e_i)^{1-a_ij} e_j = 0", i, j, se);
      Element sf = ad_power(f[i], f[j], k);
      if (!sf.is_zero()) bad("(ad f_i)^{1-a_ij} f_j = 0", i, j, sf);
      Element sharp_e = ad_power(e[i], e[j], k - 1);
      if (sharp_e.is_zero()) bad("sharpness (ad e_i)^{-a_ij} e_j != 0", i, j, sharp_e);
      Element sharp_f = ad_power(f[i], f[j], k - 1);
      if (sharp_f.is_zero()) bad("sharpness (ad f_i)^{-a_ij} f_j != 0", i, j, sharp_f);
      checked += 4;
    }
  r.params["relations_checked"] = checked;
  return r;
}

Report verify_defining_relations(const Algebra& g) {
  std::vector<Element> e, f, h;
  for (int i = 0; i < g.rank(); ++i) {
    e.push_back(g.e(i));
    f.push_back(g.f(i));
    h.push_back(g.h(i));
  }
  Report r = verify_relations(g.gcm(), e, f, h, "serre");
  r.location = "Definition 2.2";
  r.params["algebra"] = g.display_name();
  r.params["matrix_size"] = g.matrix_size();
  for (int i = 0; i < g.rank(); ++i)
    if (!g.in_realization(g.e(i).value) || !g.in_realization(g.f(i).value))
      r.fail({{"relation", "generator lies in the realization"}, {"i", i}});
  if (g.affine())
    r.note("relations verified; minimality of the loop realization (center vs. radical) is assumed, not checked");
  return r;
}

// ---------------------------------------------------------------- transport

Element embed(const GeneratorImages& images, const Element& x) {
  if (!x.has_expression()) throw LieError("element lacks a generator expression");
  if (images.e.empty()) throw LieError("no generator images");
  std::unordered_map<const Expr*, Element> memo;
  std::function<Element(const ExprPtr&)> eval = [&](const ExprPtr& p) -> Element {
    auto it = memo.find(p.get());
    if (it != memo.end()) return it->second;
    Element out;
    switch (p->kind) {
      case Expr::Kind::Gen:
        if (p->gen == 'e')
          out = images.e.at(p->index);
        else if (p->gen == 'f')
          out = images.f.at(p->index);
        else
          out = bracket(images.e.at(p->index), images.f.at(p->index));
        break;
      case Expr::Kind::Bracket:
        out = bracket(eval(p->lhs), eval(p->rhs));
        break;
      case Expr::Kind::Linear: {
        out = eval(p->terms[0].second);
        out = p->terms[0].first * out;
        for (std::size_t k = 1; k < p->terms.size(); ++k) out = out + p->terms[k].first * eval(p->terms[k].second);
        break;
      }
      case Expr::Kind::Raw:
        throw LieError("element lacks a generator expression");
    }
    memo.emplace(p.get(), out);
    return out;
  };
  return eval(x.expr);
}

// ---------------------------------------------------------------- weight-space oracle

std::vector<RootVector> realization_real_roots(const Algebra& g, long H) {
  const int n = g.matrix_size();
  std::vector<Element> basis;
  auto push = [&](QMatrix m) {
    if (!m.is_zero()) basis.push_back(g.raw({std::move(m), 0}));
  };
  const bool twisted = g.twisted();
  const bool finite_a = !g.affine() && !g.tag().empty() && g.tag()[0] == 'A';
  if (!g.affine() && !finite_a) throw LieError("weight-space oracle not available for " + g.tag());
  const long dmax = g.affine() ? H : 0;
  Twist tw{n, g.l()};
  for (long d = -dmax; d <= dmax; ++d) {
    const int deg = static_cast<int>(d);
    std::set<std::pair<int, int>> done;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (!twisted) {
          push(unit(n, i, j, deg));
          continue;
        }
        if (done.count({i, j})) continue;
        done.insert({i, j});
        done.insert({tw.prime(j), tw.prime(i)});
        QMatrix x = unit(n, i, j, deg);
        QMatrix s = tw.apply(x);
        push(deg % 2 == 0 ? x + s : x - s);
      }
    // diagonal part: weight d*delta, one vector per independent traceless combination
    if (d == 0) continue;
    if (!twisted) {
      for (int i = 0; i + 1 < n; ++i) push(unit(n, i, i, deg) - unit(n, i + 1, i + 1, deg));
    } else if (deg % 2 == 0) {
      for (int i = 0; i < g.l(); ++i) push(unit(n, i, i, deg) - unit(n, tw.prime(i), tw.prime(i), deg));
    } else {
      for (int i = 0; i + 1 < g.l(); ++i)
        push(unit(n, i, i, deg) + unit(n, tw.prime(i), tw.prime(i), deg) - unit(n, i + 1, i + 1, deg) -
             unit(n, tw.prime(i + 1), tw.prime(i + 1), deg));
    }
  }
  std::map<RootVector, std::vector<Element>> spaces;
  for (const auto& b : basis) {
    WeightResult w = weight_of(g, b);
    if (!w.homogeneous) throw LieError("oracle basis element is not homogeneous");
    if (is_zero(w.weight) || height(w.weight) > H) continue;
    spaces[w.weight].push_back(b);
  }
  std::vector<RootVector> out;
  for (const auto& [w, vecs] : spaces) {
    if (vecs.size() != 1) continue;
    auto opp = spaces.find(negate(w));
    if (opp == spaces.end() || opp->second.size() != 1) continue;
    const Element& x = vecs[0];
    Element h = bracket(x, opp->second[0]);
    Element hx = bracket(h, x);
    if (!hx.is_zero()) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- printing

std::string element_to_string(const Element& x) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : x.value.m.entries()) {
    if (!first) os << " ";
    first = false;
    os << "(" << k.row + 1 << "," << k.col + 1;
    if (k.deg != 0) os << ",t^" << k.deg;
    os << "):" << v.get_str();
  }
  if (x.value.central != 0) os << (first ? "" : " ") << "c:" << x.value.central.get_str();
  if (first && x.value.central == 0) os << "0";
  return os.str();
}

ojson element_to_json(const Element& x) {
  ojson j = ojson::array();
  for (const auto& [k, v] : x.value.m.entries()) j.push_back({k.row + 1, k.col + 1, k.deg, v.get_str()});
  ojson out;
  out["entries"] = j;
  out["central"] = x.value.central.get_str();
  return out;
}

}  // namespace kmt
