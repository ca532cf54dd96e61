#include "kmt/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace kmt {

// ---------------------------------------------------------------- RingSpec

RingSpec RingSpec::integers() { return RingSpec{}; }

RingSpec RingSpec::rationals() {
  RingSpec s;
  s.kind = Kind::Rationals;
  return s;
}

RingSpec RingSpec::modular(const mpz_class& m) {
  RingSpec s;
  s.kind = Kind::Modular;
  s.modulus = m;
  s.validate();
  return s;
}

RingSpec RingSpec::polynomial(const RingSpec& base, std::vector<std::string> vars) {
  RingSpec s;
  s.kind = Kind::Polynomial;
  s.base = std::make_shared<const RingSpec>(base);
  s.vars = std::move(vars);
  s.validate();
  return s;
}

void RingSpec::validate() const {
  switch (kind) {
    case Kind::Integers:
    case Kind::Rationals:
      return;
    case Kind::Modular:
      if (modulus < 2) throw ScalarError("invalid modulus " + modulus.get_str() + " (must be >= 2)");
      return;
    case Kind::Polynomial: {
      if (!base) throw ScalarError("polynomial ring without base");
      base->validate();
      if (vars.empty()) throw ScalarError("polynomial ring needs at least one variable");
      std::set<std::string> seen;
      for (const auto& v : vars) {
        if (v.empty()) throw ScalarError("empty variable name");
        if (!seen.insert(v).second) throw ScalarError("duplicate variable name '" + v + "'");
      }
      return;
    }
  }
}

static std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

RingSpec RingSpec::parse(const std::string& text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text.rfind("zmod:", 0) == 0) {
    std::string m = text.substr(5);
    if (m.empty() || !std::all_of(m.begin(), m.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw ScalarError("bad modulus in ring spec '" + text + "'");
    return modular(mpz_class(m));
  }
  if (text.rfind("poly:", 0) == 0) {
    std::string rest = text.substr(5);
    auto pos = rest.rfind(':');
    if (pos == std::string::npos) throw ScalarError("bad polynomial ring spec '" + text + "'");
    RingSpec base = parse(rest.substr(0, pos));
    return polynomial(base, split(rest.substr(pos + 1), ','));
  }
  throw ScalarError("unknown ring spec '" + text + "'");
}

std::string RingSpec::to_string() const {
  switch (kind) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::Modular: return "zmod:" + modulus.get_str();
    case Kind::Polynomial: {
      std::string s = "poly:" + base->to_string() + ":";
      for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
      return s;
    }
  }
  return "?";
}

bool RingSpec::operator==(const RingSpec& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Integers:
    case Kind::Rationals: return true;
    case Kind::Modular: return modulus == o.modulus;
    case Kind::Polynomial: return vars == o.vars && *base == *o.base;
  }
  return false;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da < db;
  return a < b;
}

// ---------------------------------------------------------------- payload kernel

struct RingImpl {
  RingSpec spec;
  std::shared_ptr<const RingImpl> base;
};

using Kind = RingSpec::Kind;
using PolyPtr = std::shared_ptr<const Poly>;

namespace {

Payload p_from_int(const RingImpl& R, const mpz_class& n);
Payload p_add(const RingImpl& R, const Payload& a, const Payload& b);
Payload p_neg(const RingImpl& R, const Payload& a);
Payload p_mul(const RingImpl& R, const Payload& a, const Payload& b);
bool p_is_zero(const RingImpl& R, const Payload& a);
bool p_eq(const RingImpl& R, const Payload& a, const Payload& b);

const mpz_class& as_z(const Payload& p) { return std::get<mpz_class>(p); }
const mpq_class& as_q(const Payload& p) { return std::get<mpq_class>(p); }
const Poly& as_poly(const Payload& p) { return *std::get<PolyPtr>(p); }

mpz_class mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r = x % m;
  if (r < 0) r += m;
  return r;
}

Payload make_poly(Poly&& p) { return std::make_shared<const Poly>(std::move(p)); }

Payload p_from_int(const RingImpl& R, const mpz_class& n) {
  switch (R.spec.kind) {
    case Kind::Integers: return n;
    case Kind::Rationals: return mpq_class(n);
    case Kind::Modular: return mod(n, R.spec.modulus);
    case Kind::Polynomial: {
      Poly p;
      Payload c = p_from_int(*R.base, n);
      if (!p_is_zero(*R.base, c)) p.terms.emplace(Monomial(R.spec.vars.size(), 0), std::move(c));
      return make_poly(std::move(p));
    }
  }
  return n;
}

bool p_is_zero(const RingImpl& R, const Payload& a) {
  switch (R.spec.kind) {
    case Kind::Integers:
    case Kind::Modular: return as_z(a) == 0;
    case Kind::Rationals: return as_q(a) == 0;
    case Kind::Polynomial: return as_poly(a).terms.empty();
  }
  return false;
}

bool p_eq(const RingImpl& R, const Payload& a, const Payload& b) {
  switch (R.spec.kind) {
    case Kind::Integers:
    case Kind::Modular: return as_z(a) == as_z(b);
    case Kind::Rationals: return as_q(a) == as_q(b);
    case Kind::Polynomial: {
      const auto& x = as_poly(a).terms;
      const auto& y = as_poly(b).terms;
      if (x.size() != y.size()) return false;
      for (auto i = x.begin(), j = y.begin(); i != x.end(); ++i, ++j)
        if (i->first != j->first || !p_eq(*R.base, i->second, j->second)) return false;
      return true;
    }
  }
  return false;
}

Payload p_add(const RingImpl& R, const Payload& a, const Payload& b) {
  switch (R.spec.kind) {
    case Kind::Integers: return mpz_class(as_z(a) + as_z(b));
    case Kind::Rationals: return mpq_class(as_q(a) + as_q(b));
    case Kind::Modular: return mod(as_z(a) + as_z(b), R.spec.modulus);
    case Kind::Polynomial: {
      Poly out = as_poly(a);
      for (const auto& [m, c] : as_poly(b).terms) {
        auto it = out.terms.find(m);
        if (it == out.terms.end()) {
          out.terms.emplace(m, c);
        } else {
          Payload s = p_add(*R.base, it->second, c);
          if (p_is_zero(*R.base, s))
            out.terms.erase(it);
          else
            it->second = std::move(s);
        }
      }
      return make_poly(std::move(out));
    }
  }
  return a;
}

Payload p_neg(const RingImpl& R, const Payload& a) {
  switch (R.spec.kind) {
    case Kind::Integers: return mpz_class(-as_z(a));
    case Kind::Rationals: return mpq_class(-as_q(a));
    case Kind::Modular: return mod(-as_z(a), R.spec.modulus);
    case Kind::Polynomial: {
      Poly out;
      for (const auto& [m, c] : as_poly(a).terms) out.terms.emplace(m, p_neg(*R.base, c));
      return make_poly(std::move(out));
    }
  }
  return a;
}

Payload p_mul(const RingImpl& R, const Payload& a, const Payload& b) {
  switch (R.spec.kind) {
    case Kind::Integers: return mpz_class(as_z(a) * as_z(b));
    case Kind::Rationals: return mpq_class(as_q(a) * as_q(b));
    case Kind::Modular: return mod(as_z(a) * as_z(b), R.spec.modulus);
    case Kind::Polynomial: {
      Poly out;
      for (const auto& [ma, ca] : as_poly(a).terms) {
        for (const auto& [mb, cb] : as_poly(b).terms) {
          Payload c = p_mul(*R.base, ca, cb);
          if (p_is_zero(*R.base, c)) continue;
          Monomial m(ma.size());
          for (std::size_t k = 0; k < m.size(); ++k) m[k] = ma[k] + mb[k];
          auto it = out.terms.find(m);
          if (it == out.terms.end()) {
            out.terms.emplace(std::move(m), std::move(c));
          } else {
            Payload s = p_add(*R.base, it->second, c);
            if (p_is_zero(*R.base, s))
              out.terms.erase(it);
            else
              it->second = std::move(s);
          }
        }
      }
      return make_poly(std::move(out));
    }
  }
  return a;
}

bool p_is_nilpotent(const RingImpl& R, const Payload& a) {
  switch (R.spec.kind) {
    case Kind::Integers:
    case Kind::Rationals: return p_is_zero(R, a);
    case Kind::Modular: {
      // every prime power dividing the modulus has exponent <= bit length
      mpz_class e = mpz_sizeinbase(R.spec.modulus.get_mpz_t(), 2);
      mpz_class r;
      mpz_powm(r.get_mpz_t(), as_z(a).get_mpz_t(), e.get_mpz_t(), R.spec.modulus.get_mpz_t());
      return r == 0;
    }
    case Kind::Polynomial:
      for (const auto& [m, c] : as_poly(a).terms)
        if (!p_is_nilpotent(*R.base, c)) return false;
      return true;
  }
  return false;
}

std::optional<Payload> p_inverse(const RingImpl& R, const Payload& a) {
  switch (R.spec.kind) {
    case Kind::Integers:
      if (as_z(a) == 1 || as_z(a) == -1) return a;
      return std::nullopt;
    case Kind::Rationals:
      if (as_q(a) == 0) return std::nullopt;
      return mpq_class(1 / as_q(a));
    case Kind::Modular: {
      mpz_class r;
      if (mpz_invert(r.get_mpz_t(), as_z(a).get_mpz_t(), R.spec.modulus.get_mpz_t()) == 0)
        return std::nullopt;
      return mod(r, R.spec.modulus);
    }
    case Kind::Polynomial: {
      // unit iff constant term is a unit and the rest is nilpotent
      const auto& terms = as_poly(a).terms;
      Monomial zero(R.spec.vars.size(), 0);
      auto it = terms.find(zero);
      if (it == terms.end()) return std::nullopt;
      auto c_inv = p_inverse(*R.base, it->second);
      if (!c_inv) return std::nullopt;
      Poly rest;
      for (const auto& [m, c] : terms)
        if (m != zero) {
          if (!p_is_nilpotent(*R.base, c)) return std::nullopt;
          rest.terms.emplace(m, c);
        }
      Poly cinv_poly;
      cinv_poly.terms.emplace(zero, *c_inv);
      Payload ci = make_poly(std::move(cinv_poly));
      // a = c (1 + u), u = c^{-1} rest nilpotent; a^{-1} = c^{-1} sum (-u)^k
      Payload mu = p_neg(R, p_mul(R, ci, make_poly(std::move(rest))));
      Payload sum = p_from_int(R, 1);
      Payload pw = p_from_int(R, 1);
      for (int k = 0; k < 100000; ++k) {
        pw = p_mul(R, pw, mu);
        if (p_is_zero(R, pw)) return p_mul(R, ci, sum);
        sum = p_add(R, sum, pw);
      }
      throw ScalarError("nilpotent series did not terminate");
    }
  }
  return std::nullopt;
}

std::string payload_to_string(const RingImpl& R, const Payload& a);

std::string monomial_to_string(const std::vector<std::string>& vars, const Monomial& m) {
  std::string s;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[k];
    if (m[k] > 1) s += "^" + std::to_string(m[k]);
  }
  return s;
}

std::string payload_to_string(const RingImpl& R, const Payload& a) {
  switch (R.spec.kind) {
    case Kind::Integers:
    case Kind::Modular: return as_z(a).get_str();
    case Kind::Rationals: return as_q(a).get_str();
    case Kind::Polynomial: {
      const auto& terms = as_poly(a).terms;
      if (terms.empty()) return "0";
      std::string out;
      bool first = true;
      for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        std::string c = payload_to_string(*R.base, it->second);
        bool compound = R.base->spec.kind == Kind::Polynomial &&
                        as_poly(it->second).terms.size() > 1;
        if (compound) c = "(" + c + ")";
        bool neg = !compound && !c.empty() && c[0] == '-';
        if (neg) c = c.substr(1);
        std::string mono = monomial_to_string(R.spec.vars, it->first);
        std::string term;
        if (mono.empty())
          term = c;
        else if (c == "1")
          term = mono;
        else
          term = c + "*" + mono;
        if (first)
          out = (neg ? "-" : "") + term;
        else
          out += (neg ? " - " : " + ") + term;
        first = false;
      }
      return out;
    }
  }
  return "?";
}

std::shared_ptr<const RingImpl> build_impl(const RingSpec& spec) {
  spec.validate();
  auto impl = std::make_shared<RingImpl>();
  impl->spec = spec;
  if (spec.kind == Kind::Polynomial) impl->base = build_impl(*spec.base);
  return impl;
}

}  // namespace

// ---------------------------------------------------------------- Ring

Ring::Ring(const RingSpec& spec) : impl_(build_impl(spec)) {}

const RingSpec& Ring::spec() const { return impl_->spec; }

bool Ring::operator==(const Ring& o) const { return impl_ == o.impl_ || impl_->spec == o.impl_->spec; }

bool Ring::is_polynomial() const { return spec().kind == Kind::Polynomial; }

Ring Ring::base() const {
  if (!is_polynomial()) throw ScalarError("ring " + name() + " has no base ring");
  return Ring(impl_->base);
}

RingValue Ring::zero() const { return RingValue(*this, p_from_int(*impl_, 0)); }
RingValue Ring::one() const { return RingValue(*this, p_from_int(*impl_, 1)); }
RingValue Ring::from_int(const mpz_class& n) const { return RingValue(*this, p_from_int(*impl_, n)); }
RingValue Ring::from_int(long n) const { return from_int(mpz_class(n)); }

RingValue Ring::from_rational(const mpq_class& q) const {
  if (spec().kind == Kind::Rationals) return RingValue(*this, q);
  if (spec().kind == Kind::Polynomial) {
    RingValue c = base().from_rational(q);
    Poly p;
    if (!c.is_zero()) p.terms.emplace(Monomial(spec().vars.size(), 0), c.payload());
    return RingValue(*this, make_poly(std::move(p)));
  }
  RingValue den = from_int(q.get_den());
  auto inv = den.try_invert();
  if (!inv) throw NotAUnit("denominator " + q.get_den().get_str() + " is not a unit in " + name());
  return from_int(q.get_num()) * *inv;
}

RingValue Ring::var(std::size_t index) const {
  if (!is_polynomial() || index >= spec().vars.size())
    throw ScalarError("no variable #" + std::to_string(index) + " in " + name());
  Monomial m(spec().vars.size(), 0);
  m[index] = 1;
  Poly p;
  p.terms.emplace(m, p_from_int(*impl_->base, 1));
  if (p_is_zero(*impl_->base, p.terms.begin()->second)) p.terms.clear();
  return RingValue(*this, make_poly(std::move(p)));
}

RingValue Ring::var(const std::string& name) const {
  if (is_polynomial()) {
    const auto& v = spec().vars;
    auto it = std::find(v.begin(), v.end(), name);
    if (it != v.end()) return var(static_cast<std::size_t>(it - v.begin()));
    // allow variables of nested polynomial bases
    RingValue b = base().var(name);
    Poly p;
    if (!b.is_zero()) p.terms.emplace(Monomial(v.size(), 0), b.payload());
    return RingValue(*this, make_poly(std::move(p)));
  }
  throw ScalarError("unknown variable '" + name + "' in " + this->name());
}

namespace {

class ValueParser {
 public:
  ValueParser(const Ring& R, const std::string& s) : R_(R), s_(s) {}

  RingValue parse() {
    RingValue v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_) + "'");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw ScalarError("cannot parse '" + s_ + "' in " + R_.name() + ": " + why);
  }
  RingValue expr() {
    RingValue v = eat('-') ? -term() : (eat('+'), term());
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  RingValue term() {
    RingValue v = power();
    while (eat('*')) v *= power();
    return v;
  }
  RingValue power() {
    RingValue v = atom();
    if (eat('^')) {
      skip();
      std::string digits = number();
      if (digits.empty()) fail("exponent expected");
      v = v.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return v;
  }
  std::string number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  RingValue atom() {
    skip();
    if (eat('(')) {
      RingValue v = expr();
      if (!eat(')')) fail("')' expected");
      return v;
    }
    if (eat('-')) return -atom();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      mpz_class num(number());
      if (eat('/')) {
        skip();
        std::string d = number();
        if (d.empty() || mpz_class(d) == 0) fail("bad denominator");
        mpq_class q(num, mpz_class(d));
        q.canonicalize();
        return R_.from_rational(q);
      }
      return R_.from_int(num);
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
      ++pos_;
    if (start == pos_) fail("value expected");
    return R_.var(s_.substr(start, pos_ - start));
  }

  const Ring& R_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

RingValue Ring::parse_value(const std::string& text) const { return ValueParser(*this, text).parse(); }

// ---------------------------------------------------------------- RingValue

RingValue::RingValue(Ring ring, Payload p) : ring_(std::move(ring)), p_(std::move(p)) {}

static void check_same(const RingValue& a, const RingValue& b) {
  if (a.ring() != b.ring())
    throw ScalarError("ring mismatch: " + a.ring().name() + " vs " + b.ring().name());
}

RingValue RingValue::operator+(const RingValue& o) const {
  check_same(*this, o);
  return RingValue(ring_, p_add(*ring_.impl(), p_, o.p_));
}

RingValue RingValue::operator-(const RingValue& o) const {
  check_same(*this, o);
  return RingValue(ring_, p_add(*ring_.impl(), p_, p_neg(*ring_.impl(), o.p_)));
}

RingValue RingValue::operator*(const RingValue& o) const {
  check_same(*this, o);
  return RingValue(ring_, p_mul(*ring_.impl(), p_, o.p_));
}

RingValue RingValue::operator-() const { return RingValue(ring_, p_neg(*ring_.impl(), p_)); }

RingValue RingValue::pow(unsigned e) const {
  RingValue result = ring_.one();
  RingValue b = *this;
  while (e) {
    if (e & 1u) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return result;
}

bool RingValue::operator==(const RingValue& o) const {
  return ring_ == o.ring_ && p_eq(*ring_.impl(), p_, o.p_);
}

bool RingValue::is_zero() const { return p_is_zero(*ring_.impl(), p_); }
bool RingValue::is_one() const { return *this == ring_.one(); }
bool RingValue::is_nilpotent() const { return p_is_nilpotent(*ring_.impl(), p_); }

std::optional<RingValue> RingValue::try_invert() const {
  auto inv = p_inverse(*ring_.impl(), p_);
  if (!inv) return std::nullopt;
  return RingValue(ring_, std::move(*inv));
}

RingValue RingValue::invert() const {
  auto inv = try_invert();
  if (!inv) throw NotAUnit(to_string() + " is not a unit in " + ring_.name());
  return *inv;
}

RingValue RingValue::coefficient(const Monomial& m) const {
  if (!ring_.is_polynomial()) throw ScalarError("coefficient() needs a polynomial ring");
  const auto& terms = as_poly(p_).terms;
  auto it = terms.find(m);
  Ring b = ring_.base();
  return it == terms.end() ? b.zero() : RingValue(b, it->second);
}

std::vector<std::pair<Monomial, RingValue>> RingValue::terms() const {
  if (!ring_.is_polynomial()) throw ScalarError("terms() needs a polynomial ring");
  std::vector<std::pair<Monomial, RingValue>> out;
  Ring b = ring_.base();
  const auto& terms = as_poly(p_).terms;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) out.emplace_back(it->first, RingValue(b, it->second));
  return out;
}

mpz_class RingValue::to_integer() const {
  switch (ring_.spec().kind) {
    case Kind::Integers:
    case Kind::Modular: return as_z(p_);
    case Kind::Rationals:
      if (as_q(p_).get_den() != 1) throw ScalarError(to_string() + " is not integral");
      return as_q(p_).get_num();
    case Kind::Polynomial: break;
  }
  throw ScalarError("to_integer() on polynomial value");
}

mpq_class RingValue::to_rational() const {
  switch (ring_.spec().kind) {
    case Kind::Integers: return mpq_class(as_z(p_));
    case Kind::Rationals: return as_q(p_);
    default: break;
  }
  throw ScalarError("to_rational() needs Z or Q");
}

std::string RingValue::to_string() const { return payload_to_string(*ring_.impl(), p_); }

std::ostream& operator<<(std::ostream& os, const RingValue& v) { return os << v.to_string(); }

RingValue ring_hom_apply(const Ring& target, const RingValue& x) {
  if (x.ring().spec().kind != Kind::Integers) throw ScalarError("ring_hom_apply expects an integer");
  return target.from_int(std::get<mpz_class>(x.payload()));
}

RingValue ring_reduce(const Ring& target, const RingValue& x) {
  const auto& src = x.ring().spec();
  switch (src.kind) {
    case Kind::Integers: return target.from_int(std::get<mpz_class>(x.payload()));
    case Kind::Rationals: return target.from_rational(std::get<mpq_class>(x.payload()));
    case Kind::Modular:
      if (target.spec().kind == Kind::Modular && src.modulus % target.spec().modulus == 0)
        return target.from_int(std::get<mpz_class>(x.payload()));
      throw ScalarError("no reduction map " + src.to_string() + " -> " + target.name());
    case Kind::Polynomial: {
      if (!target.is_polynomial() || target.spec().vars != src.vars)
        throw ScalarError("no reduction map " + src.to_string() + " -> " + target.name());
      Ring tb = target.base();
      Poly p;
      for (const auto& [m, c] : x.terms()) {
        RingValue rc = ring_reduce(tb, c);
        if (!rc.is_zero()) p.terms.emplace(m, rc.payload());
      }
      return RingValue(target, make_poly(std::move(p)));
    }
  }
  throw ScalarError("unsupported reduction");
}

}  // namespace kmt
