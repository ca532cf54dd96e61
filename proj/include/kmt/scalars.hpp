#ifndef KMT_SCALARS_HPP
#define KMT_SCALARS_HPP

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace kmt {

class ScalarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAUnit : public ScalarError {
 public:
  using ScalarError::ScalarError;
};

struct RingSpec {
  enum class Kind { Integers, Rationals, Modular, Polynomial };

  Kind kind = Kind::Integers;
  mpz_class modulus;                      // Modular only
  std::shared_ptr<const RingSpec> base;   // Polynomial only
  std::vector<std::string> vars;          // Polynomial only

  static RingSpec integers();
  static RingSpec rationals();
  static RingSpec modular(const mpz_class& m);
  static RingSpec polynomial(const RingSpec& base, std::vector<std::string> vars);

  // "Z", "Q", "zmod:7", "poly:Q:r,s"
  static RingSpec parse(const std::string& text);
  std::string to_string() const;

  void validate() const;
  bool operator==(const RingSpec& o) const;
  bool operator!=(const RingSpec& o) const { return !(*this == o); }
};

using Monomial = std::vector<unsigned>;

struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

struct Poly;
using Payload = std::variant<mpz_class, mpq_class, std::shared_ptr<const Poly>>;

struct Poly {
  std::map<Monomial, Payload, GrlexLess> terms;  // no zero coefficients
};

struct RingImpl;
class RingValue;

// Handle to a commutative ring. Cheap to copy, immutable.
class Ring {
 public:
  explicit Ring(const RingSpec& spec);
  static Ring parse(const std::string& text) { return Ring(RingSpec::parse(text)); }

  const RingSpec& spec() const;
  std::string name() const { return spec().to_string(); }

  RingValue zero() const;
  RingValue one() const;
  RingValue from_int(const mpz_class& n) const;
  RingValue from_int(long n) const;
  // Throws NotAUnit when the denominator is not invertible.
  RingValue from_rational(const mpq_class& q) const;
  RingValue var(const std::string& name) const;
  RingValue var(std::size_t index) const;
  // Integers, fractions, variables, + - * ^ and parentheses.
  RingValue parse_value(const std::string& text) const;

  bool is_polynomial() const;
  Ring base() const;

  bool operator==(const Ring& o) const;
  bool operator!=(const Ring& o) const { return !(*this == o); }

  const std::shared_ptr<const RingImpl>& impl() const { return impl_; }

 private:
  explicit Ring(std::shared_ptr<const RingImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const RingImpl> impl_;
  friend class RingValue;
};

class RingValue {
 public:
  RingValue(Ring ring, Payload p);

  const Ring& ring() const { return ring_; }
  const Payload& payload() const { return p_; }

  RingValue operator+(const RingValue& o) const;
  RingValue operator-(const RingValue& o) const;
  RingValue operator*(const RingValue& o) const;
  RingValue operator-() const;
  RingValue& operator+=(const RingValue& o) { return *this = *this + o; }
  RingValue& operator-=(const RingValue& o) { return *this = *this - o; }
  RingValue& operator*=(const RingValue& o) { return *this = *this * o; }
  RingValue pow(unsigned e) const;

  bool operator==(const RingValue& o) const;
  bool operator!=(const RingValue& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_one() const;
  bool is_nilpotent() const;
  std::optional<RingValue> try_invert() const;
  RingValue invert() const;  // throws NotAUnit

  // Polynomial rings: coefficient of a monomial (in the base ring).
  RingValue coefficient(const Monomial& m) const;
  // Polynomial rings: the (monomial, coefficient) list, highest grlex first.
  std::vector<std::pair<Monomial, RingValue>> terms() const;

  // Integers and residues: the representative; rationals: must be integral.
  mpz_class to_integer() const;
  mpq_class to_rational() const;

  std::string to_string() const;

 private:
  Ring ring_;
  Payload p_;
};

// Canonical map Z -> target.
RingValue ring_hom_apply(const Ring& target, const RingValue& x);

// Coefficientwise reduction Z -> zmod, Q -> zmod, poly:Z -> poly:zmod, ...
// Throws ScalarError when a denominator is not invertible in the target.
RingValue ring_reduce(const Ring& target, const RingValue& x);

std::ostream& operator<<(std::ostream& os, const RingValue& v);

}  // namespace kmt

#endif
