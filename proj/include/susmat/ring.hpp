#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace susmat {

using BigInt = boost::multiprecision::cpp_int;

enum class RingKind { integers, modular, polynomial };

// Identifies a scalar backend: Z, Z/m (m >= 2), or Z[vars] with a fixed,
// ordered variable list. Two descriptors compare equal iff scalars built
// from them may be combined.
struct RingDescriptor {
  RingKind kind = RingKind::integers;
  BigInt modulus = 0;              // modular only
  std::vector<std::string> vars;   // polynomial only

  static RingDescriptor integers();
  static RingDescriptor modular(BigInt m);
  static RingDescriptor polynomial(std::vector<std::string> vars);

  // Accepts "int", "mod:<m>", "poly", "poly:v1,v2,...".
  static RingDescriptor parse(std::string_view text);

  std::string to_string() const;
  void validate() const;

  bool operator==(const RingDescriptor& o) const;
  bool operator!=(const RingDescriptor& o) const { return !(*this == o); }
};

// Exponent vector over the ring's variable list.
struct Monomial {
  std::vector<std::uint32_t> exps;
  std::uint64_t degree() const;
  bool operator==(const Monomial& o) const { return exps == o.exps; }
};

// Graded lexicographic, higher terms first, so map iteration starts at the
// leading term and printed/stored forms are canonical.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using PolyTerms = std::map<Monomial, BigInt, MonomialOrder>;

namespace detail {
struct RingData;
}

class Scalar;

class Ring {
 public:
  explicit Ring(RingDescriptor desc);
  static Ring make(const RingDescriptor& desc) { return Ring(desc); }

  const RingDescriptor& descriptor() const;
  RingKind kind() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_integer(const BigInt& v) const;
  Scalar from_integer(long long v) const;
  Scalar variable(const std::string& name) const;

  // Minimal expression grammar: integer literals, variables, + - * ^ and
  // parentheses. Unicode middle dot and minus are accepted as * and -.
  Scalar parse(std::string_view expr) const;

  bool same(const Ring& other) const;
  std::string to_string() const;

 private:
  explicit Ring(std::shared_ptr<const detail::RingData> data);
  std::shared_ptr<const detail::RingData> data_;
  friend class Scalar;
};

// Immutable ring element. Every binary operation insists both operands come
// from the same ring; there is no implicit coercion between backends.
class Scalar {
 public:
  Scalar() = delete;

  Ring ring() const;
  RingKind kind() const;
  bool is_zero() const;
  bool is_one() const;
  std::string to_string() const;

  const BigInt& integer_value() const;   // integers / modular backends
  const PolyTerms& poly_terms() const;   // polynomial backend

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  Scalar(std::shared_ptr<const detail::RingData> ring, BigInt v);
  Scalar(std::shared_ptr<const detail::RingData> ring, PolyTerms terms);

  std::shared_ptr<const detail::RingData> ring_;
  std::variant<BigInt, PolyTerms> value_;

  friend class Ring;
  friend const detail::RingData& require_same_ring(const Scalar& a,
                                                   const Scalar& b,
                                                   const char* op);
};

// Unit test per backend: |s| = 1 over Z, gcd(s, m) = 1 over Z/m, constant
// +-1 over Z[vars].
bool scalar_is_unit(const Scalar& s);

// Inverse when it exists (extended Euclid for the modular backend).
std::optional<Scalar> scalar_inverse(const Scalar& s);

Scalar scalar_pow(const Scalar& base, std::uint64_t k);

}  // namespace susmat
