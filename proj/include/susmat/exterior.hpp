#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "susmat/matrix.hpp"
#include "susmat/ring.hpp"

namespace susmat {

// Basis monomials of Lambda(R^m) are encoded as bitmasks: coordinate i of
// {1..m} is bit i-1, indices implicitly ascending, degree = popcount. All
// fixed basis orders list masks by ascending value.

// sign of e_S ^ e_T on disjoint masks: parity of #{(i,j) in S x T : i > j}.
int wedge_sign(std::uint32_t s, std::uint32_t t);

std::vector<std::uint32_t> parity_masks(int m, int parity);
std::vector<std::uint32_t> degree_masks(int m, int k);
std::vector<std::uint32_t> full_masks(int m);

// Position of a mask inside one of the fixed mask lists above.
int mask_position(const std::vector<std::uint32_t>& basis, std::uint32_t mask);

// Element of Lambda(R^m): sparse mask -> coefficient map, zero coefficients
// never stored, all coefficients from one ring.
class Multivector {
 public:
  static Multivector zero(const Ring& ring, int rank);
  static Multivector unit(const Ring& ring, int rank);  // the scalar 1
  static Multivector monomial(const Ring& ring, int rank, std::uint32_t mask,
                              const Scalar& coeff);
  static Multivector basis_vector(const Ring& ring, int rank, int i);  // e_i, 1-based

  int rank() const { return rank_; }
  const Ring& ring() const { return ring_; }
  const std::map<std::uint32_t, Scalar>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  Scalar coeff(std::uint32_t mask) const;  // zero when absent

  // Terms of the given degree-parity only; the two parts partition the terms.
  Multivector parity_part(int parity) const;

  Multivector operator-() const;
  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(const Scalar& s, const Multivector& v);
  friend bool operator==(const Multivector& a, const Multivector& b);
  friend bool operator!=(const Multivector& a, const Multivector& b) { return !(a == b); }

  std::string to_text() const;  // e.g. "+3·e{1,3} -1·e{}"
  nlohmann::json to_json() const;
  static Multivector from_json(const Ring& ring, int rank, const nlohmann::json& j);

 private:
  Multivector(Ring ring, int rank);
  void add_term(std::uint32_t mask, const Scalar& c);

  Ring ring_;
  int rank_;
  std::map<std::uint32_t, Scalar> terms_;

  friend Multivector wedge(const Multivector& u, const Multivector& v);
  friend Multivector contract(const std::vector<Scalar>& f, const Multivector& u);
};

Multivector wedge(const Multivector& u, const Multivector& v);

// l_w: left wedge multiplication by the vector w = sum w_i e_i.
Multivector left_mul(const std::vector<Scalar>& w, const Multivector& u);

// d_f: contraction by the functional f, alternating-sum deletion rule.
Multivector contract(const std::vector<Scalar>& f, const Multivector& u);

// The split of a parity class of Lambda(R^m) along the last coordinate,
// Lambda_i(P + R) = Lambda_0(P) + Lambda_1(P) with P spanned by e_1..e_{m-1}.
// `order` lists the Lambda_0(P)-summand first, then the Lambda_1(P)-summand,
// each sorted by the value of the P-mask; `even_count` is the size of the
// first summand. The identification w (x) e_m <-> w ^ e_m extracts e_m from
// the right, so every monomial carries sign +1 under it.
struct CanonicalSplit {
  int rank = 0;
  int parity = 0;
  std::size_t even_count = 0;
  std::vector<std::uint32_t> order;

  bool carries_last(std::uint32_t mask) const;
  // Sign a monomial acquires under w ^ e_m <-> w (x) e_m. Right extraction
  // makes it +1 for every mask; kept explicit because the block-formula
  // tests pin the convention.
  int extraction_sign(std::uint32_t mask) const;
};

CanonicalSplit canonical_split(int m, int parity);

using LinearMap = Mat;  // square, acting on column vectors of R^m

struct BasisDesc {
  int rank = 0;
  int parity = -1;   // -1 when not a parity class
  int degree = -1;   // -1 when not a single degree
  std::size_t dim = 0;
  std::string label;

  static BasisDesc parity_class(int m, int parity);
  static BasisDesc degree_class(int m, int k);
  static BasisDesc custom(int m, int parity, std::size_t dim, std::string label);
};

// Dense matrix tagged with the bases it is written in.
struct GradedMatrix {
  Mat mat;
  BasisDesc source;
  BasisDesc target;

  GradedMatrix(Mat m, BasisDesc src, BasisDesc tgt);
};

// Lambda^k(phi) in the degree-k mask basis: entry (T, S) is the k x k minor
// of phi with rows T and columns S.
GradedMatrix exterior_power_map(const LinearMap& phi, int k);

// Lambda_0(phi) or Lambda_1(phi) in the fixed parity-class basis; entries
// between different degrees are zero.
GradedMatrix lambda_parity_map(const LinearMap& phi, int parity);

// Lambda(phi) on all of Lambda(R^m), full mask basis.
Mat lambda_full_map(const LinearMap& phi);

}  // namespace susmat
