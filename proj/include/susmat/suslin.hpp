#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "susmat/clifford.hpp"
#include "susmat/exterior.hpp"
#include "susmat/matrix.hpp"

namespace susmat {

enum class SuslinFlavor { plain, bar };

// Recursive 2^{n-1} x 2^{n-1} matrix built from two length-n row vectors.
struct SuslinMatrix {
  int n = 0;
  SuslinFlavor flavor = SuslinFlavor::plain;
  Mat mat;

  nlohmann::json to_json() const;
};

// S_n(a, b): base (a_1), step [[a_1*Id, S_{n-1}(a',b')], [-S_{n-1}(b',a')^t, b_1*Id]].
SuslinMatrix suslin_matrix(const std::vector<Scalar>& a, const std::vector<Scalar>& b);

// The bar variant: base (b_1), step [[b_1*Id, -S_{n-1}(a',b')], [S_{n-1}(b',a')^t, a_1*Id]].
SuslinMatrix suslin_bar(const std::vector<Scalar>& a, const std::vector<Scalar>& b);

// The vector packing under which the endomorphisms below are represented:
// first row (b, f_1..f_n), second row (a, p_1..p_n). The slot order is easy
// to get wrong, so it only exists here.
std::pair<std::vector<Scalar>, std::vector<Scalar>> suslin_pack(const HyperbolicElement& x);

SuslinMatrix suslin_matrix_of(const HyperbolicElement& x);  // S_{n+1}(b,f,a,p)
SuslinMatrix suslin_bar_of(const HyperbolicElement& x);

// Generalized Suslin endomorphism S(x) = phi01(x0) o phi10(x) on the odd
// class, in the fixed mask basis.
GradedMatrix generalized_suslin(const HyperbolicElement& x);

// bar S(x) = phi01(x) o phi10(x0).
GradedMatrix generalized_suslin_bar(const HyperbolicElement& x);

// Ordered basis of one parity class whose elements are signed single
// monomials with pairwise distinct supports covering the class.
struct OrderedBasis {
  int parity = 0;
  int rank = 0;
  std::vector<Multivector> elements;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

// Validates the signed-monomial and completeness invariants; throws when
// they fail. Returns per-element (mask, sign in {-1, +1}) pairs.
std::vector<std::pair<std::uint32_t, int>> ordered_basis_signed_masks(const OrderedBasis& b);

// The inductive bases adapted to the Suslin block layout:
//   level 0: B1 = [e_1];
//   level k+1: B1 = [beta ^ e_{k+2} for beta in B0 at level k] ++ B1 at level k;
//   always B0 = image of B1 under phi10(x0), elementwise.
// Returns (B1 of Lambda_1(R^{n+1}), B0 of Lambda_0(R^{n+1})).
std::pair<OrderedBasis, OrderedBasis> build_suslin_bases(const Ring& ring, int n);

// Transports a matrix written in the fixed mask bases into the given ordered
// bases. Exact: signed-monomial bases make this a signed permutation
// conjugation, no division anywhere.
Mat represent(const Mat& matrix_in_mask_bases, const OrderedBasis& src,
              const OrderedBasis& dst);

}  // namespace susmat
