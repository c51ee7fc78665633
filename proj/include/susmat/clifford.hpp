#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "susmat/exterior.hpp"
#include "susmat/matrix.hpp"
#include "susmat/ring.hpp"

namespace susmat {

// Element x = (p, a, f, b) of the hyperbolic space H(P + R): column vector p,
// scalar a, row functional f, scalar b. Acting on Lambda(R^{n+1}), the pair
// (p, a) embeds as a vector with a on the last coordinate and (f, b) as a
// functional with b on the last coordinate.
struct HyperbolicElement {
  std::vector<Scalar> p;
  Scalar a;
  std::vector<Scalar> f;
  Scalar b;

  HyperbolicElement(std::vector<Scalar> p, Scalar a, std::vector<Scalar> f, Scalar b);

  int rank() const { return static_cast<int>(p.size()); }
  Ring ring() const { return a.ring(); }

  std::vector<Scalar> embedded_vector() const;      // (p, a), length n+1
  std::vector<Scalar> embedded_functional() const;  // (f, b), length n+1

  HyperbolicElement operator+(const HyperbolicElement& o) const;

  nlohmann::json to_json() const;
  static HyperbolicElement from_json(const Ring& ring, const nlohmann::json& j);
};

// The distinguished element x0 = (0, 1, 0, 1), q(x0) = 1.
HyperbolicElement make_x0(const Ring& ring, int n);

// q(p, a, f, b) = f(p) + ab.
Scalar hyperbolic_q(const HyperbolicElement& x);

// The action l_{(p,a)} + d_{(f,b)} applied to u in Lambda(R^{n+1}).
Multivector clifford_apply(const HyperbolicElement& x, const Multivector& u);

// Same action as a matrix on the full mask basis of Lambda(R^{n+1}).
Mat clifford_endo(const HyperbolicElement& x);

// The two nonzero blocks of the (odd) action in the fixed parity bases.
struct CliffordAction {
  GradedMatrix phi10;  // odd -> even
  GradedMatrix phi01;  // even -> odd
};

// Extracts phi10/phi01 and raises if either diagonal block fails to vanish
// (which would signal a sign-convention bug).
CliffordAction phi_blocks(const HyperbolicElement& x);

enum class PhiBlock { phi10, phi01 };

// The 2x2 block form of a phi block relative to the last-coordinate split,
//   phi10: [[ b*Id, l_p + d_f ], [ l_p + d_f, -a*Id ]]
//   phi01: [[ a*Id, l_p + d_f ], [ l_p + d_f, -b*Id ]],
// assembled directly from those formulas over the split-ordered bases. Used
// as an independent route against phi_blocks.
GradedMatrix phi_block_formula(const HyperbolicElement& x, PhiBlock which);

// Re-indexes a parity-block matrix from the fixed mask order into the
// split order of canonical_split (signs are all +1 under the split).
Mat reindex_to_split(const Mat& lex_matrix, int m, int target_parity, int source_parity);

// Finitely generated projective module presented as the image of an
// idempotent e acting on R^m.
struct IdempotentModule {
  int m;
  Mat e;

  explicit IdempotentModule(Mat idempotent);  // checks e*e = e
  Ring ring() const { return e.ring(); }
};

// The action of x on Lambda(R^{m+1}) for x compatible with the idempotent
// presentation (e p = p, f e = f); it commutes with lambda_projector and so
// restricts to the summand Lambda(P + R).
Mat clifford_endo_projective(const IdempotentModule& mod, const HyperbolicElement& x);

// Lambda(e + 1): the grading-preserving idempotent projector cutting out
// Lambda(P + R) inside Lambda(R^{m+1}).
Mat lambda_projector(const IdempotentModule& mod);

}  // namespace susmat
