#include "susmat/clifford.hpp"

#include <bit>
#include <stdexcept>

namespace susmat {

HyperbolicElement::HyperbolicElement(std::vector<Scalar> p_, Scalar a_,
                                     std::vector<Scalar> f_, Scalar b_)
    : p(std::move(p_)), a(std::move(a_)), f(std::move(f_)), b(std::move(b_)) {
  if (p.size() != f.size())
    throw std::invalid_argument("hyperbolic element: p and f lengths differ");
  const Ring r = a.ring();
  auto check = [&](const Scalar& s) {
    if (!s.ring().same(r))
      throw std::invalid_argument("hyperbolic element: mixed rings");
  };
  check(b);
  for (const auto& s : p) check(s);
  for (const auto& s : f) check(s);
}

std::vector<Scalar> HyperbolicElement::embedded_vector() const {
  std::vector<Scalar> w = p;
  w.push_back(a);
  return w;
}

std::vector<Scalar> HyperbolicElement::embedded_functional() const {
  std::vector<Scalar> g = f;
  g.push_back(b);
  return g;
}

HyperbolicElement HyperbolicElement::operator+(const HyperbolicElement& o) const {
  if (rank() != o.rank())
    throw std::invalid_argument("hyperbolic element rank mismatch in +");
  std::vector<Scalar> sp, sf;
  sp.reserve(p.size());
  sf.reserve(f.size());
  for (std::size_t i = 0; i < p.size(); ++i) sp.push_back(p[i] + o.p[i]);
  for (std::size_t i = 0; i < f.size(); ++i) sf.push_back(f[i] + o.f[i]);
  return HyperbolicElement(std::move(sp), a + o.a, std::move(sf), b + o.b);
}

nlohmann::json HyperbolicElement::to_json() const {
  nlohmann::json jp = nlohmann::json::array(), jf = nlohmann::json::array();
  for (const auto& s : p) jp.push_back(s.to_string());
  for (const auto& s : f) jf.push_back(s.to_string());
  return {{"p", jp}, {"a", a.to_string()}, {"f", jf}, {"b", b.to_string()}};
}

HyperbolicElement HyperbolicElement::from_json(const Ring& ring, const nlohmann::json& j) {
  std::vector<Scalar> p, f;
  for (const auto& s : j.at("p")) p.push_back(ring.parse(s.get<std::string>()));
  for (const auto& s : j.at("f")) f.push_back(ring.parse(s.get<std::string>()));
  return HyperbolicElement(std::move(p), ring.parse(j.at("a").get<std::string>()),
                           std::move(f), ring.parse(j.at("b").get<std::string>()));
}

HyperbolicElement make_x0(const Ring& ring, int n) {
  if (n < 0) throw std::invalid_argument("negative rank");
  std::vector<Scalar> zeros(static_cast<std::size_t>(n), ring.zero());
  return HyperbolicElement(zeros, ring.one(), zeros, ring.one());
}

Scalar hyperbolic_q(const HyperbolicElement& x) {
  Scalar q = x.a * x.b;
  for (std::size_t i = 0; i < x.p.size(); ++i) q += x.f[i] * x.p[i];
  return q;
}

Multivector clifford_apply(const HyperbolicElement& x, const Multivector& u) {
  if (u.rank() != x.rank() + 1)
    throw std::invalid_argument("clifford_apply: multivector rank must be n+1");
  if (!u.ring().same(x.ring()))
    throw std::invalid_argument("clifford_apply: ring mismatch");
  return left_mul(x.embedded_vector(), u) + contract(x.embedded_functional(), u);
}

Mat clifford_endo(const HyperbolicElement& x) {
  const int m = x.rank() + 1;
  const Ring ring = x.ring();
  auto masks = full_masks(m);
  Mat out(ring, static_cast<int>(masks.size()), static_cast<int>(masks.size()));
  for (std::size_t j = 0; j < masks.size(); ++j) {
    Multivector img =
        clifford_apply(x, Multivector::monomial(ring, m, masks[j], ring.one()));
    for (const auto& [mask, c] : img.terms())
      out.at(mask_position(masks, mask), static_cast<int>(j)) = c;
  }
  return out;
}

CliffordAction phi_blocks(const HyperbolicElement& x) {
  const int m = x.rank() + 1;
  const Ring ring = x.ring();
  auto even = parity_masks(m, 0);
  auto odd = parity_masks(m, 1);

  Mat phi10(ring, static_cast<int>(even.size()), static_cast<int>(odd.size()));
  Mat phi01(ring, static_cast<int>(odd.size()), static_cast<int>(even.size()));

  for (std::size_t j = 0; j < odd.size(); ++j) {
    Multivector img =
        clifford_apply(x, Multivector::monomial(ring, m, odd[j], ring.one()));
    for (const auto& [mask, c] : img.terms()) {
      if (std::popcount(mask) % 2 != 0)
        throw std::logic_error("clifford action has a nonzero odd->odd block");
      phi10.at(mask_position(even, mask), static_cast<int>(j)) = c;
    }
  }
  for (std::size_t j = 0; j < even.size(); ++j) {
    Multivector img =
        clifford_apply(x, Multivector::monomial(ring, m, even[j], ring.one()));
    for (const auto& [mask, c] : img.terms()) {
      if (std::popcount(mask) % 2 != 1)
        throw std::logic_error("clifford action has a nonzero even->even block");
      phi01.at(mask_position(odd, mask), static_cast<int>(j)) = c;
    }
  }
  return CliffordAction{
      GradedMatrix(std::move(phi10), BasisDesc::parity_class(m, 1),
                   BasisDesc::parity_class(m, 0)),
      GradedMatrix(std::move(phi01), BasisDesc::parity_class(m, 0),
                   BasisDesc::parity_class(m, 1))};
}

// (l_p + d_f) restricted to one parity class of Lambda(R^n), target the
// other class, in the fixed mask bases of rank n.
static Mat l_plus_d_block(const HyperbolicElement& x, int source_parity) {
  const int n = x.rank();
  const Ring ring = x.ring();
  auto src = parity_masks(n, source_parity);
  auto tgt = parity_masks(n, 1 - source_parity);
  Mat out(ring, static_cast<int>(tgt.size()), static_cast<int>(src.size()));
  for (std::size_t j = 0; j < src.size(); ++j) {
    Multivector u = Multivector::monomial(ring, n, src[j], ring.one());
    Multivector img = left_mul(x.p, u) + contract(x.f, u);
    for (const auto& [mask, c] : img.terms())
      out.at(mask_position(tgt, mask), static_cast<int>(j)) = c;
  }
  return out;
}

GradedMatrix phi_block_formula(const HyperbolicElement& x, PhiBlock which) {
  const int n = x.rank();
  const int m = n + 1;
  const Ring ring = x.ring();

  // Block sizes: Lambda_0(P) and Lambda_1(P) for P = R^n.
  const int dim0 = static_cast<int>(parity_masks(n, 0).size());
  const int dim1 = static_cast<int>(parity_masks(n, 1).size());

  Mat out(ring, dim0 + dim1, dim0 + dim1);
  const Scalar& nw = which == PhiBlock::phi10 ? x.b : x.a;  // top-left scale
  const Scalar& se = which == PhiBlock::phi10 ? x.a : x.b;  // bottom-right scale
  out.set_block(0, 0, nw * Mat::identity(ring, dim0));
  out.set_block(dim0, dim0, -se * Mat::identity(ring, dim1));
  out.set_block(0, dim0, l_plus_d_block(x, 1));
  out.set_block(dim0, 0, l_plus_d_block(x, 0));

  const int src_parity = which == PhiBlock::phi10 ? 1 : 0;
  auto desc = [&](int parity) {
    return BasisDesc::custom(m, parity, static_cast<std::size_t>(dim0 + dim1),
                             "split lambda" + std::to_string(parity) + "(R^" +
                                 std::to_string(m) + ")");
  };
  return GradedMatrix(std::move(out), desc(src_parity), desc(1 - src_parity));
}

Mat reindex_to_split(const Mat& lex_matrix, int m, int target_parity,
                     int source_parity) {
  auto src_lex = parity_masks(m, source_parity);
  auto tgt_lex = parity_masks(m, target_parity);
  auto src_split = canonical_split(m, source_parity);
  auto tgt_split = canonical_split(m, target_parity);
  if (lex_matrix.rows() != static_cast<int>(tgt_lex.size()) ||
      lex_matrix.cols() != static_cast<int>(src_lex.size()))
    throw std::invalid_argument("reindex_to_split: shape mismatch");
  Mat out(lex_matrix.ring(), lex_matrix.rows(), lex_matrix.cols());
  for (std::size_t i = 0; i < tgt_split.order.size(); ++i)
    for (std::size_t j = 0; j < src_split.order.size(); ++j)
      out.at(static_cast<int>(i), static_cast<int>(j)) =
          lex_matrix.at(mask_position(tgt_lex, tgt_split.order[i]),
                        mask_position(src_lex, src_split.order[j]));
  return out;
}

IdempotentModule::IdempotentModule(Mat idempotent) : m(idempotent.rows()), e(std::move(idempotent)) {
  if (e.rows() != e.cols()) throw std::invalid_argument("idempotent must be square");
  if (e * e != e) throw std::invalid_argument("matrix is not idempotent");
}

Mat clifford_endo_projective(const IdempotentModule& mod, const HyperbolicElement& x) {
  if (x.rank() != mod.m)
    throw std::invalid_argument("hyperbolic element rank must match ambient rank");
  if (mat_apply(mod.e, x.p) != x.p)
    throw std::invalid_argument("p is not in the image of the idempotent");
  if (row_apply(x.f, mod.e) != x.f)
    throw std::invalid_argument("f does not factor through the idempotent");
  return clifford_endo(x);
}

Mat lambda_projector(const IdempotentModule& mod) {
  const Ring ring = mod.ring();
  Mat phi(ring, mod.m + 1, mod.m + 1);
  phi.set_block(0, 0, mod.e);
  phi.at(mod.m, mod.m) = ring.one();
  return lambda_full_map(phi);
}

}  // namespace susmat
