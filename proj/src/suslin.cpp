#include "susmat/suslin.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace susmat {

static void check_suslin_args(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.empty()) throw std::invalid_argument("suslin matrix needs n >= 1");
  if (a.size() != b.size())
    throw std::invalid_argument("suslin matrix vectors must have equal length");
  const Ring ring = a[0].ring();
  for (const auto& s : a)
    if (!s.ring().same(ring)) throw std::invalid_argument("suslin matrix: mixed rings");
  for (const auto& s : b)
    if (!s.ring().same(ring)) throw std::invalid_argument("suslin matrix: mixed rings");
  if (a.size() > 12) throw std::invalid_argument("suslin matrix rank capped at 12");
}

static Mat suslin_rec(const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                      std::size_t from) {
  const Ring ring = a[0].ring();
  const std::size_t n = a.size() - from;
  if (n == 1) {
    Mat m(ring, 1, 1);
    m.at(0, 0) = a[from];
    return m;
  }
  const int half = 1 << (n - 2);
  Mat top = suslin_rec(a, b, from + 1);
  Mat bot = suslin_rec(b, a, from + 1).transpose();
  Mat m(ring, 2 * half, 2 * half);
  m.set_block(0, 0, a[from] * Mat::identity(ring, half));
  m.set_block(0, half, top);
  m.set_block(half, 0, -bot);
  m.set_block(half, half, b[from] * Mat::identity(ring, half));
  return m;
}

SuslinMatrix suslin_matrix(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  check_suslin_args(a, b);
  return SuslinMatrix{static_cast<int>(a.size()), SuslinFlavor::plain,
                      suslin_rec(a, b, 0)};
}

SuslinMatrix suslin_bar(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  check_suslin_args(a, b);
  const Ring ring = a[0].ring();
  const std::size_t n = a.size();
  if (n == 1) {
    Mat m(ring, 1, 1);
    m.at(0, 0) = b[0];
    return SuslinMatrix{1, SuslinFlavor::bar, std::move(m)};
  }
  const int half = 1 << (n - 2);
  Mat top = suslin_rec(a, b, 1);
  Mat bot = suslin_rec(b, a, 1).transpose();
  Mat m(ring, 2 * half, 2 * half);
  m.set_block(0, 0, b[0] * Mat::identity(ring, half));
  m.set_block(0, half, -top);
  m.set_block(half, 0, bot);
  m.set_block(half, half, a[0] * Mat::identity(ring, half));
  return SuslinMatrix{static_cast<int>(n), SuslinFlavor::bar, std::move(m)};
}

std::pair<std::vector<Scalar>, std::vector<Scalar>> suslin_pack(const HyperbolicElement& x) {
  std::vector<Scalar> first, second;
  first.reserve(x.f.size() + 1);
  second.reserve(x.p.size() + 1);
  first.push_back(x.b);
  first.insert(first.end(), x.f.begin(), x.f.end());
  second.push_back(x.a);
  second.insert(second.end(), x.p.begin(), x.p.end());
  return {std::move(first), std::move(second)};
}

SuslinMatrix suslin_matrix_of(const HyperbolicElement& x) {
  auto [bf, ap] = suslin_pack(x);
  return suslin_matrix(bf, ap);
}

SuslinMatrix suslin_bar_of(const HyperbolicElement& x) {
  auto [bf, ap] = suslin_pack(x);
  return suslin_bar(bf, ap);
}

nlohmann::json SuslinMatrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < mat.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < mat.cols(); ++j) row.push_back(mat.at(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return {{"n", n},
          {"flavor", flavor == SuslinFlavor::plain ? "plain" : "bar"},
          {"entries", std::move(rows)}};
}

GradedMatrix generalized_suslin(const HyperbolicElement& x) {
  const int m = x.rank() + 1;
  Mat s = phi_blocks(make_x0(x.ring(), x.rank())).phi01.mat * phi_blocks(x).phi10.mat;
  return GradedMatrix(std::move(s), BasisDesc::parity_class(m, 1),
                      BasisDesc::parity_class(m, 1));
}

GradedMatrix generalized_suslin_bar(const HyperbolicElement& x) {
  const int m = x.rank() + 1;
  Mat s = phi_blocks(x).phi01.mat * phi_blocks(make_x0(x.ring(), x.rank())).phi10.mat;
  return GradedMatrix(std::move(s), BasisDesc::parity_class(m, 1),
                      BasisDesc::parity_class(m, 1));
}

// ---------------------------------------------------------------------------
// Ordered bases

std::vector<std::pair<std::uint32_t, int>> ordered_basis_signed_masks(const OrderedBasis& b) {
  std::vector<std::pair<std::uint32_t, int>> out;
  out.reserve(b.elements.size());
  for (const auto& el : b.elements) {
    if (el.rank() != b.rank)
      throw std::invalid_argument("ordered basis element has wrong rank");
    if (el.terms().size() != 1)
      throw std::invalid_argument("ordered basis element is not a single monomial");
    const auto& [mask, c] = *el.terms().begin();
    if (static_cast<int>(std::popcount(mask)) % 2 != b.parity)
      throw std::invalid_argument("ordered basis element has wrong parity");
    int sign;
    if (c.is_one())
      sign = 1;
    else if ((-c).is_one())
      sign = -1;
    else
      throw std::invalid_argument("ordered basis coefficient is not +-1");
    out.emplace_back(mask, sign);
  }
  auto expected = parity_masks(b.rank, b.parity);
  std::vector<std::uint32_t> seen;
  seen.reserve(out.size());
  for (const auto& [mask, sign] : out) seen.push_back(mask);
  std::sort(seen.begin(), seen.end());
  if (seen != expected ||
      std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::invalid_argument("ordered basis supports do not enumerate the parity class");
  return out;
}

std::pair<OrderedBasis, OrderedBasis> build_suslin_bases(const Ring& ring, int n) {
  if (n < 0) throw std::invalid_argument("negative rank");
  if (n > 12) throw std::invalid_argument("basis rank capped at 12");
  const int m = n + 1;

  // Each level splits off one coordinate e_d and sets
  //   B1 <- [beta ^ e_d : beta in B0] ++ B1,
  //   B0 <- B0 ++ [-gamma ^ e_d : gamma in B1],
  // which is exactly transporting the new B1 through l_{e_d} + d_{e_d*}.
  // The top split extracts e_{n+1}; the inner splits consume the packed
  // vectors (b, f_1..f_n) front-first, so they extract the lowest remaining
  // coordinate: insertion order e_{n-1}, ..., e_1, e_{n+1} over the base
  // [e_n]. Any other order represents S(x) with permuted slots.
  std::vector<Multivector> b1{Multivector::basis_vector(ring, m, n == 0 ? 1 : n)};
  std::vector<Multivector> b0{Multivector::unit(ring, m)};
  std::vector<int> insert_order;
  for (int d = n - 1; d >= 1; --d) insert_order.push_back(d);
  if (n >= 1) insert_order.push_back(n + 1);

  for (int d : insert_order) {
    const Multivector ed = Multivector::basis_vector(ring, m, d);
    std::vector<Multivector> next;
    next.reserve(2 * b1.size());
    for (const auto& el : b0) next.push_back(wedge(el, ed));
    for (const auto& el : b1) next.push_back(el);
    for (const auto& el : b1) b0.push_back(-wedge(el, ed));
    b1 = std::move(next);
  }

  OrderedBasis basis1{1, m, std::move(b1)};
  OrderedBasis basis0{0, m, std::move(b0)};
  ordered_basis_signed_masks(basis1);  // enforce invariants before handing out
  ordered_basis_signed_masks(basis0);

  // The top-level B0 must be the x0-transport of B1.
  const HyperbolicElement x0 = make_x0(ring, n);
  for (std::size_t i = 0; i < basis1.elements.size(); ++i)
    if (clifford_apply(x0, basis1.elements[i]) != basis0.elements[i])
      throw std::logic_error("B0 is not the x0-image of B1");
  return {std::move(basis1), std::move(basis0)};
}

Mat represent(const Mat& matrix_in_mask_bases, const OrderedBasis& src,
              const OrderedBasis& dst) {
  auto src_signed = ordered_basis_signed_masks(src);
  auto dst_signed = ordered_basis_signed_masks(dst);
  auto src_lex = parity_masks(src.rank, src.parity);
  auto dst_lex = parity_masks(dst.rank, dst.parity);
  if (matrix_in_mask_bases.cols() != static_cast<int>(src_lex.size()) ||
      matrix_in_mask_bases.rows() != static_cast<int>(dst_lex.size()))
    throw std::invalid_argument("represent: matrix shape does not match bases");
  Mat out(matrix_in_mask_bases.ring(), matrix_in_mask_bases.rows(),
          matrix_in_mask_bases.cols());
  for (std::size_t i = 0; i < dst_signed.size(); ++i) {
    for (std::size_t j = 0; j < src_signed.size(); ++j) {
      const Scalar& entry =
          matrix_in_mask_bases.at(mask_position(dst_lex, dst_signed[i].first),
                                  mask_position(src_lex, src_signed[j].first));
      const int sign = dst_signed[i].second * src_signed[j].second;
      out.at(static_cast<int>(i), static_cast<int>(j)) = sign < 0 ? -entry : entry;
    }
  }
  return out;
}

nlohmann::json OrderedBasis::to_json() const {
  nlohmann::json els = nlohmann::json::array();
  for (const auto& el : elements) els.push_back(el.to_json());
  return {{"parity", parity}, {"rank", rank}, {"elements", std::move(els)}};
}

std::string OrderedBasis::to_text() const {
  std::string out = "[";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) out += ", ";
    const auto& [mask, c] = *elements[i].terms().begin();
    out += (-c).is_one() ? "-" : "+";
    std::string body = "e{";
    std::uint32_t rest = mask;
    bool first = true;
    while (rest) {
      int bit = std::countr_zero(rest);
      rest &= rest - 1;
      if (!first) body += ',';
      body += std::to_string(bit + 1);
      first = false;
    }
    out += body + "}";
  }
  return out + "]";
}

}  // namespace susmat
