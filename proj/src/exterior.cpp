#include "susmat/exterior.hpp"

#include <bit>
#include <stdexcept>

namespace susmat {

static constexpr int kMaxRank = 20;

static void check_rank(int m) {
  if (m < 0 || m > kMaxRank)
    throw std::invalid_argument("exterior rank must be in [0, " +
                                std::to_string(kMaxRank) + "]");
}

int wedge_sign(std::uint32_t s, std::uint32_t t) {
  int crossings = 0;
  std::uint32_t rest = s;
  while (rest) {
    int bit = std::countr_zero(rest);
    rest &= rest - 1;
    crossings += std::popcount(t & ((std::uint32_t{1} << bit) - 1));
  }
  return crossings % 2 == 0 ? 1 : -1;
}

std::vector<std::uint32_t> parity_masks(int m, int parity) {
  check_rank(m);
  if (parity != 0 && parity != 1) throw std::invalid_argument("parity must be 0 or 1");
  std::vector<std::uint32_t> out;
  const std::uint32_t lim = std::uint32_t{1} << m;
  for (std::uint32_t mask = 0; mask < lim; ++mask)
    if (std::popcount(mask) % 2 == parity) out.push_back(mask);
  return out;
}

std::vector<std::uint32_t> degree_masks(int m, int k) {
  check_rank(m);
  if (k < 0 || k > m) throw std::invalid_argument("degree out of range");
  std::vector<std::uint32_t> out;
  const std::uint32_t lim = std::uint32_t{1} << m;
  for (std::uint32_t mask = 0; mask < lim; ++mask)
    if (std::popcount(mask) == k) out.push_back(mask);
  return out;
}

std::vector<std::uint32_t> full_masks(int m) {
  check_rank(m);
  std::vector<std::uint32_t> out;
  const std::uint32_t lim = std::uint32_t{1} << m;
  out.reserve(lim);
  for (std::uint32_t mask = 0; mask < lim; ++mask) out.push_back(mask);
  return out;
}

int mask_position(const std::vector<std::uint32_t>& basis, std::uint32_t mask) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == mask) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------------------
// Multivector

Multivector::Multivector(Ring ring, int rank) : ring_(std::move(ring)), rank_(rank) {
  check_rank(rank);
}

Multivector Multivector::zero(const Ring& ring, int rank) {
  return Multivector(ring, rank);
}

Multivector Multivector::unit(const Ring& ring, int rank) {
  Multivector v(ring, rank);
  v.add_term(0, ring.one());
  return v;
}

Multivector Multivector::monomial(const Ring& ring, int rank, std::uint32_t mask,
                                  const Scalar& coeff) {
  check_rank(rank);
  if (mask >= (std::uint32_t{1} << rank))
    throw std::invalid_argument("monomial mask exceeds rank");
  if (!ring.same(coeff.ring()))
    throw std::invalid_argument("monomial coefficient from a different ring");
  Multivector v(ring, rank);
  v.add_term(mask, coeff);
  return v;
}

Multivector Multivector::basis_vector(const Ring& ring, int rank, int i) {
  if (i < 1 || i > rank) throw std::invalid_argument("basis index out of range");
  return monomial(ring, rank, std::uint32_t{1} << (i - 1), ring.one());
}

Scalar Multivector::coeff(std::uint32_t mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? ring_.zero() : it->second;
}

Multivector Multivector::parity_part(int parity) const {
  Multivector v(ring_, rank_);
  for (const auto& [mask, c] : terms_)
    if (std::popcount(mask) % 2 == parity) v.terms_.emplace(mask, c);
  return v;
}

void Multivector::add_term(std::uint32_t mask, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(mask);
  if (it == terms_.end()) {
    terms_.emplace(mask, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Multivector Multivector::operator-() const {
  Multivector v(ring_, rank_);
  for (const auto& [mask, c] : terms_) v.terms_.emplace(mask, -c);
  return v;
}

static void require_compatible(const Multivector& a, const Multivector& b,
                               const char* op) {
  if (a.rank() != b.rank())
    throw std::invalid_argument(std::string("rank mismatch in ") + op);
  if (!a.ring().same(b.ring()))
    throw std::invalid_argument(std::string("ring mismatch in ") + op);
}

Multivector& Multivector::operator+=(const Multivector& o) {
  require_compatible(*this, o, "multivector +");
  for (const auto& [mask, c] : o.terms_) add_term(mask, c);
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  require_compatible(*this, o, "multivector -");
  for (const auto& [mask, c] : o.terms_) add_term(mask, -c);
  return *this;
}

Multivector operator*(const Scalar& s, const Multivector& v) {
  Multivector r(v.ring(), v.rank());
  for (const auto& [mask, c] : v.terms()) {
    Scalar p = s * c;
    if (!p.is_zero()) r += Multivector::monomial(v.ring(), v.rank(), mask, p);
  }
  return r;
}

bool operator==(const Multivector& a, const Multivector& b) {
  if (a.rank() != b.rank() || !a.ring().same(b.ring())) return false;
  return a.terms() == b.terms();
}

Multivector wedge(const Multivector& u, const Multivector& v) {
  require_compatible(u, v, "wedge");
  Multivector r(u.ring_, u.rank_);
  for (const auto& [s, cs] : u.terms_) {
    for (const auto& [t, ct] : v.terms_) {
      if (s & t) continue;
      Scalar c = cs * ct;
      if (wedge_sign(s, t) < 0) c = -c;
      r.add_term(s | t, c);
    }
  }
  return r;
}

Multivector left_mul(const std::vector<Scalar>& w, const Multivector& u) {
  if (static_cast<int>(w.size()) != u.rank())
    throw std::invalid_argument("vector length mismatch in left_mul");
  Multivector wv = Multivector::zero(u.ring(), u.rank());
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!w[i].is_zero())
      wv += Multivector::monomial(u.ring(), u.rank(), std::uint32_t{1} << i, w[i]);
  return wedge(wv, u);
}

Multivector contract(const std::vector<Scalar>& f, const Multivector& u) {
  if (static_cast<int>(f.size()) != u.rank())
    throw std::invalid_argument("functional length mismatch in contract");
  Multivector r(u.ring_, u.rank_);
  for (const auto& [mask, c] : u.terms_) {
    std::uint32_t rest = mask;
    int k = 0;  // 1-based position of the factor being deleted
    while (rest) {
      int bit = std::countr_zero(rest);
      rest &= rest - 1;
      ++k;
      const Scalar& fi = f[bit];
      if (fi.is_zero()) continue;
      Scalar term = fi * c;
      if (k % 2 == 0) term = -term;
      r.add_term(mask & ~(std::uint32_t{1} << bit), term);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Canonical split

bool CanonicalSplit::carries_last(std::uint32_t mask) const {
  return (mask >> (rank - 1)) & 1u;
}

int CanonicalSplit::extraction_sign(std::uint32_t mask) const {
  if (mask_position(order, mask) < 0)
    throw std::invalid_argument("mask is not in this parity class");
  return 1;
}

CanonicalSplit canonical_split(int m, int parity) {
  if (m < 1)
    throw std::invalid_argument("canonical_split needs rank >= 1 (last coordinate plays R)");
  if (parity != 0 && parity != 1) throw std::invalid_argument("parity must be 0 or 1");
  const std::uint32_t last = std::uint32_t{1} << (m - 1);
  CanonicalSplit sp;
  sp.rank = m;
  sp.parity = parity;
  // Lambda_0(P)-summand first. For the even class that is the masks without
  // e_m; for the odd class the masks with e_m (their P-part is even).
  std::vector<std::uint32_t> first, second;
  const std::uint32_t lim = std::uint32_t{1} << (m - 1);
  for (std::uint32_t p = 0; p < lim; ++p) {
    int pdeg = std::popcount(p);
    if (pdeg % 2 == 0) {
      first.push_back(parity == 0 ? p : (p | last));
    } else {
      second.push_back(parity == 0 ? (p | last) : p);
    }
  }
  sp.even_count = first.size();
  sp.order = std::move(first);
  sp.order.insert(sp.order.end(), second.begin(), second.end());
  return sp;
}

// ---------------------------------------------------------------------------
// Graded matrices and exterior powers of linear maps

BasisDesc BasisDesc::parity_class(int m, int parity) {
  BasisDesc d;
  d.rank = m;
  d.parity = parity;
  d.dim = m == 0 ? (parity == 0 ? 1 : 0) : (std::size_t{1} << (m - 1));
  d.label = "lambda" + std::to_string(parity) + "(R^" + std::to_string(m) + ")";
  return d;
}

BasisDesc BasisDesc::degree_class(int m, int k) {
  BasisDesc d;
  d.rank = m;
  d.parity = k % 2;
  d.degree = k;
  d.dim = degree_masks(m, k).size();
  d.label = "lambda^" + std::to_string(k) + "(R^" + std::to_string(m) + ")";
  return d;
}

BasisDesc BasisDesc::custom(int m, int parity, std::size_t dim, std::string label) {
  BasisDesc d;
  d.rank = m;
  d.parity = parity;
  d.dim = dim;
  d.label = std::move(label);
  return d;
}

GradedMatrix::GradedMatrix(Mat m, BasisDesc src, BasisDesc tgt)
    : mat(std::move(m)), source(std::move(src)), target(std::move(tgt)) {
  if (mat.cols() != static_cast<int>(source.dim) ||
      mat.rows() != static_cast<int>(target.dim))
    throw std::invalid_argument("graded matrix shape does not match its bases");
}

static Mat minor_matrix(const LinearMap& phi, std::uint32_t rows, std::uint32_t cols) {
  const int k = std::popcount(rows);
  Mat sub(phi.ring(), k, k);
  int i = 0;
  std::uint32_t r = rows;
  while (r) {
    int rbit = std::countr_zero(r);
    r &= r - 1;
    int j = 0;
    std::uint32_t c = cols;
    while (c) {
      int cbit = std::countr_zero(c);
      c &= c - 1;
      sub.at(i, j) = phi.at(rbit, cbit);
      ++j;
    }
    ++i;
  }
  return sub;
}

static void require_square(const LinearMap& phi) {
  if (phi.rows() != phi.cols())
    throw std::invalid_argument("linear map must be square");
}

GradedMatrix exterior_power_map(const LinearMap& phi, int k) {
  require_square(phi);
  const int m = phi.rows();
  if (k < 0 || k > m) throw std::invalid_argument("exterior power degree out of range");
  auto masks = degree_masks(m, k);
  Mat out(phi.ring(), static_cast<int>(masks.size()), static_cast<int>(masks.size()));
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = 0; j < masks.size(); ++j)
      out.at(static_cast<int>(i), static_cast<int>(j)) =
          det_division_free(minor_matrix(phi, masks[i], masks[j]));
  return GradedMatrix(std::move(out), BasisDesc::degree_class(m, k),
                      BasisDesc::degree_class(m, k));
}

GradedMatrix lambda_parity_map(const LinearMap& phi, int parity) {
  require_square(phi);
  const int m = phi.rows();
  auto masks = parity_masks(m, parity);
  Mat out(phi.ring(), static_cast<int>(masks.size()), static_cast<int>(masks.size()));
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = 0; j < masks.size(); ++j) {
      if (std::popcount(masks[i]) != std::popcount(masks[j])) continue;
      out.at(static_cast<int>(i), static_cast<int>(j)) =
          det_division_free(minor_matrix(phi, masks[i], masks[j]));
    }
  return GradedMatrix(std::move(out), BasisDesc::parity_class(m, parity),
                      BasisDesc::parity_class(m, parity));
}

Mat lambda_full_map(const LinearMap& phi) {
  require_square(phi);
  const int m = phi.rows();
  auto masks = full_masks(m);
  Mat out(phi.ring(), static_cast<int>(masks.size()), static_cast<int>(masks.size()));
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = 0; j < masks.size(); ++j) {
      if (std::popcount(masks[i]) != std::popcount(masks[j])) continue;
      out.at(static_cast<int>(i), static_cast<int>(j)) =
          det_division_free(minor_matrix(phi, masks[i], masks[j]));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

static std::string mask_to_text(std::uint32_t mask) {
  std::string s = "e{";
  bool first = true;
  std::uint32_t rest = mask;
  while (rest) {
    int bit = std::countr_zero(rest);
    rest &= rest - 1;
    if (!first) s += ',';
    s += std::to_string(bit + 1);
    first = false;
  }
  s += '}';
  return s;
}

std::string Multivector::to_text() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mask, c] : terms_) {
    std::string cs = c.to_string();
    const bool composite =
        cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
    std::string sign = "+";
    if (!composite && !cs.empty() && cs[0] == '-') {
      sign = "-";
      cs = cs.substr(1);
    }
    if (composite) cs = "(" + cs + ")";
    if (!first) out += ' ';
    out += sign + cs + "\xC2\xB7" + mask_to_text(mask);
    first = false;
  }
  return out;
}

static std::vector<int> mask_to_indices(std::uint32_t mask) {
  std::vector<int> idx;
  while (mask) {
    int bit = std::countr_zero(mask);
    mask &= mask - 1;
    idx.push_back(bit + 1);
  }
  return idx;
}

nlohmann::json Multivector::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mask, c] : terms_)
    terms.push_back({{"mask", mask_to_indices(mask)}, {"coeff", c.to_string()}});
  return terms;
}

Multivector Multivector::from_json(const Ring& ring, int rank, const nlohmann::json& j) {
  Multivector v(ring, rank);
  for (const auto& term : j) {
    std::uint32_t mask = 0;
    for (int idx : term.at("mask").get<std::vector<int>>()) {
      if (idx < 1 || idx > rank)
        throw std::invalid_argument("multivector index out of range in JSON");
      mask |= std::uint32_t{1} << (idx - 1);
    }
    v.add_term(mask, ring.parse(term.at("coeff").get<std::string>()));
  }
  return v;
}

}  // namespace susmat
