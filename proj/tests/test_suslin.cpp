#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "susmat/suslin.hpp"
#include "susmat/verify.hpp"

using namespace susmat;

namespace {

Ring zring() { return Ring(RingDescriptor::integers()); }

struct Sym {
  Ring ring;
  HyperbolicElement x;
};

Sym symbolic(int n) {
  std::vector<std::string> vars;
  for (int i = 1; i <= n; ++i) vars.push_back("p" + std::to_string(i));
  vars.push_back("a");
  for (int i = 1; i <= n; ++i) vars.push_back("f" + std::to_string(i));
  vars.push_back("b");
  Ring ring(RingDescriptor::polynomial(vars));
  std::vector<Scalar> p, f;
  for (int i = 1; i <= n; ++i) p.push_back(ring.variable("p" + std::to_string(i)));
  for (int i = 1; i <= n; ++i) f.push_back(ring.variable("f" + std::to_string(i)));
  return {ring, HyperbolicElement(p, ring.variable("a"), f, ring.variable("b"))};
}

std::vector<Scalar> ints(const Ring& r, std::initializer_list<long long> xs) {
  std::vector<Scalar> v;
  for (auto x : xs) v.push_back(r.from_integer(x));
  return v;
}

// Signed monomial shorthand for basis goldens.
Multivector sm(const Ring& r, int rank, std::uint32_t mask, int sign) {
  return Multivector::monomial(r, rank, mask, r.from_integer(sign));
}

}  // namespace

TEST_CASE("base cases S_1 and bar S_1") {
  Ring z = zring();
  auto s = suslin_matrix(ints(z, {5}), ints(z, {7}));
  REQUIRE(s.mat.rows() == 1);
  CHECK(s.mat.at(0, 0) == z.from_integer(5));
  auto sb = suslin_bar(ints(z, {5}), ints(z, {7}));
  CHECK(sb.mat.at(0, 0) == z.from_integer(7));
}

TEST_CASE("S_2 and bar S_2 goldens") {
  Ring poly(RingDescriptor::polynomial({"b", "f", "a", "p"}));
  Scalar b = poly.variable("b"), f = poly.variable("f");
  Scalar a = poly.variable("a"), p = poly.variable("p");
  auto s = suslin_matrix({b, f}, {a, p});
  REQUIRE(s.mat.rows() == 2);
  CHECK(s.mat.at(0, 0) == b);
  CHECK(s.mat.at(0, 1) == f);
  CHECK(s.mat.at(1, 0) == -p);
  CHECK(s.mat.at(1, 1) == a);

  auto sb = suslin_bar({b, f}, {a, p});
  CHECK(sb.mat.at(0, 0) == a);
  CHECK(sb.mat.at(0, 1) == -f);
  CHECK(sb.mat.at(1, 0) == p);
  CHECK(sb.mat.at(1, 1) == b);

  // S_2 * bar S_2 = (ab + fp) * Id
  Scalar q = a * b + f * p;
  CHECK(s.mat * sb.mat == q * Mat::identity(poly, 2));
  CHECK(sb.mat * s.mat == q * Mat::identity(poly, 2));
}

TEST_CASE("S_3((1,2,3),(4,5,6)) frozen matrix and determinant") {
  Ring z = zring();
  auto s = suslin_matrix(ints(z, {1, 2, 3}), ints(z, {4, 5, 6}));
  const long long expected[4][4] = {
      {1, 0, 2, 3}, {0, 1, -6, 5}, {-5, 3, 4, 0}, {-6, -2, 0, 4}};
  REQUIRE(s.mat.rows() == 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(s.mat.at(i, j) == z.from_integer(expected[i][j]));

  // determinant by the permutation-sum oracle, and it equals (a.b)^2 = 32^2
  Scalar det = oracles::leibniz_det(s.mat);
  CHECK(det == z.from_integer(1024));
  CHECK(det_division_free(s.mat) == det);
}

TEST_CASE("constructor contract errors") {
  Ring z = zring();
  CHECK_THROWS_AS((void)suslin_matrix({}, {}), std::invalid_argument);
  CHECK_THROWS_AS((void)suslin_matrix(ints(z, {1, 2}), ints(z, {1})),
                  std::invalid_argument);
  Ring m5(RingDescriptor::modular(5));
  CHECK_THROWS_AS((void)suslin_matrix({z.one(), m5.one()}, {z.one(), z.one()}),
                  std::invalid_argument);
}

TEST_CASE("sizes double with n") {
  Ring z = zring();
  for (int n = 1; n <= 5; ++n) {
    std::vector<Scalar> a, b;
    for (int i = 0; i < n; ++i) {
      a.push_back(z.from_integer(i + 1));
      b.push_back(z.from_integer(2 * i - 3));
    }
    CHECK(suslin_matrix(a, b).mat.rows() == (1 << (n - 1)));
  }
}

TEST_CASE("generalized S(x) and bar S(x) at n = 0") {
  auto s = symbolic(0);
  CHECK(generalized_suslin(s.x).mat.at(0, 0) == s.ring.variable("b"));
  CHECK(generalized_suslin_bar(s.x).mat.at(0, 0) == s.ring.variable("a"));
}

TEST_CASE("S(x0) is the identity") {
  Ring z = zring();
  for (int n = 0; n <= 3; ++n) {
    CHECK(generalized_suslin(make_x0(z, n)).mat.is_identity());
    CHECK(generalized_suslin_bar(make_x0(z, n)).mat.is_identity());
  }
}

TEST_CASE("ordered basis goldens for n = 0, 1, 2") {
  Ring z = zring();

  auto [b1_0, b0_0] = build_suslin_bases(z, 0);
  REQUIRE(b1_0.elements.size() == 1);
  CHECK(b1_0.elements[0] == sm(z, 1, 0b1, +1));
  CHECK(b0_0.elements[0] == sm(z, 1, 0b0, +1));

  auto [b1_1, b0_1] = build_suslin_bases(z, 1);
  REQUIRE(b1_1.elements.size() == 2);
  CHECK(b1_1.elements[0] == sm(z, 2, 0b10, +1));   // e2
  CHECK(b1_1.elements[1] == sm(z, 2, 0b01, +1));   // e1
  CHECK(b0_1.elements[0] == sm(z, 2, 0b00, +1));   // 1
  CHECK(b0_1.elements[1] == sm(z, 2, 0b11, -1));   // -e1^e2

  // Derived by hand from the x0-action: the inner splits consume the lowest
  // remaining coordinate, so the n = 2 chain is base [e2], insert e1, then e3.
  auto [b1_2, b0_2] = build_suslin_bases(z, 2);
  REQUIRE(b1_2.elements.size() == 4);
  CHECK(b1_2.elements[0] == sm(z, 3, 0b100, +1));  // e3
  CHECK(b1_2.elements[1] == sm(z, 3, 0b111, +1));  // e1^e2^e3
  CHECK(b1_2.elements[2] == sm(z, 3, 0b001, +1));  // e1
  CHECK(b1_2.elements[3] == sm(z, 3, 0b010, +1));  // e2
  CHECK(b0_2.elements[0] == sm(z, 3, 0b000, +1));
  CHECK(b0_2.elements[1] == sm(z, 3, 0b011, +1));
  CHECK(b0_2.elements[2] == sm(z, 3, 0b101, -1));
  CHECK(b0_2.elements[3] == sm(z, 3, 0b110, -1));
}

TEST_CASE("bases are complete signed-monomial systems up to n = 6") {
  Ring z = zring();
  for (int n = 0; n <= 6; ++n) {
    auto [b1, b0] = build_suslin_bases(z, n);
    CHECK(b1.elements.size() == (std::size_t{1} << n));
    CHECK(b0.elements.size() == (std::size_t{1} << n));
    CHECK_NOTHROW(ordered_basis_signed_masks(b1));
    CHECK_NOTHROW(ordered_basis_signed_masks(b0));
  }
}

TEST_CASE("represent with the trivial mask-order basis is the identity transport") {
  Ring z = zring();
  auto masks = parity_masks(3, 1);
  OrderedBasis lex{1, 3, {}};
  for (auto mask : masks) lex.elements.push_back(sm(z, 3, mask, +1));
  Rng rng(61);
  Mat m = oracles::random_int_matrix(z, 4, 4, rng);
  CHECK(represent(m, lex, lex) == m);
}

TEST_CASE("represent rejects invalid bases") {
  Ring z = zring();
  auto [b1, b0] = build_suslin_bases(z, 1);
  Mat m = Mat::identity(z, 2);

  OrderedBasis dup{1, 2, {sm(z, 2, 0b01, +1), sm(z, 2, 0b01, -1)}};
  CHECK_THROWS_AS((void)represent(m, dup, b1), std::invalid_argument);

  OrderedBasis scaled{1, 2, {sm(z, 2, 0b01, +2), sm(z, 2, 0b10, +1)}};
  CHECK_THROWS_AS((void)represent(m, scaled, b1), std::invalid_argument);

  OrderedBasis twoterm{1, 2, {sm(z, 2, 0b01, 1) + sm(z, 2, 0b10, 1), sm(z, 2, 0b10, 1)}};
  CHECK_THROWS_AS((void)represent(m, twoterm, b1), std::invalid_argument);

  OrderedBasis mislabeled{0, 2, {sm(z, 2, 0b01, 1), sm(z, 2, 0b10, 1)}};
  CHECK_THROWS_AS((void)represent(m, mislabeled, b1), std::invalid_argument);
}

TEST_CASE("represented S(x) at n = 1 is the displayed 2x2") {
  auto s = symbolic(1);
  auto [b1, b0] = build_suslin_bases(s.ring, 1);
  Mat rep = represent(generalized_suslin(s.x).mat, b1, b1);
  CHECK(rep.at(0, 0) == s.ring.variable("b"));
  CHECK(rep.at(0, 1) == s.ring.variable("f1"));
  CHECK(rep.at(1, 0) == -s.ring.variable("p1"));
  CHECK(rep.at(1, 1) == s.ring.variable("a"));

  Mat repbar = represent(generalized_suslin_bar(s.x).mat, b1, b1);
  CHECK(repbar.at(0, 0) == s.ring.variable("a"));
  CHECK(repbar.at(0, 1) == -s.ring.variable("f1"));
  CHECK(repbar.at(1, 0) == s.ring.variable("p1"));
  CHECK(repbar.at(1, 1) == s.ring.variable("b"));
}

TEST_CASE("representation theorem, symbolic n = 0..2") {
  for (int n = 0; n <= 2; ++n) {
    auto s = symbolic(n);
    auto [b1, b0] = build_suslin_bases(s.ring, n);
    CHECK(represent(generalized_suslin(s.x).mat, b1, b1) == suslin_matrix_of(s.x).mat);
    CHECK(represent(generalized_suslin_bar(s.x).mat, b1, b1) == suslin_bar_of(s.x).mat);
  }
}

TEST_CASE("block representation theorem, symbolic n = 0..2") {
  for (int n = 0; n <= 2; ++n) {
    auto s = symbolic(n);
    auto [b1, b0] = build_suslin_bases(s.ring, n);
    auto act = phi_blocks(s.x);
    CHECK(represent(act.phi10.mat, b1, b0) == suslin_matrix_of(s.x).mat);
    CHECK(represent(act.phi01.mat, b0, b1) == suslin_bar_of(s.x).mat);
  }
}

TEST_CASE("packing helper puts b and a first") {
  auto s = symbolic(2);
  auto [bf, ap] = suslin_pack(s.x);
  REQUIRE(bf.size() == 3);
  CHECK(bf[0] == s.ring.variable("b"));
  CHECK(bf[1] == s.ring.variable("f1"));
  CHECK(bf[2] == s.ring.variable("f2"));
  CHECK(ap[0] == s.ring.variable("a"));
  CHECK(ap[1] == s.ring.variable("p1"));
  CHECK(ap[2] == s.ring.variable("p2"));
}

TEST_CASE("suslin matrix JSON form") {
  Ring z = zring();
  auto s = suslin_matrix(ints(z, {1, 2}), ints(z, {3, 4}));
  auto j = s.to_json();
  CHECK(j["n"] == 2);
  CHECK(j["flavor"] == "plain");
  CHECK(j["entries"][0][0] == "1");
  CHECK(j["entries"][1][0] == "-4");
}
