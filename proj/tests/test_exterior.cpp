#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>

#include "oracles.hpp"
#include "susmat/exterior.hpp"
#include "susmat/verify.hpp"

using namespace susmat;

namespace {

Ring zring() { return Ring(RingDescriptor::integers()); }

Multivector mono(const Ring& r, int rank, std::uint32_t mask, long long c = 1) {
  return Multivector::monomial(r, rank, mask, r.from_integer(c));
}

}  // namespace

TEST_CASE("wedge on basis monomials") {
  Ring z = zring();
  Multivector e1 = Multivector::basis_vector(z, 2, 1);
  Multivector e2 = Multivector::basis_vector(z, 2, 2);
  CHECK(wedge(e1, e2) == mono(z, 2, 0b11));
  CHECK(wedge(e1, e1).is_zero());
  CHECK(wedge(e2, e1) == mono(z, 2, 0b11, -1));  // one crossing
}

TEST_CASE("wedge sign matches the bubble-count oracle") {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    std::uint32_t s = static_cast<std::uint32_t>(rng.next() % 64);
    std::uint32_t t = static_cast<std::uint32_t>(rng.next() % 64);
    if (s & t) continue;
    CHECK(wedge_sign(s, t) == oracles::bubble_wedge_sign(s, t));
  }
}

TEST_CASE("left_mul examples") {
  Ring z = zring();
  std::vector<Scalar> e1{z.one(), z.zero()};
  std::vector<Scalar> e2{z.zero(), z.one()};
  CHECK(left_mul(e1, Multivector::unit(z, 2)) == mono(z, 2, 0b01));
  CHECK(left_mul(e1, mono(z, 2, 0b11)).is_zero());
  CHECK(left_mul(e2, mono(z, 2, 0b01)) == mono(z, 2, 0b11, -1));
}

TEST_CASE("contraction examples") {
  Ring z = zring();
  std::vector<Scalar> e1s{z.one(), z.zero()};
  std::vector<Scalar> e2s{z.zero(), z.one()};
  // f = e2*, u = e1^e2: the k = 2 term carries sign (-1)^3
  CHECK(contract(e2s, mono(z, 2, 0b11)) == mono(z, 2, 0b01, -1));
  CHECK(contract(e1s, mono(z, 2, 0b01)) == Multivector::unit(z, 2));
  CHECK(contract(e2s, Multivector::unit(z, 2)).is_zero());
}

TEST_CASE("parity classes have dimension 2^(m-1)") {
  for (int m = 1; m <= 6; ++m) {
    CHECK(parity_masks(m, 0).size() == (std::size_t{1} << (m - 1)));
    CHECK(parity_masks(m, 1).size() == (std::size_t{1} << (m - 1)));
  }
  // m = 0: the algebra is R concentrated in degree 0
  CHECK(parity_masks(0, 0) == std::vector<std::uint32_t>{0});
  CHECK(parity_masks(0, 1).empty());
}

TEST_CASE("mask lists are strictly ascending") {
  for (int m = 1; m <= 5; ++m)
    for (int p = 0; p <= 1; ++p) {
      auto masks = parity_masks(m, p);
      for (std::size_t i = 1; i < masks.size(); ++i) CHECK(masks[i - 1] < masks[i]);
    }
}

TEST_CASE("canonical split classification") {
  // m=2, odd class: e2 is the P(x)e_m part (as 1(x)e2), e1 the P part
  auto sp21 = canonical_split(2, 1);
  CHECK(sp21.order == std::vector<std::uint32_t>{0b10, 0b01});
  CHECK(sp21.even_count == 1);
  CHECK(sp21.carries_last(0b10));
  CHECK_FALSE(sp21.carries_last(0b01));

  // m=1, odd class: only e1, and it carries the last coordinate (P = 0)
  auto sp11 = canonical_split(1, 1);
  CHECK(sp11.order == std::vector<std::uint32_t>{0b1});
  CHECK(sp11.even_count == 1);

  // m=3, even class: e1^e3 sits in the P(x)e_m part as e1(x)e3
  auto sp30 = canonical_split(3, 0);
  CHECK(sp30.order == std::vector<std::uint32_t>{0b000, 0b011, 0b101, 0b110});
  CHECK(sp30.even_count == 2);
  CHECK(sp30.carries_last(0b101));

  auto sp31 = canonical_split(3, 1);
  CHECK(sp31.order == std::vector<std::uint32_t>{0b100, 0b111, 0b001, 0b010});
  for (auto mask : sp31.order) CHECK(sp31.extraction_sign(mask) == 1);
  CHECK_THROWS_AS(sp31.extraction_sign(0b011), std::invalid_argument);

  CHECK_THROWS_AS(canonical_split(0, 0), std::invalid_argument);
}

TEST_CASE("parity parts partition the terms") {
  Ring z = zring();
  Rng rng(29);
  for (int i = 0; i < 30; ++i) {
    Multivector v = Multivector::zero(z, 4);
    for (auto mask : full_masks(4))
      if (rng.next() % 2)
        v += Multivector::monomial(z, 4, mask, z.from_integer(rng.int_in(-9, 9)));
    CHECK(v.parity_part(0) + v.parity_part(1) == v);
    Multivector odd = v.parity_part(1);
    for (const auto& [mask, c] : odd.terms())
      CHECK(std::popcount(mask) % 2 == 1);
  }
}

TEST_CASE("exterior powers of linear maps") {
  Ring z = zring();
  Rng rng(5);

  SUBCASE("top power is the determinant") {
    for (int m = 1; m <= 4; ++m) {
      Mat phi = oracles::random_int_matrix(z, m, m, rng);
      auto top = exterior_power_map(phi, m);
      REQUIRE(top.mat.rows() == 1);
      CHECK(top.mat.at(0, 0) == oracles::leibniz_det(phi));
    }
  }

  SUBCASE("degree one is the map itself") {
    Mat phi = oracles::random_int_matrix(z, 3, 3, rng);
    CHECK(exterior_power_map(phi, 1).mat == phi);
  }

  SUBCASE("diag(2,3) squares to (6)") {
    Mat d(z, 2, 2);
    d.at(0, 0) = z.from_integer(2);
    d.at(1, 1) = z.from_integer(3);
    auto m2 = exterior_power_map(d, 2);
    REQUIRE(m2.mat.rows() == 1);
    CHECK(m2.mat.at(0, 0) == z.from_integer(6));
  }

  SUBCASE("degree zero is (1)") {
    Mat phi = oracles::random_int_matrix(z, 2, 2, rng);
    CHECK(exterior_power_map(phi, 0).mat.at(0, 0) == z.one());
  }

  SUBCASE("degree out of range") {
    Mat phi = oracles::random_int_matrix(z, 2, 2, rng);
    CHECK_THROWS_AS(exterior_power_map(phi, 3), std::invalid_argument);
    CHECK_THROWS_AS(exterior_power_map(phi, -1), std::invalid_argument);
  }
}

TEST_CASE("parity maps: identity, functoriality") {
  Ring z = zring();
  Rng rng(17);
  for (int m = 1; m <= 4; ++m) {
    CHECK(lambda_parity_map(Mat::identity(z, m), 0).mat.is_identity());
    CHECK(lambda_parity_map(Mat::identity(z, m), 1).mat.is_identity());
  }
  // m = 2: the odd class is degree 1 only, so lambda_1 = phi
  Mat phi2 = oracles::random_int_matrix(z, 2, 2, rng);
  CHECK(lambda_parity_map(phi2, 1).mat == phi2);

  for (int i = 0; i < 50; ++i) {
    int m = 2 + static_cast<int>(rng.next() % 3);
    Mat phi = oracles::random_int_matrix(z, m, m, rng);
    Mat psi = oracles::random_int_matrix(z, m, m, rng);
    for (int parity = 0; parity <= 1; ++parity)
      CHECK(lambda_parity_map(phi * psi, parity).mat ==
            lambda_parity_map(phi, parity).mat * lambda_parity_map(psi, parity).mat);
    CHECK(lambda_full_map(phi * psi) == lambda_full_map(phi) * lambda_full_map(psi));
  }
}

TEST_CASE("wedge is associative and bilinear") {
  Ring z = zring();
  Rng rng(37);
  auto rand_mv = [&](int m) {
    Multivector v = Multivector::zero(z, m);
    for (auto mask : full_masks(m))
      if (rng.next() % 3 == 0)
        v += Multivector::monomial(z, m, mask, z.from_integer(rng.int_in(-9, 9)));
    return v;
  };
  for (int i = 0; i < 100; ++i) {
    int m = 1 + static_cast<int>(rng.next() % 5);
    Multivector u = rand_mv(m), v = rand_mv(m), w = rand_mv(m);
    CHECK(wedge(wedge(u, v), w) == wedge(u, wedge(v, w)));
    CHECK(wedge(u + v, w) == wedge(u, w) + wedge(v, w));
    CHECK(wedge(w, u + v) == wedge(w, u) + wedge(w, v));
    Scalar c = z.from_integer(rng.int_in(-9, 9));
    CHECK(wedge(c * u, v) == c * wedge(u, v));
    CHECK(wedge(Multivector::unit(z, m), u) == u);
    CHECK(wedge(u, Multivector::unit(z, m)) == u);
  }
}

TEST_CASE("graded anticommutativity, derivation law, d^2 = 0") {
  std::vector<Ring> rings{zring(), Ring(RingDescriptor::modular(97))};
  Rng rng(23);
  for (const Ring& ring : rings) {
    for (int i = 0; i < 150; ++i) {
      int m = 1 + static_cast<int>(rng.next() % 5);
      int du = static_cast<int>(rng.next() % (m + 1));
      int dv = static_cast<int>(rng.next() % (m + 1));
      Multivector u = Multivector::zero(ring, m);
      Multivector v = Multivector::zero(ring, m);
      for (auto mask : degree_masks(m, du))
        u += Multivector::monomial(ring, m, mask, ring.from_integer(rng.int_in(-9, 9)));
      for (auto mask : degree_masks(m, dv))
        v += Multivector::monomial(ring, m, mask, ring.from_integer(rng.int_in(-9, 9)));
      std::vector<Scalar> f;
      for (int k = 0; k < m; ++k) f.push_back(ring.from_integer(rng.int_in(-9, 9)));

      Multivector rhs = wedge(v, u);
      if ((du * dv) % 2 == 1) rhs = -rhs;
      CHECK(wedge(u, v) == rhs);

      Multivector second = wedge(u, contract(f, v));
      if (du % 2 == 1) second = -second;
      CHECK(contract(f, wedge(u, v)) == wedge(contract(f, u), v) + second);

      CHECK(contract(f, contract(f, wedge(u, v))).is_zero());
    }
  }
}

TEST_CASE("rank 0 degenerates to the scalars") {
  Ring z = zring();
  Multivector one = Multivector::unit(z, 0);
  CHECK(wedge(one, one) == one);
  CHECK(contract({}, one).is_zero());
  CHECK(left_mul({}, one).is_zero());
}

TEST_CASE("compatibility errors") {
  Ring z = zring();
  Ring m5(RingDescriptor::modular(5));
  Multivector u = Multivector::unit(z, 2);
  CHECK_THROWS_AS((void)wedge(u, Multivector::unit(z, 3)), std::invalid_argument);
  CHECK_THROWS_AS((void)wedge(u, Multivector::unit(m5, 2)), std::invalid_argument);
  CHECK_THROWS_AS((void)left_mul({z.one()}, u), std::invalid_argument);
  CHECK_THROWS_AS((void)Multivector::monomial(z, 2, 0b100, z.one()),
                  std::invalid_argument);
}

TEST_CASE("text and JSON forms") {
  Ring z = zring();
  Multivector v = mono(z, 3, 0b101, 3) - Multivector::unit(z, 3);
  CHECK(v.to_text() == "-1\xC2\xB7" "e{} +3\xC2\xB7" "e{1,3}");
  CHECK(Multivector::zero(z, 3).to_text() == "0");

  auto j = v.to_json();
  CHECK(Multivector::from_json(z, 3, j) == v);

  Ring poly(RingDescriptor::polynomial({"a", "b"}));
  Multivector w =
      Multivector::monomial(poly, 2, 0b01, poly.variable("a") + poly.variable("b"));
  CHECK(w.to_text() == "+(a + b)\xC2\xB7" "e{1}");
  CHECK(Multivector::from_json(poly, 2, w.to_json()) == w);
}
