#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "oracles.hpp"
#include "susmat/verify.hpp"

using namespace susmat;

namespace {

Ring zring() { return Ring(RingDescriptor::integers()); }

struct Sym {
  Ring ring;
  HyperbolicElement x;
};

Sym symbolic(int n, std::vector<std::string> extra = {}) {
  std::vector<std::string> vars;
  for (int i = 1; i <= n; ++i) vars.push_back("p" + std::to_string(i));
  vars.push_back("a");
  for (int i = 1; i <= n; ++i) vars.push_back("f" + std::to_string(i));
  vars.push_back("b");
  vars.insert(vars.end(), extra.begin(), extra.end());
  Ring ring(RingDescriptor::polynomial(vars));
  std::vector<Scalar> p, f;
  for (int i = 1; i <= n; ++i) p.push_back(ring.variable("p" + std::to_string(i)));
  for (int i = 1; i <= n; ++i) f.push_back(ring.variable("f" + std::to_string(i)));
  return {ring, HyperbolicElement(p, ring.variable("a"), f, ring.variable("b"))};
}

}  // namespace

TEST_CASE("division-free determinant examples") {
  Ring z = zring();
  CHECK(det_division_free(Mat::identity(z, 8)) == z.one());

  Mat d(z, 3, 3);
  d.at(0, 0) = z.from_integer(2);
  d.at(1, 1) = z.from_integer(3);
  d.at(2, 2) = z.from_integer(5);
  CHECK(det_division_free(d) == z.from_integer(30));

  std::vector<Scalar> a{z.one(), z.from_integer(2), z.from_integer(3)};
  std::vector<Scalar> b{z.from_integer(4), z.from_integer(5), z.from_integer(6)};
  CHECK(det_division_free(suslin_matrix(a, b).mat) == z.from_integer(1024));

  Mat nonsq(z, 2, 3);
  CHECK_THROWS_AS((void)det_division_free(nonsq), std::invalid_argument);
  CHECK(det_division_free(Mat(z, 0, 0)) == z.one());
}

TEST_CASE("determinant agrees with the permutation-sum oracle") {
  Rng rng(71);
  std::vector<Ring> rings{zring(), Ring(RingDescriptor::modular(97))};
  for (const Ring& ring : rings)
    for (int trial = 0; trial < 100; ++trial) {
      int dim = 1 + static_cast<int>(rng.next() % 5);
      Mat m = oracles::random_int_matrix(ring, dim, dim, rng);
      CHECK(det_division_free(m) == oracles::leibniz_det(m));
      CHECK(det_cofactor_reference(m) == oracles::leibniz_det(m));
    }

  // symbolic 4x4 exercises the Berkowitz path over polynomials
  std::vector<std::string> vars;
  for (int i = 0; i < 16; ++i) vars.push_back("m" + std::to_string(i));
  Ring poly(RingDescriptor::polynomial(vars));
  Mat m(poly, 4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = poly.variable("m" + std::to_string(4 * i + j));
  CHECK(det_division_free(m) == oracles::leibniz_det(m));
}

TEST_CASE("transvections and SL samples") {
  Ring z = zring();

  SLSample id = compose_transvections(z, 3, {});
  CHECK(id.matrix.is_identity());
  CHECK(id.inverse.is_identity());

  SLSample e12 = compose_transvections(z, 2, {{1, 2, z.from_integer(3)}});
  CHECK(e12.matrix.at(0, 0) == z.one());
  CHECK(e12.matrix.at(0, 1) == z.from_integer(3));
  CHECK(e12.matrix.at(1, 0) == z.zero());
  CHECK(e12.inverse.at(0, 1) == z.from_integer(-3));

  CHECK_THROWS_AS((void)transvection_matrix(z, 2, 1, 1, z.one()), std::invalid_argument);
  CHECK_THROWS_AS((void)transvection_matrix(z, 2, 0, 1, z.one()), std::invalid_argument);
  CHECK_THROWS_AS((void)random_sl(z, 1, 3, 5), std::invalid_argument);

  Rng rng(73);
  std::vector<Ring> rings{z, Ring(RingDescriptor::modular(97))};
  for (const Ring& ring : rings)
    for (int trial = 0; trial < 20; ++trial) {
      int dim = 2 + static_cast<int>(rng.next() % 4);
      SLSample s = random_sl(ring, dim, 8, rng);
      CHECK((s.matrix * s.inverse).is_identity());
      CHECK((s.inverse * s.matrix).is_identity());
      CHECK(det_division_free(s.matrix).is_one());
    }
}

TEST_CASE("key lemma: identity transvection and x0 sanity") {
  Ring z = zring();
  Rng rng(79);
  for (int n = 0; n <= 2; ++n) {
    SLSample id = compose_transvections(z, n + 1, {});
    CHECK(check_key_lemma(random_hyperbolic(z, n, rng), id).pass);
  }
  for (int trial = 0; trial < 10; ++trial) {
    SLSample phi = random_sl(z, 3, 6, rng);
    CHECK(check_key_lemma(make_x0(z, 2), phi).pass);
    CHECK(check_key_corollary(make_x0(z, 2), phi).pass);
  }
}

TEST_CASE("key lemma symbolic at n = 1, one transvection parameter") {
  auto s = symbolic(1, {"t"});
  Scalar t = s.ring.variable("t");
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      if (i == j) continue;
      SLSample phi = compose_transvections(s.ring, 2, {{i, j, t}});
      CHECK(check_key_lemma(s.x, phi).pass);
    }
}

TEST_CASE("key corollary symbolic at n = 1 with E_21(t)") {
  auto s = symbolic(1, {"t"});
  SLSample phi = compose_transvections(s.ring, 2, {{2, 1, s.ring.variable("t")}});
  CHECK(check_key_corollary(s.x, phi).pass);
}

TEST_CASE("key corollary q(x) = 0 instance passes") {
  Ring z = zring();
  HyperbolicElement x({z.one(), z.zero()}, z.zero(), {z.zero(), z.one()}, z.zero());
  REQUIRE(hyperbolic_q(x).is_zero());
  Rng rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    SLSample phi = random_sl(z, 3, 8, rng);
    CHECK(check_key_lemma(x, phi).pass);
    CHECK(check_key_corollary(x, phi).pass);
  }
}

TEST_CASE("key checks randomized over integers and mod 97") {
  Rng rng(89);
  for (const char* desc : {"int", "mod:97"}) {
    Ring ring(RingDescriptor::parse(desc));
    for (int trial = 0; trial < 25; ++trial) {
      HyperbolicElement x = random_hyperbolic(ring, 2, rng);
      SLSample phi = random_sl(ring, 3, 8, rng);
      CHECK(check_key_lemma(x, phi).pass);
      CHECK(check_key_corollary(x, phi).pass);
    }
  }
}

TEST_CASE("engineered q classes") {
  Rng rng(97);
  Ring z = zring();
  for (int n = 0; n <= 3; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      CHECK(hyperbolic_q(random_hyperbolic(z, n, rng, QClass::zero)).is_zero());
      Scalar q = hyperbolic_q(random_hyperbolic(z, n, rng, QClass::nonunit));
      CHECK_FALSE(scalar_is_unit(q));
      CHECK_FALSE(q.is_zero());
    }
  }
  Ring m97(RingDescriptor::modular(97));
  // Z/97 is a field: its only non-unit is 0.
  CHECK(hyperbolic_q(random_hyperbolic(m97, 2, rng, QClass::nonunit)).is_zero());
}

TEST_CASE("a doctored sample produces a failing report with a counterexample") {
  Ring z = zring();
  Rng rng(101);
  SLSample phi = random_sl(z, 3, 6, rng);
  phi.inverse = Mat::identity(z, 3);  // break it
  phi.inverse.at(0, 1) = z.from_integer(5);
  HyperbolicElement x = random_hyperbolic(z, 2, rng);
  VerificationReport r = check_key_lemma(x, phi);
  CHECK_FALSE(r.pass);
  CHECK(r.counterexample.contains("x"));
  CHECK(r.counterexample.contains("phi"));
  CHECK(r.counterexample.contains("lhs"));
  CHECK(r.counterexample.contains("rhs"));
  auto j = r.to_json();
  CHECK(j["status"] == "fail");
  CHECK(j.contains("counterexample"));

  std::vector<VerificationReport> rs{r, r};
  CHECK(count_failures(rs) == 2);
  rs[0].pass = true;
  CHECK(count_failures(rs) == 1);
  rs[1].experimental = true;
  CHECK(count_failures(rs) == 0);
}

TEST_CASE("failure count caps at 125") {
  VerificationReport fail;
  fail.pass = false;
  std::vector<VerificationReport> rs(300, fail);
  CHECK(count_failures(rs) == 125);
}

TEST_CASE("run_suite: symbolic examples") {
  SuiteOptions opts;
  opts.n_min = 2;
  opts.n_max = 2;
  opts.symbolic = true;
  auto reports = run_suite({"lemma-a"}, opts);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].pass);
  CHECK(reports[0].universal);
  CHECK(reports[0].mode == "symbolic");
  CHECK(reports[0].ring.rfind("poly:", 0) == 0);

  opts.n_min = 0;
  auto bp = run_suite({"basis-phi"}, opts);
  REQUIRE(bp.size() == 3);
  for (const auto& r : bp) CHECK(r.pass);
}

TEST_CASE("run_suite: randomized key lemma over mod 97") {
  SuiteOptions opts;
  opts.ring = RingDescriptor::parse("mod:97");
  opts.n_min = 2;
  opts.n_max = 2;
  opts.symbolic = false;
  opts.trials = 30;
  opts.seed = 42;
  auto reports = run_suite({"key-lemma"}, opts);
  REQUIRE(reports.size() == 30);
  int zero = 0, nonunit = 0;
  for (const auto& r : reports) {
    CHECK(r.pass);
    if (r.detail == "q-class=zero") ++zero;
    if (r.detail == "q-class=nonunit") ++nonunit;
  }
  CHECK(zero == 3);
  CHECK(nonunit == 3);
}

TEST_CASE("run_suite: usage errors") {
  SuiteOptions opts;
  CHECK_THROWS_AS(run_suite({"no-such-suite"}, opts), UsageError);

  opts.n_min = 0;
  opts.n_max = 0;
  CHECK_THROWS_AS(run_suite({"lemma-f"}, opts), UsageError);
  CHECK_THROWS_AS(run_suite({"lemma-g"}, opts), UsageError);

  SuiteOptions randomized;
  randomized.symbolic = false;
  randomized.trials = 0;
  CHECK_THROWS_AS(run_suite({"lemma-a"}, randomized), UsageError);

  SuiteOptions deep;
  deep.n_max = 7;  // beyond the symbolic cap
  CHECK_THROWS_AS(run_suite({"lemma-a"}, deep), UsageError);
}

TEST_CASE("run_suite 'all' with a rank-0 range clamps the restricted lemmas") {
  SuiteOptions opts;
  opts.n_min = 0;
  opts.n_max = 1;
  opts.symbolic = true;
  opts.trials = 6;
  auto reports = run_suite({"all"}, opts);
  for (const auto& r : reports) {
    CHECK(r.pass);
    if (r.suite == "lemma-f" || r.suite == "lemma-g") CHECK(r.n >= 1);
  }
}

TEST_CASE("identical options and seed give identical serialized reports") {
  SuiteOptions opts;
  opts.ring = RingDescriptor::parse("mod:97");
  opts.n_min = 1;
  opts.n_max = 2;
  opts.symbolic = false;
  opts.trials = 10;
  opts.seed = 7;
  auto serialize = [&] {
    std::ostringstream os;
    for (const auto& r : run_suite({"key-lemma", "lemma-a", "oracles"}, opts))
      os << r.to_json().dump() << '\n';
    return os.str();
  };
  CHECK(serialize() == serialize());
}

TEST_CASE("experimental GL reports do not count as failures") {
  SuiteOptions opts;
  opts.n_min = 1;
  opts.n_max = 1;
  opts.symbolic = false;
  opts.trials = 8;
  opts.experimental_gl = true;
  auto reports = run_suite({"key-lemma"}, opts);
  int experimental = 0;
  for (const auto& r : reports)
    if (r.experimental) {
      ++experimental;
      CHECK(r.to_json()["status"] == "experimental");
    }
  CHECK(experimental == 2);  // trials 0 and 4
  CHECK(count_failures(reports) == 0);
}

TEST_CASE("gl samples compose exactly") {
  Rng rng(103);
  for (const char* desc : {"int", "mod:97"}) {
    Ring ring(RingDescriptor::parse(desc));
    SLSample g = random_gl(ring, 3, 5, rng);
    CHECK_FALSE(g.is_sl);
    CHECK((g.matrix * g.inverse).is_identity());
  }
}

TEST_CASE("report JSON shape") {
  SuiteOptions opts;
  opts.n_min = 1;
  opts.n_max = 1;
  auto reports = run_suite({"square-law"}, opts);
  REQUIRE(reports.size() == 1);
  auto j = reports[0].to_json();
  CHECK(j["suite"] == "square-law");
  CHECK(j["n"] == 1);
  CHECK(j["mode"] == "symbolic");
  CHECK(j["status"] == "pass");
  CHECK(j["universal"] == true);
  CHECK_FALSE(j.contains("wall_ms"));
  CHECK(reports[0].to_json(true).contains("wall_ms"));
  CHECK(reports[0].wall_ms >= 0.0);
}
