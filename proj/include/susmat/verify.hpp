#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "susmat/clifford.hpp"
#include "susmat/suslin.hpp"

namespace susmat {

inline constexpr std::uint64_t kDefaultSeed = 1729;

// Configuration or input errors that the CLI maps to exit code 64.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// splitmix64; fixed algorithm so identical seeds give identical runs on
// every platform.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  long long int_in(long long lo, long long hi) {
    return lo + static_cast<long long>(next() %
                                       static_cast<std::uint64_t>(hi - lo + 1));
  }
};

// Bounded sampler: integer images in [-9, 9].
Scalar random_scalar(const Ring& ring, Rng& rng);

struct Transvection {
  int i;  // 1-based row
  int j;  // 1-based column, j != i
  Scalar lambda;
};

// Identity plus lambda at (i, j).
Mat transvection_matrix(const Ring& ring, int dim, int i, int j, const Scalar& lambda);

// Product of elementary transvections with the inverse built by reversing
// the factor list with negated parameters; no ring division anywhere.
struct SLSample {
  int dim = 0;
  std::vector<Transvection> factors;
  Mat matrix;
  Mat inverse;
  bool is_sl = true;  // false for experimental GL samples

  nlohmann::json to_json() const;
};

SLSample compose_transvections(const Ring& ring, int dim,
                               std::vector<Transvection> factors);
SLSample random_sl(const Ring& ring, int dim, int num_factors, Rng& rng);
SLSample random_sl(const Ring& ring, int dim, int num_factors, std::uint64_t seed);

// SL sample with one extra unit-diagonal factor; experimental surface only.
SLSample random_gl(const Ring& ring, int dim, int num_factors, Rng& rng);

// x' = (phi^-1 (p, a), (f, b) o phi).
HyperbolicElement transform_hyperbolic(const HyperbolicElement& x, const SLSample& phi);

enum class QClass { generic, zero, nonunit };

HyperbolicElement random_hyperbolic(const Ring& ring, int n, Rng& rng,
                                    QClass cls = QClass::generic);

struct VerificationReport {
  std::string suite;
  std::string ring;
  int n = 0;
  std::string mode;  // "symbolic" | "randomized"
  int trial = -1;    // randomized only
  std::uint64_t seed = 0;
  bool pass = false;
  bool experimental = false;
  bool universal = false;  // symbolic pass holds over every commutative ring
  std::string detail;
  nlohmann::json counterexample;  // fully serialized on failure
  double wall_ms = 0.0;

  nlohmann::json to_json(bool include_timing = false) const;
  std::string to_text() const;
};

VerificationReport check_key_lemma(const HyperbolicElement& x, const SLSample& phi);
VerificationReport check_key_corollary(const HyperbolicElement& x, const SLSample& phi);

struct SuiteOptions {
  RingDescriptor ring = RingDescriptor::integers();
  int n_min = 0;
  int n_max = 3;
  bool symbolic = true;
  int trials = 100;
  std::uint64_t seed = kDefaultSeed;
  int symbolic_max_n = 3;  // term growth cap; raise explicitly if needed
  bool experimental_gl = false;
  int sl_factors = 8;
};

std::vector<std::string> all_suite_ids();

// Dispatches the named identity checks. Unknown ids and empty effective rank
// ranges are UsageErrors. Symbolic runs always work over Z[indeterminates];
// the requested ring applies to randomized runs.
std::vector<VerificationReport> run_suite(const std::vector<std::string>& ids,
                                          const SuiteOptions& opts);

// Failure count excluding experimental reports, capped at 125 for use as a
// process exit code.
int count_failures(const std::vector<VerificationReport>& reports);

// Second determinant route (first-row cofactor expansion, recursive at every
// size) kept solely to cross-check det_division_free.
Scalar det_cofactor_reference(const Mat& m);

}  // namespace susmat
