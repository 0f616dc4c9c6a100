#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "extremal/minimize.hpp"

namespace extremal {

struct VerificationFailure : Error {
  using Error::Error;
};

/* Deterministic generator for reproducible surveys. */
struct SplitMix64 {
  std::uint64_t s;
  explicit SplitMix64(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

using ScalarVec = std::vector<std::pair<int, Scalar>>;

/* A concrete Lie algebra over K: specialized structure constants with the
   full product table derived from generator rows. */
class LieAlgebraK {
 public:
  LieAlgebraK(int dim, const FieldContext& K) : dim_(dim), K_(&K) {
    prod_.assign(static_cast<size_t>(dim) * dim, {});
  }

  int dim() const { return dim_; }
  const FieldContext& field() const { return *K_; }
  const ScalarVec& product(int i, int j) const { return prod_[static_cast<size_t>(i) * dim_ + j]; }
  void set_product(int i, int j, ScalarVec v);  // also stores the negated mirror

  ScalarVec bracket(const ScalarVec& u, const ScalarVec& v) const;
  ScalarVec ad_apply(int i, const ScalarVec& v) const;

 private:
  int dim_;
  const FieldContext* K_;
  std::vector<ScalarVec> prod_;
};

struct AnalysisReport {
  int dim = 0;
  std::optional<int> radical_dim;
  std::optional<int> quotient_dim;
  std::string type_label = "unclassified";
  std::string radical_method;
  std::vector<std::string> checks_passed;
};

/* Evaluate the generic table at v (indexed by the active variables in
   ascending pair order). */
LieAlgebraK specialize(const MultTable& T, const FSetState& st, const std::vector<Scalar>& v);

/* Jacobi (exhaustive for dim <= 60, sampled otherwise), extremality of every
   (x, b) against r evaluated at v, and nonedge commutation. Throws
   VerificationFailure on the first violation. */
std::vector<std::string> verify_lie(const LieAlgebraK& L, const SimpleGraph& g, const FSetState& st,
                                    const std::vector<Scalar>& v, std::uint64_t sample_seed = 0);

/* Killing-perp of the derived subalgebra. Exact over Q; over GF(p) validated
   (perfect quotient with nondegenerate induced form), otherwise undetermined. */
std::pair<std::optional<int>, std::string> radical_dimension(const LieAlgebraK& L);

/* Dimension lookup cross-checked against a Cartan-rank estimate. */
std::string classify_quotient(int quotient_dim, std::optional<int> rank_estimate);

AnalysisReport analyze(const LieAlgebraK& L, std::uint64_t seed = 1);

struct SurveyResult {
  int trials = 0;
  int majority_quotient_dim = -1;
  std::string majority_type;
  double frequency = 0.0;
  std::vector<AnalysisReport> samples;
};

SurveyResult generic_survey(const MultTable& T, const FSetState& st, const FieldContext& Kp,
                            int trials, std::uint64_t seed);

/* Lower central series; returns the number of steps to reach zero, or nullopt
   if it stabilizes above zero. */
std::optional<int> nilpotency_class(const LieAlgebraK& L);

std::vector<Scalar> random_point(const FieldContext& K, int count, SplitMix64& rng);

}  // namespace extremal
