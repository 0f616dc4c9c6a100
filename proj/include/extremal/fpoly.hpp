#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "extremal/field.hpp"

namespace extremal {

using VarId = std::int32_t;

/* Monomial in the f-variables: sparse exponent vector sorted by variable id.
   Variable ids are assigned in ascending pair order, so id order is the
   order on Pi x B. */
struct FMonomial {
  std::vector<std::pair<VarId, int>> exps;  // sorted by VarId, exponents > 0

  int total_degree() const {
    int d = 0;
    for (auto& [v, e] : exps) d += e;
    return d;
  }
  bool is_unit() const { return exps.empty(); }
  bool operator==(const FMonomial&) const = default;

  static FMonomial one() { return {}; }
  static FMonomial var(VarId v) { return FMonomial{{{v, 1}}}; }
  static FMonomial mul(const FMonomial& a, const FMonomial& b);
};

// graded order; ties: compare exponents from the largest variable down
bool fmon_less(const FMonomial& a, const FMonomial& b);

/* Sparse polynomial in R_F = K[f_y(c)], terms sorted descending. */
class FPoly {
 public:
  using Term = std::pair<FMonomial, Scalar>;

  FPoly() = default;
  static FPoly constant(Scalar c, const FieldContext& K);
  static FPoly variable(VarId v, const FieldContext& K);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_unit()); }
  Scalar constant_value(const FieldContext& K) const;  // requires is_constant()
  int total_degree() const { return terms_.empty() ? -1 : terms_.front().first.total_degree(); }
  size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  static FPoly add(const FPoly& a, const FPoly& b, const FieldContext& K);
  static FPoly sub(const FPoly& a, const FPoly& b, const FieldContext& K);
  static FPoly mul(const FPoly& a, const FPoly& b, const FieldContext& K);
  FPoly scaled(const Scalar& c, const FieldContext& K) const;
  FPoly negated(const FieldContext& K) const;

  bool equals(const FPoly& o, const FieldContext& K) const;
  bool mentions(VarId v) const;
  void collect_vars(std::vector<char>& present) const;

  // replace variable v by the polynomial e
  FPoly substituted(VarId v, const FPoly& e, const FieldContext& K) const;
  Scalar evaluate(const std::vector<Scalar>& by_var, const FieldContext& K) const;

  // variables occurring in exactly one term, that term being a*v with a in K*
  std::vector<std::pair<VarId, Scalar>> linear_only_vars(const FieldContext& K) const;

  // exact division by a scalar / polynomial; nullopt when division is inexact
  FPoly div_scalar(const Scalar& c, const FieldContext& K) const;
  std::optional<FPoly> div_exact(const FPoly& d, const FieldContext& K) const;

  std::string str(const FieldContext& K, const std::function<std::string(VarId)>& var_name) const;

  FPoly converted(const FieldContext& to) const;

 private:
  std::vector<Term> terms_;
};

}  // namespace extremal
