#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace extremal {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CharTwoError : Error {
  CharTwoError() : Error("characteristic 2 is not supported") {}
};
struct NotPrimeError : Error {
  explicit NotPrimeError(std::uint64_t p)
      : Error("not a prime: " + std::to_string(p)) {}
};
struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

enum class FieldKind { Rationals, PrimeField };

struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t p = 0;  // odd prime, PrimeField only

  static FieldSpec rationals() { return {FieldKind::Rationals, 0}; }
  static FieldSpec gf(std::uint64_t p) { return {FieldKind::PrimeField, p}; }
  bool operator==(const FieldSpec&) const = default;
};

bool is_prime_u64(std::uint64_t n);

/* Harvests primes from every value the Q pipeline divides by or clears.
   Values too large to factor completely are kept verbatim. */
class PrimeCollector {
 public:
  void record(const mpz_class& z);
  void record(std::uint64_t v) { record(mpz_class(static_cast<unsigned long>(v))); }

  const std::set<std::uint64_t>& primes() const { return primes_; }
  const std::vector<std::string>& unfactored() const { return unfactored_; }

 private:
  std::set<std::uint64_t> primes_;
  std::vector<std::string> unfactored_;
  std::set<std::string> seen_;
};

/* One value of K: either a GF(p) residue (q_ empty) or an exact rational.
   All arithmetic goes through FieldContext; values of different contexts
   must not be mixed. */
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Scalar& o) : r_(o.r_), q_(o.q_ ? std::make_unique<mpq_class>(*o.q_) : nullptr) {}
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(const Scalar& o) {
    r_ = o.r_;
    q_ = o.q_ ? std::make_unique<mpq_class>(*o.q_) : nullptr;
    return *this;
  }
  Scalar& operator=(Scalar&&) noexcept = default;

  static Scalar residue(std::uint64_t r) {
    Scalar s;
    s.r_ = r;
    return s;
  }
  static Scalar rational(mpq_class q) {
    Scalar s;
    s.q_ = std::make_unique<mpq_class>(std::move(q));
    return s;
  }

  bool holds_rational() const { return q_ != nullptr; }
  std::uint64_t res() const { return r_; }
  const mpq_class& rat() const { return *q_; }

 private:
  std::uint64_t r_ = 0;
  std::unique_ptr<mpq_class> q_;
};

class FieldContext {
 public:
  explicit FieldContext(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  bool is_rationals() const { return spec_.kind == FieldKind::Rationals; }
  std::uint64_t characteristic() const { return is_rationals() ? 0 : spec_.p; }
  std::uint64_t p() const { return spec_.p; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long v) const;
  Scalar from_ratio(long num, unsigned long den) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const;
  Scalar halve(const Scalar& a) const;

  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;
  bool eq(const Scalar& a, const Scalar& b) const;

  std::string str(const Scalar& a) const;  // "n" or "n/d", canonical

  // instrumentation for multichar prime harvesting (Q runs only)
  void attach_collector(PrimeCollector* pc) const { collector_ = pc; }
  PrimeCollector* collector() const { return collector_; }
  void note_divisor(const Scalar& a) const;
  void note_cleared(const mpz_class& z) const;

 private:
  void check(const Scalar& a) const;

  FieldSpec spec_;
  std::uint64_t inv2_ = 0;
  mutable PrimeCollector* collector_ = nullptr;
};

inline FieldContext make_field(FieldSpec spec) { return FieldContext(spec); }

/* Reinterpret a scalar in another field; rational -> GF(p) reduces num/den
   mod p and throws when p divides the denominator. */
Scalar convert_scalar(const Scalar& s, const FieldContext& to);

}  // namespace extremal
