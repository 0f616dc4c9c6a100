#include "extremal/field.hpp"

#include <cassert>

namespace extremal {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  // extended Euclid; p prime, a != 0 mod p
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  // deterministic Miller-Rabin for 64-bit inputs
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

void PrimeCollector::record(const mpz_class& z) {
  mpz_class v = abs(z);
  if (v <= 1) return;
  std::string key = v.get_str();
  if (!seen_.insert(key).second) return;

  // trial division by small primes, then a primality test on the cofactor
  for (std::uint64_t q = 2; q <= 1000000 && v > 1; q += (q == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(q))) {
      primes_.insert(q);
      do {
        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(q));
      } while (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(q)));
    }
    if (q > 3 && mpz_cmp_ui(v.get_mpz_t(), q * q) < 0) break;
  }
  if (v > 1) {
    if (v.fits_ulong_p()) {
      std::uint64_t c = v.get_ui();
      if (is_prime_u64(c))
        primes_.insert(c);
      else
        unfactored_.push_back(v.get_str());
    } else {
      unfactored_.push_back(v.get_str());
    }
  }
}

FieldContext::FieldContext(FieldSpec spec) : spec_(spec) {
  if (spec_.kind == FieldKind::PrimeField) {
    if (spec_.p == 2) throw CharTwoError();
    if (!is_prime_u64(spec_.p)) throw NotPrimeError(spec_.p);
    if (spec_.p >= (1ull << 62)) throw Error("prime too large");
    inv2_ = (spec_.p + 1) / 2;
  }
}

void FieldContext::check(const Scalar& a) const {
  assert(a.holds_rational() == is_rationals() && "scalar from a different field context");
  (void)a;
}

Scalar FieldContext::zero() const {
  return is_rationals() ? Scalar::rational(mpq_class(0)) : Scalar::residue(0);
}

Scalar FieldContext::one() const {
  return is_rationals() ? Scalar::rational(mpq_class(1)) : Scalar::residue(1);
}

Scalar FieldContext::from_int(long v) const {
  if (is_rationals()) return Scalar::rational(mpq_class(v));
  long m = v % static_cast<long>(spec_.p);
  if (m < 0) m += static_cast<long>(spec_.p);
  return Scalar::residue(static_cast<std::uint64_t>(m));
}

Scalar FieldContext::from_ratio(long num, unsigned long den) const {
  if (den == 0) throw DivisionByZero();
  if (is_rationals()) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar::rational(q);
  }
  return div(from_int(num), from_int(static_cast<long>(den % spec_.p)));
}

Scalar FieldContext::add(const Scalar& a, const Scalar& b) const {
  check(a);
  check(b);
  if (is_rationals()) return Scalar::rational(a.rat() + b.rat());
  std::uint64_t r = a.res() + b.res();
  if (r >= spec_.p) r -= spec_.p;
  return Scalar::residue(r);
}

Scalar FieldContext::sub(const Scalar& a, const Scalar& b) const {
  check(a);
  check(b);
  if (is_rationals()) return Scalar::rational(a.rat() - b.rat());
  std::uint64_t r = a.res() + spec_.p - b.res();
  if (r >= spec_.p) r -= spec_.p;
  return Scalar::residue(r);
}

Scalar FieldContext::mul(const Scalar& a, const Scalar& b) const {
  check(a);
  check(b);
  if (is_rationals()) return Scalar::rational(a.rat() * b.rat());
  return Scalar::residue(mulmod(a.res(), b.res(), spec_.p));
}

Scalar FieldContext::neg(const Scalar& a) const {
  check(a);
  if (is_rationals()) return Scalar::rational(-a.rat());
  return Scalar::residue(a.res() == 0 ? 0 : spec_.p - a.res());
}

Scalar FieldContext::inv(const Scalar& a) const {
  check(a);
  if (is_zero(a)) throw DivisionByZero();
  note_divisor(a);
  if (is_rationals()) return Scalar::rational(1 / a.rat());
  return Scalar::residue(invmod(a.res(), spec_.p));
}

Scalar FieldContext::div(const Scalar& a, const Scalar& b) const {
  if (is_zero(b)) throw DivisionByZero();
  note_divisor(b);
  if (is_rationals()) return Scalar::rational(a.rat() / b.rat());
  return Scalar::residue(mulmod(a.res(), invmod(b.res(), spec_.p), spec_.p));
}

Scalar FieldContext::halve(const Scalar& a) const {
  check(a);
  if (is_rationals()) return Scalar::rational(a.rat() / 2);
  return Scalar::residue(mulmod(a.res(), inv2_, spec_.p));
}

bool FieldContext::is_zero(const Scalar& a) const {
  check(a);
  return is_rationals() ? a.rat() == 0 : a.res() == 0;
}

bool FieldContext::is_one(const Scalar& a) const {
  check(a);
  return is_rationals() ? a.rat() == 1 : a.res() == 1;
}

bool FieldContext::eq(const Scalar& a, const Scalar& b) const {
  check(a);
  check(b);
  return is_rationals() ? a.rat() == b.rat() : a.res() == b.res();
}

std::string FieldContext::str(const Scalar& a) const {
  check(a);
  if (!is_rationals()) return std::to_string(a.res());
  const mpq_class& q = a.rat();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

void FieldContext::note_divisor(const Scalar& a) const {
  if (!collector_ || !a.holds_rational()) return;
  collector_->record(a.rat().get_num());
  collector_->record(a.rat().get_den());
}

void FieldContext::note_cleared(const mpz_class& z) const {
  if (collector_) collector_->record(z);
}

Scalar convert_scalar(const Scalar& s, const FieldContext& to) {
  if (to.is_rationals()) {
    if (!s.holds_rational()) throw Error("cannot lift a residue back to Q");
    return s;
  }
  if (!s.holds_rational()) return s;
  unsigned long p = static_cast<unsigned long>(to.p());
  mpz_class num = s.rat().get_num() % p;
  mpz_class den = s.rat().get_den() % p;
  if (den == 0) throw Error("prime " + std::to_string(p) + " divides a denominator");
  long n = num.get_si();
  long d = den.get_si();
  return to.div(to.from_int(n), to.from_int(d));
}

}  // namespace extremal
