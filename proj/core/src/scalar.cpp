#include "nqd/scalar.hpp"

#include <cctype>
#include <ostream>

#include "nqd/errors.hpp"

namespace nqd {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

bool fits64(i128 v) { return v > static_cast<i128>(INT64_MIN) && v <= static_cast<i128>(INT64_MAX); }

mpz_class mpz_from_i128(i128 v) {
  const bool neg = v < 0;
  u128 mag = abs128(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return result;
}

std::uint64_t reduce_mod(const mpz_class& z, std::uint32_t p) {
  return mpz_fdiv_ui(z.get_mpz_t(), p);
}

std::uint64_t reduce_mod(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------- Field

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw InvariantViolation("field modulus " + std::to_string(p) + " is not a prime below 2^31");
  return Field(p);
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long n) const {
  if (p_ == 0) return Scalar(n);
  return Scalar::residue(n, p_);
}

Scalar Field::coerce(const Scalar& s) const {
  if (s.modulus() == p_) return s;
  if (s.modulus() == 0) return s.promoted_to(p_);
  throw DimensionMismatch("scalar of characteristic " + std::to_string(s.modulus()) +
                          " used in field " + name());
}

Scalar Field::parse(std::string_view text) const {
  std::string t(text);
  auto bad = [&] { return ParseError("malformed scalar '" + t + "'"); };
  std::size_t i = 0;
  if (i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
  std::size_t digits = 0;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i, ++digits;
  if (digits == 0) throw bad();
  if (i < t.size()) {
    if (t[i] != '/') throw bad();
    ++i;
    std::size_t den_digits = 0;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i, ++den_digits;
    if (den_digits == 0 || i != t.size()) throw bad();
  }
  std::string canon = t[0] == '+' ? t.substr(1) : t;
  mpq_class q;
  if (q.set_str(canon, 10) != 0) throw bad();
  if (q.get_den() == 0) throw DivisionByZero();
  q.canonicalize();
  return coerce(Scalar::from_mpq(q));
}

std::string Field::name() const {
  return p_ == 0 ? std::string("rational") : "F_" + std::to_string(p_);
}

// ---------------------------------------------------------------- Scalar

Scalar Scalar::fraction(long long num, long long den) {
  if (den == 0) throw DivisionByZero();
  Scalar s;
  s.set_from_i128(num, den);
  return s;
}

Scalar Scalar::residue(long long value, std::uint32_t p) {
  Scalar s;
  s.modulus_ = p;
  s.num_ = static_cast<std::int64_t>(reduce_mod(static_cast<std::int64_t>(value), p));
  s.den_ = 1;
  return s;
}

Scalar Scalar::from_mpq(const mpq_class& q) {
  Scalar s;
  s.set_from_mpq(q);
  return s;
}

void Scalar::set_from_mpq(const mpq_class& q) {
  modulus_ = 0;
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() && q.get_num() != INT64_MIN) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<const mpq_class>(q);
  }
}

void Scalar::set_from_i128(i128 num, i128 den) {
  modulus_ = 0;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  if (den != 1) {
    u128 g = gcd128(abs128(num), static_cast<u128>(den));
    if (g > 1) {
      num /= static_cast<i128>(g);
      den /= static_cast<i128>(g);
    }
  }
  if (fits64(num) && fits64(den)) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
    return;
  }
  mpq_class q(mpz_from_i128(num), mpz_from_i128(den));
  q.canonicalize();
  set_from_mpq(q);
}

mpq_class Scalar::to_mpq() const {
  if (modulus_ != 0) throw DimensionMismatch("residue has no rational value");
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::uint32_t Scalar::residue_value() const {
  if (modulus_ == 0) throw DimensionMismatch("rational scalar has no residue");
  return static_cast<std::uint32_t>(num_);
}

Scalar Scalar::promoted_to(std::uint32_t p) const {
  std::uint64_t n;
  std::uint64_t d;
  if (big_) {
    n = reduce_mod(big_->get_num(), p);
    d = reduce_mod(big_->get_den(), p);
  } else {
    n = reduce_mod(num_, p);
    d = reduce_mod(den_, p);
  }
  if (d == 0) throw DivisionByZero();
  return residue(static_cast<long long>(n * mod_pow(d, p - 2, p) % p), p);
}

std::uint32_t Scalar::common_modulus(const Scalar& a, const Scalar& b) {
  if (a.modulus_ == b.modulus_) return a.modulus_;
  if (a.modulus_ == 0) return b.modulus_;
  if (b.modulus_ == 0) return a.modulus_;
  throw DimensionMismatch("scalars from fields F_" + std::to_string(a.modulus_) + " and F_" +
                          std::to_string(b.modulus_));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (modulus_ != 0)
    return residue(static_cast<long long>(mod_pow(static_cast<std::uint64_t>(num_), modulus_ - 2, modulus_)),
                   modulus_);
  if (big_) return from_mpq(1 / *big_);
  Scalar s;
  s.set_from_i128(den_, num_);
  return s;
}

Scalar Scalar::operator-() const {
  if (modulus_ != 0) return residue(num_ == 0 ? 0 : static_cast<long long>(modulus_) - num_, modulus_);
  if (big_) return from_mpq(-*big_);
  Scalar s = *this;
  s.num_ = -num_;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (modulus_ != 0 || o.modulus_ != 0) {
    std::uint32_t p = common_modulus(*this, o);
    std::uint64_t a = modulus_ ? static_cast<std::uint64_t>(num_) : promoted_to(p).num_;
    std::uint64_t b = o.modulus_ ? static_cast<std::uint64_t>(o.num_) : o.promoted_to(p).num_;
    std::uint64_t r = a + b;
    if (r >= p) r -= p;
    *this = residue(static_cast<long long>(r), p);
    return *this;
  }
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t r;
      if (!__builtin_add_overflow(num_, o.num_, &r) && r != INT64_MIN) {
        num_ = r;
        return *this;
      }
    }
    set_from_i128(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                  static_cast<i128>(den_) * o.den_);
    return *this;
  }
  set_from_mpq(to_mpq() + o.to_mpq());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (modulus_ != 0 || o.modulus_ != 0) {
    std::uint32_t p = common_modulus(*this, o);
    std::uint64_t a = modulus_ ? static_cast<std::uint64_t>(num_) : promoted_to(p).num_;
    std::uint64_t b = o.modulus_ ? static_cast<std::uint64_t>(o.num_) : o.promoted_to(p).num_;
    *this = residue(static_cast<long long>(a * b % p), p);
    return *this;
  }
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t r;
      if (!__builtin_mul_overflow(num_, o.num_, &r) && r != INT64_MIN) {
        num_ = r;
        return *this;
      }
    }
    set_from_i128(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
    return *this;
  }
  set_from_mpq(to_mpq() * o.to_mpq());
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.modulus_ != b.modulus_) {
    std::uint32_t p = Scalar::common_modulus(a, b);
    Scalar x = a.modulus_ ? a : a.promoted_to(p);
    Scalar y = b.modulus_ ? b : b.promoted_to(p);
    return x.num_ == y.num_;
  }
  if (a.big_ || b.big_) {
    if (!a.big_ || !b.big_) return false;
    return *a.big_ == *b.big_;
  }
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::string Scalar::str() const {
  if (modulus_ != 0) return std::to_string(num_);
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace nqd
