#pragma once

#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nqd {

class Scalar;

/// The ground field: exact rationals, or the prime field F_p.
class Field {
 public:
  Field() = default;
  static Field rational() { return Field(); }
  /// Throws InvariantViolation unless p is a prime below 2^31.
  static Field prime(std::uint32_t p);

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long n) const;
  /// Maps a scalar of any field with compatible characteristic into this one.
  Scalar coerce(const Scalar& s) const;
  /// Parses "n", "-n", or "n/d" (d > 0). Throws ParseError.
  Scalar parse(std::string_view text) const;

  std::string name() const;

  friend bool operator==(Field a, Field b) { return a.p_ == b.p_; }
  friend bool operator!=(Field a, Field b) { return a.p_ != b.p_; }

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

/// Exact field element. Rationals use a 64-bit numerator/denominator pair and
/// fall back to GMP when a result leaves that range; residues mod p store a
/// canonical representative. A rational operand combined with a residue is
/// first reduced mod p, so integer literals work in either field.
class Scalar {
 public:
  Scalar() = default;
  template <std::integral I>
  Scalar(I n) {  // NOLINT(google-explicit-constructor)
    set_from_i128(static_cast<__int128>(n), 1);
  }

  static Scalar fraction(long long num, long long den);
  static Scalar residue(long long value, std::uint32_t p);
  static Scalar from_mpq(const mpq_class& q);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  /// 0 for rationals.
  std::uint32_t modulus() const { return modulus_; }
  bool is_big() const { return static_cast<bool>(big_); }

  /// Rational value; throws for residues.
  mpq_class to_mpq() const;
  /// Residue representative in [0, p); throws for rationals.
  std::uint32_t residue_value() const;

  Scalar inverse() const;
  Scalar operator-() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// "n" or "n/d" for rationals, the representative for residues.
  std::string str() const;

 private:
  friend class Field;

  void set_from_mpq(const mpq_class& q);
  void set_from_i128(__int128 num, __int128 den);
  Scalar promoted_to(std::uint32_t p) const;
  static std::uint32_t common_modulus(const Scalar& a, const Scalar& b);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::uint32_t modulus_ = 0;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace nqd
