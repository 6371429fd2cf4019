// Exact scalars over Q and Q(i).
#pragma once

#include <gmpxx.h>

#include <string>

namespace germcalc {

enum class Field { Real, Complex };

const char* to_string(Field field);
Field field_from_string(const std::string& name);

/// An element of Q (Field::Real) or of the Gaussian rationals Q(i)
/// (Field::Complex). Real scalars always have a zero imaginary part.
class Scalar {
 public:
  explicit Scalar(Field field = Field::Real) : field_(field) {}
  Scalar(Field field, mpq_class re, mpq_class im = 0);
  Scalar(Field field, long value) : field_(field), re_(value) {}

  Field field() const noexcept { return field_; }
  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  /// Re-tags the value. Complex -> Real requires a zero imaginary part.
  Scalar to_field(Field target) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;
  Scalar conj() const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Sign convention used by the printer: negative when the real part is
  /// negative, or the real part is zero and the imaginary part negative.
  bool prints_negative() const;

  std::string to_string() const;

 private:
  void check_same_field(const Scalar& other) const;

  Field field_;
  mpq_class re_;
  mpq_class im_;
};

std::string rational_to_string(const mpq_class& q);

}  // namespace germcalc
