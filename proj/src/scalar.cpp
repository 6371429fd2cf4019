#include "germcalc/scalar.hpp"

#include <stdexcept>

#include "germcalc/errors.hpp"

namespace germcalc {

const char* to_string(Field field) {
  return field == Field::Real ? "real" : "complex";
}

Field field_from_string(const std::string& name) {
  if (name == "real") return Field::Real;
  if (name == "complex") return Field::Complex;
  throw Error(ErrorKind::FieldError, "unknown field '" + name + "'");
}

Scalar::Scalar(Field field, mpq_class re, mpq_class im)
    : field_(field), re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
  if (field_ == Field::Real && sgn(im_) != 0)
    throw Error(ErrorKind::FieldError,
                "imaginary part is not allowed over the real field");
}

Scalar Scalar::to_field(Field target) const {
  if (target == field_) return *this;
  if (target == Field::Real && sgn(im_) != 0)
    throw Error(ErrorKind::FieldMismatch,
                "complex scalar with nonzero imaginary part is not real");
  Scalar out(target);
  out.re_ = re_;
  out.im_ = im_;
  return out;
}

void Scalar::check_same_field(const Scalar& other) const {
  if (field_ != other.field_)
    throw Error(ErrorKind::FieldMismatch, "scalar fields differ");
}

Scalar Scalar::operator-() const {
  Scalar out(*this);
  out.re_ = -re_;
  out.im_ = -im_;
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same_field(rhs);
  re_ += rhs.re_;
  if (field_ == Field::Complex) im_ += rhs.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  check_same_field(rhs);
  re_ -= rhs.re_;
  if (field_ == Field::Complex) im_ -= rhs.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  check_same_field(rhs);
  if (sgn(im_) == 0 && sgn(rhs.im_) == 0) {
    re_ *= rhs.re_;
    return *this;
  }
  mpq_class re = re_ * rhs.re_ - im_ * rhs.im_;
  mpq_class im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero scalar");
  if (sgn(im_) == 0) {
    Scalar out(field_);
    out.re_ = 1 / re_;
    return out;
  }
  // (a+bi)^-1 = (a-bi)/(a^2+b^2)
  mpq_class norm = re_ * re_ + im_ * im_;
  Scalar out(field_);
  out.re_ = re_ / norm;
  out.im_ = -im_ / norm;
  return out;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  check_same_field(rhs);
  return *this *= rhs.inverse();
}

Scalar Scalar::conj() const {
  Scalar out(*this);
  out.im_ = -im_;
  return out;
}

bool Scalar::prints_negative() const {
  return sgn(re_) < 0 || (sgn(re_) == 0 && sgn(im_) < 0);
}

std::string rational_to_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Scalar::to_string() const {
  if (sgn(im_) == 0) return rational_to_string(re_);
  std::string imag;
  mpq_class mag = abs(im_);
  imag = (mag == 1) ? "i" : rational_to_string(mag) + "*i";
  if (sgn(re_) == 0) return sgn(im_) < 0 ? "-" + imag : imag;
  return "(" + rational_to_string(re_) + (sgn(im_) < 0 ? " - " : " + ") +
         imag + ")";
}

}  // namespace germcalc
