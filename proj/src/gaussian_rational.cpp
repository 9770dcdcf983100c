#include "sdw/gaussian_rational.hpp"

#include <stdexcept>

namespace sdw {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::fraction(long p, long q) {
  if (q == 0) throw std::domain_error("GaussianRational: zero denominator");
  mpq_class r(p, q);
  r.canonicalize();
  return GaussianRational(std::move(r));
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  const bool a_real = sgn(im_) == 0;
  const bool b_real = sgn(o.im_) == 0;
  if (a_real && b_real) {
    re_ *= o.re_;
  } else if (b_real) {
    re_ *= o.re_;
    im_ *= o.re_;
  } else if (a_real) {
    im_ = re_ * o.im_;
    re_ *= o.re_;
  } else {
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
  }
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("GaussianRational: division by zero");
  mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  *this *= o.conj();
  re_ /= norm;
  im_ /= norm;
  return *this;
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) return im_.get_str() + "*i";
  std::string s = "(" + re_.get_str();
  s += sgn(im_) > 0 ? "+" : "-";
  s += mpq_class(abs(im_)).get_str() + "*i)";
  return s;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

}  // namespace sdw
