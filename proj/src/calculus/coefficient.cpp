#include "hodgebench/calculus/coefficient.hpp"

#include "hodgebench/error.hpp"

namespace hb::calc {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  mpq_class den = o.re_ * o.re_ + o.im_ * o.im_;
  if (sgn(den) == 0) throw DomainError("division by exact zero");
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / den;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::to_string() const {
  if (is_real()) return re_.get_str();
  if (sgn(re_) == 0) {
    if (im_ == 1) return "i";
    if (im_ == -1) return "-1*i";
    return im_.get_str() + "*i";
  }
  mpq_class mag = abs(im_);
  std::string imag = (mag == 1) ? std::string("i") : mag.get_str() + "*i";
  return "(" + re_.get_str() + (sgn(im_) < 0 ? " - " : " + ") + imag + ")";
}

}  // namespace hb::calc
