#pragma once

#include <cmath>
#include <complex>

namespace treegraph {

/// Neumaier's variant of Kahan summation.
template <class Scalar>
class CompensatedSum {
 public:
  void add(Scalar x) {
    const Scalar t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.compensation_);
  }
  Scalar value() const { return sum_ + compensation_; }

 private:
  Scalar sum_ = 0;
  Scalar compensation_ = 0;
};

/// Component-wise compensation for complex sums.
template <class Real>
class CompensatedSum<std::complex<Real>> {
 public:
  void add(std::complex<Real> x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  void add(const CompensatedSum& other) {
    re_.add(other.re_);
    im_.add(other.im_);
  }
  std::complex<Real> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<Real> re_;
  CompensatedSum<Real> im_;
};

}  // namespace treegraph
