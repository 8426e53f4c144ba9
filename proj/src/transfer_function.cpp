#include "turretsim/transfer_function.hpp"

#include <cmath>
#include <stdexcept>

namespace turretsim {

TransferFunction TransferFunction::continuous(Polynomial num, Polynomial den) {
  if (den.is_zero())
    throw std::invalid_argument("transfer function denominator is zero");
  return TransferFunction{std::move(num), std::move(den),
                          TimeDomain::kContinuous, 0.0};
}

TransferFunction TransferFunction::discrete(Polynomial num, Polynomial den,
                                            double h) {
  if (den.is_zero())
    throw std::invalid_argument("transfer function denominator is zero");
  if (h <= 0.0)
    throw std::invalid_argument("discrete sample time must be positive");
  return TransferFunction{std::move(num), std::move(den), TimeDomain::kDiscrete,
                          h};
}

std::complex<double> freq_response(const TransferFunction& sys, double omega) {
  std::complex<double> point;
  if (sys.domain == TimeDomain::kContinuous) {
    point = std::complex<double>(0.0, omega);
  } else {
    const double theta = omega * sys.sample_time;
    point = std::complex<double>(std::cos(theta), std::sin(theta));
  }
  const std::complex<double> d = sys.den.eval(point);
  if (d == std::complex<double>(0.0, 0.0))
    throw std::domain_error("frequency response evaluated at a pole");
  return sys.num.eval(point) / d;
}

TransferFunction series(const TransferFunction& a, const TransferFunction& b) {
  if (a.domain != b.domain)
    throw std::invalid_argument("series: mixed continuous/discrete systems");
  if (a.domain == TimeDomain::kDiscrete && a.sample_time != b.sample_time)
    throw std::invalid_argument("series: sample times differ");
  TransferFunction out{a.num * b.num, a.den * b.den, a.domain, a.sample_time};
  return out;
}

UnityFeedback close_unity(const TransferFunction& loop) {
  if (!loop.proper())
    throw std::invalid_argument("close_unity: loop gain must be proper");
  const Polynomial closed_den = loop.den + loop.num;
  UnityFeedback fb;
  fb.closed = TransferFunction{loop.num, closed_den, loop.domain,
                               loop.sample_time};
  fb.error_tf = TransferFunction{loop.den, closed_den, loop.domain,
                                 loop.sample_time};
  return fb;
}

}  // namespace turretsim
