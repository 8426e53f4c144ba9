#pragma once

#include <complex>

#include "turretsim/polynomial.hpp"

namespace turretsim {

enum class TimeDomain { kContinuous, kDiscrete };

// Rational transfer function, continuous (in s) or discrete (in z) with a
// sample time. All systems built in this project are proper.
struct TransferFunction {
  Polynomial num;
  Polynomial den;
  TimeDomain domain = TimeDomain::kContinuous;
  double sample_time = 0.0;  // seconds, > 0 iff discrete

  static TransferFunction continuous(Polynomial num, Polynomial den);
  static TransferFunction discrete(Polynomial num, Polynomial den, double h);

  bool proper() const { return num.degree() <= den.degree(); }
  // Free integrators (continuous) or poles at z=... not meaningful; for
  // continuous systems: poles at s=0 minus zeros at s=0.
  int system_type() const {
    return den.order_at_origin() - num.order_at_origin();
  }
};

// Evaluate the frequency response at omega [rad/s]: num/den at s = j*omega
// (continuous) or z = exp(j*omega*h) (discrete). Throws std::domain_error at
// a pole of the denominator (singular point).
std::complex<double> freq_response(const TransferFunction& sys, double omega);

// Series interconnection a*b. Both systems must share the time domain.
TransferFunction series(const TransferFunction& a, const TransferFunction& b);

struct UnityFeedback {
  TransferFunction closed;    // L / (1 + L)
  TransferFunction error_tf;  // 1 / (1 + L)
};

// Close a unity negative-feedback loop around the loop gain L.
UnityFeedback close_unity(const TransferFunction& loop);

}  // namespace turretsim
