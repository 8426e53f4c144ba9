#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace turretsim {

// Real polynomial, coefficients stored highest degree first.
// Leading coefficient is nonzero unless the polynomial is identically zero.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  Polynomial(std::initializer_list<double> coeffs);
  explicit Polynomial(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  double leading() const { return coeffs_.front(); }

  // Number of roots at the origin (trailing zero coefficients).
  int order_at_origin() const;

  double eval(double x) const;
  std::complex<double> eval(std::complex<double> x) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(double factor) const;

  bool operator==(const Polynomial& other) const = default;

 private:
  void trim();
  std::vector<double> coeffs_;
};

}  // namespace turretsim
