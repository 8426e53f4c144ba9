#include "turretsim/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace turretsim {

Polynomial::Polynomial(std::initializer_list<double> coeffs)
    : coeffs_(coeffs) {
  if (coeffs_.empty()) coeffs_ = {0.0};
  trim();
}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_ = {0.0};
  trim();
}

void Polynomial::trim() {
  std::size_t lead = 0;
  while (lead + 1 < coeffs_.size() && coeffs_[lead] == 0.0) ++lead;
  if (lead > 0) coeffs_.erase(coeffs_.begin(), coeffs_.begin() + lead);
}

int Polynomial::order_at_origin() const {
  if (is_zero()) return 0;
  int k = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend() && *it == 0.0; ++it) ++k;
  return k;
}

double Polynomial::eval(double x) const {
  double r = 0.0;
  for (double c : coeffs_) r = r * x + c;
  return r;
}

std::complex<double> Polynomial::eval(std::complex<double> x) const {
  std::complex<double> r = 0.0;
  for (double c : coeffs_) r = r * x + c;
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  const auto& a = coeffs_;
  const auto& b = other.coeffs_;
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  std::copy(a.rbegin(), a.rend(), out.rbegin());
  auto it = out.rbegin();
  for (auto bit = b.rbegin(); bit != b.rend(); ++bit, ++it) *it += *bit;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other.scaled(-1.0);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (is_zero() || other.is_zero()) return Polynomial{};
  const auto& a = coeffs_;
  const auto& b = other.coeffs_;
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::scaled(double factor) const {
  std::vector<double> out = coeffs_;
  for (double& c : out) c *= factor;
  return Polynomial(std::move(out));
}

}  // namespace turretsim
