#include "polyauto/exact.hpp"

#include <sstream>
#include <stdexcept>

namespace polyauto {

namespace {

// zeta^n reduced to the basis, for n = 0..11.
const std::array<std::array<int, 4>, 12>& power_table() {
  static const auto table = [] {
    std::array<std::array<int, 4>, 12> t{};
    std::array<int, 4> cur{1, 0, 0, 0};
    for (int n = 0; n < 12; ++n) {
      t[n] = cur;
      // multiply by zeta, then zeta^4 = zeta^2 - 1
      const int top = cur[3];
      cur = {0, cur[0], cur[1], cur[2]};
      cur[2] += top;
      cur[0] -= top;
    }
    return t;
  }();
  return table;
}

std::string rational_string(const mpq_class& q) { return q.get_str(); }

}  // namespace

ExactComplex::ExactComplex(long n) { c_[0] = n; }

ExactComplex::ExactComplex(const mpq_class& re) {
  c_[0] = re;
  c_[0].canonicalize();
}

ExactComplex::ExactComplex(const mpq_class& re, const mpq_class& im) {
  c_[0] = re;
  c_[3] = im;
  c_[0].canonicalize();
  c_[3].canonicalize();
}

ExactComplex ExactComplex::from_complex(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("cannot convert a non-finite value to an exact scalar");
  return {mpq_class(z.real()), mpq_class(z.imag())};
}

ExactComplex ExactComplex::root_of_unity(int k, int order) {
  if (order <= 0 || 12 % order != 0) throw std::invalid_argument("root order must divide 12");
  int n = (k * (12 / order)) % 12;
  if (n < 0) n += 12;
  ExactComplex r;
  for (int j = 0; j < 4; ++j) r.c_[j] = power_table()[n][j];
  return r;
}

ExactComplex ExactComplex::i() { return root_of_unity(3); }

bool ExactComplex::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

ExactComplex ExactComplex::galois(int k) const {
  ExactComplex r;
  for (int j = 0; j < 4; ++j) {
    if (c_[j] == 0) continue;
    const auto& z = power_table()[(j * k) % 12];
    for (int t = 0; t < 4; ++t)
      if (z[t] != 0) r.c_[t] += c_[j] * z[t];
  }
  return r;
}

ExactComplex ExactComplex::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in exact arithmetic");
  const ExactComplex rest = galois(5) * galois(7) * galois(11);
  const ExactComplex norm = *this * rest;
  const mpq_class n = norm.c_[0];
  ExactComplex r = rest;
  for (auto& q : r.c_) q /= n;
  return r;
}

ExactComplex ExactComplex::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  ExactComplex r(1);
  ExactComplex b = *this;
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

Complex ExactComplex::to_complex() const {
  const Complex z = std::polar(1.0, kPi / 6.0);
  const Complex basis[4] = {1.0, z, Complex(0.5, std::sqrt(3.0) / 2.0), Complex(0.0, 1.0)};
  Complex r = 0.0;
  for (int j = 0; j < 4; ++j) r += c_[j].get_d() * basis[j];
  return r;
}

std::string ExactComplex::to_string() const {
  std::ostringstream os;
  if (is_gaussian()) {
    os << rational_string(c_[0]);
    if (c_[3] != 0) os << (c_[3] > 0 ? "+" : "") << rational_string(c_[3]) << "i";
    return os.str();
  }
  os << "[";
  for (int j = 0; j < 4; ++j) os << (j ? ", " : "") << rational_string(c_[j]);
  os << "]_zeta12";
  return os.str();
}

ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
  ExactComplex r = a;
  r += b;
  return r;
}

ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
  ExactComplex r = a;
  r -= b;
  return r;
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& b) {
  for (int j = 0; j < 4; ++j)
    if (b.c_[j] != 0) c_[j] += b.c_[j];
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& b) {
  for (int j = 0; j < 4; ++j)
    if (b.c_[j] != 0) c_[j] -= b.c_[j];
  return *this;
}

ExactComplex ExactComplex::operator-() const {
  ExactComplex r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
  std::array<mpq_class, 7> p{};
  for (int i = 0; i < 4; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; j < 4; ++j)
      if (b.c_[j] != 0) p[i + j] += a.c_[i] * b.c_[j];
  }
  for (int k = 6; k >= 4; --k) {
    if (p[k] == 0) continue;
    p[k - 2] += p[k];
    p[k - 4] -= p[k];
  }
  ExactComplex r;
  for (int j = 0; j < 4; ++j) r.c_[j] = p[j];
  return r;
}

}  // namespace polyauto
