#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyauto/complex.hpp"
#include "polyauto/exact.hpp"

namespace polyauto {

using Exponent = std::vector<int>;

// Graded lexicographic order: total degree first, then lexicographic.
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

class MultiPoly {
 public:
  using Terms = std::map<Exponent, ExactComplex, GradedLex>;

  MultiPoly() = default;
  explicit MultiPoly(int nvars) : nvars_(nvars) {}
  static MultiPoly constant(int nvars, const ExactComplex& c);
  static MultiPoly variable(int nvars, int i);

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  int total_degree() const;
  int degree_in(int var) const;
  ExactComplex coefficient(const Exponent& e) const;

  void add_term(const Exponent& e, const ExactComplex& c);

  // Largest monomial in graded-lex order; requires a nonzero polynomial.
  std::pair<Exponent, ExactComplex> leading_term() const;

  MultiPoly scaled(const ExactComplex& s) const;
  // x_i -> s_i x_i for every variable.
  MultiPoly scale_variables(const std::vector<ExactComplex>& s) const;
  MultiPoly pow(int n) const;

  Complex evaluate(const ComplexVector& z) const;

  std::string to_string(const std::vector<std::string>& names = {}) const;

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& operator+=(const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  int nvars_ = 0;
  Terms terms_;
};

using PolyMap = std::vector<MultiPoly>;

PolyMap identity_map(int nvars);
// Coordinatewise f o g.
PolyMap multipoly_compose(const PolyMap& f, const PolyMap& g);
int total_degree(const PolyMap& f);
ComplexVector evaluate(const PolyMap& f, const ComplexVector& z);

struct MonomialWitness {
  int coordinate = -1;
  Exponent exponent;
  ExactComplex left;
  ExactComplex right;
};

// Lowest differing monomial (graded-lex) between a and b, if any.
std::optional<MonomialWitness> first_difference(const PolyMap& a, const PolyMap& b);
std::optional<MonomialWitness> first_difference(const MultiPoly& a, const MultiPoly& b, int coordinate);

}  // namespace polyauto
