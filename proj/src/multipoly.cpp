#include "polyauto/multipoly.hpp"

#include <numeric>
#include <sstream>

#include "polyauto/errors.hpp"

namespace polyauto {

namespace {

int degree_of(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

bool GradedLex::operator()(const Exponent& a, const Exponent& b) const {
  const int da = degree_of(a);
  const int db = degree_of(b);
  if (da != db) return da < db;
  return a < b;
}

MultiPoly MultiPoly::constant(int nvars, const ExactComplex& c) {
  MultiPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
  MultiPoly p(nvars);
  Exponent e(nvars, 0);
  e.at(i) = 1;
  p.add_term(e, ExactComplex(1));
  return p;
}

int MultiPoly::total_degree() const {
  return terms_.empty() ? 0 : degree_of(terms_.rbegin()->first);
}

int MultiPoly::degree_in(int var) const {
  int m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, e.at(var));
  return m;
}

ExactComplex MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? ExactComplex() : it->second;
}

void MultiPoly::add_term(const Exponent& e, const ExactComplex& c) {
  if (static_cast<int>(e.size()) != nvars_) throw ArityMismatch("monomial arity does not match polynomial");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::pair<Exponent, ExactComplex> MultiPoly::leading_term() const {
  if (terms_.empty()) throw std::domain_error("leading term of the zero polynomial");
  return *terms_.rbegin();
}

MultiPoly MultiPoly::scaled(const ExactComplex& s) const {
  MultiPoly r(nvars_);
  if (s.is_zero()) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, c * s);
  return r;
}

MultiPoly MultiPoly::scale_variables(const std::vector<ExactComplex>& s) const {
  if (static_cast<int>(s.size()) != nvars_) throw ArityMismatch("scale vector arity mismatch");
  std::vector<std::vector<ExactComplex>> powers(nvars_);
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    ExactComplex f = c;
    for (int v = 0; v < nvars_; ++v) {
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(ExactComplex(1));
      while (static_cast<int>(pw.size()) <= e[v]) pw.push_back(pw.back() * s[v]);
      if (e[v] > 0) f *= pw[e[v]];
    }
    r.add_term(e, f);
  }
  return r;
}

MultiPoly MultiPoly::pow(int n) const {
  if (n < 0) throw std::domain_error("negative polynomial power");
  MultiPoly r = constant(nvars_, ExactComplex(1));
  MultiPoly b = *this;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

Complex MultiPoly::evaluate(const ComplexVector& z) const {
  if (static_cast<int>(z.size()) != nvars_) throw ArityMismatch("evaluation point arity mismatch");
  Complex s = 0.0;
  for (const auto& [e, c] : terms_) {
    Complex t = c.to_complex();
    for (int v = 0; v < nvars_; ++v)
      if (e[v]) t *= ipow(z[v], e[v]);
    s += t;
  }
  return s;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.to_string() << ")";
    for (int v = 0; v < nvars_; ++v) {
      if (!it->first[v]) continue;
      os << "*" << (v < static_cast<int>(names.size()) ? names[v] : "z" + std::to_string(v + 1));
      if (it->first[v] > 1) os << "^" << it->first[v];
    }
  }
  return os.str();
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& b) {
  if (b.nvars_ != nvars_) throw ArityMismatch("adding polynomials in different variable counts");
  for (const auto& [e, c] : b.terms_) add_term(e, c);
  return *this;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r = a;
  r += b;
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r = a;
  r += b.scaled(ExactComplex(-1));
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) throw ArityMismatch("multiplying polynomials in different variable counts");
  MultiPoly r(a.nvars_);
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int v = 0; v < a.nvars_; ++v) e[v] = ea[v] + eb[v];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

PolyMap identity_map(int nvars) {
  PolyMap m;
  for (int i = 0; i < nvars; ++i) m.push_back(MultiPoly::variable(nvars, i));
  return m;
}

PolyMap multipoly_compose(const PolyMap& f, const PolyMap& g) {
  if (f.empty()) return {};
  const int arity = f.front().nvars();
  if (arity != static_cast<int>(g.size())) throw ArityMismatch("compose: arity of f must equal length of g");
  const int out_vars = g.empty() ? 0 : g.front().nvars();
  std::vector<std::vector<MultiPoly>> powers(arity);
  auto power_of = [&](int v, int n) -> const MultiPoly& {
    auto& pw = powers[v];
    if (pw.empty()) pw.push_back(MultiPoly::constant(out_vars, ExactComplex(1)));
    while (static_cast<int>(pw.size()) <= n) pw.push_back(pw.back() * g[v]);
    return pw[n];
  };
  PolyMap out;
  for (const auto& fi : f) {
    if (fi.nvars() != arity) throw ArityMismatch("compose: inconsistent arity in f");
    MultiPoly acc(out_vars);
    for (const auto& [e, c] : fi.terms()) {
      MultiPoly t = MultiPoly::constant(out_vars, c);
      for (int v = 0; v < arity; ++v)
        if (e[v]) t = t * power_of(v, e[v]);
      acc += t;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

int total_degree(const PolyMap& f) {
  int m = 0;
  for (const auto& p : f) m = std::max(m, p.total_degree());
  return m;
}

ComplexVector evaluate(const PolyMap& f, const ComplexVector& z) {
  ComplexVector r;
  for (const auto& p : f) r.push_back(p.evaluate(z));
  return r;
}

std::optional<MonomialWitness> first_difference(const MultiPoly& a, const MultiPoly& b, int coordinate) {
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  GradedLex less;
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && less(ia->first, ib->first)))
      return MonomialWitness{coordinate, ia->first, ia->second, ExactComplex()};
    if (ia == a.terms().end() || less(ib->first, ia->first))
      return MonomialWitness{coordinate, ib->first, ExactComplex(), ib->second};
    if (ia->second != ib->second) return MonomialWitness{coordinate, ia->first, ia->second, ib->second};
    ++ia;
    ++ib;
  }
  return std::nullopt;
}

std::optional<MonomialWitness> first_difference(const PolyMap& a, const PolyMap& b) {
  if (a.size() != b.size()) throw ArityMismatch("comparing maps of different dimension");
  std::optional<MonomialWitness> best;
  GradedLex less;
  for (size_t i = 0; i < a.size(); ++i) {
    auto w = first_difference(a[i], b[i], static_cast<int>(i));
    if (w && (!best || less(w->exponent, best->exponent))) best = w;
  }
  return best;
}

}  // namespace polyauto
