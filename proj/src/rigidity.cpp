#include "polyauto/rigidity.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "polyauto/errors.hpp"
#include "polyauto/parallel.hpp"

namespace polyauto {

namespace {

constexpr double kRelationTol = 1e-12;

std::string format_witness(const MonomialWitness& w) {
  std::ostringstream out;
  out << "coordinate " << w.coordinate << ", monomial [";
  for (size_t i = 0; i < w.exponent.size(); ++i) out << (i ? "," : "") << w.exponent[i];
  out << "]: " << w.left.to_string() << " vs " << w.right.to_string();
  return out.str();
}

PolyMap scale_rows(const DiagonalMap& C, const PolyMap& f) {
  PolyMap r = f;
  for (size_t i = 0; i < r.size(); ++i) r[i] = r[i].scaled(C.entries()[i]);
  return r;
}

CoefficientRelation relation(std::string name, double left, double right) {
  const bool pass = std::abs(left - right) <= kRelationTol * std::max(1.0, std::max(std::abs(left), std::abs(right)));
  return {std::move(name), left, right, pass};
}

void add_delta(CoefficientRelationReport& rep, std::string name, const ExactComplex& delta) {
  rep.delta_names.push_back(std::move(name));
  rep.deltas.push_back(delta);
  rep.delta_moduli.push_back(std::abs(delta.to_complex()));
  rep.delta_unimodular.push_back(delta.is_unimodular());
}

}  // namespace

const char* to_string(Verdict v) { return v == Verdict::ExactEqual ? "ExactEqual" : "Mismatch"; }

std::string CommutationCertificate::describe() const {
  std::ostringstream out;
  out << to_string(verdict) << " C=(";
  for (int i = 0; i < C.size(); ++i) out << (i ? ", " : "") << C.entries()[i].to_string();
  out << ")";
  if (witness) out << " witness: " << format_witness(*witness);
  if (second_form_checked) out << " second form " << (second_form_equal ? "equal" : "differs");
  return out.str();
}

CommutationOracle::CommutationOracle(PolyMap A, PolyMap B) : A_(std::move(A)), B_(std::move(B)) {
  if (A_.empty() || A_.size() != B_.size()) throw ArityMismatch("commutation: maps have different dimensions");
  for (const auto& f : A_)
    if (f.nvars() != static_cast<int>(A_.size())) throw ArityMismatch("commutation: map is not a self-map");
  BA_ = multipoly_compose(B_, A_);
  AB_ = multipoly_compose(A_, B_);
}

bool CommutationOracle::coordinate_matches(int i, const ExactComplex& c) const { return AB_[i].scaled(c) == BA_[i]; }

CommutationCertificate CommutationOracle::check(const DiagonalMap& C, bool second_form) const {
  if (C.size() != static_cast<int>(A_.size())) throw ArityMismatch("commutation: diagonal has the wrong size");
  CommutationCertificate cert;
  cert.C = C;
  cert.unimodular = C.unimodular();
  cert.witness = first_difference(BA_, scale_rows(C, AB_));
  cert.verdict = cert.witness ? Verdict::Mismatch : Verdict::ExactEqual;
  if (second_form) {
    cert.second_form_checked = true;
    cert.second_witness = first_difference(BA_, multipoly_compose(AB_, C.as_polymap()));
    cert.second_form_equal = !cert.second_witness;
  }
  return cert;
}

CommutationCertificate verify_commutation(const PolyMap& A, const PolyMap& B, const DiagonalMap& C, bool second_form) {
  return CommutationOracle(A, B).check(C, second_form);
}

DiagonalSweep sweep_root_diagonals(const CommutationOracle& oracle, int order) {
  if (order < 1 || 12 % order != 0) throw InputError("root grid order must divide 12");
  const int k = static_cast<int>(oracle.A().size());
  DiagonalSweep s;
  s.order = order;
  s.coordinate_hits.assign(k, std::vector<bool>(order, false));
  std::vector<ExactComplex> roots;
  for (int r = 0; r < order; ++r) roots.push_back(ExactComplex::root_of_unity(r * (12 / order), 12));
  for (int i = 0; i < k; ++i)
    for (int r = 0; r < order; ++r) s.coordinate_hits[i][r] = oracle.coordinate_matches(i, roots[r]);

  std::vector<int> idx(k, 0);
  for (;;) {
    ++s.candidates;
    bool all = true;
    for (int i = 0; i < k && all; ++i) all = s.coordinate_hits[i][idx[i]];
    if (all) {
      ++s.matches;
      if (s.solutions.size() < 16) {
        std::vector<ExactComplex> e;
        for (int i = 0; i < k; ++i) e.push_back(roots[idx[i]]);
        s.solutions.emplace_back(std::move(e));
      }
    }
    int pos = k - 1;
    while (pos >= 0 && ++idx[pos] == order) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return s;
}

std::optional<DiagonalSolution> solve_diagonal(const CommutationOracle& oracle) {
  std::vector<ExactComplex> entries;
  for (size_t i = 0; i < oracle.BA().size(); ++i) {
    const MultiPoly& ba = oracle.BA()[i];
    const MultiPoly& ab = oracle.AB()[i];
    if (ba.is_zero() || ab.is_zero()) return std::nullopt;
    const auto [eb, cb] = ba.leading_term();
    const auto [ea, ca] = ab.leading_term();
    if (eb != ea) return std::nullopt;
    entries.push_back(cb / ca);
  }
  DiagonalSolution sol{DiagonalMap(entries), {}, {}, false};
  sol.certificate = oracle.check(sol.C, true);
  if (!sol.certificate.exact_equal()) return std::nullopt;
  sol.unimodular = sol.certificate.unimodular;
  sol.second_form_equal = sol.certificate.second_form_equal;
  return sol;
}

std::optional<DiagonalSolution> solve_diagonal(const PolyMap& A, const PolyMap& B) {
  return solve_diagonal(CommutationOracle(A, B));
}

bool has_shift_block_shape(const DiagonalMap& C, int k, int nu) {
  if (C.size() != k) return false;
  const auto& e = C.entries();
  for (int i = 1; i < k - nu; ++i)
    if (e[i] != e[0]) return false;
  for (int i = k - nu + 1; i < k; ++i)
    if (e[i] != e[k - nu]) return false;
  return true;
}

bool CoefficientRelationReport::pass() const {
  for (const auto& r : relations)
    if (!r.pass) return false;
  for (double m : delta_moduli)
    if (!(std::abs(m - 1.0) <= kRelationTol)) return false;
  return true;
}

CoefficientRelationReport check_coefficient_relations(const ShiftLikeMap& S, const ShiftLikeMap& T) {
  if (S.k() != T.k() || S.nu() != T.nu()) throw InputError("coefficient relations need equal k and nu");
  const int dp = S.degree(), dq = T.degree();
  const ExactComplex cp = ExactComplex::from_complex(S.leading());
  const ExactComplex cq = ExactComplex::from_complex(T.leading());
  const ExactComplex a = ExactComplex::from_complex(S.a());
  const ExactComplex b = ExactComplex::from_complex(T.a());
  CoefficientRelationReport rep;
  rep.relations.push_back(relation("log|c_p|/(d_p-1) = log|c_q|/(d_q-1)", std::log(std::abs(S.leading())) / (dp - 1),
                                   std::log(std::abs(T.leading())) / (dq - 1)));
  rep.relations.push_back(relation("log|c_p/a|/(d_p-1) = log|c_q/b|/(d_q-1)",
                                   std::log(std::abs(S.leading() / S.a())) / (dp - 1),
                                   std::log(std::abs(T.leading() / T.a())) / (dq - 1)));
  add_delta(rep, "delta1 = c_p^(d_q-1) / c_q^(d_p-1)", cp.pow(dq - 1) / cq.pow(dp - 1));
  add_delta(rep, "delta2 = (c_p/a)^(d_q-1) / (c_q/b)^(d_p-1)", (cp / a).pow(dq - 1) / (cq / b).pow(dp - 1));
  return rep;
}

CoefficientRelationReport check_coefficient_relations(const StructureConstants& H, const StructureConstants& F) {
  const auto weight = [](const StructureConstants& s) {
    return static_cast<double>(s.d) / (static_cast<double>(s.dtilde) * (s.d - 1));
  };
  CoefficientRelationReport rep;
  rep.relations.push_back(relation("d log|c_H| / (dtilde (d-1))", weight(H) * std::log(std::abs(H.c_H)),
                                   weight(F) * std::log(std::abs(F.c_H))));
  rep.relations.push_back(relation("d log|c_H'| / (dtilde (d-1))", weight(H) * std::log(std::abs(H.c_H_prime)),
                                   weight(F) * std::log(std::abs(F.c_H_prime))));
  // Integer exponents clearing the weights: |c_H|^eH = |c_F|^eF.
  const int eH = H.d * F.dtilde * (F.d - 1);
  const int eF = F.d * H.dtilde * (H.d - 1);
  const auto g = std::gcd(eH, eF);
  add_delta(rep, "c_H^a / c_F^b", ExactComplex::from_complex(H.c_H).pow(eH / g) /
                                      ExactComplex::from_complex(F.c_H).pow(eF / g));
  add_delta(rep, "c_H'^a / c_F'^b", ExactComplex::from_complex(H.c_H_prime).pow(eH / g) /
                                        ExactComplex::from_complex(F.c_H_prime).pow(eF / g));
  return rep;
}

GridComparison compare_green_on_grid(const AnyMap& A, const AnyMap& B, const SliceSpec& slice, Direction dir,
                                     GridOptions opt) {
  if (dimension(A) != dimension(B)) throw ArityMismatch("grid comparison needs maps of equal dimension");
  if (slice.dim != dimension(A)) throw ArityMismatch("slice dimension does not match the maps");
  slice.validate();
  GridComparison out;
  double R = opt.R;
  if (R <= 0.0) {
    R = std::max(OrbitEngine(A, dir).R(), OrbitEngine(B, dir).R());
  }
  out.R = R;

  const double lA = std::log(static_cast<double>(green_degree(A)));
  const double lB = std::log(static_cast<double>(green_degree(B)));
  const double lmin = std::min(lA, lB);
  out.horizon_A = static_cast<int>(std::lround(opt.horizon * lmin / lA));
  out.horizon_B = static_cast<int>(std::lround(opt.horizon * lmin / lB));

  OrbitOptions oa, ob;
  oa.R = ob.R = R;
  oa.horizon = out.horizon_A;
  ob.horizon = out.horizon_B;
  const OrbitEngine ea(A, dir, oa), eb(B, dir, ob);

  // The higher-degree map takes the requested depth; the other matches its normalization.
  const bool a_ref = lA >= lB;
  const OrbitEngine& ref = a_ref ? ea : eb;
  const OrbitEngine& other = a_ref ? eb : ea;
  const double target = ref.log_normalization(opt.depth);
  int matched = -1;
  for (int n = 0; n <= 64 * std::max(1, opt.depth); ++n) {
    if (std::abs(other.log_normalization(n) - target) <= 1e-9 * std::max(1.0, target)) {
      matched = n;
      break;
    }
  }
  if (matched < 0) throw InputError("Green normalizations of the two maps cannot be aligned");
  out.depth_A = a_ref ? opt.depth : matched;
  out.depth_B = a_ref ? matched : opt.depth;
  std::ostringstream al;
  al << "depth " << out.depth_A << " of A against depth " << out.depth_B << " of B (log normalization " << target
     << ")";
  out.alignment = al.str();

  struct Pixel {
    OrbitClass::Tag ca, cb;
    bool resolved = false;
    double diff = 0.0;
  };
  std::vector<Pixel> px(slice.pixels());
  parallel_for(px.size(), resolve_threads(opt.threads), [&](std::size_t i) {
    const ComplexVector P = slice.point(i);
    const OrbitRecord ra = ea.trace(P, out.depth_A);
    const OrbitRecord rb = eb.trace(P, out.depth_B);
    Pixel& p = px[i];
    p.ca = ra.cls.tag;
    p.cb = rb.cls.tag;
    if (p.ca == OrbitClass::Tag::Escaping && p.cb == OrbitClass::Tag::Escaping && ra.length() > out.depth_A &&
        rb.length() > out.depth_B) {
      p.resolved = true;
      p.diff = std::abs(green_at(ea, ra, out.depth_A) - green_at(eb, rb, out.depth_B));
    } else if (p.ca == OrbitClass::Tag::Bounded && p.cb == OrbitClass::Tag::Bounded) {
      p.resolved = true;
    }
  });

  out.pixels = px.size();
  std::size_t agree = 0;
  for (std::size_t i = 0; i < px.size(); ++i) {
    const Pixel& p = px[i];
    if (p.ca == OrbitClass::Tag::Undetermined || p.cb == OrbitClass::Tag::Undetermined) {
      ++out.undetermined;
    } else if (p.ca == p.cb) {
      ++agree;
    } else {
      ++out.disagreements;
      if (out.witnesses.size() < 10) out.witnesses.push_back(slice.point(i));
    }
    if (p.resolved) {
      ++out.resolved;
      if (!out.worst_point || p.diff > out.sup_discrepancy) {
        out.sup_discrepancy = p.diff;
        out.worst_point = slice.point(i);
      }
    }
  }
  const std::size_t counted = out.pixels - out.undetermined;
  out.agreement = counted ? static_cast<double>(agree) / counted : 1.0;
  return out;
}

}  // namespace polyauto
