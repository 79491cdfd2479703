#ifndef HETMOD_CHARTLOCAL_HPP
#define HETMOD_CHARTLOCAL_HPP

#include "hetmod/geometry.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetmod {

struct ChartError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Polynomial in z_1..z_n, z̄_1..z̄_n; exponent vectors hold the z part first.
class Poly {
public:
  Poly() = default;
  explicit Poly(int n) : n_(n) {}
  static Poly constant(int n, const GaussRat& c);
  /// z_i or z̄_i, i 1-based.
  static Poly var(int n, int i, bool bar);
  static Poly monomial(int n, const std::vector<int>& exps, const GaussRat& c = GaussRat(1));

  int n() const { return n_; }
  const std::map<std::vector<int>, GaussRat>& terms() const { return t_; }
  bool isZero() const { return t_.empty(); }
  bool isConstant() const;
  GaussRat constantTerm() const;
  int degree() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const GaussRat& c);
  friend Poly operator+(Poly x, const Poly& y) { return x += y; }
  friend Poly operator-(Poly x, const Poly& y) { return x -= y; }
  friend Poly operator*(const GaussRat& c, Poly x) { return x *= c; }
  friend Poly operator*(const Poly& x, const Poly& y);
  Poly operator-() const { return GaussRat(-1) * *this; }
  friend bool operator==(const Poly& x, const Poly& y) { return x.t_ == y.t_; }

  Poly conj() const;
  /// ∂/∂z_i or ∂/∂z̄_i.
  Poly derivative(int i, bool bar) const;
  std::string str() const;

private:
  int n_ = 0;
  std::map<std::vector<int>, GaussRat> t_;
};

/// Form in dz, dz̄ with polynomial coefficients; keys as in Form, holomorphic legs first.
class ChartForm {
public:
  ChartForm() = default;
  explicit ChartForm(int n) : n_(n) {}
  static ChartForm function(const Poly& f);
  static ChartForm dz(int n, int i);
  static ChartForm dzb(int n, int i);

  int n() const { return n_; }
  const std::map<MultiIndex, Poly>& terms() const { return t_; }
  bool isZero() const { return t_.empty(); }
  void addTerm(MultiIndex k, const Poly& p);
  Poly coeff(MultiIndex k) const;

  ChartForm& operator+=(const ChartForm& o);
  ChartForm& operator-=(const ChartForm& o);
  ChartForm& operator*=(const Poly& f);
  friend ChartForm operator+(ChartForm x, const ChartForm& y) { return x += y; }
  friend ChartForm operator-(ChartForm x, const ChartForm& y) { return x -= y; }
  friend ChartForm operator*(const Poly& f, ChartForm x) { return x *= f; }
  friend ChartForm operator*(const GaussRat& c, ChartForm x) { return x *= Poly::constant(x.n_, c); }
  friend bool operator==(const ChartForm& x, const ChartForm& y) { return x.t_ == y.t_; }

  ChartForm conj() const;
  std::string str() const;

private:
  int n_ = 0;
  std::map<MultiIndex, Poly> t_;
};

ChartForm wedge(const ChartForm& x, const ChartForm& y);
ChartForm poly_dbar(const ChartForm& x);
ChartForm poly_del(const ChartForm& x);
ChartForm poly_d(const ChartForm& x);
/// η with ∂̄η = x for ∂̄-closed x of positive antiholomorphic degree (radial homotopy).
ChartForm dbar_homotopy(const ChartForm& x);

/// Parses "-dz3 + z1 dz2"-style linear combinations of dz_k with polynomial coefficients.
ChartForm parsePullback(const std::string& text, int n);

/// Polynomial chart of a model: pulled-back coframe and the dual frame.
struct Chart {
  int n = 0;
  std::vector<ChartForm> alpha, alphaBar;
  /// α^a = Σ_b P(a,b) dz^b and dz^b = Σ_a Pinv(b,a) α^a.
  std::vector<std::vector<Poly>> P, Pinv;
  ChartForm pullback(const Form& f) const;
};

/// Throws ChartError for models without a usable polynomial chart.
Chart make_chart(const HomogeneousModel& m);

using PolyMat = std::vector<std::vector<Poly>>;

/// Q-valued form on the chart: bundle indices in the invariant frames, form legs in dz̄.
struct ChartSection {
  int p = 0;
  std::vector<ChartForm> kappa, gamma, w;  ///< gamma stores r x r row-major
};

struct TrivializationData {
  GaussRat alphaPrime;
  /// End(E)-valued (1,0) potential with ∂̄A = F, r x r row-major.
  std::vector<ChartForm> A;
  /// A = Σ_j A_j α^j.
  std::vector<PolyMat> Aframe;
  /// τ̃_{ab} as functions, a the output index.
  std::vector<std::vector<Poly>> tauTilde;
  /// Right-hand side of the defining equation ∂̄τ̃_{ab} = T_{ab} + α′ tr(Γ_a R_b) − α′ tr(A_a F_b).
  std::vector<std::vector<ChartForm>> tauSource;
};

class ChartComplex {
public:
  explicit ChartComplex(const HomogeneousModel& m);
  ChartComplex(const HomogeneousModel& m, const GaussRat& alphaPrime);

  const HomogeneousModel& model() const { return m_; }
  const Chart& chart() const { return chart_; }
  int n() const { return m_.n; }
  int rank() const { return m_.rank; }
  const GaussRat& alphaPrime() const { return alpha_; }

  ChartSection zero(int p) const;
  /// Coefficient-wise ∂̄ in the holomorphic frames.
  ChartSection dbar(const ChartSection& s) const;
  ChartSection apply(const ChartSection& s) const;  ///< D̄

  /// F pulled back as an r x r row-major matrix of (1,1)-forms.
  std::vector<ChartForm> gaugeCurvature() const;
  /// Potential from the homotopy, optionally shifted.
  TrivializationData build(const std::vector<ChartForm>& shiftA = {},
                           const std::vector<std::vector<Poly>>& shiftTau = {}) const;

  ChartSection phi(const TrivializationData& t, const ChartSection& s) const;
  ChartSection phiInv(const TrivializationData& t, const ChartSection& s) const;
  /// D̄s − φ⁻¹∂̄φs.
  ChartSection residual(const TrivializationData& t, const ChartSection& s) const;

  /// Spanning family of sections with one monomial coefficient of degree ≤ maxDeg.
  std::vector<ChartSection> monomialSections(int maxDeg) const;

  /// Converts a coordinate (T*⊗T*) tensor Σ c_{bd} dz^b⊗dz^d to the α frame.
  std::vector<std::vector<Poly>> tensorToFrame(const std::vector<std::vector<Poly>>& coord) const;

private:
  HomogeneousModel m_;
  Chart chart_;
  GaussRat alpha_;
  Form T_;
  GaussRat T3(int l, int j, int k) const;
  GaussRat F2(int x, int y, int j, int k) const;
};

bool isZero(const ChartSection& s);
ChartSection operator-(const ChartSection& x, const ChartSection& y);

/// tr(A∧dA + ⅔ A∧A∧A) for an r x r row-major matrix of 1-forms.
ChartForm chern_simons(const std::vector<ChartForm>& A, int r);
/// dA + A∧A.
std::vector<ChartForm> full_curvature(const std::vector<ChartForm>& A, int r);
ChartForm trace_wedge(const std::vector<ChartForm>& x, const std::vector<ChartForm>& y, int r);

struct TrivializationReport {
  bool dbarA = false, defb = false, chernSimons = false, sections = false, inverse = false;
  size_t sectionsChecked = 0, sectionFailures = 0;
  bool pass() const { return dbarA && defb && chernSimons && sections && inverse; }
};
TrivializationReport verify_trivialization(const ChartComplex& c, const TrivializationData& t, int maxDeg);

struct TransitionReport {
  std::string label;
  bool holomorphic = false, cocycle = false;
  size_t sectionsChecked = 0;
  bool pass() const { return holomorphic && cocycle; }
};
/// ψ = φ₁∘φ₂⁻¹ commutes with ∂̄ and ψ₁₂∘ψ₂₁ = id on monomial sections.
TransitionReport transition_check(const ChartComplex& c, const TrivializationData& t1,
                                  const TrivializationData& t2, int maxDeg, const std::string& label);
/// The three standard pairs: identical data, A shifted by diag(dz1,−dz1), τ̃ shifted by dz1⊗dz2.
std::vector<TransitionReport> standard_transitions(const ChartComplex& c, int maxDeg);

}  // namespace hetmod

#endif
