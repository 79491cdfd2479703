#ifndef HETMOD_GEOMETRY_HPP
#define HETMOD_GEOMETRY_HPP

#include "hetmod/exterior.hpp"
#include "hetmod/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hetmod {

/// Real Lie algebra data used to derive a complex coframe.
struct RealFrame {
  int dim = 0;
  /// de^i = sum over j<k of c[i][j][k] e^j ∧ e^k (0-based indices)
  std::vector<std::vector<std::vector<GaussRat>>> c;
  /// θ^a = sum_i P(a, i) e^i
  GMat P;
};

struct HomogeneousModel {
  std::string name;
  int n = 0;
  std::vector<Form> dalpha;  ///< dα^a, a = 1..n stored at a-1
  GMat h;                    ///< h(a,b) = h_{a b̄}
  Scalar omegaCoeff{1};
  int rank = 0;
  VForm F;  ///< End(E)-valued (1,1)-form, slots (Gauge, Gauge)
  GaussRat alphaPrime;
  bool alphaArbitrary = false;
  std::optional<RealFrame> real;
  /// Holomorphic coordinate expressions of α^a on a polynomial chart.
  std::vector<std::string> chartPullback;

  /// Exterior derivative of a basis form; filled by finalize().
  const Form& dBasis(MultiIndex k) const { return dcache_[k.h | (k.a << n)]; }
  void finalize();

private:
  std::vector<Form> dcache_;
};

/// Diagnostics from model validation; empty means valid.
std::vector<std::string> validate(const HomogeneousModel& m);

Form exterior_derivative(const Form& x, const HomogeneousModel& m);
Form del(const Form& x, const HomogeneousModel& m);
Form dbar(const Form& x, const HomogeneousModel& m);
/// Components of dx outside bidegrees (p+1,q) and (p,q+1).
Form nonIntegrablePart(const Form& x, const HomogeneousModel& m);

Form coframe(const HomogeneousModel& m, int A);  ///< A<n: α^{A+1}, else ᾱ^{A-n+1}
Form omega(const HomogeneousModel& m);
Form volumeForm(const HomogeneousModel& m);  ///< Ω
Form torsion(const HomogeneousModel& m);
/// The (2n)x(2n) complex bilinear extension of g on the frame {V, V̄}.
GMat fullMetric(const HomogeneousModel& m);
/// Coefficient of E_C in [E_A, E_B].
GaussRat bracket(const HomogeneousModel& m, int A, int B, int C);

enum class ConnKind { LeviCivita, Chern, Bismut };

/// ∇_{E_A} E_C = sum_B G(A,B,C) E_B over the complex frame E = {V_1..V_n, V̄_1..V̄_n}.
struct ConnectionData {
  int n = 0;
  ConnKind kind = ConnKind::LeviCivita;
  std::vector<GaussRat> G;
  GaussRat& operator()(int A, int B, int C) { return G[(A * 2 * n + B) * 2 * n + C]; }
  const GaussRat& operator()(int A, int B, int C) const { return G[(A * 2 * n + B) * 2 * n + C]; }
  /// Γ_a^b_c for ∇_{V_a}V_c (1-based indices)
  const GaussRat& hol(int a, int b, int c) const { return (*this)(a - 1, b - 1, c - 1); }
  /// μ_ā^b_c for ∇_{V̄_a}V_c (1-based indices)
  const GaussRat& antihol(int a, int b, int c) const { return (*this)(n + a - 1, b - 1, c - 1); }
  bool operator==(const ConnectionData& o) const { return G == o.G; }
};

ConnectionData levi_civita(const HomogeneousModel& m);
/// Chern connection from Levi-Civita and dω.
ConnectionData chern_connection(const HomogeneousModel& m);
/// Chern connection from ∂̄-compatibility and the metric.
ConnectionData chern_connection_dbar(const HomogeneousModel& m);
/// Bismut connection as the Chern connection shifted by the raised torsion.
ConnectionData bismut(const HomogeneousModel& m);
/// Bismut connection from Levi-Civita and d^cω.
ConnectionData bismut_from_levi_civita(const HomogeneousModel& m);
Form dc_omega(const HomogeneousModel& m);

/// Connection 1-forms θ^b_c on T^{1,0}, slots (Con, Cov).
VForm connectionForms(const ConnectionData& c, const HomogeneousModel& m);
/// Ω = dθ + θ∧θ on T^{1,0}.
VForm curvature(const ConnectionData& c, const HomogeneousModel& m);
/// R_{k̄j}^l_m = Ω^l_m(V̄_k, V_j); indices 1-based.
Scalar curvatureComponent(const VForm& R, int kbar, int j, int l, int mm);
/// T^j_{kl} with the antiholomorphic leg raised by h (1-based).
Scalar raisedTorsion(const HomogeneousModel& m, const Form& T, int j, int k, int l);
/// ∂̄ of a form with values in T/T*/gauge slots, frame corrections included.
VForm bundle_dbar(const VForm& v, const HomogeneousModel& m);
/// Interior product with V_j (1-based).
Form interiorHol(const Form& x, int j);

struct SystemReport {
  GaussRat alphaPrime;
  bool degenerate = false;
  bool alphaArbitrary = false;
  Form F1, F2;
  VForm D1;
  Form D2;
  bool passF1() const { return F1.isZero(); }
  bool passF2() const { return F2.isZero(); }
  bool passD1() const { return D1.isZero(); }
  bool passD2() const { return D2.isZero(); }
  bool pass() const { return passF1() && passF2() && passD1() && passD2(); }
};

/// 2i∂∂̄ω − a(tr F∧F − tr R∧R), symbolic in a.
Form anomalyResidual(const HomogeneousModel& m);
SystemReport check_heterotic_system(const HomogeneousModel& m);
SystemReport check_heterotic_system(const HomogeneousModel& m, const GaussRat& alpha0);

/// Residual of R_{k̄q}^m_l − R_{k̄l}^m_q − (∂̄T)_{k̄}^m_{lq}; zero means the identity holds.
VForm chern_symmetry_residual(const HomogeneousModel& m);

}  // namespace hetmod

#endif
