#ifndef HETMOD_QCOMPLEX_HPP
#define HETMOD_QCOMPLEX_HPP

#include "hetmod/geometry.hpp"

#include <string>
#include <vector>

namespace hetmod {

/// Q-valued (0,p)-form: κ in T*, γ in trace-free End(E), W in T.
struct QSection {
  int p = 0;
  VForm kappa;  ///< slots {Cov}
  VForm gamma;  ///< slots {Gauge, Gauge}, full r x r storage
  VForm w;      ///< slots {Con}
};

/// Which leg of Q a block acts on; used to index sub-bases.
enum class Leg { Kappa, Gamma, W };

class QComplex {
public:
  /// With diagonal set, D̄ keeps only its ∂̄ diagonal.
  explicit QComplex(const HomogeneousModel& m, bool diagonal = false);
  /// Uses the given connection for ∇⁺ instead of the Bismut connection.
  QComplex(const HomogeneousModel& m, ConnectionData plus, bool diagonal = false);

  const HomogeneousModel& model() const { return m_; }
  int n() const { return m_.n; }
  int rank() const { return m_.rank; }
  bool diagonal() const { return diagonal_; }

  size_t formDim(int p) const;
  size_t legDim(Leg leg) const;
  size_t dim(int p) const;
  /// Offset of a leg inside the full basis of degree p.
  size_t legOffset(Leg leg, int p) const;
  std::vector<std::string> labels(int p) const;

  QSection zero(int p) const;
  QSection fromVector(int p, const std::vector<Scalar>& v) const;
  std::vector<Scalar> toVector(const QSection& s) const;
  QSection basisSection(int p, size_t i) const;

  // Leg operators, raising degree by one unless noted.
  VForm dbarKappa(const VForm& kappa) const;
  VForm dbarGamma(const VForm& gamma) const;
  VForm dbarW(const VForm& w) const;
  VForm scriptFGamma(const VForm& gamma) const;  ///< 𝓕γ, T*-valued
  VForm scriptFW(const VForm& w) const;          ///< 𝓕W, End-valued
  VForm scriptT(const VForm& w) const;           ///< 𝓣W, T*-valued
  /// ∇⁺ along V_l (bar=false) or V̄_l (bar=true), degree preserving; l is 1-based.
  VForm nablaPlus(const VForm& w, int l, bool bar = false) const;
  /// 𝓡 with fixed derivative index l applied to a T-valued form.
  VForm curvatureLeg(const VForm& x, int l) const;
  VForm RNablaPlus(const VForm& w) const;

  QSection apply(const QSection& s) const;
  /// D̄ from degree p to p+1, symbolic in a.
  SMat dbarMatrix(int p) const;

  // Sub-operators assembled from the leg operators directly.
  SMat dbar1Matrix(int p) const;   ///< (γ,W) -> (γ,W)
  SMat dbar2Matrix(int p) const;   ///< (κ,γ) -> (κ,γ)
  SMat hMatrix(int p) const;       ///< (γ,W) -> κ
  SMat hStarMatrix(int p) const;   ///< W -> (κ,γ)
  SMat legDbarMatrix(Leg leg, int p) const;
  /// Both block reassemblies of D̄ agree with dbarMatrix.
  bool reassemblyHolds(int p) const;

  /// Hermitian Gram matrix of the degree-p basis.
  GMat gram(int p) const;
  GMat legGram(Leg leg, int p) const;
  /// Adjoint of D̄_{p-1} from the Gram matrices, maps degree p to p-1.
  GMat dstarFromGram(int p, const GaussRat& alpha0) const;
  /// Same operator from the pointwise formulas for each block.
  GMat dstarFromFormulas(int p, const GaussRat& alpha0) const;
  /// Pointwise adjoints, lowering degree by one.
  VForm scriptFStarKappa(const VForm& kappa) const;  ///< to End
  VForm scriptFStarGamma(const VForm& gamma) const;  ///< to T
  VForm scriptTStar(const VForm& kappa) const;        ///< to T
  VForm nablaRStar(const VForm& kappa) const;         ///< (∇⁺)*𝓡*, to T

  /// Operator W ↦ C(Φ)W with Φ = i∂∂̄ω + (a/2)tr R∧R − (a/2)tr F∧F, W of degree p to degree p+2 in the κ leg.
  SMat anomalyOperator(int p) const;

  /// Residual of the commutation identity for ∇⁺ and ∂̄ on the basis of T-valued (0,p)-forms.
  std::vector<VForm> commuteResidual(int p) const;

  // Ω-pairings; results are the coefficient of α^{1..n}∧ᾱ^{1..n}.
  Scalar pairQ1(const VForm& beta, const VForm& v, const VForm& kappa, const VForm& gamma) const;
  Scalar pairTStarT(const VForm& kappa, const VForm& w) const;
  /// ℋ and ℋ* as maps on legs.
  VForm applyH(const VForm& gamma, const VForm& w) const;
  std::pair<VForm, VForm> applyHStar(const VForm& w) const;

  const ConnectionData& chern() const { return chern_; }
  const ConnectionData& plus() const { return plus_; }
  const VForm& curvatureForms() const { return R_; }

private:
  HomogeneousModel m_;
  bool diagonal_ = false;
  ConnectionData chern_, plus_;
  VForm R_;
  Form T_;
  GMat Hinv_;
  std::vector<Mask> forms_(int p) const { return subsets(m_.n, p); }
  VForm formLegConnection(const VForm& x, int l, bool bar) const;
  Form epsStar(int k, const Form& f) const;
  Scalar top(const Form& f) const;
  GMat formGram(int p) const;
  GMat fiberGram(Leg leg) const;
  GaussRat T3(int l, int j, int k) const;  ///< T(V_l, V_j, V̄_k)
  GaussRat F2(int x, int y, int j, int k) const;  ///< F_{jk̄} entry (x,y)
  GaussRat Rc(int k, int j, int l, int mm) const;  ///< R_{k̄j}^l_m
  std::vector<std::vector<std::vector<std::vector<GaussRat>>>> Rcache_;
};

/// Trace-free basis of r x r matrices: E(l,m) for l != m, E(l,l) - E(l+1,l+1).
std::vector<GMat> traceFreeBasis(int r);
std::vector<std::string> traceFreeLabels(int r);

}  // namespace hetmod

#endif
