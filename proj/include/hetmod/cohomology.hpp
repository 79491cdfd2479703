#ifndef HETMOD_COHOMOLOGY_HPP
#define HETMOD_COHOMOLOGY_HPP

#include "hetmod/qcomplex.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetmod {

/// Thrown when D̄² does not vanish at the requested α′.
struct NotAComplex : std::runtime_error {
  int degree;
  NotAComplex(int p, const std::string& what) : std::runtime_error(what), degree(p) {}
};

struct DegreeDims {
  int p = 0;
  size_t dim = 0, ker = 0, rank = 0, h = 0, harmonic = 0;
};

struct SymbolReport {
  size_t samples = 0;
  bool injective = true;
  std::optional<std::vector<GaussRat>> firstFailure;
};

struct CohomologyReport {
  std::string model;
  GaussRat alphaPrime;
  bool diagonal = false;
  std::vector<DegreeDims> degrees;
  std::vector<std::pair<int, int>> serrePairs;
  bool serre = true;
  long euler = 0;
};

/// D̄_p specialized at α0; empty matrix outside 0..n-1.
GMat dbarAt(const QComplex& q, int p, const GaussRat& alpha0);
/// Throws NotAComplex with the offending degree if D̄_{p+1}D̄_p ≠ 0 at α0.
void requireComplex(const QComplex& q, const GaussRat& alpha0);

/// (ker, rank, h) of degree p.
DegreeDims betti(const QComplex& q, int p, const GaussRat& alpha0);
size_t harmonic(const QComplex& q, int p, const GaussRat& alpha0);
CohomologyReport cohomology(const QComplex& q, const GaussRat& alpha0);

/// σ_ξ(D̄) on degree p, for ξ real with (0,1)-components xi in the ᾱ frame.
GMat symbolDbar(const QComplex& q, int p, const std::vector<GaussRat>& xi, const GaussRat& alpha0);
/// σ_ξ(D̄ + D̄*) on Q^{0,1}, stacked as (Q^{0,2}, Q^{0,0}).
GMat symbolMatrix(const QComplex& q, const std::vector<GaussRat>& xi, const GaussRat& alpha0);
/// Nonzero covectors with frame components in {0, ±1, ±i, 1±i}.
std::vector<std::vector<GaussRat>> symbolSamples(int n);
SymbolReport injectivityScan(const QComplex& q, const GaussRat& alpha0,
                             const std::vector<std::vector<GaussRat>>& extra = {});

struct HdualReport {
  size_t samples = 0, nontrivial = 0, failures = 0;
  bool pass() const { return failures == 0; }
};
/// (u, ℋ*w) = (−1)^{n−p}(ℋu, w) for random u ∈ ker D̄₁ of degree n−p−1 and w ∈ ker ∂̄ of degree p.
/// Both kernels are independent of α′, so the identity is checked symbolically in a.
HdualReport hdualCheck(const QComplex& q, size_t samples, unsigned seed = 1);

}  // namespace hetmod

#endif
