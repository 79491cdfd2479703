#ifndef HETMOD_TEST_SUPPORT_HPP
#define HETMOD_TEST_SUPPORT_HPP

#include "hetmod/exterior.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace testing_support {

using namespace hetmod;

inline GaussRat randomGauss(std::mt19937& g, int range = 3) {
  std::uniform_int_distribution<int> d(-range, range), q(1, 4);
  return GaussRat::frac(d(g), q(g), d(g), q(g));
}

inline Scalar randomScalar(std::mt19937& g, int deg = 2) {
  std::vector<GaussRat> c;
  for (int k = 0; k <= deg; ++k) c.push_back(randomGauss(g));
  return Scalar(c);
}

/// Generator list of a basis form: holomorphic k -> k, antiholomorphic k -> n + k.
inline std::vector<int> generators(const MultiIndex& k, int n) {
  std::vector<int> g;
  for (int i : indices(k.h)) g.push_back(i);
  for (int i : indices(k.a)) g.push_back(n + i);
  return g;
}

/// Sign of the permutation sorting g, 0 on repeats; counts inversions.
inline int sortSign(const std::vector<int>& g) {
  int inv = 0;
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i + 1; j < g.size(); ++j) {
      if (g[i] == g[j]) return 0;
      if (g[i] > g[j]) ++inv;
    }
  return inv % 2 ? -1 : 1;
}

/// Wedge product by generator concatenation, independent of the library's crossing count.
inline Form bruteWedge(const Form& x, const Form& y) {
  const int n = x.n();
  Form out(n);
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms()) {
      auto g = generators(kx, n);
      auto gy = generators(ky, n);
      g.insert(g.end(), gy.begin(), gy.end());
      int s = sortSign(g);
      if (s == 0) continue;
      out.addTerm({kx.h | ky.h, kx.a | ky.a}, Scalar(s) * cx * cy);
    }
  return out;
}

inline Form randomForm(std::mt19937& g, int n, int terms = 4) {
  Form f(n);
  std::uniform_int_distribution<Mask> m(0, (Mask(1) << n) - 1);
  for (int t = 0; t < terms; ++t) f.addTerm({m(g), m(g)}, randomScalar(g, 1));
  return f;
}

}  // namespace testing_support

#endif
