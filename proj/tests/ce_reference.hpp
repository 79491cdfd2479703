#ifndef HETMOD_TEST_CE_REFERENCE_HPP
#define HETMOD_TEST_CE_REFERENCE_HPP

#include "hetmod/models.hpp"

#include <vector>

namespace testing_support {

using namespace hetmod;

/// Calabi–Eckmann Chern connection and curvature matrices written in the real coframe e1..e6.
struct CalabiEckmannReference {
  std::vector<std::vector<Form>> theta, R;
};

inline CalabiEckmannReference calabiEckmannReference(const HomogeneousModel& m) {
  std::vector<Form> e;
  for (int i = 0; i < 6; ++i) e.push_back(realCoframe(m, i));
  auto E = [&](int i) { return e[i - 1]; };
  Scalar I(GaussRat::I()), m2i(GaussRat(0, -2)), q(GaussRat::frac(1, 4)), h(GaussRat::frac(1, 2));
  CalabiEckmannReference r;
  // entry (1,2) is ½(e3 + i e2)
  r.theta = {{Form(3), h * (E(3) + I * E(2)), h * (I * E(6) - E(5))},
             {h * (I * E(2) - E(3)), h * m2i * E(1), Form(3)},
             {h * (E(5) + I * E(6)), Form(3), h * m2i * E(4)}};
  r.R = {{q * (m2i * wedge(E(2), E(3)) + m2i * wedge(E(5), E(6))), Form(3), Form(3)},
         {Form(3), q * m2i * wedge(E(2), E(3)), q * wedge(I * E(2) - E(3), I * E(6) - E(5))},
         {Form(3), q * -wedge(E(3) + I * E(2), E(5) + I * E(6)), q * m2i * wedge(E(5), E(6))}};
  return r;
}

}  // namespace testing_support

#endif
