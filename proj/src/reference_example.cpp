#include "oqho/reference_example.hpp"

namespace oqho::reference_example {

std::vector<RationalEntry> transfer_entries() {
  return {
      {{1.0, 1.0}, {1.0, 0.0}},
      {{1.0, -1.0}, {1.0, 1.0}},
      {{1.0, 0.0}, {1.0, -1.0}},
      {{1.0, -1.0}, {1.0, 1.0}},
  };
}

PmParams pm_params() {
  PmParams p;
  p.D = RealMatrix::Identity(4, 4);
  p.R = RealMatrix::Zero(4, 4);
  p.R(0, 2) = p.R(2, 0) = 0.25;
  p.M = RealMatrix::Zero(4, 4);
  p.M(0, 0) = -0.5;
  p.M(1, 3) = 1.0;
  p.M(2, 2) = 0.5;
  p.M(3, 1) = -0.5;
  p.Theta = j_matrix(4);
  return p;
}

PmParams literal_m22_params() {
  PmParams p = pm_params();
  p.M(2, 2) = 0.25;
  return p;
}

ComplexMatrix s_matrix() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix h_doubled() {
  const Complex i(0.0, 1.0);
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  h(0, 2) = 0.5 * i;
  h(2, 0) = -0.5 * i;
  return h;
}

ComplexMatrix n_doubled() {
  const Complex i(0.0, 1.0);
  ComplexMatrix n = ComplexMatrix::Zero(4, 4);
  n(0, 2) = i;
  n(1, 1) = -1.5;
  n(1, 3) = 0.5;
  n(2, 0) = -i;
  n(3, 1) = 0.5;
  n(3, 3) = -1.5;
  return n;
}

std::vector<Complex> poles() { return {0.0, -1.0, -1.0, 1.0}; }

std::vector<Complex> zeros() { return {0.0, 1.0, 1.0, -1.0}; }

}  // namespace oqho::reference_example
