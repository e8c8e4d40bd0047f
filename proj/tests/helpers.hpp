#pragma once

#include <complex>
#include <initializer_list>

#include <gtest/gtest.h>

#include "mixest/errors.hpp"
#include "mixest/linalg.hpp"
#include "mixest/state.hpp"

namespace testing_util {

using mixest::Complex;
using mixest::ComplexMatrix;
using mixest::ComplexVector;

inline ComplexMatrix diag(std::initializer_list<double> v) {
  ComplexMatrix m = ComplexMatrix::Zero(v.size(), v.size());
  int i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

inline ComplexVector ket(int dim, int index) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

inline mixest::DensityMatrix state(const ComplexMatrix& m) { return mixest::validate_state(m); }

inline ComplexMatrix real2(double a, double b, double c, double d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace testing_util

/// Asserts that `stmt` throws mixest::Error with the given code.
#define EXPECT_MIXEST_ERROR(stmt, expected)                                  \
  do {                                                                       \
    try {                                                                    \
      stmt;                                                                  \
      ADD_FAILURE() << "expected " << mixest::to_string(expected);           \
    } catch (const mixest::Error& e) {                                       \
      EXPECT_EQ(e.code(), expected) << e.what();                             \
    }                                                                        \
  } while (0)
