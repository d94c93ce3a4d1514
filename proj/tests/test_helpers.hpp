#pragma once

#include <complex>

#include <Eigen/Dense>

#include "biphoton/coherency.hpp"
#include "biphoton/fock.hpp"

namespace biphoton::testing {

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// All six moments of a state straight from the operator oracle.
inline CoherencyMatrix oracle_k4(const FockState& fock) {
  auto moment = [&](Moment m) {
    const auto word = defining_word(m);
    return expect_moment(fock, word);
  };
  CoherencyMatrix k;
  k.A = moment(Moment::A).real();
  k.B = moment(Moment::B).real();
  k.C = moment(Moment::C).real();
  k.D = moment(Moment::D);
  k.E = moment(Moment::E);
  k.F = moment(Moment::F);
  return k;
}

inline double k4_distance(const CoherencyMatrix& x, const CoherencyMatrix& y) {
  return (x.matrix() - y.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace biphoton::testing
