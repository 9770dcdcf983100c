#pragma once

#include "sdw/calculus.hpp"
#include "sdw/expr.hpp"

namespace sdw {

/// Scalar density in zeta-coordinates: trig, zeta, u and omega variables over
/// powers of the registered quadratic form Q_{W,2n}.
struct Density {
  int n = 1;
  Expr expr;
  QForm q;
};

}  // namespace sdw
