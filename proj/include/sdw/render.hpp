#pragma once

#include <string>

#include "sdw/expr.hpp"

namespace sdw {

/// Human-readable form in the anisotropy notation: u_i^(2k) is shown as
/// w_i^k, om_i_1 as w_i', om_i_2 as w_i'', om_i_j as w_i^(j) for j > 2.
/// Terms keep the canonical order; Q-powers are shown as Q^-rho.
std::string render_human(const Expr& e);

}  // namespace sdw
