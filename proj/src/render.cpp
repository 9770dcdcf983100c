#include "sdw/render.hpp"

#include <sstream>

namespace sdw {

namespace {

std::string factor_name(VarId v) {
  switch (v.kind()) {
    case VarKind::U: return "w" + std::to_string(v.family());
    case VarKind::Omega: {
      const std::string base = "w" + std::to_string(v.family());
      if (v.order() == 1) return base + "'";
      if (v.order() == 2) return base + "''";
      return base + "^(" + std::to_string(v.order()) + ")";
    }
    default: return v.name();
  }
}

void write_power(std::ostream& os, const std::string& base, int e, bool& first) {
  if (!first) os << "*";
  first = false;
  const bool wrap = base.find('^') != std::string::npos;
  if (e == 1) {
    os << base;
  } else {
    os << (wrap ? "(" + base + ")" : base) << "^" << (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
  }
}

void write_rational(std::ostream& os, const mpq_class& v) { os << v.get_str(); }

}  // namespace

std::string render_human(const Expr& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (const auto& t : e.terms()) {
    std::ostringstream mono;
    bool first = true;
    for (int k = 0; k < kNumVars; ++k) {
      const int ex = t.mono.slots[k];
      if (ex == 0) continue;
      const VarId v = VarId::from_index(k);
      if (v.kind() == VarKind::U) {
        if (ex % 2 == 0) {
          write_power(mono, factor_name(v), ex / 2, first);
        } else {
          write_power(mono, v.name(), ex, first);
        }
      } else {
        write_power(mono, factor_name(v), ex, first);
      }
    }
    if (t.mono.qpow() != 0) write_power(mono, "Q", -t.mono.qpow(), first);

    // Coefficient: real rationals print bare, complex ones in parentheses.
    const auto& c = t.coeff;
    bool negative = false;
    std::ostringstream coeff;
    if (c.is_real()) {
      negative = sgn(c.re()) < 0;
      mpq_class mag = abs(c.re());
      if (mag != 1 || first) write_rational(coeff, mag);
    } else {
      coeff << "(" << c.to_string() << ")";
    }
    if (first_term) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first_term = false;
    const std::string cs = coeff.str();
    const std::string ms = mono.str();
    os << cs;
    if (!cs.empty() && !ms.empty()) os << "*";
    os << ms;
  }
  return os.str();
}

}  // namespace sdw
