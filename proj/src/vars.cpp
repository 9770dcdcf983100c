#include "sdw/vars.hpp"

#include <stdexcept>

namespace sdw {

namespace {

constexpr int kOmegaBase = 3;
constexpr int kXiBase = 25;
constexpr int kZetaBase = 31;
constexpr int kMuBase = 37;

void check_range(int v, int lo, int hi, const char* what) {
  if (v < lo || v > hi) throw std::out_of_range(std::string("VarId: ") + what + " index out of range");
}

int parse_int(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("VarId: missing index");
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("VarId: bad index");
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

VarId VarId::u(int i) {
  check_range(i, 1, 3, "u");
  return VarId(i - 1);
}

VarId VarId::omega(int i, int j) {
  check_range(i, 1, 3, "omega family");
  check_range(j, 1, kMaxOmegaOrder, "omega order");
  return VarId(kOmegaBase + (i - 1) * kMaxOmegaOrder + (j - 1));
}

VarId VarId::xi(int k) {
  check_range(k, 1, kMaxXi, "xi");
  return VarId(kXiBase + k - 1);
}

VarId VarId::zeta(int k) {
  check_range(k, 1, kMaxXi, "zeta");
  return VarId(kZetaBase + k - 1);
}

VarId VarId::mu(int k) {
  check_range(k, 1, 2, "mu");
  return VarId(kMuBase + k - 1);
}

VarId VarId::from_index(int idx) {
  check_range(idx, 0, kNumVars - 1, "variable");
  return VarId(idx);
}

VarKind VarId::kind() const {
  if (idx_ < kOmegaBase) return VarKind::U;
  if (idx_ < 21) return VarKind::Omega;
  switch (idx_) {
    case 21: return VarKind::SinEta;
    case 22: return VarKind::CosEta;
    case 23: return VarKind::SinPsi;
    case 24: return VarKind::CosPsi;
    default: break;
  }
  if (idx_ < kZetaBase) return VarKind::Xi;
  if (idx_ < kMuBase) return VarKind::Zeta;
  if (idx_ < 39) return VarKind::Mu;
  return VarKind::Pi;
}

int VarId::family() const {
  switch (kind()) {
    case VarKind::U: return idx_ + 1;
    case VarKind::Omega: return (idx_ - kOmegaBase) / kMaxOmegaOrder + 1;
    case VarKind::Xi: return idx_ - kXiBase + 1;
    case VarKind::Zeta: return idx_ - kZetaBase + 1;
    case VarKind::Mu: return idx_ - kMuBase + 1;
    default: return 0;
  }
}

int VarId::order() const {
  return kind() == VarKind::Omega ? (idx_ - kOmegaBase) % kMaxOmegaOrder + 1 : 0;
}

std::string VarId::name() const {
  switch (kind()) {
    case VarKind::U: return "u" + std::to_string(family());
    case VarKind::Omega: return "om" + std::to_string(family()) + "_" + std::to_string(order());
    case VarKind::SinEta: return "sin_eta";
    case VarKind::CosEta: return "cos_eta";
    case VarKind::SinPsi: return "sin_psi";
    case VarKind::CosPsi: return "cos_psi";
    case VarKind::Xi: return "xi" + std::to_string(family());
    case VarKind::Zeta: return "zeta" + std::to_string(family());
    case VarKind::Mu: return "mu" + std::to_string(family());
    case VarKind::Pi: return "pi";
  }
  return "?";
}

VarId VarId::from_name(std::string_view name) {
  auto starts = [&](std::string_view p) { return name.substr(0, p.size()) == p; };
  try {
    if (name == "sin_eta") return sin_eta();
    if (name == "cos_eta") return cos_eta();
    if (name == "sin_psi") return sin_psi();
    if (name == "cos_psi") return cos_psi();
    if (name == "pi") return pi();
    if (starts("zeta")) return zeta(parse_int(name.substr(4)));
    if (starts("xi")) return xi(parse_int(name.substr(2)));
    if (starts("mu")) return mu(parse_int(name.substr(2)));
    if (starts("om")) {
      auto rest = name.substr(2);
      auto us = rest.find('_');
      if (us == std::string_view::npos) throw std::invalid_argument("VarId: bad omega name");
      return omega(parse_int(rest.substr(0, us)), parse_int(rest.substr(us + 1)));
    }
    if (starts("u")) return u(parse_int(name.substr(1)));
  } catch (const std::out_of_range& e) {
    throw std::invalid_argument(std::string("VarId: ") + e.what());
  }
  throw std::invalid_argument("VarId: unknown variable '" + std::string(name) + "'");
}

}  // namespace sdw
