#include "igdep/polarity.hpp"

#include "igdep/error.hpp"

namespace igdep {

Composition compose(Polarity a, Polarity b) noexcept {
  if (is_virtual(a) && is_virtual(b))
    return a == b ? a : Polarity::VirtualDep;
  if (is_virtual(a))
    return b;
  if (is_virtual(b))
    return a;
  if ((a == Polarity::Positive && b == Polarity::Negative) ||
      (a == Polarity::Negative && b == Polarity::Positive))
    return Polarity::Saturated;
  return std::nullopt;
}

Composition compose(Composition a, Polarity b) noexcept {
  if (!a)
    return std::nullopt;
  return compose(*a, b);
}

Composition compose_multiset(std::span<const Polarity> ps) noexcept {
  if (ps.empty())
    return std::nullopt;
  Composition acc = ps.front();
  for (auto p : ps.subspan(1)) {
    acc = compose(acc, p);
    if (!acc)
      break;
  }
  return acc;
}

bool is_saturation_valid(std::span<const Polarity> ps) noexcept {
  int pos = 0, neg = 0, sat = 0;
  for (auto p : ps) {
    switch (p) {
    case Polarity::Positive: ++pos; break;
    case Polarity::Negative: ++neg; break;
    case Polarity::Saturated: ++sat; break;
    default: break;
    }
  }
  return (sat == 1 && pos == 0 && neg == 0) || (sat == 0 && pos == 1 && neg == 1);
}

std::string_view to_token(Polarity p) noexcept {
  switch (p) {
  case Polarity::Positive: return "+";
  case Polarity::Negative: return "-";
  case Polarity::VirtualDep: return "~d";
  case Polarity::VirtualCtx: return "~c";
  case Polarity::Saturated: return "=";
  }
  return "?";
}

std::string_view to_name(Polarity p) noexcept {
  switch (p) {
  case Polarity::Positive: return "positive";
  case Polarity::Negative: return "negative";
  case Polarity::VirtualDep: return "virtual-dep";
  case Polarity::VirtualCtx: return "virtual-ctx";
  case Polarity::Saturated: return "saturated";
  }
  return "?";
}

Polarity polarity_from_token(std::string_view token) {
  for (auto p : kAllPolarities)
    if (to_token(p) == token)
      return p;
  throw UnknownPolarityToken(std::string(token));
}

} // namespace igdep
