#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace igdep {

/// Interaction valence carried by a description node.
///
/// The two virtual kinds compose identically; the split only records whether
/// a virtual saturation should be read as a word-to-word dependency
/// (VirtualDep) or as a mere constraint on the syntactic context (VirtualCtx).
enum class Polarity { Positive, Negative, VirtualDep, VirtualCtx, Saturated };

inline constexpr Polarity kAllPolarities[] = {
    Polarity::Positive, Polarity::Negative, Polarity::VirtualDep,
    Polarity::VirtualCtx, Polarity::Saturated};

/// Result of composing polarities. std::nullopt is a failed fusion.
using Composition = std::optional<Polarity>;

constexpr bool is_virtual(Polarity p) noexcept {
  return p == Polarity::VirtualDep || p == Polarity::VirtualCtx;
}

/// Composition table. Virtual is neutral, + and - saturate each other,
/// every other pair fails. Two virtuals of different kinds give VirtualDep
/// so that the operation stays commutative.
Composition compose(Polarity a, Polarity b) noexcept;
Composition compose(Composition a, Polarity b) noexcept;

/// Left fold of compose. An empty input yields std::nullopt.
Composition compose_multiset(std::span<const Polarity> ps) noexcept;

/// True when the multiset is one saturated node plus virtuals, or one +/- pair
/// plus virtuals.
bool is_saturation_valid(std::span<const Polarity> ps) noexcept;

/// Grammar-file token: "+", "-", "~d", "~c", "=".
std::string_view to_token(Polarity p) noexcept;
Polarity polarity_from_token(std::string_view token); // throws UnknownPolarityToken
std::string_view to_name(Polarity p) noexcept;

} // namespace igdep
