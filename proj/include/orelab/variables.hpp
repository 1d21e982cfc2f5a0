#pragma once

#include <compare>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace orelab {

/// An indeterminate of K = F(x0, x1, ...) or the polynomial variable t of A = K[t].
///
/// Indexed variables x_i carry index i. Named variables (t, and bare names
/// such as the single generator x of the asano preset) live above kNamedBase,
/// so the canonical term order puts every x_i before them.
struct VarId {
  static constexpr std::uint32_t kNamedBase = 1u << 31;

  std::uint32_t index = 0;

  bool is_indexed() const noexcept { return index < kNamedBase; }
  auto operator<=>(const VarId&) const = default;
};

/// Append-only name table. Lookups take a shared lock; a new name is an
/// exclusive append.
class VarRegistry {
 public:
  static VarRegistry& global();

  VarRegistry();

  /// Returns the variable with this name, registering it on first use.
  /// "x<digits>" maps to the indexed variable; `v` and `X` are reserved.
  VarId intern(std::string_view name);
  std::string name(VarId id) const;

  /// Largest x_i index seen so far plus one.
  std::uint32_t indexed_extent() const;
  void note_indexed(std::uint32_t index);

 private:
  mutable std::shared_mutex mu_;
  std::vector<std::string> named_;
  std::unordered_map<std::string, std::uint32_t> by_name_;
  std::uint32_t indexed_extent_ = 0;
};

VarId xvar(std::uint32_t i);
VarId tvar();
std::string var_name(VarId id);
bool is_reserved_name(std::string_view name);

struct VarIdHash {
  std::size_t operator()(VarId v) const noexcept { return std::hash<std::uint32_t>{}(v.index); }
};

}  // namespace orelab
