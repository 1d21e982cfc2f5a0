#include "orelab/variables.hpp"

#include <algorithm>
#include <cctype>

#include "orelab/errors.hpp"

namespace orelab {

namespace {

bool parse_indexed(std::string_view name, std::uint32_t& index) {
  if (name.size() < 2 || name[0] != 'x') return false;
  std::uint64_t acc = 0;
  for (char c : name.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    acc = acc * 10 + static_cast<std::uint64_t>(c - '0');
    if (acc >= VarId::kNamedBase) return false;
  }
  index = static_cast<std::uint32_t>(acc);
  return true;
}

}  // namespace

bool is_reserved_name(std::string_view name) { return name == "v" || name == "X"; }

VarRegistry& VarRegistry::global() {
  static VarRegistry registry;
  return registry;
}

VarRegistry::VarRegistry() {
  named_.push_back("t");
  by_name_.emplace("t", 0);
}

VarId VarRegistry::intern(std::string_view name) {
  std::uint32_t index = 0;
  if (parse_indexed(name, index)) {
    note_indexed(index);
    return VarId{index};
  }
  if (is_reserved_name(name)) {
    throw DomainError("'" + std::string(name) + "' is reserved and cannot name a field variable");
  }
  {
    std::shared_lock lock(mu_);
    auto it = by_name_.find(std::string(name));
    if (it != by_name_.end()) return VarId{VarId::kNamedBase + it->second};
  }
  std::unique_lock lock(mu_);
  auto [it, inserted] = by_name_.emplace(std::string(name), static_cast<std::uint32_t>(named_.size()));
  if (inserted) named_.emplace_back(name);
  return VarId{VarId::kNamedBase + it->second};
}

std::string VarRegistry::name(VarId id) const {
  if (id.is_indexed()) return "x" + std::to_string(id.index);
  std::shared_lock lock(mu_);
  std::uint32_t slot = id.index - VarId::kNamedBase;
  if (slot >= named_.size()) throw DomainError("unknown variable id " + std::to_string(id.index));
  return named_[slot];
}

std::uint32_t VarRegistry::indexed_extent() const {
  std::shared_lock lock(mu_);
  return indexed_extent_;
}

void VarRegistry::note_indexed(std::uint32_t index) {
  {
    std::shared_lock lock(mu_);
    if (index < indexed_extent_) return;
  }
  std::unique_lock lock(mu_);
  indexed_extent_ = std::max(indexed_extent_, index + 1);
}

VarId xvar(std::uint32_t i) {
  VarRegistry::global().note_indexed(i);
  return VarId{i};
}

VarId tvar() { return VarId{VarId::kNamedBase}; }

std::string var_name(VarId id) { return VarRegistry::global().name(id); }

}  // namespace orelab
