#pragma once

#include <cstdint>
#include <string_view>

namespace dform {

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// 64-bit FNV-1a hash of a component name.
std::uint64_t fnv1a64(std::string_view name);

/// Seed for a named component: splitmix64(root ^ fnv1a64(name)).
std::uint64_t derive_seed(std::uint64_t root, std::string_view name);

/// Seed for sample `index` of a stream: splitmix64(root + golden * (index + 1)).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

}  // namespace dform
