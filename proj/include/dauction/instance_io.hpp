#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "dauction/instance.hpp"

namespace dauction {

/// An instance file: the auction plus an optional reserve price.
///
/// Text layout (one record per line, `#` starts a comment line):
///
///     dauction-instance 1
///     k 3
///     reserve 40                 (optional)
///     value_cap 100              (optional)
///     seller_followers 0 1
///     buyers 2
///     buyer 0 value 30 followers 1
///     buyer 1 value 72 followers
///
/// The version line comes first. Header records may appear in any order but
/// each at most once; `buyers N` is followed by exactly N buyer records in id
/// order. serialize_instance emits the canonical form shown above.
struct InstanceDocument {
  AuctionInstance instance;
  std::optional<Money> reserve;

  bool operator==(const InstanceDocument&) const = default;
};

inline constexpr std::string_view kInstanceMagic = "dauction-instance";
inline constexpr int kInstanceVersion = 1;

/// Parses and validates. Errors are InputError with "line N: ..." context.
InstanceDocument parse_instance(std::string_view text);
std::string serialize_instance(const InstanceDocument& doc);
std::string serialize_instance(const AuctionInstance& instance);

InstanceDocument load_instance_file(const std::string& path);

}  // namespace dauction
