#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace dauction {

/// Money is exact integer arithmetic throughout; ties and price thresholds
/// must compare deterministically.
using Money = std::int64_t;

/// Dense buyer index 0..n-1. The seller is never a buyer; see kSeller.
using BuyerId = std::int32_t;

inline constexpr BuyerId kSeller = -1;

/// Raised for malformed or inconsistent input: dangling ids, self-follows,
/// duplicate followers, negative values, forwarding outside the true follower
/// set, syntax errors in instance files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation is asked about a buyer outside its domain,
/// e.g. critical parents of an unconnected buyer.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an exhaustive enumeration would exceed its configured cap.
class EnumerationTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A price threshold: either a finite amount or +infinity (no unit left).
class Price {
 public:
  constexpr Price() = default;

  static constexpr Price infinite() {
    Price p;
    p.infinite_ = true;
    return p;
  }
  static constexpr Price of(Money amount) {
    Price p;
    p.amount_ = amount;
    return p;
  }

  constexpr bool is_infinite() const { return infinite_; }

  /// Amount of a finite price. Throws DomainError on the infinite price.
  Money amount() const {
    if (infinite_) throw DomainError("infinite price has no amount");
    return amount_;
  }

  /// Weak-inequality acceptance: a bid meets the price when bid >= price.
  constexpr bool accepts(Money bid) const { return !infinite_ && bid >= amount_; }

  constexpr bool operator==(const Price& other) const {
    return infinite_ == other.infinite_ && (infinite_ || amount_ == other.amount_);
  }
  constexpr std::strong_ordering operator<=>(const Price& other) const {
    if (infinite_ || other.infinite_) {
      return static_cast<int>(infinite_) <=> static_cast<int>(other.infinite_);
    }
    return amount_ <=> other.amount_;
  }

  std::string to_string() const { return infinite_ ? "inf" : std::to_string(amount_); }

 private:
  bool infinite_ = false;
  Money amount_ = 0;
};

}  // namespace dauction
