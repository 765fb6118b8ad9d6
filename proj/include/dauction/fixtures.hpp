#pragma once

#include "dauction/instance.hpp"

namespace dauction::fixtures {

// Hand-built networks that exercise specific mechanism behaviour. Buyer ids
// are 0-based; comments name the buyers i1, i2, ... with i(j) = id j-1.

/// Seven buyers, three units. s -> {i1, i2}; i1 -> i3; i2 <-> i3; i2 -> i4;
/// i3 -> i5; i5 -> {i6, i7}. Values 30, 72, 34, 45, 50, 66, 40.
AuctionInstance seven_buyer_network();

/// Four buyers, two units. s -> {i1, i2, i3}; i1 -> i4. Values 5, 20, 6, 15.
/// Informing every direct buyer earns less than informing only i1 and i2.
AuctionInstance revenue_drop_network();

/// k + 2 buyers (k >= 2) where one buyer weighs hiding her single follower.
/// Priority: k-2 buyers of value 30, then a value-10 buyer forwarding to a
/// value-9 buyer, then the deciding buyer (value 15) with a value-20 follower.
AuctionInstance hiding_network(int k);

/// Id of the deciding buyer in hiding_network(k).
BuyerId hiding_network_buyer(int k);

/// Path s -> b1 -> ... -> b(2k): the first k buyers hold `near_value`, the
/// rest hold `far_value`.
AuctionInstance path_network(int k, Money near_value, Money far_value);

/// `buyers` direct buyers, all holding `value`, no edges between them.
AuctionInstance star_network(int k, int buyers, Money value);

}  // namespace dauction::fixtures
