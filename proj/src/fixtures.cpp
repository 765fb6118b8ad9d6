#include "dauction/fixtures.hpp"

namespace dauction::fixtures {

AuctionInstance seven_buyer_network() {
  AuctionInstance inst;
  inst.k = 3;
  inst.seller_followers = {0, 1};
  inst.buyers = {
      {30, {2}},     // i1
      {72, {2, 3}},  // i2
      {34, {1, 4}},  // i3
      {45, {}},      // i4
      {50, {5, 6}},  // i5
      {66, {}},      // i6
      {40, {}},      // i7
  };
  return inst;
}

AuctionInstance revenue_drop_network() {
  AuctionInstance inst;
  inst.k = 2;
  inst.seller_followers = {0, 1, 2};
  inst.buyers = {{5, {3}}, {20, {}}, {6, {}}, {15, {}}};
  return inst;
}

AuctionInstance hiding_network(int k) {
  if (k < 2) throw InputError("hiding_network needs k >= 2");
  AuctionInstance inst;
  inst.k = k;
  const auto heavy = static_cast<BuyerId>(k - 2);
  const BuyerId decider = heavy + 1;
  const BuyerId low_follower = heavy + 2;
  const BuyerId high_follower = heavy + 3;
  for (BuyerId i = 0; i < heavy; ++i) inst.buyers.push_back({30, {}});
  inst.buyers.push_back({10, {low_follower}});
  inst.buyers.push_back({15, {high_follower}});
  inst.buyers.push_back({9, {}});
  inst.buyers.push_back({20, {}});
  for (BuyerId i = 0; i <= decider; ++i) inst.seller_followers.push_back(i);
  return inst;
}

BuyerId hiding_network_buyer(int k) { return static_cast<BuyerId>(k - 1); }

AuctionInstance path_network(int k, Money near_value, Money far_value) {
  AuctionInstance inst;
  inst.k = k;
  inst.seller_followers = {0};
  const int n = 2 * k;
  for (int i = 0; i < n; ++i) {
    BuyerType b;
    b.value = i < k ? near_value : far_value;
    if (i + 1 < n) b.followers = {static_cast<BuyerId>(i + 1)};
    inst.buyers.push_back(b);
  }
  return inst;
}

AuctionInstance star_network(int k, int buyers, Money value) {
  AuctionInstance inst;
  inst.k = k;
  for (int i = 0; i < buyers; ++i) {
    inst.buyers.push_back({value, {}});
    inst.seller_followers.push_back(static_cast<BuyerId>(i));
  }
  return inst;
}

}  // namespace dauction::fixtures
