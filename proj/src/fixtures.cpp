#include "wbag/fixtures.hpp"

#include <stdexcept>
#include <string>

namespace wbag {

Bag stock_fixture() {
  BagBuilder b;
  const ArgId buy = b.add_argument("Buy", 0.5);
  const ArgId sell = b.add_argument("Sell", 0.5);
  const ArgId e1 = b.add_argument("1", 0.8);
  const ArgId e2 = b.add_argument("2", 0.7);
  const ArgId e3 = b.add_argument("3", 0.3);
  const ArgId e4 = b.add_argument("4", 0.9);
  const ArgId e5 = b.add_argument("5", 0.9);

  b.add_attack(buy, sell);
  b.add_attack(sell, buy);
  b.add_attack(e2, e1);
  b.add_attack(e3, e2);
  b.add_attack(e4, e3);
  b.add_attack(e5, e1);

  b.add_support(e1, sell);
  b.add_support(e2, buy);
  b.add_support(e4, e2);
  b.add_support(e5, buy);
  return std::move(b).build();
}

Bag edemocracy_fixture() {
  BagBuilder b;
  const ArgId a1 = b.add_argument("A1", 0.5);
  const ArgId a2 = b.add_argument("A2", 0.5);
  const ArgId p1 = b.add_argument("P1", 0.7);
  const ArgId p2 = b.add_argument("P2", 0.5);
  const ArgId p3 = b.add_argument("P3", 0.9);
  const ArgId c1 = b.add_argument("C1", 0.2);
  const ArgId c2 = b.add_argument("C2", 0.2);
  const ArgId c3 = b.add_argument("C3", 0.6);
  const ArgId c4 = b.add_argument("C4", 0.5);

  b.add_attack(c1, a2);
  b.add_attack(c2, p2);
  b.add_attack(c3, p2);
  b.add_attack(c4, p2);

  b.add_support(p1, a1);
  b.add_support(p2, a1);
  b.add_support(p3, a2);
  return std::move(b).build();
}

Bag fixture(Fixture which) {
  switch (which) {
    case Fixture::stock:
      return stock_fixture();
    case Fixture::edemocracy:
      return edemocracy_fixture();
  }
  throw std::invalid_argument("unknown fixture");
}

Bag fixture(std::string_view name) {
  if (name == "stock") return stock_fixture();
  if (name == "edemocracy") return edemocracy_fixture();
  throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

}  // namespace wbag
