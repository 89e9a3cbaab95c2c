#pragma once

#include <string_view>

#include "wbag/bag.hpp"

namespace wbag {

enum class Fixture { stock, edemocracy };

/// Stock trading decision: Buy/Sell attack each other, five expert
/// arguments attack or support them. Cyclic.
Bag stock_fixture();

/// Council budget debate with two decision arguments, three pro and four
/// contra arguments. Acyclic.
Bag edemocracy_fixture();

Bag fixture(Fixture which);

/// Accepts "stock" and "edemocracy"; throws std::invalid_argument otherwise.
Bag fixture(std::string_view name);

}  // namespace wbag
