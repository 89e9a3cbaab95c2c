#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wbag/bag.hpp"

namespace wbag {

/// Syntax or semantic error in a BAG text document. Line and column are
/// 1-based and point at the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

// Text format, one or more statements per line:
//
//   arg(<name>)              weight defaults to 0.5
//   arg(<name>,<weight>)     weight is a decimal real in [0,1]
//   att(<source>,<target>)
//   sup(<source>,<target>)
//
// Each statement may end with an optional '.', whitespace is insignificant
// and `//` starts a comment running to the end of the line. Plain ConArg
// files (`arg(a).` / `att(a,b).`) are accepted unchanged. Edges may refer to
// arguments declared later in the same document.

Bag parse_bag(std::string_view text);
Bag parse_bag(std::istream& in);
Bag read_bag_file(const std::filesystem::path& path);

/// Arguments (always with an explicit weight, 6 significant digits), then
/// attacks, then supports; one statement per line.
std::string serialize_bag(const Bag& bag);
void write_bag_file(const std::filesystem::path& path, const Bag& bag,
                    std::string_view header_comment = {});

}  // namespace wbag
