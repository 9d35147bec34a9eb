#include "svdd/model.hpp"

#include <algorithm>

namespace svdd {

std::string_view to_string(Position p) noexcept {
  switch (p) {
    case Position::Inside: return "inside";
    case Position::Boundary: return "boundary";
    case Position::Outside: return "outside";
  }
  return "unknown";
}

std::size_t SvddModel::count(Position p) const noexcept {
  return static_cast<std::size_t>(std::count(position_tags.begin(), position_tags.end(), p));
}

}  // namespace svdd
