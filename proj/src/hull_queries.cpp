#include "ioch/hull_queries.hpp"

namespace ioch {

Direction make_direction(double dx, double dy) {
  if (!std::isfinite(dx) || !std::isfinite(dy)) throw ContractError("direction must be finite");
  if (dx == 0.0 && dy == 0.0) throw ContractError("direction must be nonzero");
  return {dx, dy};
}

}  // namespace ioch
