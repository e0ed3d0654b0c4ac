#pragma once

// Dense per-cell Game of Life step. Deliberately simple: it scans the
// bounding box plus a one-cell margin and applies B3/S23 cell by cell.
// It is the independent oracle the tiled engine is checked against.

#include "lifelogic/engine.hpp"

namespace lifelogic {

Universe reference_step(const Universe& u, Rule rule = Rule::conway());

}  // namespace lifelogic
