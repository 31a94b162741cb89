#pragma once

#include "tropodegen/triangulation.hpp"

#include <string>

namespace tropodegen {

/// The figure-eight knot complement document shipped in data/fig8.json.
const std::string& fig8_json();
IdealTriangulation fig8_triangulation();

}  // namespace tropodegen
