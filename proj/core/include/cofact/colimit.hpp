#pragma once

#include <vector>

#include "cofact/diagram.hpp"

namespace cofact {

// Colimit of a covariant Set-valued diagram: the carrier coproduct modulo
// the zigzag closure of the action relation. Classes are labelled by the
// least global index they contain, renumbered 0..size-1 in that order.
struct SetColimit {
  int size = 0;
  std::vector<std::vector<int>> cocone;  // cocone[object][element] -> class
};

SetColimit colimit_set_diagram(const SetDiagram& x);

}  // namespace cofact
