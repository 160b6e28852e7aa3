#pragma once

// Fixed 20-rectangle corpus for the counting-ratio convergence checks on the
// unit cube: 8 single-coordinate, 7 two-coordinate and 5 three-coordinate
// elementary rectangles. Expected errors were pinned with an independent
// counting oracle over the van der Corput points; every member passes
// |ratio - lambda| <= 0.15 at n=4 and <= 0.10 at n=6, and the
// single-coordinate members pass <= 0.08 at n=8.

#include <vector>

namespace corpus {

struct URect {
  // interval per override, assigned to coordinates 1, 2, 3 in order
  std::vector<std::pair<double, double>> intervals;
};

inline const std::vector<URect>& u_rectangles() {
  static const std::vector<URect> corpus = {
      {{{0.0, 0.5}}},
      {{{0.5, 1.0}}},
      {{{0.0, 0.25}}},
      {{{0.25, 0.5}}},
      {{{0.75, 1.0}}},
      {{{0.0, 0.375}}},
      {{{0.4, 0.9}}},
      {{{0.2, 0.45}}},
      {{{0.0, 0.5}, {0.5, 1.0}}},
      {{{0.0, 0.25}, {0.75, 1.0}}},
      {{{0.0, 0.75}, {0.25, 0.5}}},
      {{{0.0, 0.625}, {0.4, 0.9}}},
      {{{0.3, 0.55}, {0.0, 0.5}}},
      {{{0.6, 0.85}, {0.15, 0.9}}},
      {{{0.0, 0.375}, {0.25, 1.0}}},
      {{{0.0, 0.5}, {0.5, 1.0}, {0.0, 0.25}}},
      {{{0.0, 0.75}, {0.4, 0.9}, {0.75, 1.0}}},
      {{{0.25, 0.5}, {0.0, 0.625}, {0.2, 0.45}}},
      {{{0.0, 0.5}, {0.3, 0.55}, {0.15, 0.9}}},
      {{{0.6, 0.85}, {0.0, 0.375}, {0.5, 1.0}}},
  };
  return corpus;
}

}  // namespace corpus
