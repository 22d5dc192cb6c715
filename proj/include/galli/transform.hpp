#pragma once

// Controlled transforms along blowups of the habitat.

#include <string>
#include <vector>

#include "galli/habitat.hpp"
#include "galli/singularity.hpp"

namespace galli {

/// A degree-i generator whose pullback was divided by e^i.
struct Certificate {
  int chart = 0;
  unsigned degree = 0;
  std::string pullback;
  std::string exceptional;
};

struct TransformResult {
  ReesAlg alg;
  /// Before re-closing.
  ReesAlg raw;
  std::vector<Certificate> certificates;
};

/// True when the coordinate subspace lies in the singular locus of a.
bool center_in_sing(const ChartAlg& a, const std::vector<std::size_t>& coords);

void check_center_in_sing(const ReesAlg& a, const CenterSpec& center);

/// Transform of a along the blowup `out` of the habitat at `center`.
TransformResult transform(const ReesAlg& a, const CenterSpec& center, const BlowupResult& out);

}  // namespace galli
