#pragma once

// Embedded desingularization of hypersurfaces by resolving (<f>, 2).

#include <vector>

#include "galli/dido.hpp"

namespace galli {

struct SmoothnessCertificate {
  int chart = 0;
  /// <g> + Delta(<g>) + the chart's piece.
  Ideal ideal;
  std::vector<Poly> opens;
  bool smooth = false;
  /// Groebner basis of the ideal; {1} when the chart has no opens and g is smooth.
  std::vector<Poly> basis;

  /// Recomputes the verdict from the ideal and the opens.
  bool verify() const;
};

/// NotSmooth, carrying the singular locus.
class NotSmoothError : public Error {
 public:
  NotSmoothError(std::vector<Poly> witness, const std::string& message)
      : Error(ErrorCode::NotSmooth, message), witness_(std::move(witness)) {}
  const std::vector<Poly>& witness() const { return witness_; }

 private:
  std::vector<Poly> witness_;
};

SmoothnessCertificate smoothness_certificate(const Chart& chart, const Poly& g);

struct Leaf {
  int chart = 0;
  Poly strict;
  /// Exponent of each exceptional slot divided out of the pullback.
  std::map<std::size_t, unsigned> exceptional;
  SmoothnessCertificate certificate;
};

struct ResolutionTree {
  Poly f;
  std::vector<Habitat> habitats;
  std::vector<CenterSpec> centers;
  std::vector<StrategyStep> steps;
  std::vector<Leaf> leaves;
};

/// Throws NotSquarefree unless V(f, df) has codimension at least 2.
void check_squarefree(const Poly& f);

/// Pullback of f to the chart with every exceptional factor removed; `r` is the number of original hypersurfaces.
Poly strict_transform(const Chart& chart, const Poly& f, std::size_t r, std::map<std::size_t, unsigned>* exponents = nullptr);

ResolutionTree desingularize_hypersurface(const Poly& f, const StrategyOptions& opts = {});

}  // namespace galli
