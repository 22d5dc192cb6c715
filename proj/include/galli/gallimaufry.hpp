#pragma once

// Gallimaufries: closed singularities with a dimension tag, zooms, and their combinatorial invariants.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "galli/habitat.hpp"
#include "galli/singularity.hpp"

namespace galli {

/// Sorted slot indices (0-based).
using Face = std::vector<std::size_t>;

struct Gallimaufry {
  ReesAlg alg;
  unsigned m = 0;
  /// Slots forgotten by relaxation moves.
  std::set<std::size_t> relaxed;
  /// Generating degree fixed when the thread was opened.
  unsigned b0 = 1;
  /// Generators before closure, equivalent to alg; labels and maxorder are read from it. Empty means alg.
  ReesAlg rep;

  const ChartAlg& rep_at(int chart) const { return rep.charts.empty() ? alg.at(chart) : rep.at(chart); }
};

/// A maximal-contact subspace in one chart: coordinate changes, then the listed coordinates set to zero.
struct Zoom {
  std::vector<CoordChange> chain;
  std::vector<std::size_t> vars;
  /// Algebra after the chain, before restriction.
  ChartAlg changed;
  ChartAlg restricted;
};

/// ZoomNotFound, naming the chart.
class ZoomFailure : public Error {
 public:
  ZoomFailure(int chart, const std::string& message) : Error(ErrorCode::ZoomNotFound, message), chart_(chart) {}
  int chart() const { return chart_; }

 private:
  int chart_;
};

Zoom find_zoom(const Chart& chart, const ChartAlg& a, unsigned m, const std::set<std::size_t>& relaxed);

struct ChartAnalysis {
  int chart = 0;
  /// Singular locus on the chart's piece.
  Ideal sing;
  bool singular = false;
  std::optional<Zoom> zoom;
  bool bold = false;
  /// Exceptional exponents of the ideal-type representative for slots meeting Sing here.
  std::map<std::size_t, unsigned> exponents;
  unsigned delta_steps = 0;
  /// Piece of the representative's coefficients on the zoom, in degree Analysis::rep_degree.
  Ideal rep_ideal;
  std::set<Face> faces;
};

struct Analysis {
  std::vector<ChartAnalysis> charts;
  bool resolved = true;
  bool bold = false;
  /// Degree used for all computations; a generating degree.
  unsigned B = 1;
  /// Multiple of B in which the representative's coefficients are read.
  unsigned rep_degree = 1;
  /// Generating degree shown to the player.
  unsigned b = 1;
  std::vector<Face> complex;
  std::map<std::size_t, Rational> labels;
  Rational maxorder = 0;

  bool tight() const;
  bool empty_set_complex() const { return complex.size() == 1 && complex.front().empty(); }
  std::set<std::size_t> vertices() const;
  const ChartAnalysis& chart(int id) const;
};

Analysis analyze(const Habitat& h, const Gallimaufry& g);

/// Faces of the complex, ignoring relaxations (the main habitat's view).
std::vector<Face> habitat_complex(const Habitat& h, const Analysis& an);

/// Coordinate changes to make before blowing up, and the center in the changed coordinates.
struct CenterPlan {
  std::map<int, std::vector<CoordChange>> chains;
  CenterSpec center;
};

CenterPlan bold_center(const Habitat& h, const Gallimaufry& g, const Analysis& an);
CenterPlan face_center(const Habitat& h, const Gallimaufry& g, const Analysis& an, const Face& face);

/// Generators of the tightification, before closure.
ReesAlg tightify_rep(const Habitat& h, const Gallimaufry& g, const Analysis& an);
ReesAlg tightify(const Habitat& h, const Gallimaufry& g, const Analysis& an);
/// Adds (<E_j>, 1), or the unit ideal where E_j misses the chart.
ReesAlg intersect(const Habitat& h, const ReesAlg& a, std::size_t slot, bool close = true);

/// lcm of listed degrees over all charts.
unsigned degree_lcm(const ReesAlg& a);

/// A chart algebra in the coordinates after (or before) a chain, re-closed unless close is false.
ChartAlg apply_chain(const ChartAlg& a, const std::vector<CoordChange>& chain, bool close = true);
ChartAlg undo_chain(const ChartAlg& a, const std::vector<CoordChange>& chain, bool close = true);

/// Taylor coefficients of the generators in the zoom's normal directions, restricted to the zoom: a generator f of
/// degree d gives (d^k f / dx^k)|V in degree d - |k|.
ChartAlg zoom_coefficients(const ChartAlg& a, const Zoom& z);

}  // namespace galli
