#pragma once

// Habitats as disjoint atlases of affine charts in coordinate form.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "galli/ideal.hpp"
#include "galli/poly.hpp"

namespace galli {

/// Hypersurface slot: index of its coordinate in the chart, or Absent.
using Slot = std::optional<std::size_t>;

struct Chart {
  int id = 0;
  VarSet vars;
  std::vector<Slot> slots;
  /// Slot s is the hypersurface (x_v - shifts[s]) = 0; missing entries are 0.
  std::map<std::size_t, Rational> shifts;
  std::optional<int> parent;
  /// Images of the parent chart's coordinates (identity for root charts).
  std::vector<Poly> parent_map;
  /// Images of the root coordinates.
  std::vector<Poly> to_root;
  /// Generators of the closed part of the chart that no later sibling chart covers; empty means all of it.
  std::vector<Poly> piece;
  /// The piece keeps only points where each of these is nonzero.
  std::vector<Poly> opens;

  std::size_t n() const { return vars.size(); }
  std::size_t r() const { return slots.size(); }
  bool present(std::size_t slot) const { return slot < slots.size() && slots[slot].has_value(); }
  /// Present slots whose coordinate is var.
  std::vector<std::size_t> slots_on(std::size_t var) const;
  Rational shift(std::size_t slot) const;
  Poly slot_poly(std::size_t slot) const { return Poly::variable(vars, *slots.at(slot)) - Poly::constant(vars, shift(slot)); }
};

struct Habitat {
  VarSet root_vars;
  std::size_t r = 0;
  std::vector<Chart> charts;
  int next_id = 1;

  std::size_t n() const { return root_vars.size(); }
  const Chart& chart(int id) const;
  Chart& chart(int id);
  bool has_chart(int id) const;
};

/// Per-chart center: coordinate indices, or absent from the map when the center misses the chart.
using CenterSpec = std::map<int, std::vector<std::size_t>>;

Habitat new_habitat(const VarSet& vars, const std::vector<std::optional<Poly>>& hypersurfaces);

/// Reads a center given by polynomials; each must be a chart coordinate.
std::vector<std::size_t> center_coords(const Chart& chart, const std::vector<Poly>& generators);

void validate_center(const Habitat& h, const CenterSpec& center);

struct ChildChart {
  int child_id;
  /// Coordinate that defines the new exceptional hypersurface, absent for untouched charts.
  std::optional<std::size_t> exceptional;
};

struct BlowupResult {
  Habitat habitat;
  /// Parent chart id to the charts it became (empty when the chart was deleted).
  std::map<int, std::vector<ChildChart>> children;
};

BlowupResult blowup(const Habitat& h, const CenterSpec& center);

/// v' = a*v + g with a a nonzero rational and g free of v.
struct CoordChange {
  std::size_t var = 0;
  Rational a;
  Poly g;

  /// Rewrites data from old coordinates to new ones (v -> (v - g)/a).
  Poly apply(const Poly& p) const;
  /// Rewrites back (v -> a*v + g).
  Poly undo(const Poly& p) const;
};

std::optional<CoordChange> solve_for(const Poly& f, std::size_t var);

/// New chart in which f is the coordinate v; keeps the chart id and composes the lineage.
Chart coordinate_change(const Chart& chart, const Poly& f, std::size_t var);
Chart apply_change(const Chart& chart, const CoordChange& change);

/// True when V(ideal) does not meet the chart's piece.
bool misses_piece(const Chart& chart, const Ideal& ideal);

/// Replaces a chart by two copies with the same coordinates: one owning {cut = 0} (also inverting `keep`), one owning
/// {cut != 0}. Empty copies are dropped. Returns the new ids.
std::vector<int> split_chart(Habitat& h, int id, const Poly& cut, const Poly& keep);

}  // namespace galli
