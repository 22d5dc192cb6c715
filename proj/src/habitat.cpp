#include "galli/habitat.hpp"

#include <algorithm>
#include <set>

namespace galli {

namespace {

std::optional<std::size_t> single_variable(const Poly& p) {
  if (p.size() != 1) return std::nullopt;
  const auto& [m, c] = *p.terms().begin();
  if (m.degree() != 1 || c != 1) return std::nullopt;
  for (std::size_t v = 0; v < p.vars().size(); ++v)
    if (m.exp[v] == 1) return v;
  return std::nullopt;
}

}  // namespace

std::vector<std::size_t> Chart::slots_on(std::size_t var) const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < slots.size(); ++s)
    if (slots[s] == var) out.push_back(s);
  return out;
}

Rational Chart::shift(std::size_t slot) const {
  auto it = shifts.find(slot);
  return it == shifts.end() ? Rational(0) : it->second;
}

const Chart& Habitat::chart(int id) const {
  for (const auto& c : charts)
    if (c.id == id) return c;
  throw Error(ErrorCode::HabitatMismatch, "no chart with id " + std::to_string(id));
}

Chart& Habitat::chart(int id) {
  return const_cast<Chart&>(static_cast<const Habitat&>(*this).chart(id));
}

bool Habitat::has_chart(int id) const {
  return std::any_of(charts.begin(), charts.end(), [id](const Chart& c) { return c.id == id; });
}

Habitat new_habitat(const VarSet& vars, const std::vector<std::optional<Poly>>& hypersurfaces) {
  Chart root;
  root.id = 0;
  root.vars = vars;
  root.parent_map = identity_images(vars);
  root.to_root = root.parent_map;
  std::set<std::size_t> used;
  for (std::size_t i = 0; i < hypersurfaces.size(); ++i) {
    const auto& h = hypersurfaces[i];
    if (!h) {
      root.slots.emplace_back();
      continue;
    }
    auto v = single_variable(*h);
    if (!v)
      throw Error(ErrorCode::NonCoordinateHypersurface,
                  "hypersurface " + std::to_string(i + 1) + " (" + h->to_string() +
                      ") is not a coordinate; change coordinates first so that each hypersurface is a variable");
    if (!used.insert(*v).second)
      throw Error(ErrorCode::NonCoordinateHypersurface,
                  "hypersurface " + std::to_string(i + 1) + " repeats coordinate " + vars.name(*v));
    root.slots.emplace_back(*v);
  }
  Habitat h;
  h.root_vars = vars;
  h.r = hypersurfaces.size();
  h.charts.push_back(std::move(root));
  return h;
}

std::vector<std::size_t> center_coords(const Chart& chart, const std::vector<Poly>& generators) {
  std::vector<std::size_t> coords;
  for (const auto& g : generators) {
    auto v = g.vars() == chart.vars ? single_variable(g) : std::nullopt;
    if (!v)
      throw Error(ErrorCode::NotStraight,
                  "chart " + std::to_string(chart.id) + ": center generator " + g.to_string() + " is not a coordinate");
    coords.push_back(*v);
  }
  return coords;
}

void validate_center(const Habitat& h, const CenterSpec& center) {
  for (const auto& [id, coords] : center) {
    if (!h.has_chart(id)) throw Error(ErrorCode::NotStraight, "center names unknown chart " + std::to_string(id));
    const Chart& c = h.chart(id);
    std::set<std::size_t> seen;
    for (auto v : coords) {
      if (v >= c.n())
        throw Error(ErrorCode::NotStraight, "chart " + std::to_string(id) + ": center coordinate index out of range");
      if (!seen.insert(v).second)
        throw Error(ErrorCode::NotStraight, "chart " + std::to_string(id) + ": repeated center coordinate " + c.vars.name(v));
    }
  }
}

BlowupResult blowup(const Habitat& h, const CenterSpec& center) {
  validate_center(h, center);
  BlowupResult out;
  out.habitat.root_vars = h.root_vars;
  out.habitat.r = h.r + 1;
  out.habitat.next_id = h.next_id;
  for (const auto& parent : h.charts) {
    auto& kids = out.children[parent.id];
    auto it = center.find(parent.id);
    if (it == center.end()) {
      Chart c = parent;
      c.id = out.habitat.next_id++;
      c.parent = parent.id;
      c.parent_map = identity_images(parent.vars);
      c.slots.emplace_back();
      kids.push_back({c.id, std::nullopt});
      out.habitat.charts.push_back(std::move(c));
      continue;
    }
    // Coordinates carrying a shifted slot go last so that the shifted slot misses every earlier chart's piece.
    auto coords = it->second;
    std::stable_partition(coords.begin(), coords.end(), [&](std::size_t v) {
      return std::none_of(parent.shifts.begin(), parent.shifts.end(), [&](const auto& kv) { return parent.slots[kv.first] == v; });
    });
    const auto shifted = std::count_if(coords.begin(), coords.end(), [&](std::size_t v) {
      return std::any_of(parent.shifts.begin(), parent.shifts.end(), [&](const auto& kv) { return parent.slots[kv.first] == v; });
    });
    if (shifted > 1)
      throw Error(ErrorCode::NotStraight, "chart " + std::to_string(parent.id) +
                                              ": center meets the coordinates of two shifted hypersurfaces; not representable in one chart");
    for (std::size_t pos = 0; pos < coords.size(); ++pos) {
      const auto k = coords[pos];
      Chart c;
      c.id = out.habitat.next_id++;
      c.vars = parent.vars;
      c.parent = parent.id;
      c.parent_map = identity_images(parent.vars);
      for (auto j : coords)
        if (j != k) c.parent_map[j] = Poly::variable(c.vars, k) * Poly::variable(c.vars, j);
      for (const auto& root_image : parent.to_root) c.to_root.push_back(root_image.substitute(c.parent_map, c.vars));
      for (const auto& p : parent.piece) c.piece.push_back(p.substitute(c.parent_map, c.vars));
      for (const auto& p : parent.opens) c.opens.push_back(p.substitute(c.parent_map, c.vars));
      for (std::size_t later = pos + 1; later < coords.size(); ++later) c.piece.push_back(Poly::variable(c.vars, coords[later]));
      for (std::size_t s = 0; s < parent.slots.size(); ++s) {
        const Slot& v = parent.slots[s];
        const Rational sh = parent.shift(s);
        if (v && std::find(coords.begin(), coords.end(), *v) != coords.end() && sh != 0) {
          // Misses the center; in chart k it is x_k*x_v = shift, which lies off the piece unless v = k.
          if (*v == k) {
            c.slots.push_back(v);
            c.shifts[s] = sh;
          } else {
            c.slots.emplace_back();
          }
          continue;
        }
        c.slots.push_back(v == k ? Slot{} : v);
        if (v && *v != k && sh != 0) c.shifts[s] = sh;
      }
      c.slots.emplace_back(k);
      kids.push_back({c.id, k});
      out.habitat.charts.push_back(std::move(c));
    }
  }
  return out;
}

Poly CoordChange::apply(const Poly& p) const {
  const Poly v = Poly::variable(p.vars(), var);
  return p.substitute_one(var, (v - g) * (1 / a));
}

Poly CoordChange::undo(const Poly& p) const {
  const Poly v = Poly::variable(p.vars(), var);
  return p.substitute_one(var, a * v + g);
}

std::optional<CoordChange> solve_for(const Poly& f, std::size_t var) {
  CoordChange change;
  change.var = var;
  change.g = Poly(f.vars());
  bool found = false;
  for (const auto& [m, c] : f.terms()) {
    if (m.exp[var] == 0) {
      change.g.add_term(m, c);
      continue;
    }
    if (m.exp[var] != 1 || m.degree() != 1) return std::nullopt;
    change.a = c;
    found = true;
  }
  if (!found) return std::nullopt;
  return change;
}

Chart apply_change(const Chart& chart, const CoordChange& change) {
  Chart c = chart;
  for (auto s : chart.slots_on(change.var)) {
    if (!change.g.is_constant())
      throw Error(ErrorCode::NotSolvable, "chart " + std::to_string(chart.id) + ": coordinate " +
                                              chart.vars.name(change.var) + " defines hypersurface " +
                                              std::to_string(s + 1) + " and can only be scaled or translated");
    const Rational sh = change.g.constant_term() + change.a * chart.shift(s);
    if (sh == 0)
      c.shifts.erase(s);
    else
      c.shifts[s] = sh;
  }
  for (auto& p : c.parent_map) p = change.apply(p);
  for (auto& p : c.to_root) p = change.apply(p);
  for (auto& p : c.piece) p = change.apply(p);
  for (auto& p : c.opens) p = change.apply(p);
  return c;
}

Chart coordinate_change(const Chart& chart, const Poly& f, std::size_t var) {
  auto change = solve_for(f, var);
  if (!change)
    throw Error(ErrorCode::NotSolvable, f.to_string() + " is not of the form a*" + chart.vars.name(var) +
                                            " + g with g free of " + chart.vars.name(var));
  return apply_change(chart, *change);
}

bool misses_piece(const Chart& chart, const Ideal& ideal) {
  return misses_open(sum(ideal, Ideal(chart.vars, chart.piece)), chart.opens);
}

std::vector<int> split_chart(Habitat& h, int id, const Poly& cut, const Poly& keep) {
  auto it = std::find_if(h.charts.begin(), h.charts.end(), [&](const Chart& c) { return c.id == id; });
  if (it == h.charts.end()) throw Error(ErrorCode::HabitatMismatch, "no chart " + std::to_string(id));
  const Chart base = *it;
  Chart on = base;
  on.piece.push_back(cut);
  on.opens.push_back(keep);
  Chart off = base;
  off.opens.push_back(cut);
  std::vector<Chart> kept;
  const Ideal whole = Ideal::zero(base.vars);
  for (Chart* c : {&on, &off}) {
    if (misses_piece(*c, whole)) continue;
    c->id = h.next_id++;
    kept.push_back(*c);
  }
  it = h.charts.erase(it);
  std::vector<int> ids;
  for (auto& c : kept) ids.push_back(c.id);
  h.charts.insert(it, kept.begin(), kept.end());
  return ids;
}

}  // namespace galli
