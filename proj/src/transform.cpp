#include "galli/transform.hpp"

namespace galli {

bool center_in_sing(const ChartAlg& a, const std::vector<std::size_t>& coords) {
  std::vector<Poly> gens;
  for (auto v : coords) gens.push_back(Poly::variable(a.vars, v));
  return Ideal(a.vars, std::move(gens)).contains(sing_locus_ideal(a));
}

void check_center_in_sing(const ReesAlg& a, const CenterSpec& center) {
  for (const auto& [id, coords] : center) {
    if (!center_in_sing(a.at(id), coords))
      throw Error(ErrorCode::CenterNotInSingLocus, "chart " + std::to_string(id) + ": center is not inside the singular locus");
  }
}

TransformResult transform(const ReesAlg& a, const CenterSpec& center, const BlowupResult& out) {
  check_center_in_sing(a, center);
  TransformResult result;
  for (const auto& [parent_id, alg] : a.charts) {
    auto kids = out.children.find(parent_id);
    if (kids == out.children.end())
      throw Error(ErrorCode::HabitatMismatch, "blowup does not cover chart " + std::to_string(parent_id));
    for (const auto& kid : kids->second) {
      const Chart& child = out.habitat.chart(kid.child_id);
      ChartAlg pulled = substitute(alg, child.parent_map, child.vars);
      if (kid.exceptional) {
        const Poly e = Poly::variable(child.vars, *kid.exceptional);
        ChartAlg divided{child.vars, {}};
        for (const auto& [d, gs] : pulled.gens) {
          const Poly ed = e.pow(d);
          for (const auto& g : gs) {
            auto q = g.try_divide(ed);
            if (!q)
              throw Error(ErrorCode::InvariantBreach, "chart " + std::to_string(child.id) + ": pullback " + g.to_string() +
                                                          " is not divisible by " + ed.to_string());
            result.certificates.push_back({child.id, d, g.to_string(), ed.to_string()});
            divided.add(d, *q);
          }
        }
        pulled = std::move(divided);
      }
      result.alg.charts.emplace(child.id, differential_closure(pulled));
      result.raw.charts.emplace(child.id, std::move(pulled));
    }
  }
  return result;
}

}  // namespace galli
