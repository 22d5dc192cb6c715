#pragma once

#include <string>
#include <vector>

#include "galli/ideal.hpp"
#include "galli/singularity.hpp"

namespace galli::testing {

inline VarSet vs(std::vector<std::string> names) { return VarSet(std::move(names)); }

inline Poly P(const VarSet& v, const std::string& text) { return parse_poly(text, v); }

inline Ideal I(const VarSet& v, std::vector<std::string> gens) { return Ideal::parse(v, gens); }

inline std::vector<std::string> strs(const std::vector<Poly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

inline ChartAlg alg(const VarSet& v, std::vector<std::pair<std::vector<std::string>, unsigned>> pairs) {
  std::vector<Pair> ps;
  for (auto& [gens, b] : pairs) ps.emplace_back(I(v, gens), b);
  return from_pairs(v, ps);
}

}  // namespace galli::testing

#include <random>

namespace galli::testing {

inline Poly random_poly(const VarSet& v, std::mt19937& rng, int terms, int max_degree, int coeff = 5) {
  std::uniform_int_distribution<int> c(-coeff, coeff);
  std::uniform_int_distribution<int> e(0, max_degree);
  Poly p(v);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int budget = e(rng);
    for (std::size_t i = 0; i < v.size() && budget > 0; ++i) {
      std::uniform_int_distribution<int> take(0, budget);
      const int k = i + 1 == v.size() ? budget : take(rng);
      m.exp[i] = static_cast<std::uint16_t>(k);
      budget -= k;
    }
    p.add_term(m, c(rng));
  }
  return p;
}

}  // namespace galli::testing
