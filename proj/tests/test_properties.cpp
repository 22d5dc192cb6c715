#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "galli/game.hpp"
#include "galli/gallimaufry.hpp"
#include "galli/transform.hpp"
#include "helpers.hpp"

using namespace galli;
using namespace galli::testing;

namespace {

constexpr int kCases = 200;
constexpr int kAttempts = 4000;

std::vector<std::string> names(std::size_t n) {
  static const char* base[] = {"x", "y", "z", "w"};
  return {base, base + n};
}

int pick(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Poly monomial(const VarSet& v, const std::vector<unsigned>& e) {
  Poly m = Poly::constant(v, 1);
  for (std::size_t i = 0; i < e.size(); ++i) m = m * Poly::variable(v, i).pow(e[i]);
  return m;
}

// A gallimaufry of full dimension on (A^n, (x_1, ..., x_n)) with a random monomial factor.
struct Drawn {
  Habitat h;
  Gallimaufry g;
  ReesAlg rep;
};

Drawn random_setup(std::mt19937& rng, std::size_t n, bool monomial_only) {
  VarSet v = vs(names(n));
  std::vector<std::optional<Poly>> hyps;
  for (std::size_t i = 0; i < n; ++i) hyps.push_back(Poly::variable(v, i));
  const unsigned b = static_cast<unsigned>(pick(rng, 1, 3));
  std::vector<unsigned> e(n);
  for (auto& x : e) x = static_cast<unsigned>(pick(rng, 0, 3));
  Poly f = monomial(v, e);
  if (!monomial_only) {
    Poly g = random_poly(v, rng, pick(rng, 1, 3), 3);
    while (g.is_zero()) g = random_poly(v, rng, 2, 3);
    f = f * g;
  }
  std::vector<Pair> pairs = {{Ideal(v, {f}), b}};
  Drawn s{new_habitat(v, hyps), {}, {}};
  s.rep = ReesAlg{{{0, from_pairs(v, pairs)}}};
  s.g = Gallimaufry{differential_closure(s.rep), static_cast<unsigned>(n), {}, b, s.rep};
  return s;
}

// A random coordinate subspace of the root chart inside Sing(a); empty when the draw fails.
std::vector<std::size_t> random_center(std::mt19937& rng, const ChartAlg& a) {
  const std::size_t n = a.vars.size();
  const unsigned mask = static_cast<unsigned>(pick(rng, 1, (1 << n) - 1));
  std::vector<std::size_t> c;
  for (std::size_t i = 0; i < n; ++i)
    if (mask & (1u << i)) c.push_back(i);
  return center_in_sing(a, c) ? c : std::vector<std::size_t>{};
}

Rational label_sum(const Analysis& an, const std::vector<std::size_t>& slots) {
  Rational s = 0;
  for (auto i : slots) s += an.labels.at(i);
  return s;
}

Ideal coordinate_ideal(const VarSet& v, const std::vector<std::size_t>& coords) {
  std::vector<Poly> gens;
  for (auto c : coords) gens.push_back(Poly::variable(v, c));
  return Ideal(v, gens);
}

ReesAlg sum_charts(const ReesAlg& a, const ReesAlg& b) {
  ReesAlg out;
  for (const auto& [id, x] : a.charts) out.charts.emplace(id, differential_closure(sum(x, b.at(id))));
  return out;
}

struct Blown {
  Habitat h;
  Gallimaufry g;
  Analysis an;
  TransformResult t;
};

Blown blow(const Drawn& s, const std::vector<std::size_t>& center) {
  const CenterSpec c = {{0, center}};
  const BlowupResult out = blowup(s.h, c);
  Blown b{out.habitat, {}, {}, transform(s.g.alg, c, out)};
  b.g = Gallimaufry{b.t.alg, s.g.m, {}, s.g.b0, transform(s.rep, c, out).raw};
  b.an = analyze(b.h, b.g);
  return b;
}

}  // namespace

// Label bounds before and after a blowup whose center lies in Sing.
TEST(properties, label_bounds_before_and_after_blowup) {
  std::mt19937 rng(101);
  int cases = 0, attempts = 0;
  while (cases < kCases && ++attempts < kAttempts) {
    Drawn s = random_setup(rng, 2, false);
    const Analysis an = analyze(s.h, s.g);
    if (an.resolved || an.bold) continue;
    const Ideal& sing = an.charts.front().sing;
    std::vector<std::size_t> meet;
    for (const auto& [i, a] : an.labels) meet.push_back(i);
    for (unsigned mask = 1; mask < (1u << meet.size()); ++mask) {
      std::vector<std::size_t> face;
      for (std::size_t k = 0; k < meet.size(); ++k)
        if (mask & (1u << k)) face.push_back(meet[k]);
      const Rational total = label_sum(an, face);
      const Ideal xf = coordinate_ideal(s.h.root_vars, face);
      // Only off the other hypersurfaces: (x^5 y, 3) has Sing = V(x), which meets E_y at the origin on E_x.
      std::vector<Poly> off;
      for (std::size_t j = 0; j < s.h.r; ++j)
        if (std::find(face.begin(), face.end(), j) == face.end()) off.push_back(Poly::variable(s.h.root_vars, j));
      if (total + an.maxorder < 1) EXPECT_TRUE(misses_open(sum(sing, xf), off));
      if (total >= 1) EXPECT_TRUE(xf.contains(sing));
    }
    const auto center = random_center(rng, s.g.alg.at(0));
    if (center.empty()) continue;
    const Blown b = blow(s, center);
    ++cases;
    const auto it = b.an.labels.find(2);
    if (it == b.an.labels.end()) continue;
    const Rational total = label_sum(an, center);
    EXPECT_LE(total - 1, it->second);
    EXPECT_LE(it->second, total + an.maxorder - 1);
  }
  EXPECT_EQ(cases, kCases);
}

TEST(properties, monomial_label_is_exact) {
  std::mt19937 rng(202);
  int cases = 0, attempts = 0;
  while (cases < kCases && ++attempts < kAttempts) {
    Drawn s = random_setup(rng, static_cast<std::size_t>(pick(rng, 2, 3)), true);
    const Analysis an = analyze(s.h, s.g);
    if (an.resolved) continue;
    ASSERT_EQ(an.maxorder, 0);
    const auto center = random_center(rng, s.g.alg.at(0));
    if (center.empty()) continue;
    const Blown b = blow(s, center);
    ++cases;
    const std::size_t r = s.h.r;
    const Rational expected = label_sum(an, center) - 1;
    const auto it = b.an.labels.find(r);
    if (it == b.an.labels.end()) {
      // The new hypersurface misses Sing, which happens only when the transform is resolved there.
      EXPECT_LT(expected, 1);
      continue;
    }
    EXPECT_EQ(it->second, expected);
    EXPECT_EQ(b.an.maxorder, 0);
  }
  EXPECT_EQ(cases, kCases);
}

// o' <= o, with equality exactly when the transformed tightification is unresolved, and then the two tightify
// and transform orders agree.
TEST(properties, tight_transform) {
  std::mt19937 rng(303);
  int cases = 0, attempts = 0, equal = 0;
  while (cases < kCases && ++attempts < kAttempts) {
    Drawn s = random_setup(rng, 2, false);
    const Analysis an = analyze(s.h, s.g);
    if (an.resolved || an.bold || an.maxorder <= 0) continue;
    const ReesAlg tight = tightify(s.h, s.g, an);
    const auto center = random_center(rng, tight.at(0));
    if (center.empty()) continue;
    const Blown b = blow(s, center);
    const CenterSpec c = {{0, center}};
    const ReesAlg tt = transform(tight, c, blowup(s.h, c)).alg;
    ++cases;
    EXPECT_LE(b.an.maxorder, an.maxorder);
    if (b.an.labels.count(2)) EXPECT_EQ(b.an.labels.at(2), label_sum(an, center) + an.maxorder - 1);
    const bool same = b.an.maxorder == an.maxorder;
    EXPECT_EQ(same, !tt.is_resolved());
    if (!same || b.an.resolved) continue;
    ++equal;
    const ReesAlg again = tightify(b.h, b.g, b.an);
    const unsigned n = std::lcm(degree_lcm(again), degree_lcm(tt));
    for (const auto& [id, a] : tt.charts) EXPECT_TRUE(equivalent_at(a, again.at(id), n, n <= 3 ? 2 : 1));
  }
  EXPECT_EQ(cases, kCases);
  EXPECT_GT(equal, 0);
}

// A type II blowup leaves the thread not bold.
TEST(properties, bold_blowup) {
  std::mt19937 rng(404);
  int cases = 0;
  for (int attempt = 0; cases < kCases && attempt < kAttempts; ++attempt) {
    VarSet v = vs({"x", "y", "z"});
    const Poly x = P(v, "x"), y = P(v, "y");
    const unsigned d = static_cast<unsigned>(pick(rng, 2, 3));
    const Poly p = (pick(rng, 0, 1) ? x : y) * random_poly(v, rng, 1, 1, 2);
    std::vector<Pair> pairs = {{Ideal(v, {x}), 1}, {Ideal(v, {y.pow(d) + x * p}), d}};
    const unsigned e = static_cast<unsigned>(pick(rng, 1, 3));
    if (pick(rng, 0, 1)) pairs.push_back({Ideal(v, {x.pow(e) * random_poly(v, rng, 1, 1, 2) + y.pow(e)}), e});
    std::vector<std::optional<Poly>> hyps;
    if (pick(rng, 0, 1)) hyps.push_back(P(v, "z"));
    const GameState g = new_game(Scenario{v, hyps, pairs, 1});
    if (!g.main().analysis.bold) continue;
    ++cases;
    const GameState after = apply_move(g, Move{MoveKind::BlowupII, 0, {}, 0});
    EXPECT_FALSE(after.main().analysis.bold);
  }
  EXPECT_EQ(cases, kCases);
}

TEST(properties, transform_commutes_with_sum) {
  std::mt19937 rng(505);
  int cases = 0, attempts = 0;
  while (cases < kCases && ++attempts < kAttempts) {
    const Drawn a = random_setup(rng, 2, false);
    const Drawn b = random_setup(rng, 2, false);
    const auto center = random_center(rng, a.g.alg.at(0));
    if (center.empty() || !center_in_sing(b.g.alg.at(0), center)) continue;
    ++cases;
    const CenterSpec c = {{0, center}};
    const BlowupResult out = blowup(a.h, c);
    const ReesAlg lhs = transform(sum_charts(a.g.alg, b.g.alg), c, out).alg;
    const ReesAlg rhs = sum_charts(transform(a.g.alg, c, out).alg, transform(b.g.alg, c, out).alg);
    const unsigned dmax = std::max(degree_lcm(lhs), degree_lcm(rhs));
    for (const auto& [id, x] : lhs.charts) EXPECT_TRUE(graded_equal(x, rhs.at(id), dmax));
  }
  EXPECT_EQ(cases, kCases);
}

TEST(properties, closure_is_idempotent) {
  std::mt19937 rng(606);
  for (int k = 0; k < kCases; ++k) {
    const VarSet v = vs(names(static_cast<std::size_t>(pick(rng, 1, 3))));
    ChartAlg a{v, {}};
    const int npairs = pick(rng, 1, 2);
    for (int j = 0; j < npairs; ++j) a.add(static_cast<unsigned>(pick(rng, 1, 3)), random_poly(v, rng, pick(rng, 1, 3), 4));
    const ChartAlg c = differential_closure(a);
    EXPECT_TRUE(is_diff_closed(c));
    const ChartAlg cc = differential_closure(c);
    EXPECT_TRUE(graded_equal(c, cc, std::max(1u, std::max(c.degree_lcm(), cc.degree_lcm()))));
  }
}

// Every generator's pullback is divisible by the matching power of the exceptional coordinate, checked by ideal
// membership on the printed certificate.
TEST(properties, certificates_cover_every_generator) {
  std::mt19937 rng(707);
  int cases = 0, attempts = 0;
  while (cases < kCases && ++attempts < kAttempts) {
    const Drawn s = random_setup(rng, static_cast<std::size_t>(pick(rng, 2, 3)), false);
    const auto center = random_center(rng, s.g.alg.at(0));
    if (center.empty()) continue;
    ++cases;
    const CenterSpec c = {{0, center}};
    const BlowupResult out = blowup(s.h, c);
    const TransformResult t = transform(s.g.alg, c, out);
    std::size_t gens = 0;
    for (const auto& [d, gs] : s.g.alg.at(0).gens) gens += gs.size();
    std::size_t exceptional_charts = 0;
    for (const auto& kid : out.children.at(0)) exceptional_charts += kid.exceptional.has_value();
    EXPECT_EQ(t.certificates.size(), gens * exceptional_charts);
    for (const auto& cert : t.certificates) {
      const Chart& ch = out.habitat.chart(cert.chart);
      const Poly pulled = parse_poly(cert.pullback, ch.vars);
      const Poly e = parse_poly(cert.exceptional, ch.vars);
      EXPECT_TRUE(Ideal(ch.vars, {e}).member(pulled));
      bool found = false;
      for (const auto& g : s.g.alg.at(0).gens.at(cert.degree))
        found = found || g.substitute(ch.parent_map, ch.vars) == pulled;
      EXPECT_TRUE(found);
      const auto kid = std::find_if(out.children.at(0).begin(), out.children.at(0).end(),
                                    [&](const ChildChart& k) { return k.child_id == cert.chart; });
      ASSERT_NE(kid, out.children.at(0).end());
      EXPECT_EQ(e, Poly::variable(ch.vars, *kid->exceptional).pow(cert.degree));
    }
  }
  EXPECT_EQ(cases, kCases);
}
