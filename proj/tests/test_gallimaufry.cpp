#include <gtest/gtest.h>

#include "galli/gallimaufry.hpp"
#include "galli/transform.hpp"
#include "helpers.hpp"

using namespace galli;
using namespace galli::testing;

namespace {

Gallimaufry on_root(const ChartAlg& a, unsigned m, unsigned b0 = 1) {
  return Gallimaufry{ReesAlg{{{0, differential_closure(a)}}}, m, {}, b0};
}

}  // namespace

TEST(gallimaufry, cusp_report) {
  auto v = vs({"x", "y"});
  Habitat h = new_habitat(v, {});
  auto an = analyze(h, on_root(alg(v, {{{"x^2-y^3"}, 1}}), 2));
  EXPECT_FALSE(an.resolved);
  EXPECT_FALSE(an.bold);
  EXPECT_EQ(an.maxorder, 2);
  EXPECT_EQ(an.b, 1u);
  EXPECT_TRUE(an.empty_set_complex());
  EXPECT_FALSE(an.tight());
}

TEST(gallimaufry, zoom_on_cusp_line) {
  auto v = vs({"x", "y"});
  Habitat h = new_habitat(v, {});
  auto g = on_root(alg(v, {{{"x^2-y^3"}, 2}}), 1);
  auto z = find_zoom(h.charts[0], g.alg.at(0), 1, {});
  ASSERT_EQ(z.vars, std::vector<std::size_t>{0});
  EXPECT_TRUE(z.chain.front().g.is_zero());
  auto an = analyze(h, g);
  EXPECT_EQ(an.maxorder, Rational(3, 2));
  EXPECT_EQ(an.b, 2u);
}

TEST(gallimaufry, full_dimension_needs_no_zoom) {
  auto v = vs({"x", "y"});
  Habitat h = new_habitat(v, {});
  auto z = find_zoom(h.charts[0], differential_closure(alg(v, {{{"x^2-y^3"}, 1}})), 2, {});
  EXPECT_TRUE(z.chain.empty());
  EXPECT_TRUE(z.vars.empty());
}

TEST(gallimaufry, zoom_solves_with_a_shift) {
  auto v = vs({"x", "y"});
  Habitat h = new_habitat(v, {P(v, "x")});
  Gallimaufry g = on_root(alg(v, {{{"x^2-y"}, 1}}), 1);
  g.relaxed = {0};
  auto z = find_zoom(h.charts[0], g.alg.at(0), 1, g.relaxed);
  ASSERT_EQ(z.vars, std::vector<std::size_t>{1});
  EXPECT_EQ(z.chain.front().g, P(v, "x^2"));
}

TEST(gallimaufry, zoom_never_uses_a_visible_hypersurface) {
  auto v = vs({"x"});
  Habitat h = new_habitat(v, {P(v, "x")});
  EXPECT_THROW(find_zoom(h.charts[0], differential_closure(alg(v, {{{"x"}, 1}})), 0, {}), Error);
  EXPECT_NO_THROW(find_zoom(h.charts[0], differential_closure(alg(v, {{{"x"}, 1}})), 0, {0}));
}

TEST(gallimaufry, monomial_labels_and_blowup) {
  auto v = vs({"x", "y", "z"});
  Habitat h = new_habitat(v, {P(v, "x"), P(v, "y"), P(v, "z")});
  auto g = on_root(alg(v, {{{"x^3*y^5*z^7*(x^2+y^5)"}, 1}}), 3);
  auto an = analyze(h, g);
  EXPECT_EQ(an.labels, (std::map<std::size_t, Rational>{{0, 3}, {1, 5}, {2, 7}}));
  EXPECT_EQ(an.maxorder, 2);

  CenterSpec c = {{0, {0, 1}}};
  auto out = blowup(h, c);
  auto t = transform(g.alg, c, out);
  auto an2 = analyze(out.habitat, Gallimaufry{t.alg, 3, {}, 1});
  EXPECT_EQ(an2.labels, (std::map<std::size_t, Rational>{{0, 3}, {1, 5}, {2, 7}, {3, 9}}));
  EXPECT_EQ(an2.maxorder, 2);
}

TEST(gallimaufry, no_hypersurfaces_no_labels) {
  auto v = vs({"x", "y"});
  Habitat h = new_habitat(v, {});
  EXPECT_TRUE(analyze(h, on_root(alg(v, {{{"x*y"}, 1}}), 2)).labels.empty());
}

TEST(gallimaufry, resolved_has_no_faces) {
  auto v = vs({"x", "y"});
  Habitat h = new_habitat(v, {P(v, "x")});
  auto an = analyze(h, on_root(unit_alg(v), 2));
  EXPECT_TRUE(an.resolved);
  EXPECT_TRUE(an.complex.empty());
  EXPECT_FALSE(an.bold);
  EXPECT_EQ(an.maxorder, 0);
}

TEST(gallimaufry, complex_after_cusp_blowup) {
  auto v = vs({"x", "y"});
  Habitat h = new_habitat(v, {});
  auto g = on_root(alg(v, {{{"x^2-y^3"}, 1}}), 2);
  CenterSpec c = {{0, {0, 1}}};
  auto out = blowup(h, c);
  auto t = transform(g.alg, c, out);
  auto an = analyze(out.habitat, Gallimaufry{t.alg, 2, {}, 1});
  EXPECT_EQ(an.complex, (std::vector<Face>{{}, {0}}));
  EXPECT_EQ(an.labels.at(0), 1);
  EXPECT_EQ(an.maxorder, 1);
}

TEST(gallimaufry, zero_singularity_is_bold) {
  auto v = vs({"x", "y"});
  Habitat h = new_habitat(v, {});
  Gallimaufry g{ReesAlg{{{0, ChartAlg{v, {}}}}}, 2, {}, 1};
  auto an = analyze(h, g);
  EXPECT_TRUE(an.bold);
  auto plan = bold_center(h, g, an);
  EXPECT_TRUE(plan.center.at(0).empty());
  EXPECT_TRUE(blowup(h, plan.center).habitat.charts.empty());
}

TEST(gallimaufry, bold_needs_bold) {
  auto v = vs({"x", "y"});
  Habitat h = new_habitat(v, {});
  auto g = on_root(alg(v, {{{"x^2-y^3"}, 1}}), 2);
  EXPECT_THROW(bold_center(h, g, analyze(h, g)), Error);
}

TEST(gallimaufry, tightify_cusp) {
  auto v = vs({"x", "y"});
  Habitat h = new_habitat(v, {});
  auto g = on_root(alg(v, {{{"x^2-y^3"}, 1}}), 2);
  auto t = tightify(h, g, analyze(h, g));
  EXPECT_TRUE(graded_equal(t.at(0), differential_closure(alg(v, {{{"x^2-y^3"}, 2}})), 6));
  auto an = analyze(h, Gallimaufry{t, 2, {}, 1});
  EXPECT_TRUE(an.tight());
}

TEST(gallimaufry, tightify_restricted_cusp_gives_the_point) {
  auto v = vs({"x", "y"});
  Habitat h = new_habitat(v, {});
  auto g = on_root(alg(v, {{{"x^2-y^3"}, 2}}), 1);
  auto t = tightify(h, g, analyze(h, g));
  EXPECT_TRUE(graded_equal(t.at(0), alg(v, {{{"x", "y"}, 1}}), 6));
  auto an = analyze(h, Gallimaufry{t, 1, {}, 2});
  EXPECT_TRUE(an.tight());
}

TEST(gallimaufry, tightify_strips_the_monomial_factor) {
  auto v = vs({"x", "y"});
  Habitat h = new_habitat(v, {P(v, "y")});
  auto g = on_root(alg(v, {{{"(x^2-y^3)*y^2"}, 1}}), 2);
  auto an = analyze(h, g);
  EXPECT_EQ(an.labels.at(0), 2);
  EXPECT_EQ(an.maxorder, 2);
  auto t = tightify(h, g, an);
  EXPECT_TRUE(graded_equal(t.at(0), differential_closure(alg(v, {{{"x^2-y^3"}, 2}})), 6));
}

TEST(gallimaufry, intersect_adds_the_hypersurface) {
  auto v = vs({"x", "y"});
  Habitat h = new_habitat(v, {P(v, "y")});
  auto g = on_root(alg(v, {{{"x^2-y^3"}, 2}}), 2);
  auto a = intersect(h, g.alg, 0);
  EXPECT_TRUE(graded_equal(a.at(0), differential_closure(alg(v, {{{"x^2-y^3"}, 2}, {{"y"}, 1}})), 4));
}

TEST(gallimaufry, type_one_center_needs_label_sum) {
  auto v = vs({"x", "y"});
  Habitat h = new_habitat(v, {P(v, "x"), P(v, "y")});
  auto g = on_root(alg(v, {{{"x*y^2"}, 1}}), 2);
  auto an = analyze(h, g);
  EXPECT_EQ(an.maxorder, 0);
  auto plan = face_center(h, g, an, {1});
  EXPECT_EQ(plan.center.at(0), std::vector<std::size_t>{1});
  EXPECT_THROW(face_center(h, Gallimaufry{ReesAlg{{{0, differential_closure(alg(v, {{{"x*y"}, 2}}))}}}, 2, {}, 1},
                           analyze(h, Gallimaufry{ReesAlg{{{0, differential_closure(alg(v, {{{"x*y"}, 2}}))}}}, 2, {}, 1}), {0}),
               Error);
}

TEST(zoom_coefficients, normal_taylor_coefficients) {
  auto v = vs({"x", "y", "z"});
  Habitat h = new_habitat(v, {});
  const ChartAlg a = alg(v, {{{"x^3+z*x"}, 3}, {{"x*y+z^2"}, 2}});
  Zoom z = find_zoom(h.charts[0], alg(v, {{{"z"}, 1}}), 2, {});
  ASSERT_EQ(z.vars, std::vector<std::size_t>{2});
  ASSERT_TRUE(z.chain.empty() || z.chain.front().g.is_zero());
  const ChartAlg c = zoom_coefficients(a, z);
  const VarSet& w = z.restricted.vars;
  // x^3 + z x gives x^3 in degree 3 and x in degree 2; x y + z^2 gives x y in degree 2.
  EXPECT_TRUE(Ideal(w, c.listed(3).gens()).equals(I(w, {"x^3"})));
  EXPECT_TRUE(Ideal(w, c.listed(2).gens()).equals(I(w, {"x", "x*y"})));
  EXPECT_TRUE(c.listed(1).is_zero());
}

TEST(representative, keeps_exceptional_factor) {
  auto v = vs({"y", "z"});
  Habitat h = new_habitat(v, {P(v, "z")});
  const ChartAlg raw = alg(v, {{{"y^2*z"}, 2}});
  Gallimaufry g{ReesAlg{{{0, differential_closure(raw)}}}, 2, {}, 2, ReesAlg{{{0, raw}}}};
  auto an = analyze(h, g);
  EXPECT_EQ(an.labels.at(0), Rational(1, 2));
  EXPECT_EQ(an.maxorder, 1);
  // The closure alone contains y^2 in degree 1 and loses the factor.
  auto closed = analyze(h, Gallimaufry{g.alg, 2, {}, 2});
  EXPECT_EQ(closed.labels.at(0), 0);
}

TEST(representative, coefficient_degrees_raise_the_reading_degree) {
  // Rep (xyz, 3) zoomed along z has coefficient x y in degree 2 only.
  auto v = vs({"x", "y", "z"});
  Habitat h = new_habitat(v, {P(v, "x"), P(v, "y")});
  const ChartAlg raw = alg(v, {{{"x*y*z"}, 3}, {{"z"}, 1}});
  Gallimaufry g{ReesAlg{{{0, differential_closure(raw)}}}, 2, {}, 3, ReesAlg{{{0, raw}}}};
  auto an = analyze(h, g);
  EXPECT_EQ(an.rep_degree % 6, 0u);
  EXPECT_EQ(an.labels.at(0), Rational(1, 2));
  EXPECT_EQ(an.labels.at(1), Rational(1, 2));
  EXPECT_EQ(an.maxorder, 0);
}
