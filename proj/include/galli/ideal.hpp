#pragma once

// Ideals of Q[vars] with cached reduced Groebner bases (degrevlex).

#include <memory>
#include <optional>
#include <mutex>
#include <span>
#include <vector>

#include "galli/poly.hpp"

namespace galli {

struct GbLimits {
  std::size_t max_steps = 1'000'000;
  int max_degree = 64;
};

/// Process-wide budget used by Ideal; tests may tighten it.
GbLimits& gb_limits();

/// Reduced, monic basis sorted by increasing leading monomial.
std::vector<Poly> groebner_basis(const VarSet& vars, std::span<const Poly> gens, const GbLimits& limits);

/// Remainder of p modulo a Groebner basis.
Poly normal_form(const Poly& p, std::span<const Poly> basis);

class Ideal {
 public:
  Ideal() : Ideal(VarSet{}, {}) {}
  Ideal(VarSet vars, std::vector<Poly> gens);

  static Ideal unit(const VarSet& vars) { return Ideal(vars, {Poly::constant(vars, 1)}); }
  static Ideal zero(const VarSet& vars) { return Ideal(vars, {}); }
  static Ideal parse(const VarSet& vars, std::span<const std::string> gens);

  const VarSet& vars() const { return vars_; }
  const std::vector<Poly>& gens() const { return gens_; }

  const std::vector<Poly>& groebner() const;
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const;
  bool member(const Poly& p) const;
  Poly reduce(const Poly& p) const;
  bool contains(const Ideal& other) const;
  bool equals(const Ideal& other) const { return contains(other) && other.contains(*this); }
  /// Dimension of the zero set over the algebraic closure; -1 for the unit ideal.
  int dimension() const;

  Ideal substitute(std::span<const Poly> images, const VarSet& target) const;

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Poly> basis;
  };

  VarSet vars_;
  std::vector<Poly> gens_;
  std::shared_ptr<Cache> cache_;
};

Ideal sum(const Ideal& a, const Ideal& b);
Ideal product(const Ideal& a, const Ideal& b);
Ideal power(const Ideal& a, unsigned k);

Ideal delta(const Ideal& ideal);
Ideal delta_power(const Ideal& ideal, unsigned a);

struct FactorSplit {
  unsigned exponent = 0;
  Ideal rest;
};

/// Largest e with every generator divisible by h^e, and the quotients.
FactorSplit extract_factor(const Ideal& ideal, const Poly& h);

/// Number of times h divides p (p nonzero, h nonconstant).
unsigned valuation(const Poly& p, const Poly& h);

/// True when V(ideal) has no point at which every polynomial in `opens` is nonzero.
bool misses_open(const Ideal& ideal, std::span<const Poly> opens);

/// Monic minimal polynomial of variable v modulo a zero-dimensional ideal, coefficients from degree 0 up.
std::optional<std::vector<Rational>> minimal_polynomial(const Ideal& ideal, std::size_t v, unsigned max_degree = 48);

/// Distinct rational roots of a univariate polynomial (coefficients from degree 0 up), increasing.
std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs);

/// Some f = x_v + g with g free of x_v and of total degree at most max_degree such that h^k f lies in the ideal
/// for some k.
std::optional<Poly> solvable_after_inverting(const Ideal& ideal, const Poly& h, std::size_t v, int max_degree);

}  // namespace galli
