#pragma once

// Exact sparse multivariate polynomials over the rationals.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "galli/error.hpp"

namespace galli {

using Rational = mpq_class;

std::string rational_string(const Rational& q);

inline constexpr std::size_t kMaxVars = 12;

/// Dense exponent vector. Entries past the owning VarSet's size stay zero.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};

  int degree() const;
  bool divides(const Monomial& other) const;
  bool is_one() const { return degree() == 0; }
  bool operator==(const Monomial&) const = default;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);
  static Monomial gcd(const Monomial& a, const Monomial& b);
};

/// Degree-reverse-lexicographic "greater than", so ordered containers list the leading term first.
struct DegRevLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Ordered, immutable list of variable names shared by value.
class VarSet {
 public:
  VarSet() : names_(std::make_shared<const std::vector<std::string>>()) {}
  explicit VarSet(std::vector<std::string> names);

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require(std::string_view name) const;

  /// The same names without the listed indices (order preserved).
  VarSet without(std::span<const std::size_t> dropped) const;

  bool operator==(const VarSet& other) const {
    return names_ == other.names_ || *names_ == *other.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, DegRevLexGreater>;

  Poly() = default;
  explicit Poly(VarSet vars) : vars_(std::move(vars)) {}

  static Poly constant(const VarSet& vars, const Rational& c);
  static Poly variable(const VarSet& vars, std::size_t index);
  static Poly variable(const VarSet& vars, std::string_view name);
  static Poly term(const VarSet& vars, const Monomial& m, const Rational& c);

  const VarSet& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Nonzero constant.
  bool is_unit() const { return is_constant() && !is_zero(); }
  Rational constant_term() const;

  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }
  int total_degree() const;
  int degree_in(std::size_t var) const;
  bool free_of(std::size_t var) const { return degree_in(var) == 0; }
  /// Minimal total degree of a term; nullopt for the zero polynomial (order infinity).
  std::optional<int> order_at_origin() const;

  Poly monic() const;
  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  Poly mul_term(const Monomial& m, const Rational& c) const;
  Poly pow(unsigned exponent) const;

  Poly partial(std::size_t var) const;
  Poly partial(std::string_view var) const { return partial(vars_.require(var)); }

  /// Ring homomorphism sending variable i to images[i]; images share a target VarSet.
  Poly substitute(std::span<const Poly> images, const VarSet& target) const;
  /// Replace one variable by an image over the same VarSet.
  Poly substitute_one(std::size_t var, const Poly& image) const;

  /// Exact quotient; throws NotDivisible carrying the remainder.
  Poly divide_exact(const Poly& divisor) const;
  std::optional<Poly> try_divide(const Poly& divisor) const;

  Rational evaluate(std::span<const Rational> point) const;

  std::string to_string() const;

  bool operator==(const Poly& other) const { return vars_ == other.vars_ && terms_ == other.terms_; }

  /// Insert c*m (merging with an existing term).
  void add_term(const Monomial& m, const Rational& c);

 private:
  void check_same(const Poly& other) const;

  VarSet vars_;
  TermMap terms_;
};

/// Parses the polynomial grammar; throws SyntaxError / UnknownVariable.
Poly parse_poly(std::string_view text, const VarSet& vars);

/// Identity images of every variable of `vars` (useful as a starting substitution).
std::vector<Poly> identity_images(const VarSet& vars);

/// Map a polynomial into another VarSet by variable name; variables missing from `target` map to zero.
Poly rename_into(const Poly& p, const VarSet& target);

/// Orders polynomials by their term sequences (stable canonical order for output).
bool poly_less(const Poly& a, const Poly& b);

}  // namespace galli
