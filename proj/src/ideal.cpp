#include "galli/ideal.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>

namespace galli {

GbLimits& gb_limits() {
  static GbLimits limits;
  return limits;
}

namespace {

struct Budget {
  const GbLimits& limits;
  std::size_t steps = 0;

  void tick() {
    if (++steps > limits.max_steps)
      throw Error(ErrorCode::ResourceLimit, "Groebner step budget of " + std::to_string(limits.max_steps) + " exceeded");
  }
};

const Poly* find_reducer(const Monomial& m, std::span<const Poly> basis) {
  for (const auto& g : basis)
    if (g.leading_monomial().divides(m)) return &g;
  return nullptr;
}

// Reduce until the leading term is irreducible.
Poly top_reduce(Poly p, std::span<const Poly> basis, Budget* budget) {
  while (!p.is_zero()) {
    const Poly* g = find_reducer(p.leading_monomial(), basis);
    if (!g) break;
    if (budget) budget->tick();
    p -= g->mul_term(p.leading_monomial() / g->leading_monomial(), p.leading_coefficient() / g->leading_coefficient());
  }
  return p;
}

Poly full_reduce(Poly p, std::span<const Poly> basis, Budget* budget) {
  Poly done(p.vars());
  while (!p.is_zero()) {
    const Monomial m = p.leading_monomial();
    const Rational c = p.leading_coefficient();
    if (const Poly* g = find_reducer(m, basis)) {
      if (budget) budget->tick();
      p -= g->mul_term(m / g->leading_monomial(), c / g->leading_coefficient());
    } else {
      done.add_term(m, c);
      p.add_term(m, -c);
    }
  }
  return done;
}

Poly s_poly(const Poly& f, const Poly& g) {
  const Monomial l = Monomial::lcm(f.leading_monomial(), g.leading_monomial());
  return f.mul_term(l / f.leading_monomial(), 1 / f.leading_coefficient()) -
         g.mul_term(l / g.leading_monomial(), 1 / g.leading_coefficient());
}

bool coprime(const Monomial& a, const Monomial& b) { return Monomial::gcd(a, b).is_one(); }

}  // namespace

Poly normal_form(const Poly& p, std::span<const Poly> basis) { return full_reduce(p, basis, nullptr); }

std::vector<Poly> groebner_basis(const VarSet& vars, std::span<const Poly> gens, const GbLimits& limits) {
  Budget budget{limits};
  std::vector<Poly> basis;
  for (const auto& g : gens) {
    if (!(g.vars() == vars)) throw Error(ErrorCode::VarSetMismatch, "generator over a different variable set");
    if (g.is_zero()) continue;
    if (g.is_constant()) return {Poly::constant(vars, 1)};
    basis.push_back(g.monic());
  }
  if (basis.empty()) return {};

  // Pending pairs ordered by lcm (normal selection strategy).
  struct Pair {
    Monomial lcm;
    std::size_t i, j;
  };
  auto pair_less = [](const Pair& a, const Pair& b) {
    DegRevLexGreater greater;
    if (greater(b.lcm, a.lcm)) return true;
    if (greater(a.lcm, b.lcm)) return false;
    return std::pair(a.j, a.i) < std::pair(b.j, b.i);
  };
  std::set<Pair, decltype(pair_less)> pending(pair_less);
  std::set<std::pair<std::size_t, std::size_t>> open;
  auto add_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      pending.insert(Pair{Monomial::lcm(basis[i].leading_monomial(), basis[j].leading_monomial()), i, j});
      open.emplace(i, j);
    }
  };
  for (std::size_t j = 1; j < basis.size(); ++j) add_pairs_for(j);

  auto is_open = [&](std::size_t a, std::size_t b) { return open.count(std::minmax(a, b)) > 0; };

  while (!pending.empty()) {
    const Pair pair = *pending.begin();
    pending.erase(pending.begin());
    open.erase({pair.i, pair.j});
    budget.tick();
    const Poly& f = basis[pair.i];
    const Poly& g = basis[pair.j];
    if (coprime(f.leading_monomial(), g.leading_monomial())) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pair.i || k == pair.j) continue;
      if (basis[k].leading_monomial().divides(pair.lcm) && !is_open(pair.i, k) && !is_open(pair.j, k)) chain = true;
    }
    if (chain) continue;
    Poly r = top_reduce(s_poly(f, g), basis, &budget);
    if (r.is_zero()) continue;
    if (r.is_constant()) return {Poly::constant(vars, 1)};
    if (r.total_degree() > limits.max_degree)
      throw Error(ErrorCode::ResourceLimit, "Groebner degree cap of " + std::to_string(limits.max_degree) + " exceeded");
    basis.push_back(r.monic());
    add_pairs_for(basis.size() - 1);
  }

  // Minimize, then interreduce.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < basis.size() && !redundant; ++k) {
      if (k == i) continue;
      const Monomial& a = basis[k].leading_monomial();
      const Monomial& b = basis[i].leading_monomial();
      if (a.divides(b) && (!(a == b) || k < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    reduced.push_back(full_reduce(minimal[i], others, &budget).monic());
  }
  DegRevLexGreater greater;
  std::sort(reduced.begin(), reduced.end(),
            [&](const Poly& a, const Poly& b) { return greater(b.leading_monomial(), a.leading_monomial()); });
  return reduced;
}

Ideal::Ideal(VarSet vars, std::vector<Poly> gens) : vars_(std::move(vars)), cache_(std::make_shared<Cache>()) {
  for (auto& g : gens) {
    if (!(g.vars() == vars_)) throw Error(ErrorCode::VarSetMismatch, "generator over a different variable set");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

Ideal Ideal::parse(const VarSet& vars, std::span<const std::string> gens) {
  std::vector<Poly> polys;
  for (const auto& text : gens) polys.push_back(parse_poly(text, vars));
  return Ideal(vars, std::move(polys));
}

const std::vector<Poly>& Ideal::groebner() const {
  std::call_once(cache_->once, [this] { cache_->basis = groebner_basis(vars_, gens_, gb_limits()); });
  return cache_->basis;
}

bool Ideal::is_unit() const {
  for (const auto& g : gens_)
    if (g.is_constant()) return true;
  const auto& gb = groebner();
  return gb.size() == 1 && gb.front().is_constant();
}

Poly Ideal::reduce(const Poly& p) const {
  if (!(p.vars() == vars_)) throw Error(ErrorCode::VarSetMismatch, "polynomial over a different variable set");
  return normal_form(p, groebner());
}

bool Ideal::member(const Poly& p) const {
  if (p.is_zero()) return true;
  return reduce(p).is_zero();
}

bool Ideal::contains(const Ideal& other) const {
  for (const auto& g : other.gens())
    if (!member(g)) return false;
  return true;
}

int Ideal::dimension() const {
  const auto& gb = groebner();
  const std::size_t n = vars_.size();
  if (gb.empty()) return static_cast<int>(n);
  if (is_unit()) return -1;
  std::vector<std::uint32_t> supports;
  for (const auto& g : gb) {
    std::uint32_t s = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (g.leading_monomial().exp[v] > 0) s |= 1u << v;
    supports.push_back(s);
  }
  int best = 0;
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    const int size = __builtin_popcount(subset);
    if (size <= best) continue;
    bool independent = true;
    for (auto s : supports)
      if ((s & ~subset) == 0) {
        independent = false;
        break;
      }
    if (independent) best = size;
  }
  return best;
}

Ideal Ideal::substitute(std::span<const Poly> images, const VarSet& target) const {
  std::vector<Poly> out;
  for (const auto& g : gens_) out.push_back(g.substitute(images, target));
  return Ideal(target, std::move(out));
}

Ideal sum(const Ideal& a, const Ideal& b) {
  if (!(a.vars() == b.vars())) throw Error(ErrorCode::VarSetMismatch, "ideals over different variable sets");
  std::vector<Poly> gens = a.gens();
  gens.insert(gens.end(), b.gens().begin(), b.gens().end());
  return Ideal(a.vars(), std::move(gens));
}

Ideal product(const Ideal& a, const Ideal& b) {
  if (!(a.vars() == b.vars())) throw Error(ErrorCode::VarSetMismatch, "ideals over different variable sets");
  std::vector<Poly> gens;
  for (const auto& f : a.gens())
    for (const auto& g : b.gens()) gens.push_back(f * g);
  return Ideal(a.vars(), std::move(gens));
}

Ideal power(const Ideal& a, unsigned k) {
  Ideal result = Ideal::unit(a.vars());
  for (unsigned i = 0; i < k; ++i) result = product(result, a);
  return result;
}

Ideal delta(const Ideal& ideal) {
  std::vector<Poly> gens = ideal.gens();
  for (const auto& g : ideal.gens())
    for (std::size_t v = 0; v < ideal.vars().size(); ++v) gens.push_back(g.partial(v));
  return Ideal(ideal.vars(), std::move(gens));
}

Ideal delta_power(const Ideal& ideal, unsigned a) {
  Ideal result = ideal;
  for (unsigned i = 0; i < a; ++i) {
    if (result.is_unit()) return Ideal::unit(ideal.vars());
    // Passing through the reduced basis keeps generator counts from exploding.
    result = delta(Ideal(ideal.vars(), result.groebner()));
  }
  return result;
}

unsigned valuation(const Poly& p, const Poly& h) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroIdeal, "valuation of the zero polynomial");
  unsigned e = 0;
  Poly rest = p;
  while (auto q = rest.try_divide(h)) {
    rest = std::move(*q);
    ++e;
  }
  return e;
}

FactorSplit extract_factor(const Ideal& ideal, const Poly& h) {
  if (ideal.is_zero()) throw Error(ErrorCode::ZeroIdeal, "monomial factor of the zero ideal");
  if (h.is_constant()) throw Error(ErrorCode::NotDivisible, "factor must be nonconstant");
  unsigned e = ~0u;
  for (const auto& g : ideal.gens()) e = std::min(e, valuation(g, h));
  const Poly he = h.pow(e);
  std::vector<Poly> rest;
  for (const auto& g : ideal.gens()) rest.push_back(g.divide_exact(he));
  return {e, Ideal(ideal.vars(), std::move(rest))};
}

namespace {

using Column = std::map<Monomial, Rational, DegRevLexGreater>;

Column column_of(const Poly& p) { return Column(p.terms().begin(), p.terms().end()); }

// One solution of sum_j x_j cols[j] = rhs (free unknowns set to zero).
std::optional<std::vector<Rational>> solve_columns(const std::vector<Column>& cols, const Column& rhs) {
  std::vector<Monomial> rows;
  std::map<Monomial, std::size_t, DegRevLexGreater> row_of;
  auto note = [&](const Column& c) {
    for (const auto& [m, _] : c)
      if (row_of.emplace(m, rows.size()).second) rows.push_back(m);
  };
  for (const auto& c : cols) note(c);
  note(rhs);
  const std::size_t n = cols.size();
  std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(n + 1, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [m, c] : cols[j]) a[row_of.at(m)][j] = c;
  for (const auto& [m, c] : rhs) a[row_of.at(m)][n] = c;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < a.size(); ++j) {
    std::size_t p = r;
    while (p < a.size() && a[p][j] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][j];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][j] == 0) continue;
      const Rational f = a[i][j];
      for (std::size_t k = j; k <= n; ++k) a[i][k] -= f * a[r][k];
    }
    pivots.push_back(j);
    ++r;
  }
  for (std::size_t i = r; i < a.size(); ++i)
    if (a[i][n] != 0) return std::nullopt;
  std::vector<Rational> x(n, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][n];
  return x;
}

std::string fresh_name(const VarSet& vars) {
  std::string name = "inv";
  while (vars.index_of(name)) name += "_";
  return name;
}

// The ring with one more variable t, and the ideal plus <1 - t*h> there.
std::pair<VarSet, Ideal> with_inverse(const Ideal& ideal, const Poly& h) {
  auto names = ideal.vars().names();
  names.push_back(fresh_name(ideal.vars()));
  VarSet ext(names);
  std::vector<Poly> images;
  for (std::size_t i = 0; i < ideal.vars().size(); ++i) images.push_back(Poly::variable(ext, i));
  std::vector<Poly> gens;
  for (const auto& g : ideal.gens()) gens.push_back(g.substitute(images, ext));
  const Poly t = Poly::variable(ext, names.size() - 1);
  gens.push_back(Poly::constant(ext, 1) - t * h.substitute(images, ext));
  return {ext, Ideal(ext, std::move(gens))};
}

void monomials_upto(std::size_t n, int degree, std::vector<int>& cur, std::size_t i, int left, std::vector<Monomial>& out) {
  if (i == n) {
    Monomial m;
    for (std::size_t k = 0; k < n; ++k) m.exp[k] = static_cast<std::uint16_t>(cur[k]);
    out.push_back(m);
    return;
  }
  for (int e = 0; e <= left; ++e) {
    cur[i] = e;
    monomials_upto(n, degree, cur, i + 1, left - e, out);
  }
  cur[i] = 0;
}

}  // namespace

bool misses_open(const Ideal& ideal, std::span<const Poly> opens) {
  if (ideal.is_unit()) return true;
  Poly h = Poly::constant(ideal.vars(), 1);
  for (const auto& o : opens) h = h * o;
  if (h.is_unit()) return false;
  if (h.is_zero()) return true;
  return with_inverse(ideal, h).second.is_unit();
}

std::optional<std::vector<Rational>> minimal_polynomial(const Ideal& ideal, std::size_t v, unsigned max_degree) {
  if (ideal.dimension() != 0) return std::nullopt;
  const auto& gb = ideal.groebner();
  const Poly x = Poly::variable(ideal.vars(), v);
  std::vector<Column> cols{column_of(normal_form(Poly::constant(ideal.vars(), 1), gb))};
  Poly power = x;
  for (unsigned d = 1; d <= max_degree; ++d) {
    Column rhs = column_of(normal_form(power, gb));
    for (auto& [m, c] : rhs) c = -c;
    if (auto sol = solve_columns(cols, rhs)) {
      sol->push_back(1);
      return sol;
    }
    cols.push_back(column_of(normal_form(power, gb)));
    power = power * x;
  }
  return std::nullopt;
}

std::optional<Poly> solvable_after_inverting(const Ideal& ideal, const Poly& h, std::size_t v, int max_degree) {
  const auto [ext, j] = with_inverse(ideal, h);
  if (j.is_unit()) return std::nullopt;
  const auto& gb = j.groebner();
  const std::size_t n = ideal.vars().size();
  std::vector<Monomial> all;
  std::vector<int> cur(n, 0);
  monomials_upto(n, max_degree, cur, 0, max_degree, all);
  auto lift = [&](const Monomial& m) { return Poly::term(ext, m, 1); };
  std::vector<Monomial> free;
  std::vector<Column> cols;
  for (const auto& m : all) {
    if (m.exp[v] != 0) continue;
    free.push_back(m);
    cols.push_back(column_of(normal_form(lift(m), gb)));
  }
  Monomial mv;
  mv.exp[v] = 1;
  Column rhs = column_of(normal_form(lift(mv), gb));
  for (auto& [m, c] : rhs) c = -c;
  auto sol = solve_columns(cols, rhs);
  if (!sol) return std::nullopt;
  Poly f = Poly::variable(ideal.vars(), v);
  for (std::size_t i = 0; i < free.size(); ++i)
    if ((*sol)[i] != 0) f.add_term(free[i], (*sol)[i]);
  return f;
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  if (n > mpz_class("1000000000000")) return {1, n};
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs) {
  std::vector<Rational> c = coeffs;
  while (!c.empty() && c.back() == 0) c.pop_back();
  std::set<Rational> roots;
  std::size_t low = 0;
  while (low < c.size() && c[low] == 0) ++low;
  if (low > 0 && low < c.size()) roots.insert(0);
  c.erase(c.begin(), c.begin() + static_cast<long>(std::min(low, c.size())));
  if (c.size() >= 2) {
    mpz_class den = 1;
    for (const auto& x : c) den = lcm(den, mpz_class(x.get_den()));
    std::vector<mpz_class> z;
    for (const auto& x : c) z.push_back(mpz_class(x * den));
    auto value = [&](const Rational& x) {
      Rational v = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
      return v;
    };
    for (const auto& p : divisors(z.front()))
      for (const auto& q : divisors(z.back()))
        for (int sign : {1, -1}) {
          Rational x(sign * p, q);
          x.canonicalize();
          if (value(x) == 0) roots.insert(x);
        }
  }
  return {roots.begin(), roots.end()};
}

}  // namespace galli
