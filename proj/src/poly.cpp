#include "galli/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace galli {

std::string rational_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------- Monomial

int Monomial::degree() const {
  int d = 0;
  for (auto e : exp) d += e;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (exp[i] > other.exp[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(a.exp[i] + b.exp[i]);
  return r;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(exp[i] - divisor.exp[i]);
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = std::max(a.exp[i], b.exp[i]);
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = std::min(a.exp[i], b.exp[i]);
  return r;
}

bool DegRevLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da > db;
  // Ties: the monomial with the smaller exponent in the last differing variable is larger.
  for (std::size_t i = kMaxVars; i-- > 0;) {
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i];
  }
  return false;
}

// ---------------------------------------------------------------- VarSet

VarSet::VarSet(std::vector<std::string> names) {
  if (names.size() > kMaxVars)
    throw Error(ErrorCode::ResourceLimit, "at most " + std::to_string(kMaxVars) + " variables per chart");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names[i] == names[j]) throw Error(ErrorCode::InvalidScenario, "duplicate variable '" + names[i] + "'");
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> VarSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return i;
  return std::nullopt;
}

std::size_t VarSet::require(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw Error(ErrorCode::UnknownVariable, "unknown variable '" + std::string(name) + "'");
  return *i;
}

VarSet VarSet::without(std::span<const std::size_t> dropped) const {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < size(); ++i)
    if (std::find(dropped.begin(), dropped.end(), i) == dropped.end()) kept.push_back(name(i));
  return VarSet(std::move(kept));
}

// ---------------------------------------------------------------- Poly

Poly Poly::constant(const VarSet& vars, const Rational& c) {
  Poly p(vars);
  p.add_term(Monomial{}, c);
  return p;
}

Poly Poly::variable(const VarSet& vars, std::size_t index) {
  Monomial m;
  m.exp[index] = 1;
  return term(vars, m, 1);
}

Poly Poly::variable(const VarSet& vars, std::string_view name) { return variable(vars, vars.require(name)); }

Poly Poly::term(const VarSet& vars, const Monomial& m, const Rational& c) {
  Poly p(vars);
  p.add_term(m, c);
  return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::check_same(const Poly& other) const {
  if (!(vars_ == other.vars_)) throw Error(ErrorCode::VarSetMismatch, "operands live on different variable sets");
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

int Poly::total_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

int Poly::degree_in(std::size_t var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max<int>(d, m.exp[var]);
  return d;
}

std::optional<int> Poly::order_at_origin() const {
  if (terms_.empty()) return std::nullopt;
  // Terms are sorted by degree descending, so the minimum sits at the end.
  return terms_.rbegin()->first.degree();
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  Poly r = *this;
  const Rational inv = 1 / leading_coefficient();
  for (auto& [m, c] : r.terms_) c *= inv;
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& other) {
  check_same(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_same(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same(b);
  Poly r(a.vars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly Poly::mul_term(const Monomial& m, const Rational& c) const {
  Poly r(vars_);
  if (c == 0) return r;
  for (const auto& [mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
  return r;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result = constant(vars_, 1);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Poly Poly::partial(std::size_t var) const {
  if (var >= vars_.size()) throw Error(ErrorCode::UnknownVariable, "variable index out of range");
  Poly r(vars_);
  for (const auto& [m, c] : terms_) {
    if (m.exp[var] == 0) continue;
    Monomial d = m;
    d.exp[var] -= 1;
    r.add_term(d, c * static_cast<unsigned long>(m.exp[var]));
  }
  return r;
}

Poly Poly::substitute(std::span<const Poly> images, const VarSet& target) const {
  if (images.size() != vars_.size())
    throw Error(ErrorCode::VarSetMismatch, "substitution must give one image per variable");
  for (const auto& img : images)
    if (!(img.vars() == target)) throw Error(ErrorCode::VarSetMismatch, "substitution images disagree on target variables");
  std::vector<std::vector<Poly>> powers(vars_.size());
  auto power = [&](std::size_t v, unsigned e) -> const Poly& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  Poly r(target);
  for (const auto& [m, c] : terms_) {
    Poly t = constant(target, c);
    for (std::size_t v = 0; v < vars_.size(); ++v)
      if (m.exp[v] > 0) t = t * power(v, m.exp[v]);
    r += t;
  }
  return r;
}

Poly Poly::substitute_one(std::size_t var, const Poly& image) const {
  auto images = identity_images(vars_);
  images.at(var) = image;
  return substitute(images, vars_);
}

std::optional<Poly> Poly::try_divide(const Poly& divisor) const {
  check_same(divisor);
  if (divisor.is_zero()) throw Error(ErrorCode::NotDivisible, "division by zero polynomial");
  Poly rest = *this;
  Poly quotient(vars_);
  const Monomial& lm = divisor.leading_monomial();
  const Rational& lc = divisor.leading_coefficient();
  while (!rest.is_zero()) {
    const Monomial& m = rest.leading_monomial();
    if (!lm.divides(m)) return std::nullopt;
    const Monomial t = m / lm;
    const Rational c = rest.leading_coefficient() / lc;
    quotient.add_term(t, c);
    rest -= divisor.mul_term(t, c);
  }
  return quotient;
}

Poly Poly::divide_exact(const Poly& divisor) const {
  auto q = try_divide(divisor);
  if (!q) {
    // Full division remainder as witness.
    Poly rest = *this;
    Poly rem(vars_);
    const Monomial& lm = divisor.leading_monomial();
    while (!rest.is_zero()) {
      const Monomial m = rest.leading_monomial();
      const Rational c = rest.leading_coefficient();
      if (lm.divides(m)) {
        rest -= divisor.mul_term(m / lm, c / divisor.leading_coefficient());
      } else {
        rem.add_term(m, c);
        rest.add_term(m, -c);
      }
    }
    throw Error(ErrorCode::NotDivisible,
                "(" + to_string() + ") is not divisible by (" + divisor.to_string() + "); remainder " + rem.to_string());
  }
  return *q;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t v = 0; v < vars_.size(); ++v)
      for (unsigned k = 0; k < m.exp[v]; ++k) t *= point[v];
    sum += t;
  }
  return sum;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const Rational magnitude = abs(c);
    std::string mono;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      if (m.exp[v] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += vars_.name(v);
      if (m.exp[v] > 1) mono += '^' + std::to_string(m.exp[v]);
    }
    if (mono.empty()) {
      out << magnitude.get_str();
    } else if (magnitude == 1) {
      out << mono;
    } else {
      out << magnitude.get_str() << '*' << mono;
    }
  }
  return out.str();
}

std::vector<Poly> identity_images(const VarSet& vars) {
  std::vector<Poly> images;
  images.reserve(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) images.push_back(Poly::variable(vars, i));
  return images;
}

Poly rename_into(const Poly& p, const VarSet& target) {
  std::vector<Poly> images;
  for (std::size_t i = 0; i < p.vars().size(); ++i) {
    auto j = target.index_of(p.vars().name(i));
    images.push_back(j ? Poly::variable(target, *j) : Poly(target));
  }
  return p.substitute(images, target);
}

bool poly_less(const Poly& a, const Poly& b) {
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  DegRevLexGreater greater;
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) return greater(ib->first, ia->first);
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == a.terms().end() && ib != b.terms().end();
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarSet& vars) : text_(text), vars_(vars) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != text_.size()) fail("end of input");
    return p;
  }

 private:
  [[noreturn]] void fail(std::string_view expected) const {
    throw Error(ErrorCode::SyntaxError,
                "at position " + std::to_string(pos_) + ": expected " + std::string(expected) + " in '" + std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  // expr := ['-'] term (('+'|'-') term)*
  Poly expr() {
    const bool negate = accept('-');
    Poly acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    Poly base = primary();
    while (accept('^')) base = base.pow(natural());
    return base;
  }

  Poly primary() {
    skip();
    if (pos_ >= text_.size()) fail("rational, variable or '('");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value(digits(), 10);
      if (accept('/')) {
        skip();
        const std::string den = digits();
        mpz_class d(den, 10);
        if (d == 0) fail("nonzero denominator");
        value /= d;
      }
      return Poly::constant(vars_, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      auto index = vars_.index_of(name);
      if (!index) throw Error(ErrorCode::UnknownVariable, "unknown variable '" + std::string(name) + "'");
      return Poly::variable(vars_, *index);
    }
    fail("rational, variable or '('");
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  unsigned natural() {
    skip();
    const std::string d = digits();
    if (d.size() > 4) fail("exponent below 10000");
    return static_cast<unsigned>(std::stoul(d));
  }

  std::string_view text_;
  const VarSet& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const VarSet& vars) { return Parser(text, vars).parse(); }

}  // namespace galli
