#include "dmod/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace dmod {

std::string to_string(const Rational &q) { return q.get_str(); }

Rational parse_rational(const std::string &text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- Context

Context::Context(std::vector<std::string> xnames, std::vector<std::string> params,
                 bool extra_pair)
    : xnames_(std::move(xnames)), params_(std::move(params)), extra_pair_(extra_pair) {
  if (slots() > kMaxSlots) throw std::invalid_argument("too many variables for one context");
  for (const auto &x : xnames_) slot_names_.push_back(x);
  for (const auto &x : xnames_) slot_names_.push_back("d" + x);
  for (const auto &p : params_) slot_names_.push_back(p);
  std::set<std::string> seen;
  for (const auto &n : slot_names_) {
    if (n.empty()) throw std::invalid_argument("empty variable name");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate variable name: " + n);
  }
}

std::shared_ptr<const Context> Context::commutative(std::vector<std::string> vars) {
  if (vars.empty()) throw std::invalid_argument("variable list is empty");
  return std::shared_ptr<const Context>(new Context({}, std::move(vars), false));
}

std::shared_ptr<const Context> Context::weyl(std::vector<std::string> vars,
                                             std::vector<std::string> params,
                                             bool extra_pair) {
  if (vars.empty()) throw std::invalid_argument("variable list is empty");
  if (extra_pair) vars.push_back("t");
  return std::shared_ptr<const Context>(
      new Context(std::move(vars), std::move(params), extra_pair));
}

std::optional<std::size_t> Context::find_slot(std::string_view name) const {
  for (std::size_t i = 0; i < slot_names_.size(); ++i)
    if (slot_names_[i] == name) return i;
  return std::nullopt;
}

bool same_context(const ContextPtr &a, const ContextPtr &b) {
  return a == b || (a && b && *a == *b);
}

int canonical_compare(const Exponent &a, const Exponent &b) {
  unsigned da = a.total(), db = b.total();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = kMaxSlots; i-- > 0;)
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------- Poly

namespace {

void normalize_terms(std::vector<PolyTerm> &terms) {
  std::sort(terms.begin(), terms.end(), [](const PolyTerm &a, const PolyTerm &b) {
    return canonical_compare(a.exp, b.exp) > 0;
  });
  std::vector<PolyTerm> out;
  out.reserve(terms.size());
  for (auto &t : terms) {
    if (!out.empty() && out.back().exp == t.exp)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const PolyTerm &t) { return t.coeff == 0; });
  terms = std::move(out);
}

void require_same(const Poly &a, const Poly &b) {
  if (!same_context(a.ctx(), b.ctx())) throw ContextMismatch("operands live in different contexts");
}

} // namespace

Poly::Poly(ContextPtr ctx, std::vector<PolyTerm> terms) : ctx_(std::move(ctx)), terms_(std::move(terms)) {
  normalize_terms(terms_);
}

Poly Poly::constant(ContextPtr ctx, const Rational &c) {
  Poly p(std::move(ctx));
  if (c != 0) p.terms_.push_back({Exponent{}, c});
  return p;
}

Poly Poly::monomial(ContextPtr ctx, const Exponent &e, const Rational &c) {
  Poly p(std::move(ctx));
  if (c != 0) p.terms_.push_back({e, c});
  return p;
}

Poly Poly::generator(ContextPtr ctx, std::string_view name) {
  auto slot = ctx->find_slot(name);
  if (!slot) throw std::invalid_argument("unknown variable: " + std::string(name));
  return monomial(std::move(ctx), Exponent::unit(*slot));
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().exp.is_zero()) return terms_.back().coeff;
  return 0;
}

int Poly::degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().exp.total()); }

int Poly::degree_in_slot(std::size_t slot) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto &t : terms_) d = std::max<int>(d, t.exp[slot]);
  return d;
}

bool Poly::uses_slot(std::size_t slot) const {
  for (const auto &t : terms_)
    if (t.exp[slot]) return true;
  return false;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto &t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

std::vector<PolyTerm> merge_add(const std::vector<PolyTerm> &a, const std::vector<PolyTerm> &b,
                                int sign) {
  std::vector<PolyTerm> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? -1 : j == b.size() ? 1 : canonical_compare(a[i].exp, b[j].exp);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (sign < 0) out.back().coeff = -out.back().coeff;
    } else {
      Rational s = a[i].coeff;
      if (sign > 0) s += b[j].coeff;
      else s -= b[j].coeff;
      if (s != 0) out.push_back({a[i].exp, s});
      ++i;
      ++j;
    }
  }
  return out;
}

} // namespace

Poly &Poly::operator+=(const Poly &o) {
  if (!ctx_) ctx_ = o.ctx_;
  if (o.is_zero()) return *this;
  require_same(*this, o);
  terms_ = merge_add(terms_, o.terms_, 1);
  return *this;
}

Poly &Poly::operator-=(const Poly &o) {
  if (!ctx_) ctx_ = o.ctx_;
  if (o.is_zero()) return *this;
  require_same(*this, o);
  terms_ = merge_add(terms_, o.terms_, -1);
  return *this;
}

Poly &Poly::operator*=(const Rational &c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  Rational k = c; // callers may hand in an uncanonicalized mpq
  k.canonicalize();
  for (auto &t : terms_) t.coeff *= k;
  return *this;
}

Poly operator*(const Poly &a, const Poly &b) {
  require_same(a, b);
  const std::size_t nx = a.ctx()->nx();
  std::unordered_map<Exponent, Rational, ExponentHash> acc;
  for (const auto &ta : a.terms()) {
    for (const auto &tb : b.terms()) {
      Rational c = ta.coeff * tb.coeff;
      leibniz_expand(nx, ta.exp, tb.exp, [&](const Exponent &e, const Integer &fac) {
        acc[e] += c * fac;
      });
    }
  }
  std::vector<PolyTerm> terms;
  terms.reserve(acc.size());
  for (auto &[e, c] : acc)
    if (c != 0) terms.push_back({e, c});
  return Poly(a.ctx(), std::move(terms));
}

Poly Poly::pow(unsigned k) const {
  Poly r = constant(ctx_, 1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

bool operator==(const Poly &a, const Poly &b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (!a.terms_.empty() && !same_context(a.ctx_, b.ctx_)) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].exp == b.terms_[i].exp) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

Poly Poly::with_context(ContextPtr ctx, const std::vector<std::size_t> &slot_map) const {
  std::vector<PolyTerm> terms;
  terms.reserve(terms_.size());
  for (const auto &t : terms_) {
    Exponent e;
    for (std::size_t s = 0; s < kMaxSlots; ++s) {
      if (!t.exp[s]) continue;
      if (s >= slot_map.size() || slot_map[s] >= ctx->slots())
        throw std::invalid_argument("term uses a slot absent from the target context");
      e[slot_map[s]] += t.exp[s];
    }
    terms.push_back({e, t.coeff});
  }
  return Poly(std::move(ctx), std::move(terms));
}

namespace {

// Writes the non-derivative part of a monomial ("x^2*y*s"), empty for 1.
std::string monomial_string(const Context &ctx, const Exponent &e, bool derivatives) {
  std::string out;
  auto emit = [&](std::size_t slot) {
    if (!e[slot]) return;
    if (!out.empty()) out += '*';
    out += ctx.slot_name(slot);
    if (e[slot] > 1) out += '^' + std::to_string(e[slot]);
  };
  if (derivatives) {
    for (std::size_t i = 0; i < ctx.nx(); ++i) emit(ctx.d_slot(i));
  } else {
    for (std::size_t i = 0; i < ctx.nx(); ++i) emit(ctx.x_slot(i));
    for (std::size_t j = 0; j < ctx.nparams(); ++j) emit(ctx.param_slot(j));
  }
  return out;
}

// "c*m" with the sign stripped into `negative`.
std::string term_body(const Rational &c, const std::string &mono, bool &negative) {
  negative = c < 0;
  Rational a = abs(c);
  if (mono.empty()) return a.get_str();
  if (a == 1) return mono;
  return a.get_str() + "*" + mono;
}

std::string sum_string(const std::vector<std::pair<Rational, std::string>> &parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    bool neg = false;
    std::string body = term_body(parts[i].first, parts[i].second, neg);
    if (i == 0)
      out += neg ? "-" + body : body;
    else
      out += (neg ? " - " : " + ") + body;
  }
  return out;
}

} // namespace

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  const Context &c = *ctx_;
  if (c.is_commutative()) {
    std::vector<std::pair<Rational, std::string>> parts;
    for (const auto &t : terms_) parts.emplace_back(t.coeff, monomial_string(c, t.exp, false));
    return sum_string(parts);
  }
  // Group by derivative monomial, in order of first appearance.
  std::vector<std::pair<std::string, std::vector<std::pair<Rational, std::string>>>> groups;
  std::map<std::string, std::size_t> index;
  for (const auto &t : terms_) {
    std::string d = monomial_string(c, t.exp, true);
    auto it = index.find(d);
    if (it == index.end()) {
      it = index.emplace(d, groups.size()).first;
      groups.push_back({d, {}});
    }
    groups[it->second].second.emplace_back(t.coeff, monomial_string(c, t.exp, false));
  }
  std::string out;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto &[d, coef] = groups[g];
    bool neg = false;
    std::string body;
    if (coef.size() == 1) {
      std::string mono = coef[0].second;
      if (!d.empty()) mono = mono.empty() ? d : mono + "*" + d;
      body = term_body(coef[0].first, mono, neg);
    } else {
      body = "(" + sum_string(coef) + ")";
      if (!d.empty()) body += "*" + d;
    }
    if (g == 0)
      out += neg ? "-" + body : body;
    else
      out += (neg ? " - " : " + ") + body;
  }
  return out;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
public:
  Parser(std::string_view text, const ContextPtr &ctx) : s_(text), ctx_(ctx) {}

  Poly parse() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return p;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc(ctx_);
    bool first = true;
    for (;;) {
      skip();
      bool neg = false;
      if (accept('+')) {
      } else if (accept('-')) {
        neg = true;
      } else if (!first) {
        break;
      }
      Poly t = term();
      acc = neg ? acc - t : acc + t;
      first = false;
    }
    return acc;
  }

  Poly term() {
    Poly p = factor();
    while (accept('*')) p = p * factor();
    skip();
    if (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '('))
      throw ParseError("implicit multiplication is not allowed", pos_);
    return p;
  }

  Poly factor() {
    skip();
    if (accept('-')) return -factor();
    Poly base = primary();
    if (accept('^')) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '-') throw ParseError("negative exponent", pos_);
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected exponent", pos_);
      unsigned long k = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (k > 1000) throw ParseError("exponent too large", start);
      base = base.pow(static_cast<unsigned>(k));
    }
    return base;
  }

  Poly primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = digits();
      Integer den = 1;
      if (accept('/')) {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          throw ParseError("expected denominator", pos_);
        std::size_t at = pos_;
        den = digits();
        if (den == 0) throw ParseError("zero denominator", at);
      }
      Rational q(num, den);
      q.canonicalize();
      return Poly::constant(ctx_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto slot = ctx_->find_slot(name);
      if (!slot) throw ParseError("unknown variable '" + name + "'", start);
      return Poly::monomial(ctx_, Exponent::unit(*slot));
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Integer digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  std::string_view s_;
  ContextPtr ctx_;
  std::size_t pos_ = 0;
};

} // namespace

Poly parse_poly(std::string_view text, const ContextPtr &ctx) { return Parser(text, ctx).parse(); }

Poly parse_poly(std::string_view text, const std::vector<std::string> &vars) {
  return parse_poly(text, Context::commutative(vars));
}

// ---------------------------------------------------------------- calculus

Poly derivative(const Poly &f, std::size_t slot) {
  std::vector<PolyTerm> terms;
  for (const auto &t : f.terms()) {
    if (!t.exp[slot]) continue;
    Exponent e = t.exp;
    Rational c = t.coeff * static_cast<unsigned long>(e[slot]);
    --e[slot];
    terms.push_back({e, c});
  }
  return Poly(f.ctx(), std::move(terms));
}

std::vector<Poly> gradient(const Poly &f) {
  std::vector<Poly> g;
  for (std::size_t j = 0; j < f.ctx()->nparams(); ++j)
    g.push_back(derivative(f, f.ctx()->param_slot(j)));
  return g;
}

Rational value_at_origin(const Poly &f) { return f.constant_term(); }

std::optional<Poly> exact_divide(const Poly &num, const Poly &den) {
  if (den.is_zero()) throw std::domain_error("division by the zero polynomial");
  require_same(num, den);
  const PolyTerm &lead = den.leading();
  Poly rem = num;
  std::vector<PolyTerm> quot;
  while (!rem.is_zero()) {
    const PolyTerm &r = rem.leading();
    if (!lead.exp.divides(r.exp)) return std::nullopt;
    PolyTerm q{r.exp - lead.exp, r.coeff / lead.coeff};
    quot.push_back(q);
    rem -= Poly::monomial(den.ctx(), q.exp, q.coeff) * den;
  }
  return Poly(num.ctx(), std::move(quot));
}

Integer content(const std::vector<Integer> &values) {
  Integer g = 0;
  for (const auto &v : values) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

// ---------------------------------------------------------------- matrices

CommMatrix::CommMatrix(std::size_t rows, std::size_t cols, const ContextPtr &ctx)
    : rows_(rows), cols_(cols), ctx_(ctx), data_(rows * cols, Poly(ctx)) {}

CommMatrix::CommMatrix(std::vector<std::vector<Poly>> rows)
    : rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()) {
  for (auto &r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix rows");
    for (auto &p : r) {
      if (!ctx_) ctx_ = p.ctx();
      data_.push_back(std::move(p));
    }
  }
}

CommMatrix CommMatrix::minor_without(std::size_t row, std::size_t col) const {
  CommMatrix m(rows_ - 1, cols_ - 1, ctx_);
  for (std::size_t r = 0, rr = 0; r < rows_; ++r) {
    if (r == row) continue;
    for (std::size_t c = 0, cc = 0; c < cols_; ++c) {
      if (c == col) continue;
      m(rr, cc++) = (*this)(r, c);
    }
    ++rr;
  }
  return m;
}

CommMatrix CommMatrix::transposed() const {
  CommMatrix m(cols_, rows_, ctx_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

namespace {
void require_square(const CommMatrix &m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
}
} // namespace

Poly determinant_cofactor(const CommMatrix &m) {
  require_square(m);
  const std::size_t n = m.rows();
  if (n == 0) return Poly::constant(m.ctx(), 1);
  if (n == 1) return m(0, 0);
  Poly det(m.ctx());
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    Poly term = m(0, c) * determinant_cofactor(m.minor_without(0, c));
    if (c % 2) det -= term;
    else det += term;
  }
  return det;
}

Poly determinant_bareiss(const CommMatrix &input) {
  require_square(input);
  const std::size_t n = input.rows();
  if (n == 0) return Poly::constant(input.ctx(), 1);
  CommMatrix a = input;
  Poly prev = Poly::constant(input.ctx(), 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) return Poly(input.ctx());
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        auto q = exact_divide(v, prev);
        if (!q) throw std::logic_error("Bareiss step is not exact");
        a(i, j) = std::move(*q);
      }
      a(i, k) = Poly(input.ctx());
    }
    prev = a(k, k);
  }
  Poly det = a(n - 1, n - 1);
  return negate ? -det : det;
}

Poly determinant(const CommMatrix &m) {
  require_square(m);
  return m.rows() <= 3 ? determinant_cofactor(m) : determinant_bareiss(m);
}

CommMatrix adjugate(const CommMatrix &m) {
  require_square(m);
  const std::size_t n = m.rows();
  CommMatrix adj(n, n, m.ctx());
  if (n == 1) {
    adj(0, 0) = Poly::constant(m.ctx(), 1);
    return adj;
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Poly cof = determinant(m.minor_without(r, c));
      adj(c, r) = (r + c) % 2 ? -cof : cof;
    }
  return adj;
}

} // namespace dmod
