#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orthotau/error.hpp"
#include "orthotau/rational.hpp"

namespace orthotau {

// Ordered, immutable set of variable names shared by all polynomials in one
// computation.  Polynomials over different VarSets must never be mixed.
class VarSet {
 public:
  explicit VarSet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!valid_identifier(names_[i]))
        throw config_error("invalid variable name: '" + names_[i] + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j])
          throw config_error("duplicate variable name: '" + names_[i] + "'");
    }
  }

  std::size_t size() const { return names_.size(); }

  const std::string& name(std::size_t i) const {
    if (i >= names_.size()) throw internal_error("variable index out of range");
    return names_[i];
  }

  std::optional<std::size_t> find(const std::string& n) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == n) return i;
    return std::nullopt;
  }

  std::size_t index_of(const std::string& n) const {
    auto i = find(n);
    if (!i) throw config_error("unknown variable: '" + n + "'");
    return *i;
  }

  bool same(const VarSet& o) const { return names_ == o.names_; }

  static bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    auto alpha = [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(s[0])) return false;
    for (char c : s)
      if (!alpha(c) && !digit(c)) return false;
    return true;
  }

 private:
  std::vector<std::string> names_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

inline VarSetPtr make_varset(std::vector<std::string> names) {
  return std::make_shared<const VarSet>(std::move(names));
}

// Exponent vector; entry i is the exponent of variable i.  Size always equals
// the VarSet size and entries are nonnegative.
using Expo = std::vector<int32_t>;

// Canonical monomial order: total degree ascending; for equal degree the
// first differing exponent decides, larger exponent first (so among equal
// degrees, monomials richer in earlier variables come earlier).  This order
// is multiplication-compatible, which exact division relies on.
struct MonoCmp {
  bool operator()(const Expo& a, const Expo& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    long long ta = 0, tb = 0;
    for (auto x : a) ta += x;
    for (auto x : b) tb += x;
    if (ta != tb) return ta < tb;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] > b[i];
    return false;
  }
};

// Sparse multivariate polynomial with exact rational coefficients.
// Invariants: vars is non-null; every exponent vector has size vars->size()
// with nonnegative entries; no zero coefficient is stored.
struct PolyScalar {
  VarSetPtr vars;
  std::map<Expo, Rational, MonoCmp> terms;
};

inline void check_vars(const PolyScalar& a) {
  if (!a.vars) throw internal_error("polynomial with null variable set");
}

inline void check_same_vars(const PolyScalar& a, const PolyScalar& b) {
  check_vars(a);
  check_vars(b);
  if (a.vars == b.vars || a.vars->same(*b.vars)) return;
  throw internal_error("polynomial operands use different variable sets");
}

inline PolyScalar poly_zero(VarSetPtr v) {
  if (!v) throw internal_error("poly_zero: null variable set");
  return PolyScalar{std::move(v), {}};
}

inline PolyScalar poly_const(VarSetPtr v, const Rational& c) {
  PolyScalar p = poly_zero(std::move(v));
  Rational cc = c;
  cc.canonicalize();  // defend against raw mpq_class(n, d) inputs
  if (cc != 0) p.terms.emplace(Expo(p.vars->size(), 0), cc);
  return p;
}

inline PolyScalar poly_one(VarSetPtr v) { return poly_const(std::move(v), Rational(1)); }

inline PolyScalar poly_var(VarSetPtr v, std::size_t idx) {
  PolyScalar p = poly_zero(std::move(v));
  if (idx >= p.vars->size()) throw internal_error("poly_var: index out of range");
  Expo e(p.vars->size(), 0);
  e[idx] = 1;
  p.terms.emplace(std::move(e), Rational(1));
  return p;
}

inline bool poly_is_zero(const PolyScalar& a) {
  check_vars(a);
  return a.terms.empty();
}

inline bool poly_equal(const PolyScalar& a, const PolyScalar& b) {
  check_same_vars(a, b);
  if (a.terms.size() != b.terms.size()) return false;
  auto it = a.terms.begin();
  auto jt = b.terms.begin();
  for (; it != a.terms.end(); ++it, ++jt)
    if (it->first != jt->first || it->second != jt->second) return false;
  return true;
}

inline PolyScalar poly_neg(const PolyScalar& a) {
  check_vars(a);
  PolyScalar r{a.vars, {}};
  for (const auto& [e, c] : a.terms) r.terms.emplace(e, -c);
  return r;
}

inline PolyScalar poly_scale(const PolyScalar& a, const Rational& c) {
  check_vars(a);
  PolyScalar r{a.vars, {}};
  Rational cc = c;
  cc.canonicalize();  // defend against raw mpq_class(n, d) inputs
  if (cc == 0) return r;
  for (const auto& [e, tc] : a.terms) r.terms.emplace(e, tc * cc);
  return r;
}

inline PolyScalar poly_add(const PolyScalar& a, const PolyScalar& b) {
  check_same_vars(a, b);
  PolyScalar r{a.vars, a.terms};
  for (const auto& [e, c] : b.terms) {
    auto it = r.terms.find(e);
    if (it == r.terms.end()) {
      r.terms.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) r.terms.erase(it);
    }
  }
  return r;
}

inline PolyScalar poly_sub(const PolyScalar& a, const PolyScalar& b) {
  return poly_add(a, poly_neg(b));
}

inline bool poly_is_constant(const PolyScalar& a) {
  check_vars(a);
  if (a.terms.empty()) return true;
  if (a.terms.size() != 1) return false;
  for (auto x : a.terms.begin()->first)
    if (x != 0) return false;
  return true;
}

inline Rational poly_constant_value(const PolyScalar& a) {
  if (!poly_is_constant(a)) throw internal_error("poly_constant_value: polynomial is not constant");
  return a.terms.empty() ? Rational(0) : a.terms.begin()->second;
}

// Total degree (exponent sum); -1 for the zero polynomial.
inline int poly_total_degree(const PolyScalar& a) {
  check_vars(a);
  if (a.terms.empty()) return -1;
  long long t = 0;
  for (auto x : a.terms.rbegin()->first) t += x;
  return static_cast<int>(t);
}

inline long long mono_weighted_degree(const Expo& e, const std::vector<int>& weights) {
  if (e.size() != weights.size()) throw internal_error("weight vector size mismatch");
  long long d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<long long>(e[i]) * weights[i];
  return d;
}

// Maximum weighted degree over all monomials; -1 for the zero polynomial.
inline long long poly_weighted_degree(const PolyScalar& a, const std::vector<int>& weights) {
  check_vars(a);
  long long best = -1;
  for (const auto& [e, c] : a.terms) best = std::max(best, mono_weighted_degree(e, weights));
  return best;
}

// Drops every monomial whose weighted degree exceeds cutoff.  cutoff < 0
// means no truncation.
inline PolyScalar poly_truncate_weighted(const PolyScalar& a, const std::vector<int>& weights,
                                         int cutoff) {
  check_vars(a);
  if (cutoff < 0) return a;
  PolyScalar r{a.vars, {}};
  for (const auto& [e, c] : a.terms)
    if (mono_weighted_degree(e, weights) <= cutoff) r.terms.emplace(e, c);
  return r;
}

// The sum of monomials with weighted degree exactly w.
inline PolyScalar poly_weight_component(const PolyScalar& a, const std::vector<int>& weights,
                                        long long w) {
  check_vars(a);
  PolyScalar r{a.vars, {}};
  for (const auto& [e, c] : a.terms)
    if (mono_weighted_degree(e, weights) == w) r.terms.emplace(e, c);
  return r;
}

PolyScalar poly_mul(const PolyScalar& a, const PolyScalar& b);
PolyScalar poly_pow(const PolyScalar& a, unsigned e);

// Exact division: returns q with a == q*b; throws internal_error when b is
// zero or does not divide a exactly.
PolyScalar poly_divide_exact(const PolyScalar& a, const PolyScalar& b);

// Canonical text form.  Terms appear in the canonical monomial order joined
// by " + " / " - "; each term is "coeff*name^e*..." with a unit coefficient
// omitted, e.g. "1 - 1/2*a*t1 + 1/16*a^2*t1^2".  The zero polynomial is "0".
std::string poly_to_text(const PolyScalar& a);

// Parses an expression over the given variables: sums and differences of
// terms, where a term is a '*'/'/' chain of factors and a factor is an
// integer literal, a variable with optional '^' power, or a parenthesized
// expression with optional '^' power.  '/' requires a nonzero constant
// divisor.  Throws config_error on malformed input or unknown variables.
PolyScalar poly_parse(VarSetPtr vars, const std::string& text);

}  // namespace orthotau
