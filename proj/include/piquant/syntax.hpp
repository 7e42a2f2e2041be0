#pragma once

// Terms of the finite pi-calculus with internal mobility, plus the derived
// forms used by the quantitative theory.
//
// Core grammar:    P ::= k | a.P | @P | P|Q | P||Q | new x.P
// Derived forms:   P (+) Q   (external choice),  k*P  (scaling),
//                  lin a.P   (linear prefix: at most one use, observably so)
//
// An action is u+(x) or u-(x): both polarities bind their object x in the
// continuation (internal mobility).  @P marks a consumed prefix; it keeps the
// addresses of the remaining actions stable across transitions.
//
// Terms are immutable and shared; build them with the mk_* constructors.
// Every adjacent run of `new` binders is kept sorted by name (mk_nu inserts),
// so structurally equal terms are equal modulo binder-run reordering by
// construction.  Bound names are made globally distinct (hygiene) right after
// parsing; fresh names start with '#' and are not parseable externally.

#include "piquant/semiring.hpp"

#include <algorithm>
#include <cctype>
#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace piquant {

struct parse_error : std::runtime_error {
  int line, col;
  parse_error(int line_, int col_, const std::string& msg)
      : std::runtime_error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

struct Name {
  std::string id;
  bool internal() const { return !id.empty() && id[0] == '#'; }
  auto operator<=>(const Name&) const = default;
};

enum class Polarity { pos, neg };

inline Polarity dual(Polarity p) { return p == Polarity::pos ? Polarity::neg : Polarity::pos; }
inline char to_char(Polarity p) { return p == Polarity::pos ? '+' : '-'; }

struct Action {
  Name subject;
  Polarity pol;
  Name object;  // bound in the continuation
  auto operator<=>(const Action&) const = default;
};

// A path from the root of a term to a node: '1'/'2' select parallel operands,
// '1' selects the continuation of a prefix or place, `new` is transparent.
struct Position {
  std::string digits;
  Position child(char c) const { return Position{digits + c}; }
  bool proper_prefix_of(const Position& o) const {
    return digits.size() < o.digits.size() &&
           o.digits.compare(0, digits.size(), digits) == 0;
  }
  bool independent(const Position& o) const {
    return digits != o.digits && !proper_prefix_of(o) && !o.proper_prefix_of(*this);
  }
  std::string str() const { return digits.empty() ? "·" : digits; }  // empty prints ·
  auto operator<=>(const Position&) const = default;
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct Lit {  // outcome literal, normalized decimal digits or "w"
  std::string text;
};
struct Prefix {
  Action act;
  Term body;
};
struct Place {  // @P
  Term body;
};
struct Par {  // P | Q
  Term left, right;
};
struct NoIPar {  // P || Q  (no interaction across it)
  Term left, right;
};
struct Nu {  // new x. P
  Name name;
  Term body;
};
struct Sum {  // P (+) Q, derived
  Term left, right;
};
struct Scale {  // k * P, derived
  std::string lit;
  Term body;
};
struct LinPrefix {  // lin a.P, derived
  Action act;
  Term body;
};

struct TermNode {
  std::variant<Lit, Prefix, Place, Par, NoIPar, Nu, Sum, Scale, LinPrefix> v;
};

template <class T>
inline const T* as(const Term& t) {
  return std::get_if<T>(&t->v);
}

inline std::string normalize_literal(std::string text) {
  if (text == "w") return text;
  size_t i = text.find_first_not_of('0');
  if (i == std::string::npos) return "0";
  return text.substr(i);
}

inline bool is_zero_literal(const std::string& text) { return text == "0"; }

inline Term mk_lit(std::string text) {
  return std::make_shared<TermNode>(TermNode{Lit{normalize_literal(std::move(text))}});
}
inline Term mk_prefix(Action a, Term body) {
  return std::make_shared<TermNode>(TermNode{Prefix{std::move(a), std::move(body)}});
}
inline Term mk_place(Term body) {
  return std::make_shared<TermNode>(TermNode{Place{std::move(body)}});
}
inline Term mk_par(Term l, Term r) {
  return std::make_shared<TermNode>(TermNode{Par{std::move(l), std::move(r)}});
}
inline Term mk_noipar(Term l, Term r) {
  return std::make_shared<TermNode>(TermNode{NoIPar{std::move(l), std::move(r)}});
}
// Keeps adjacent binder runs sorted; sound because hygienic binders are
// pairwise distinct and adjacent `new` binders commute.
inline Term mk_nu(Name x, Term body) {
  if (const auto* n = as<Nu>(body); n && n->name < x)
    return std::make_shared<TermNode>(TermNode{Nu{n->name, mk_nu(std::move(x), n->body)}});
  return std::make_shared<TermNode>(TermNode{Nu{std::move(x), std::move(body)}});
}
inline Term mk_sum(Term l, Term r) {
  return std::make_shared<TermNode>(TermNode{Sum{std::move(l), std::move(r)}});
}
inline Term mk_scale(std::string lit, Term body) {
  return std::make_shared<TermNode>(TermNode{Scale{normalize_literal(std::move(lit)), std::move(body)}});
}
inline Term mk_lin(Action a, Term body) {
  return std::make_shared<TermNode>(TermNode{LinPrefix{std::move(a), std::move(body)}});
}

// Structural equality (bound names matter; see alpha_equal for the quotient).
inline bool term_eq(const Term& a, const Term& b) {
  if (a.get() == b.get()) return true;
  if (a->v.index() != b->v.index()) return false;
  if (const auto* x = as<Lit>(a)) return x->text == as<Lit>(b)->text;
  if (const auto* x = as<Prefix>(a)) {
    const auto* y = as<Prefix>(b);
    return x->act == y->act && term_eq(x->body, y->body);
  }
  if (const auto* x = as<Place>(a)) return term_eq(x->body, as<Place>(b)->body);
  if (const auto* x = as<Par>(a)) {
    const auto* y = as<Par>(b);
    return term_eq(x->left, y->left) && term_eq(x->right, y->right);
  }
  if (const auto* x = as<NoIPar>(a)) {
    const auto* y = as<NoIPar>(b);
    return term_eq(x->left, y->left) && term_eq(x->right, y->right);
  }
  if (const auto* x = as<Nu>(a)) {
    const auto* y = as<Nu>(b);
    return x->name == y->name && term_eq(x->body, y->body);
  }
  if (const auto* x = as<Sum>(a)) {
    const auto* y = as<Sum>(b);
    return term_eq(x->left, y->left) && term_eq(x->right, y->right);
  }
  if (const auto* x = as<Scale>(a)) {
    const auto* y = as<Scale>(b);
    return x->lit == y->lit && term_eq(x->body, y->body);
  }
  if (const auto* x = as<LinPrefix>(a)) {
    const auto* y = as<LinPrefix>(b);
    return x->act == y->act && term_eq(x->body, y->body);
  }
  return false;
}

inline bool is_core(const Term& t) {
  if (as<Lit>(t)) return true;
  if (const auto* x = as<Prefix>(t)) return is_core(x->body);
  if (const auto* x = as<Place>(t)) return is_core(x->body);
  if (const auto* x = as<Par>(t)) return is_core(x->left) && is_core(x->right);
  if (const auto* x = as<NoIPar>(t)) return is_core(x->left) && is_core(x->right);
  if (const auto* x = as<Nu>(t)) return is_core(x->body);
  return false;  // Sum, Scale, LinPrefix
}

// Source of globally fresh names, one per evaluation session.  Fresh names
// carry the reserved '#' prefix, so they cannot collide with source names.
class NameSupply {
 public:
  Name fresh() { return Name{"#" + std::to_string(++next_)}; }
  // Keeps the counter ahead of '#N' names read back in internal round-trips.
  void reserve(unsigned long long n) { next_ = std::max(next_, n); }

 private:
  unsigned long long next_ = 0;
};

namespace detail {
inline void free_names_rec(const Term& t, std::set<Name>& bound, std::set<Name>& out) {
  if (as<Lit>(t)) return;
  if (const auto* x = as<Prefix>(t)) {
    if (!bound.count(x->act.subject)) out.insert(x->act.subject);
    bool fresh_bind = bound.insert(x->act.object).second;
    free_names_rec(x->body, bound, out);
    if (fresh_bind) bound.erase(x->act.object);
    return;
  }
  if (const auto* x = as<LinPrefix>(t)) {
    if (!bound.count(x->act.subject)) out.insert(x->act.subject);
    bool fresh_bind = bound.insert(x->act.object).second;
    free_names_rec(x->body, bound, out);
    if (fresh_bind) bound.erase(x->act.object);
    return;
  }
  if (const auto* x = as<Place>(t)) return free_names_rec(x->body, bound, out);
  if (const auto* x = as<Nu>(t)) {
    bool fresh_bind = bound.insert(x->name).second;
    free_names_rec(x->body, bound, out);
    if (fresh_bind) bound.erase(x->name);
    return;
  }
  if (const auto* x = as<Par>(t)) {
    free_names_rec(x->left, bound, out);
    free_names_rec(x->right, bound, out);
    return;
  }
  if (const auto* x = as<NoIPar>(t)) {
    free_names_rec(x->left, bound, out);
    free_names_rec(x->right, bound, out);
    return;
  }
  if (const auto* x = as<Sum>(t)) {
    free_names_rec(x->left, bound, out);
    free_names_rec(x->right, bound, out);
    return;
  }
  if (const auto* x = as<Scale>(t)) return free_names_rec(x->body, bound, out);
}
}  // namespace detail

inline std::set<Name> free_names(const Term& t) {
  std::set<Name> bound, out;
  detail::free_names_rec(t, bound, out);
  return out;
}

namespace detail {
inline void all_names_rec(const Term& t, std::set<Name>& out) {
  if (as<Lit>(t)) return;
  if (const auto* x = as<Prefix>(t)) {
    out.insert(x->act.subject);
    out.insert(x->act.object);
    return all_names_rec(x->body, out);
  }
  if (const auto* x = as<LinPrefix>(t)) {
    out.insert(x->act.subject);
    out.insert(x->act.object);
    return all_names_rec(x->body, out);
  }
  if (const auto* x = as<Place>(t)) return all_names_rec(x->body, out);
  if (const auto* x = as<Nu>(t)) {
    out.insert(x->name);
    return all_names_rec(x->body, out);
  }
  if (const auto* x = as<Par>(t)) {
    all_names_rec(x->left, out);
    return all_names_rec(x->right, out);
  }
  if (const auto* x = as<NoIPar>(t)) {
    all_names_rec(x->left, out);
    return all_names_rec(x->right, out);
  }
  if (const auto* x = as<Sum>(t)) {
    all_names_rec(x->left, out);
    return all_names_rec(x->right, out);
  }
  if (const auto* x = as<Scale>(t)) return all_names_rec(x->body, out);
}
}  // namespace detail

// Every name occurring in t, bound or free.
inline std::set<Name> all_names(const Term& t) {
  std::set<Name> out;
  detail::all_names_rec(t, out);
  return out;
}

// Advances the supply past every '#N' name in t, so that fresh names cannot
// capture occurrences already present.
inline void reserve_names(NameSupply& supply, const Term& t) {
  for (const Name& n : all_names(t)) {
    if (n.id.size() < 2 || n.id[0] != '#') continue;
    std::string digits = n.id.substr(1);
    if (digits.find_first_not_of("0123456789") != std::string::npos) continue;
    supply.reserve(std::stoull(digits));
  }
}

// Capture-avoiding rename of the free subject occurrences of `from` to `to`.
// Binders named `to` on the way are renamed fresh first.
inline Term substitute(const Term& t, const Name& from, const Name& to, NameSupply& supply) {
  if (from == to) return t;
  if (as<Lit>(t)) return t;
  auto sub_prefix = [&](const Action& a, const Term& body, bool lin) -> Term {
    Action a2 = a;
    if (a2.subject == from) a2.subject = to;
    Term b = body;
    if (a2.object == from) {
      // `from` is shadowed below; only the subject was renamed.
    } else if (a2.object == to) {
      Name o2 = supply.fresh();
      b = substitute(b, a2.object, o2, supply);
      a2.object = o2;
      b = substitute(b, from, to, supply);
    } else {
      b = substitute(b, from, to, supply);
    }
    return lin ? mk_lin(a2, b) : mk_prefix(a2, b);
  };
  if (const auto* x = as<Prefix>(t)) return sub_prefix(x->act, x->body, false);
  if (const auto* x = as<LinPrefix>(t)) return sub_prefix(x->act, x->body, true);
  if (const auto* x = as<Place>(t)) return mk_place(substitute(x->body, from, to, supply));
  if (const auto* x = as<Par>(t))
    return mk_par(substitute(x->left, from, to, supply), substitute(x->right, from, to, supply));
  if (const auto* x = as<NoIPar>(t))
    return mk_noipar(substitute(x->left, from, to, supply), substitute(x->right, from, to, supply));
  if (const auto* x = as<Sum>(t))
    return mk_sum(substitute(x->left, from, to, supply), substitute(x->right, from, to, supply));
  if (const auto* x = as<Scale>(t)) return mk_scale(x->lit, substitute(x->body, from, to, supply));
  if (const auto* x = as<Nu>(t)) {
    if (x->name == from) return t;
    if (x->name == to) {
      Name n2 = supply.fresh();
      Term b = substitute(x->body, x->name, n2, supply);
      return mk_nu(n2, substitute(b, from, to, supply));
    }
    return mk_nu(x->name, substitute(x->body, from, to, supply));
  }
  throw contract_error("substitute: unknown node");
}

namespace detail {
inline Term hygiene_rec(const Term& t, std::set<Name>& used, NameSupply& supply) {
  if (as<Lit>(t)) return t;
  auto bind = [&](const Action& a, const Term& body, bool lin) -> Term {
    Action a2 = a;
    Term b = body;
    if (!used.insert(a2.object).second) {
      Name o2 = supply.fresh();
      b = substitute(b, a2.object, o2, supply);
      a2.object = o2;
      used.insert(o2);
    }
    b = hygiene_rec(b, used, supply);
    return lin ? mk_lin(a2, b) : mk_prefix(a2, b);
  };
  if (const auto* x = as<Prefix>(t)) return bind(x->act, x->body, false);
  if (const auto* x = as<LinPrefix>(t)) return bind(x->act, x->body, true);
  if (const auto* x = as<Place>(t)) return mk_place(hygiene_rec(x->body, used, supply));
  if (const auto* x = as<Par>(t)) {
    Term l = hygiene_rec(x->left, used, supply);
    return mk_par(l, hygiene_rec(x->right, used, supply));
  }
  if (const auto* x = as<NoIPar>(t)) {
    Term l = hygiene_rec(x->left, used, supply);
    return mk_noipar(l, hygiene_rec(x->right, used, supply));
  }
  if (const auto* x = as<Sum>(t)) {
    Term l = hygiene_rec(x->left, used, supply);
    return mk_sum(l, hygiene_rec(x->right, used, supply));
  }
  if (const auto* x = as<Scale>(t)) return mk_scale(x->lit, hygiene_rec(x->body, used, supply));
  if (const auto* x = as<Nu>(t)) {
    Name n = x->name;
    Term b = x->body;
    if (!used.insert(n).second) {
      Name n2 = supply.fresh();
      b = substitute(b, n, n2, supply);
      n = n2;
      used.insert(n2);
    }
    return mk_nu(n, hygiene_rec(b, used, supply));
  }
  throw contract_error("hygiene: unknown node");
}
}  // namespace detail

// Renames bound names until they are pairwise distinct and distinct from all
// free names.  Duplicates get internal '#' names.
inline Term hygiene(const Term& t, NameSupply& supply) {
  std::set<Name> used = free_names(t);
  return detail::hygiene_rec(t, used, supply);
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

struct Token {
  enum class K {
    ident, number, kw_new, kw_lin,
    lparen, rparen, sum, noipar, par, dot, star, at, tilde, plus, minus, end
  } k;
  std::string text;
  int line, col;
};

inline std::vector<Token> tokenize(std::string_view src, bool allow_internal) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto bump = [&](size_t n) {
    for (size_t j = 0; j < n; ++j, ++i) {
      if (i < src.size() && src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](Token::K k, std::string text, int l, int c) {
    out.push_back(Token{k, std::move(text), l, c});
  };
  while (i < src.size()) {
    char c = src[i];
    int l = line, co = col;
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') bump(1);
      continue;
    }
    if (src.compare(i, 3, "(+)") == 0) {
      push(Token::K::sum, "(+)", l, co);
      bump(3);
      continue;
    }
    if (src.compare(i, 2, "||") == 0) {
      push(Token::K::noipar, "||", l, co);
      bump(2);
      continue;
    }
    switch (c) {
      case '(': push(Token::K::lparen, "(", l, co); bump(1); continue;
      case ')': push(Token::K::rparen, ")", l, co); bump(1); continue;
      case '|': push(Token::K::par, "|", l, co); bump(1); continue;
      case '.': push(Token::K::dot, ".", l, co); bump(1); continue;
      case '*': push(Token::K::star, "*", l, co); bump(1); continue;
      case '@': push(Token::K::at, "@", l, co); bump(1); continue;
      case '~': push(Token::K::tilde, "~", l, co); bump(1); continue;
      case '+': push(Token::K::plus, "+", l, co); bump(1); continue;
      case '-': push(Token::K::minus, "-", l, co); bump(1); continue;
      default: break;
    }
    if (c >= '0' && c <= '9') {
      size_t j = i;
      while (j < src.size() && src[j] >= '0' && src[j] <= '9') ++j;
      push(Token::K::number, std::string(src.substr(i, j - i)), l, co);
      bump(j - i);
      continue;
    }
    if (c == '#') {
      if (!allow_internal) throw parse_error(l, co, "names may not start with '#'");
      size_t j = i + 1;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      if (j == i + 1) throw parse_error(l, co, "bad internal name");
      push(Token::K::ident, std::string(src.substr(i, j - i)), l, co);
      bump(j - i);
      continue;
    }
    if (c >= 'a' && c <= 'z') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string word(src.substr(i, j - i));
      if (word == "new")
        push(Token::K::kw_new, word, l, co);
      else if (word == "lin")
        push(Token::K::kw_lin, word, l, co);
      else
        push(Token::K::ident, word, l, co);
      bump(j - i);
      continue;
    }
    throw parse_error(l, co, std::string("unexpected character '") + c + "'");
  }
  push(Token::K::end, "", line, col);
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, NameSupply& supply) : toks_(std::move(toks)), supply_(supply) {}

  Term run() {
    Term t = parse_sum();
    expect(Token::K::end, "end of input");
    return t;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(size_t n = 1) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  Token take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(cur().line, cur().col, msg);
  }
  void expect(Token::K k, const std::string& what) {
    if (cur().k != k) fail("expected " + what);
    ++pos_;
  }

  Term parse_sum() {
    Term t = parse_noipar();
    while (cur().k == Token::K::sum) {
      ++pos_;
      t = mk_sum(t, parse_noipar());
    }
    return t;
  }
  Term parse_noipar() {
    Term t = parse_par();
    while (cur().k == Token::K::noipar) {
      ++pos_;
      t = mk_noipar(t, parse_par());
    }
    return t;
  }
  Term parse_par() {
    Term t = parse_factor();
    while (cur().k == Token::K::par) {
      ++pos_;
      t = mk_par(t, parse_factor());
    }
    return t;
  }

  Name parse_name() {
    if (cur().k != Token::K::ident) fail("expected a name");
    return Name{take().text};
  }

  // act := [~] name [+|-] [ "(" name ")" ];  `~` and an explicit polarity
  // are mutually exclusive.  A missing "(x)" binds a fresh unused name.
  Action parse_act() {
    bool tilde = false;
    if (cur().k == Token::K::tilde) {
      tilde = true;
      ++pos_;
    }
    Name subject = parse_name();
    std::optional<Polarity> pol;
    if (cur().k == Token::K::plus) {
      pol = Polarity::pos;
      ++pos_;
    } else if (cur().k == Token::K::minus) {
      pol = Polarity::neg;
      ++pos_;
    }
    if (tilde && pol) fail("polarity given twice ('~' and explicit sign)");
    std::optional<Name> object;
    if (cur().k == Token::K::lparen) {
      ++pos_;
      object = parse_name();
      expect(Token::K::rparen, "')'");
    }
    Polarity p = tilde ? Polarity::neg : pol.value_or(Polarity::pos);
    return Action{subject, p, object ? *object : supply_.fresh()};
  }

  bool ident_starts_action() const {
    switch (peek().k) {
      case Token::K::dot:
      case Token::K::plus:
      case Token::K::minus:
      case Token::K::lparen: return true;
      default: return false;
    }
  }

  Term parse_factor() {
    switch (cur().k) {
      case Token::K::number: {
        std::string lit = take().text;
        if (cur().k == Token::K::star) {
          ++pos_;
          return mk_scale(lit, parse_factor());
        }
        return mk_lit(lit);
      }
      case Token::K::ident:
        if (cur().text == "w" && !ident_starts_action()) {
          ++pos_;
          if (cur().k == Token::K::star) {
            ++pos_;
            return mk_scale("w", parse_factor());
          }
          return mk_lit("w");
        }
        [[fallthrough]];
      case Token::K::tilde: {
        Action a = parse_act();
        expect(Token::K::dot, "'.' after action");
        return mk_prefix(a, parse_factor());
      }
      case Token::K::kw_lin: {
        ++pos_;
        Action a = parse_act();
        expect(Token::K::dot, "'.' after action");
        return mk_lin(a, parse_factor());
      }
      case Token::K::kw_new: {
        ++pos_;
        std::vector<Name> names;
        while (cur().k == Token::K::ident) names.push_back(parse_name());
        if (names.empty()) fail("expected a name after 'new'");
        expect(Token::K::dot, "'.' after 'new' names");
        Term body = parse_factor();
        for (auto it = names.rbegin(); it != names.rend(); ++it) body = mk_nu(*it, body);
        return body;
      }
      case Token::K::at: {
        ++pos_;
        return mk_place(parse_factor());
      }
      case Token::K::lparen: {
        ++pos_;
        Term t = parse_sum();
        expect(Token::K::rparen, "')'");
        return t;
      }
      default: fail("expected a term");
    }
  }

  std::vector<Token> toks_;
  NameSupply& supply_;
  size_t pos_ = 0;
};

}  // namespace detail

struct ParseOptions {
  bool allow_internal_names = false;  // '#' names; internal round-trips only
};

inline Term parse_term(std::string_view src, NameSupply& supply, ParseOptions opts = {}) {
  auto toks = detail::tokenize(src, opts.allow_internal_names);
  if (opts.allow_internal_names) {
    for (const auto& t : toks)
      if (t.k == detail::Token::K::ident && t.text.size() > 1 && t.text[0] == '#' &&
          t.text.find_first_not_of("0123456789", 1) == std::string::npos)
        supply.reserve(std::stoull(t.text.substr(1)));
  }
  Term t = detail::Parser(std::move(toks), supply).run();
  return hygiene(t, supply);
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline std::string act_str(const Action& a, const Term& body) {
  if (a.object.internal() && !free_names(body).count(a.object))
    return (a.pol == Polarity::neg ? "~" : "") + a.subject.id;
  return a.subject.id + to_char(a.pol) + "(" + a.object.id + ")";
}

// levels: 0 sum, 1 noipar, 2 par, 3 factor
inline int prec(const Term& t) {
  if (as<Sum>(t)) return 0;
  if (as<NoIPar>(t)) return 1;
  if (as<Par>(t)) return 2;
  return 3;
}

inline std::string pp(const Term& t, int level) {
  if (prec(t) < level) return "(" + pp(t, 0) + ")";
  if (const auto* x = as<Lit>(t)) return x->text;
  if (const auto* x = as<Sum>(t)) return pp(x->left, 0) + " (+) " + pp(x->right, 1);
  if (const auto* x = as<NoIPar>(t)) return pp(x->left, 1) + " || " + pp(x->right, 2);
  if (const auto* x = as<Par>(t)) return pp(x->left, 2) + " | " + pp(x->right, 3);
  if (const auto* x = as<Scale>(t)) return x->lit + "*" + pp(x->body, 3);
  if (const auto* x = as<Prefix>(t)) return act_str(x->act, x->body) + "." + pp(x->body, 3);
  if (const auto* x = as<LinPrefix>(t))
    return "lin " + act_str(x->act, x->body) + "." + pp(x->body, 3);
  if (const auto* x = as<Place>(t)) return "@" + pp(x->body, 3);
  if (const auto* x = as<Nu>(t)) {
    std::string names = x->name.id;
    Term body = x->body;
    while (const auto* n = as<Nu>(body)) {
      names += " " + n->name.id;
      body = n->body;
    }
    return "new " + names + "." + pp(body, 3);
  }
  throw contract_error("print: unknown node");
}

}  // namespace detail

// Canonical printing; parse_term(print_term(t)) is alpha-equivalent to t
// (with internal names enabled when t contains them).
inline std::string print_term(const Term& t) { return detail::pp(t, 0); }

// ---------------------------------------------------------------------------
// Alpha-equivalence; the canonical string is invariant under renaming of
// bound names and reordering of adjacent `new` binders.

namespace detail {

inline std::string alpha_rec(const Term& t, std::map<Name, std::string>& env, int& counter);

inline std::string alpha_name(const Name& n, const std::map<Name, std::string>& env) {
  auto it = env.find(n);
  return it != env.end() ? it->second : "f:" + n.id;
}

inline std::string alpha_bind_prefix(const char* tag, const Action& a, const Term& body,
                                     std::map<Name, std::string>& env, int& counter) {
  std::string subj = alpha_name(a.subject, env);
  std::string bname = "b" + std::to_string(counter++);
  auto saved = env.find(a.object) != env.end() ? std::optional<std::string>(env[a.object])
                                               : std::nullopt;
  env[a.object] = bname;
  std::string body_s = alpha_rec(body, env, counter);
  if (saved)
    env[a.object] = *saved;
  else
    env.erase(a.object);
  return std::string(tag) + "(" + subj + to_char(a.pol) + bname + "," + body_s + ")";
}

inline std::string alpha_rec(const Term& t, std::map<Name, std::string>& env, int& counter) {
  if (const auto* x = as<Lit>(t)) return "k:" + x->text;
  if (const auto* x = as<Prefix>(t)) return alpha_bind_prefix("A", x->act, x->body, env, counter);
  if (const auto* x = as<LinPrefix>(t))
    return alpha_bind_prefix("L", x->act, x->body, env, counter);
  if (const auto* x = as<Place>(t)) return "@(" + alpha_rec(x->body, env, counter) + ")";
  if (const auto* x = as<Par>(t))
    return "|(" + alpha_rec(x->left, env, counter) + "," + alpha_rec(x->right, env, counter) + ")";
  if (const auto* x = as<NoIPar>(t))
    return "#(" + alpha_rec(x->left, env, counter) + "," + alpha_rec(x->right, env, counter) + ")";
  if (const auto* x = as<Sum>(t))
    return "+(" + alpha_rec(x->left, env, counter) + "," + alpha_rec(x->right, env, counter) + ")";
  if (const auto* x = as<Scale>(t))
    return "*(" + x->lit + "," + alpha_rec(x->body, env, counter) + ")";
  if (as<Nu>(t)) {
    std::vector<Name> run;
    Term body = t;
    while (const auto* n = as<Nu>(body)) {
      run.push_back(n->name);
      body = n->body;
    }
    // Adjacent binders commute, so the run needs an order that depends only
    // on the term's shape.  Order names by their usage signature (the body
    // with this name marked and its siblings masked); signatures are
    // alpha-invariant.  Only genuinely symmetric names tie, and those few are
    // resolved by trying their orders and keeping the least result.
    auto signature = [&](const Name& x) {
      auto env2 = env;
      for (const auto& n : run) env2[n] = "?";
      env2[x] = "X";
      int c2 = counter;
      return alpha_rec(body, env2, c2);
    };
    std::vector<std::pair<std::string, Name>> keyed;
    for (const auto& n : run) keyed.emplace_back(signature(n), n);
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<size_t, size_t>> groups;  // [begin, end) of equal signatures
    for (size_t i = 0; i < keyed.size();) {
      size_t j = i;
      while (j < keyed.size() && keyed[j].first == keyed[i].first) ++j;
      groups.emplace_back(i, j);
      i = j;
    }
    auto render = [&](const std::vector<Name>& order, int& c_out) {
      auto env2 = env;
      int c2 = counter;
      std::string names;
      for (const auto& n : order) {
        std::string bname = "b" + std::to_string(c2++);
        env2[n] = bname;
        names += bname + ",";
      }
      std::string s = "v(" + names + alpha_rec(body, env2, c2) + ")";
      c_out = c2;
      return s;
    };
    std::vector<Name> order;
    for (const auto& [sig, n] : keyed) order.push_back(n);
    int c_final = counter;
    std::string best = render(order, c_final);
    // Resolve ties: walk the product of in-group permutations (groups are
    // almost always singletons; symmetric groups are tiny).
    size_t product = 1;
    for (auto [b, e] : groups) {
      size_t f = 1;
      for (size_t k = 2; k <= e - b; ++k) f *= k;
      product *= f;
    }
    if (product > 1 && product <= 5040) {
      for (auto& [b, e] : groups) std::sort(order.begin() + b, order.begin() + e);
      std::vector<size_t> idx(groups.size(), 0);
      std::vector<Name> cur = order;
      std::function<void(size_t)> walk = [&](size_t g) {
        if (g == groups.size()) {
          int c2 = counter;
          std::string s = render(cur, c2);
          if (s < best) {
            best = s;
            c_final = c2;
          }
          return;
        }
        auto [b, e] = groups[g];
        std::vector<Name> part(cur.begin() + b, cur.begin() + e);
        std::sort(part.begin(), part.end());
        do {
          std::copy(part.begin(), part.end(), cur.begin() + b);
          walk(g + 1);
        } while (std::next_permutation(part.begin(), part.end()));
      };
      walk(0);
    }
    counter = c_final;
    return best;
  }
  throw contract_error("alpha: unknown node");
}

}  // namespace detail

inline std::string alpha_canonical(const Term& t) {
  std::map<Name, std::string> env;
  int counter = 0;
  return detail::alpha_rec(t, env, counter);
}

inline bool alpha_equal(const Term& a, const Term& b) {
  return alpha_canonical(a) == alpha_canonical(b);
}

// ---------------------------------------------------------------------------
// Elaboration of derived forms into the core calculus.
//
//   P (+) Q   ->  new u.((u+(x).P | u+(y).Q) | u-(z).1)
//   k * P     ->  k | P
//   lin a.P   ->  new w.(a.(P | w+().1) | (w+().0 | w-().1))
//
// The w+().1 inside the continuation is the witness of the linear action:
// consuming it is what "the action was triggered" means.  The result records
// where each witness and each source inaction lands in the core term.

struct Elaboration {
  Term core;
  std::vector<Position> lin_witnesses;  // positions of witness actions w+().1
  std::vector<Position> inactions;      // positions of source inactions a.0
};

namespace detail {

inline Term elab_rec(const Term& t, const Position& at, NameSupply& supply, Elaboration& out) {
  if (as<Lit>(t)) return t;
  if (const auto* x = as<Prefix>(t)) {
    if (const auto* l = as<Lit>(x->body); l && is_zero_literal(l->text))
      out.inactions.push_back(at);
    return mk_prefix(x->act, elab_rec(x->body, at.child('1'), supply, out));
  }
  if (const auto* x = as<Place>(t)) return mk_place(elab_rec(x->body, at.child('1'), supply, out));
  if (const auto* x = as<Par>(t)) {
    Term l = elab_rec(x->left, at.child('1'), supply, out);
    return mk_par(l, elab_rec(x->right, at.child('2'), supply, out));
  }
  if (const auto* x = as<NoIPar>(t)) {
    Term l = elab_rec(x->left, at.child('1'), supply, out);
    return mk_noipar(l, elab_rec(x->right, at.child('2'), supply, out));
  }
  if (const auto* x = as<Nu>(t)) return mk_nu(x->name, elab_rec(x->body, at, supply, out));
  if (const auto* x = as<Sum>(t)) {
    Name u = supply.fresh(), xa = supply.fresh(), xb = supply.fresh(), xc = supply.fresh();
    Term l = elab_rec(x->left, Position{at.digits + "111"}, supply, out);
    Term r = elab_rec(x->right, Position{at.digits + "121"}, supply, out);
    return mk_nu(u, mk_par(mk_par(mk_prefix(Action{u, Polarity::pos, xa}, l),
                                  mk_prefix(Action{u, Polarity::pos, xb}, r)),
                           mk_prefix(Action{u, Polarity::neg, xc}, mk_lit("1"))));
  }
  if (const auto* x = as<Scale>(t)) {
    return mk_par(mk_lit(x->lit), elab_rec(x->body, at.child('2'), supply, out));
  }
  if (const auto* x = as<LinPrefix>(t)) {
    Name w = supply.fresh(), b1 = supply.fresh(), b2 = supply.fresh(), b3 = supply.fresh();
    Term body = elab_rec(x->body, Position{at.digits + "111"}, supply, out);
    out.lin_witnesses.push_back(Position{at.digits + "112"});
    Term left = mk_prefix(x->act, mk_par(body, mk_prefix(Action{w, Polarity::pos, b1}, mk_lit("1"))));
    Term right = mk_par(mk_prefix(Action{w, Polarity::pos, b2}, mk_lit("0")),
                        mk_prefix(Action{w, Polarity::neg, b3}, mk_lit("1")));
    return mk_nu(w, mk_par(left, right));
  }
  throw contract_error("elaborate: unknown node");
}

}  // namespace detail

inline Elaboration elaborate_full(const Term& t, NameSupply& supply) {
  Elaboration out;
  out.core = detail::elab_rec(t, Position{}, supply, out);
  return out;
}

inline Term elaborate(const Term& t, NameSupply& supply) {
  return elaborate_full(t, supply).core;
}

}  // namespace piquant
