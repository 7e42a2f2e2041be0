#pragma once

// Simple terms and the affine expansion.
//
// Simple terms are generated by  1 | a.0 | lin a.P | P|Q | P||Q | new x.P
// (classified on the annotated form, before encodings are expanded).  Every
// term is a linear combination of simple terms: a.P splits into lin a.P and
// a.0, sums and scalars distribute through the other constructors.
//
// An exhaustive pre-trace of a simple term triggers every linear action,
// consumes no inaction, and leaves no pair of dual inactions facing each
// other across a `|`.

#include "piquant/runs.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace piquant {

inline bool is_simple(const Term& t) {
  if (const auto* x = as<Lit>(t)) return x->text == "1";
  if (const auto* x = as<Prefix>(t)) {
    const auto* b = as<Lit>(x->body);
    return b && is_zero_literal(b->text);
  }
  if (const auto* x = as<LinPrefix>(t)) return is_simple(x->body);
  if (const auto* x = as<Par>(t)) return is_simple(x->left) && is_simple(x->right);
  if (const auto* x = as<NoIPar>(t)) return is_simple(x->left) && is_simple(x->right);
  if (const auto* x = as<Nu>(t)) return is_simple(x->body);
  return false;  // literals other than 1, general prefixes, @, sums, scalars
}

// A linear combination of terms, keyed up to alpha; zero coefficients are
// dropped as they appear.
class Combination {
 public:
  void add(SemiringId id, const Term& t, const SemiringValue& k) {
    if (k.is_zero()) return;
    std::string key = alpha_canonical(t);
    auto it = map_.find(key);
    if (it == map_.end()) {
      map_.emplace(std::move(key), std::make_pair(t, k));
      return;
    }
    SemiringValue sum = sr_add(id, it->second.second, k);
    if (sum.is_zero()) map_.erase(it);
    else it->second.second = sum;
  }

  // deterministic: sorted by alpha-canonical key
  std::vector<std::pair<Term, SemiringValue>> entries() const {
    std::vector<std::pair<Term, SemiringValue>> out;
    for (const auto& [k, tv] : map_) out.push_back(tv);
    return out;
  }

  bool empty() const { return map_.empty(); }
  size_t size() const { return map_.size(); }

 private:
  std::map<std::string, std::pair<Term, SemiringValue>> map_;
};

namespace detail {

inline Combination affine_rec(const Term& t, SemiringId id) {
  Combination out;
  if (const auto* x = as<Lit>(t)) {
    out.add(id, mk_lit("1"), sr_from_literal(id, x->text));
    return out;
  }
  if (const auto* x = as<Place>(t)) return affine_rec(x->body, id);  // @P and P evaluate alike
  if (const auto* x = as<Prefix>(t)) {
    // a.P = lin a.P (+) a.0
    for (const auto& [s, k] : affine_rec(x->body, id).entries())
      out.add(id, mk_lin(x->act, s), k);
    out.add(id, mk_prefix(x->act, mk_lit("0")), sr_one(id));
    return out;
  }
  if (const auto* x = as<LinPrefix>(t)) {
    for (const auto& [s, k] : affine_rec(x->body, id).entries())
      out.add(id, mk_lin(x->act, s), k);
    return out;
  }
  if (const auto* x = as<Nu>(t)) {
    for (const auto& [s, k] : affine_rec(x->body, id).entries())
      out.add(id, mk_nu(x->name, s), k);
    return out;
  }
  if (const auto* x = as<Par>(t)) {
    auto l = affine_rec(x->left, id).entries();
    auto r = affine_rec(x->right, id).entries();
    for (const auto& [sl, kl] : l)
      for (const auto& [sr, kr] : r) out.add(id, mk_par(sl, sr), sr_mul(id, kl, kr));
    return out;
  }
  if (const auto* x = as<NoIPar>(t)) {
    auto l = affine_rec(x->left, id).entries();
    auto r = affine_rec(x->right, id).entries();
    for (const auto& [sl, kl] : l)
      for (const auto& [sr, kr] : r) out.add(id, mk_noipar(sl, sr), sr_mul(id, kl, kr));
    return out;
  }
  if (const auto* x = as<Sum>(t)) {
    for (const auto& [s, k] : affine_rec(x->left, id).entries()) out.add(id, s, k);
    for (const auto& [s, k] : affine_rec(x->right, id).entries()) out.add(id, s, k);
    return out;
  }
  if (const auto* x = as<Scale>(t)) {
    SemiringValue k0 = sr_from_literal(id, x->lit);
    for (const auto& [s, k] : affine_rec(x->body, id).entries())
      out.add(id, s, sr_mul(id, k0, k));
    return out;
  }
  throw contract_error("affine_expand: unknown term form");
}

}  // namespace detail

// Expands t into a combination of simple terms with
//   outcome(t|R) = sum_i k_i * outcome(S_i|R)   for every context R.
inline Combination affine_expand(const Term& t, SemiringId id) {
  return detail::affine_rec(t, id);
}

namespace detail {

// Simple terms never nest an action inside a general prefix, so a fired
// witness shows up as a @ at its recorded position.
inline bool position_fired(const Term& t, const Position& p) {
  return as<Place>(subterm_at(t, p)) != nullptr;
}

// Active inactions of a reduct, each with the operand path that locates it:
// a dual pair is harmful only when the two sides meet at a `|` node.
struct ActiveInaction {
  Name subject;
  Polarity pol;
  std::string path;  // digits of Par ('|') branching only, as seen from the root
};

inline void active_inactions(const Term& t, std::string& path, std::vector<ActiveInaction>& out) {
  if (as<Lit>(t)) return;
  if (const auto* x = as<Prefix>(t)) {
    Term b = x->body;
    while (const auto* n = as<Nu>(b)) b = n->body;
    const auto* l = as<Lit>(b);
    if (l && is_zero_literal(l->text)) out.push_back({x->act.subject, x->act.pol, path});
    return;  // body is inactive either way
  }
  if (const auto* x = as<Place>(t)) return active_inactions(x->body, path, out);
  if (const auto* x = as<Nu>(t)) return active_inactions(x->body, path, out);
  if (const auto* x = as<Par>(t)) {
    path.push_back('1');
    active_inactions(x->left, path, out);
    path.back() = '2';
    active_inactions(x->right, path, out);
    path.pop_back();
    return;
  }
  if (const auto* x = as<NoIPar>(t)) {
    // not a `|`: dual inactions across it cannot meet, so no path digit
    active_inactions(x->left, path, out);
    active_inactions(x->right, path, out);
    return;
  }
  throw contract_error("active_inactions: derived form in core term");
}

// True when some P|Q in the reduct has an active u+.0 on one side and an
// active u-.0 on the other: the paths of a dual pair must diverge.
inline bool has_facing_inactions(const Term& t) {
  std::vector<ActiveInaction> acts;
  std::string path;
  active_inactions(t, path, acts);
  for (size_t i = 0; i < acts.size(); ++i)
    for (size_t j = i + 1; j < acts.size(); ++j) {
      if (acts[i].subject != acts[j].subject || acts[i].pol == acts[j].pol) continue;
      const std::string &a = acts[i].path, &b = acts[j].path;
      size_t k = 0;
      while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
      if (k < a.size() && k < b.size()) return true;  // diverge at a `|`
    }
  return false;
}

struct ExhaustiveEnum {
  const Elaboration& el;
  std::map<std::string, std::set<PreTrace>> memo;

  explicit ExhaustiveEnum(const Elaboration& e) : el(e) {}

  bool exhaustive_here(const Term& t) const {
    for (const auto& w : el.lin_witnesses)
      if (!position_fired(t, w)) return false;
    return !has_facing_inactions(t);
  }

  bool is_witness_sync(const Label& lab) const {
    for (const auto& p : positions_of(lab))
      for (const auto& w : el.lin_witnesses)
        if (p == w) return true;
    return false;
  }

  const std::set<PreTrace>& extensions(const Term& t) {
    std::string key = print_term(t);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::set<PreTrace> sets;
    auto steps = transitions(t);
    // Labels consuming a 0 continuation are never part of an exhaustive
    // pre-trace: consuming an inaction is forbidden outright, and consuming a
    // failure arm forever blocks that action's witness.
    auto explorable = [&](const Label& lab) {
      if (label_consumes_zero(t, lab)) return false;
      for (const auto& p : positions_of(lab))
        for (const auto& q : el.inactions)
          if (p == q) return false;
      return true;
    };
    // A pending witness sync is private and must appear in every exhaustive
    // pre-trace, so it commutes to the front; firing it alone avoids
    // enumerating the orderings it is independent of.
    const Step* pending = nullptr;
    for (const auto& s : steps)
      if (explorable(s.label) && is_witness_sync(s.label)) {
        pending = &s;
        break;
      }
    if (pending) {
      for (const auto& set : extensions(pending->next))
        sets.insert(with_label(set, pending->label));
      return memo.emplace(std::move(key), std::move(sets)).first->second;
    }
    if (exhaustive_here(t)) sets.insert(PreTrace{});
    for (const auto& s : steps) {
      if (!explorable(s.label)) continue;
      for (const auto& set : extensions(s.next)) sets.insert(with_label(set, s.label));
    }
    return memo.emplace(std::move(key), std::move(sets)).first->second;
  }
};

}  // namespace detail

// All exhaustive pre-traces of a simple term: label sets of paths that fire
// every linear action's witness, no inaction, and end with no facing duals.
inline std::set<PreTrace> exhaustive_pretraces(const Term& s) {
  if (!is_simple(s)) throw contract_error("exhaustive_pretraces: term is not simple");
  NameSupply supply;
  reserve_names(supply, s);
  Elaboration el = elaborate_full(s, supply);
  detail::ExhaustiveEnum e(el);
  return e.extensions(el.core);
}

}  // namespace piquant
