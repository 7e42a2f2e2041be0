#pragma once

// Shared test machinery: random generators and independent oracles.
//
// The oracles re-derive results by brute force, with none of the library's
// shortcuts: no homotopy classes, no memoization, no pruning, no positions.
// Tests compare the two routes.

#include "piquant/piquant.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testutil {

using namespace piquant;

// ---------------------------------------------------------------------------
// Random generation

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(uint64_t seed) : rng(seed) {}
  size_t below(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); }
  bool chance(double p) { return std::uniform_real_distribution<>(0, 1)(rng) < p; }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }
};

struct TermOpts {
  std::vector<std::string> names{"a", "b"};
  std::vector<std::string> literals{"0", "1", "2", "3"};
  size_t max_prefixes = 4;
  bool derived = true;  // allow sums, scalars, lin prefixes
};

// Random term with at most opts.max_prefixes prefixes.
inline Term random_term(Gen& g, const TermOpts& opts) {
  NameSupply supply;
  std::vector<Name> scope;
  for (const auto& n : opts.names) scope.push_back(Name{n});
  size_t prefixes_left = opts.max_prefixes;
  std::function<Term(size_t)> go = [&](size_t depth) -> Term {
    size_t kinds = 3;                              // lit, par, noipar
    if (prefixes_left > 0) kinds += 2;             // prefix, nu-prefix
    if (opts.derived) kinds += 2;                  // sum, scale
    if (opts.derived && prefixes_left > 0) ++kinds;  // lin
    if (depth > 3) kinds = 1;
    switch (g.below(kinds)) {
      case 0:
        return mk_lit(opts.literals[g.below(opts.literals.size())]);
      case 1: {
        Term l = go(depth + 1), r = go(depth + 1);
        return mk_par(l, r);
      }
      case 2: {
        Term l = go(depth + 1), r = go(depth + 1);
        return mk_noipar(l, r);
      }
      case 3: {
        --prefixes_left;
        Action a{scope[g.below(scope.size())],
                 g.chance(0.5) ? Polarity::pos : Polarity::neg, supply.fresh()};
        bool extend = g.chance(0.3);  // sometimes use the object below
        if (extend) scope.push_back(a.object);
        Term body = go(depth + 1);
        if (extend) scope.pop_back();
        return mk_prefix(a, body);
      }
      case 4: {
        --prefixes_left;
        Name x = Name{"n" + std::to_string(scope.size())};
        scope.push_back(x);
        Action a{x, g.chance(0.5) ? Polarity::pos : Polarity::neg, supply.fresh()};
        Term body = go(depth + 1);
        scope.pop_back();
        return mk_nu(x, mk_prefix(a, body));  // restricted so the name is never dangling
      }
      case 5: {
        Term l = go(depth + 1), r = go(depth + 1);
        return mk_sum(l, r);
      }
      case 6:
        return mk_scale(opts.literals[g.below(opts.literals.size())], go(depth + 1));
      default: {
        --prefixes_left;
        Action a{scope[g.below(scope.size())],
                 g.chance(0.5) ? Polarity::pos : Polarity::neg, supply.fresh()};
        bool extend = g.chance(0.3);
        if (extend) scope.push_back(a.object);
        Term body = go(depth + 1);
        if (extend) scope.pop_back();
        return mk_lin(a, body);
      }
    }
  };
  return hygiene(go(0), supply);
}

// Random simple term: 1, inactions, lin chains, |, ||, new.
inline Term random_simple(Gen& g, const std::vector<std::string>& names, size_t max_prefixes) {
  NameSupply supply;
  std::vector<Name> scope;
  for (const auto& n : names) scope.push_back(Name{n});
  size_t prefixes_left = max_prefixes;
  std::function<Term(size_t)> go = [&](size_t depth) -> Term {
    size_t kinds = depth > 3 || prefixes_left == 0 ? 1 : 5;
    switch (g.below(kinds)) {
      case 0:
        return mk_lit("1");
      case 1: {
        --prefixes_left;
        Action a{scope[g.below(scope.size())],
                 g.chance(0.5) ? Polarity::pos : Polarity::neg, supply.fresh()};
        return mk_prefix(a, mk_lit("0"));
      }
      case 2: {
        --prefixes_left;
        Action a{scope[g.below(scope.size())],
                 g.chance(0.5) ? Polarity::pos : Polarity::neg, supply.fresh()};
        bool extend = g.chance(0.4);
        if (extend) scope.push_back(a.object);
        Term body = go(depth + 1);
        if (extend) scope.pop_back();
        return mk_lin(a, body);
      }
      case 3: {
        Term l = go(depth + 1), r = go(depth + 1);
        return g.chance(0.5) ? mk_par(l, r) : mk_noipar(l, r);
      }
      default: {
        Name x = Name{"m" + std::to_string(scope.size())};
        scope.push_back(x);
        Term body = go(depth + 1);
        scope.pop_back();
        return mk_nu(x, body);
      }
    }
  };
  return hygiene(go(0), supply);
}

// Random trace: indices as generated are already a topological order.
inline Trace random_trace(Gen& g, size_t max_events, const std::vector<std::string>& names) {
  Trace t;
  t.n = g.below(max_events + 1);
  for (size_t i = 0; i < t.n; ++i) {
    t.pol.push_back(g.chance(0.5) ? Polarity::pos : Polarity::neg);
    if (i > 0 && g.chance(0.35)) {
      size_t parent = g.below(i);
      t.subj.push_back(SubjRef::of_event(parent));
      t.order.insert({parent, i});
    } else {
      t.subj.push_back(SubjRef::of_name(Name{names[g.below(names.size())]}));
    }
  }
  for (size_t i = 0; i < t.n; ++i)
    for (size_t j = i + 1; j < t.n; ++j)
      if (g.chance(0.3)) t.order.insert({i, j});
  close_order(t);
  size_t extras = t.n ? g.below(3) : g.below(2);
  for (size_t k = 0; k < extras; ++k) {
    Polarity p = g.chance(0.5) ? Polarity::pos : Polarity::neg;
    if (t.n && g.chance(0.5)) t.ready.insert(ReadyItem{p, SubjRef::of_event(g.below(t.n))});
    else t.ready.insert(ReadyItem{p, SubjRef::of_name(Name{names[g.below(names.size())]})});
  }
  validate_trace(t);
  return t;
}

// ---------------------------------------------------------------------------
// Brute-force run enumeration: every maximal internal path, no classes.

inline void brute_paths_rec(const Term& t, Interaction& path, std::vector<Interaction>& out,
                            std::vector<Term>& finals) {
  bool any = false;
  for (const auto& s : transitions(t)) {
    if (!std::holds_alternative<InternalLabel>(s.label)) continue;
    any = true;
    path.push_back(s.label);
    brute_paths_rec(s.next, path, out, finals);
    path.pop_back();
  }
  if (!any) {
    out.push_back(path);
    finals.push_back(t);
  }
}

struct BrutePaths {
  std::vector<Interaction> paths;
  std::vector<Term> finals;
};

inline BrutePaths brute_paths(const Term& t) {
  BrutePaths r;
  Interaction path;
  brute_paths_rec(t, path, r.paths, r.finals);
  return r;
}

// Outcome by definition: group maximal paths into label-set classes, then sum
// one state per class.
inline SemiringValue brute_outcome(const Term& t, SemiringId id) {
  validate_literals(t, id);
  BrutePaths b = brute_paths(t);
  std::map<PreTrace, SemiringValue> classes;
  for (size_t i = 0; i < b.paths.size(); ++i) {
    PreTrace key = b.paths[i];
    std::sort(key.begin(), key.end());
    SemiringValue v = state(b.finals[i], id);
    auto [it, fresh] = classes.emplace(std::move(key), v);
    if (!fresh && it->second != v)
      throw contract_error("brute_outcome: same class, different state");
  }
  SemiringValue acc = sr_zero(id);
  for (const auto& [k, v] : classes) acc = sr_add(id, acc, v);
  return acc;
}

// ---------------------------------------------------------------------------
// Homotopy oracle: two interactions are homotopic when adjacent swaps of
// independent labels connect them.

inline bool homotopic_by_swaps(const Term& start, const Interaction& p, const Interaction& q) {
  if (p.size() != q.size()) return false;
  std::set<Interaction> seen{p};
  std::deque<Interaction> queue{p};
  while (!queue.empty()) {
    Interaction cur = queue.front();
    queue.pop_front();
    if (cur == q) return true;
    for (size_t i = 0; i + 1 < cur.size(); ++i) {
      if (!independent(cur[i], cur[i + 1])) continue;
      Interaction next = cur;
      std::swap(next[i], next[i + 1]);
      if (!seen.insert(next).second) continue;
      try {
        reduct(start, next);
      } catch (const contract_error&) {
        continue;  // the swapped sequence is not a path
      }
      queue.push_back(next);
    }
  }
  return false;
}

// Causal order by its definition: the pairs ordered the same way in every
// linearization of the class that is a path.
inline std::set<std::pair<size_t, size_t>> causal_order_by_linearizations(const Term& start,
                                                                          const PreTrace& labels) {
  std::vector<size_t> idx(labels.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<std::vector<size_t>> linearizations;
  std::sort(idx.begin(), idx.end());
  do {
    Interaction path;
    for (size_t i : idx) path.push_back(labels[i]);
    try {
      reduct(start, path);
      linearizations.push_back(idx);
    } catch (const contract_error&) {
    }
  } while (std::next_permutation(idx.begin(), idx.end()));
  if (linearizations.empty())
    throw contract_error("causal oracle: no linearization is a path");
  std::set<std::pair<size_t, size_t>> out;
  for (size_t a = 0; a < labels.size(); ++a)
    for (size_t b = 0; b < labels.size(); ++b) {
      if (a == b) continue;
      bool always = true;
      for (const auto& lin : linearizations) {
        size_t pa = 0, pb = 0;
        for (size_t i = 0; i < lin.size(); ++i) {
          if (lin[i] == a) pa = i;
          if (lin[i] == b) pb = i;
        }
        if (pa > pb) {
          always = false;
          break;
        }
      }
      if (always) out.emplace(a, b);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Erased-LTS testing oracle: textbook interleaving semantics on bare terms,
// positions never computed, every interleaving explored, finals deduplicated
// only by the idempotence of may/must addition.

struct ErasedOffer {
  Action act;
  std::function<Term(const Name&)> resume;  // continuation given the fresh name
};

inline std::vector<ErasedOffer> erased_offers(const Term& t) {
  std::vector<ErasedOffer> out;
  if (const auto* x = as<Prefix>(t)) {
    Action a = x->act;
    Term body = x->body;
    out.push_back({a, [a, body](const Name& z) {
                     NameSupply formal;
                     return mk_place(substitute(body, a.object, z, formal));
                   }});
    return out;
  }
  if (const auto* x = as<Place>(t)) {
    for (auto& o : erased_offers(x->body)) {
      auto inner = o.resume;
      out.push_back({o.act, [inner](const Name& z) { return mk_place(inner(z)); }});
    }
    return out;
  }
  if (const auto* x = as<Nu>(t)) {
    Name bound = x->name;
    for (auto& o : erased_offers(x->body)) {
      if (o.act.subject == bound) continue;
      auto inner = o.resume;
      out.push_back({o.act, [bound, inner](const Name& z) { return mk_nu(bound, inner(z)); }});
    }
    return out;
  }
  auto split = [&](const Term& l, const Term& r, bool noi) {
    for (auto& o : erased_offers(l)) {
      auto inner = o.resume;
      out.push_back({o.act, [inner, r, noi](const Name& z) {
                       return noi ? mk_noipar(inner(z), r) : mk_par(inner(z), r);
                     }});
    }
    for (auto& o : erased_offers(r)) {
      auto inner = o.resume;
      out.push_back({o.act, [inner, l, noi](const Name& z) {
                       return noi ? mk_noipar(l, inner(z)) : mk_par(l, inner(z));
                     }});
    }
  };
  if (const auto* x = as<Par>(t)) split(x->left, x->right, false);
  else if (const auto* x = as<NoIPar>(t)) split(x->left, x->right, true);
  return out;
}

inline std::vector<Term> erased_steps(const Term& t, NameSupply& supply) {
  std::vector<Term> out;
  if (const auto* x = as<Place>(t)) {
    for (const auto& n : erased_steps(x->body, supply)) out.push_back(mk_place(n));
    return out;
  }
  if (const auto* x = as<Nu>(t)) {
    for (const auto& n : erased_steps(x->body, supply)) out.push_back(mk_nu(x->name, n));
    return out;
  }
  auto sides = [&](const Term& l, const Term& r, bool noi) {
    for (const auto& n : erased_steps(l, supply)) out.push_back(noi ? mk_noipar(n, r) : mk_par(n, r));
    for (const auto& n : erased_steps(r, supply)) out.push_back(noi ? mk_noipar(l, n) : mk_par(l, n));
  };
  if (const auto* x = as<Par>(t)) {
    sides(x->left, x->right, false);
    for (const auto& ol : erased_offers(x->left))
      for (const auto& orr : erased_offers(x->right)) {
        if (ol.act.subject != orr.act.subject || ol.act.pol != dual(orr.act.pol)) continue;
        Name z = supply.fresh();
        out.push_back(mk_nu(z, mk_par(ol.resume(z), orr.resume(z))));
      }
  } else if (const auto* x = as<NoIPar>(t)) {
    sides(x->left, x->right, true);
  }
  return out;
}

// All final-state values reachable by maximal interleavings (a set: the
// testing semirings are additively idempotent, so multiplicity is moot).
inline void erased_finals_rec(const Term& t, SemiringId id, NameSupply& supply,
                              std::set<std::string>& seen, std::set<SemiringValue>& out) {
  if (!seen.insert(alpha_canonical(t)).second) return;
  std::vector<Term> steps = erased_steps(t, supply);
  if (steps.empty()) {
    out.insert(state(t, id));
    return;
  }
  for (const auto& n : steps) erased_finals_rec(n, id, supply, seen, out);
}

inline SemiringValue erased_testing_outcome(const Term& core, SemiringId id) {
  NameSupply supply;
  reserve_names(supply, core);
  std::set<std::string> seen;
  std::set<SemiringValue> finals;
  erased_finals_rec(core, id, supply, seen, finals);
  SemiringValue acc = sr_zero(id);
  for (const auto& v : finals) acc = sr_add(id, acc, v);
  return acc;
}

// ---------------------------------------------------------------------------
// Trace isomorphism by brute force over event bijections.

inline bool traces_isomorphic(const Trace& t, const Trace& u) {
  if (t.n != u.n || t.order.size() != u.order.size() || t.ready.size() != u.ready.size())
    return false;
  std::vector<size_t> perm(t.n);
  for (size_t i = 0; i < t.n; ++i) perm[i] = i;
  do {
    bool ok = true;
    for (size_t a = 0; a < t.n && ok; ++a) {
      if (u.pol[perm[a]] != t.pol[a]) ok = false;
      else if (t.subj[a].is_event != u.subj[perm[a]].is_event) ok = false;
      else if (t.subj[a].is_event && u.subj[perm[a]].event != perm[t.subj[a].event]) ok = false;
      else if (!t.subj[a].is_event && u.subj[perm[a]].name != t.subj[a].name) ok = false;
    }
    for (const auto& [a, b] : t.order)
      if (ok && !u.order.count({perm[a], perm[b]})) ok = false;
    for (ReadyItem r : t.ready) {
      if (!ok) break;
      if (r.subj.is_event) r.subj.event = perm[r.subj.event];
      if (!u.ready.count(r)) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// ---------------------------------------------------------------------------
// Common glue

inline Term parse(const std::string& src) {
  NameSupply supply;
  return parse_term(src, supply);
}

inline Term core_of(const Term& t) {
  NameSupply supply;
  reserve_names(supply, t);
  return elaborate(t, supply);
}

inline SemiringValue eval(const Term& t, SemiringId id) {
  NameSupply supply;
  reserve_names(supply, t);
  Elaboration el = elaborate_full(t, supply);
  return outcome(el.core, id, el.lin_witnesses);
}

inline SemiringValue eval_par(const Term& p, const Term& r, SemiringId id) {
  return eval(mk_par(p, r), id);
}

}  // namespace testutil
