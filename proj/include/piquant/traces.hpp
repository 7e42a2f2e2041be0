#pragma once

// Partial-order traces with readiness.
//
// A trace is a finite set of events, each with a polarity and a subject that
// is either a free name or an earlier event (the one whose action revealed
// the name used), a partial order of causal precedence, and a ready set of
// offered-but-unmet inactions.  Traces are what remains of a simple term
// once an exhaustive pre-trace has erased its internal bookkeeping.
//
// Events carry no identity beyond their index; canonicalize relabels a trace
// to the lexicographically least encoding over the linear extensions of its
// order, so isomorphic traces collide and distinct ones do not.

#include "piquant/algebra.hpp"

#include "json.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace piquant {

struct SubjRef {
  bool is_event = false;
  Name name;         // meaningful when !is_event
  size_t event = 0;  // meaningful when is_event
  static SubjRef of_name(Name n) { return SubjRef{false, std::move(n), 0}; }
  static SubjRef of_event(size_t e) { return SubjRef{true, Name{}, e}; }
  auto operator<=>(const SubjRef&) const = default;
};

struct ReadyItem {
  Polarity pol;
  SubjRef subj;
  auto operator<=>(const ReadyItem&) const = default;
};

struct Trace {
  size_t n = 0;                              // events are 0..n-1
  std::vector<Polarity> pol;                 // size n
  std::vector<SubjRef> subj;                 // size n
  std::set<std::pair<size_t, size_t>> order; // strict pairs, transitively closed
  std::set<ReadyItem> ready;
  auto operator<=>(const Trace&) const = default;
};

inline void close_order(Trace& t) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, b] : std::set<std::pair<size_t, size_t>>(t.order))
      for (const auto& [c, d] : std::set<std::pair<size_t, size_t>>(t.order))
        if (b == c && t.order.insert({a, d}).second) changed = true;
  }
}

inline void validate_trace(const Trace& t) {
  if (t.pol.size() != t.n || t.subj.size() != t.n)
    throw contract_error("trace: field sizes disagree with event count");
  for (size_t e = 0; e < t.n; ++e) {
    const SubjRef& s = t.subj[e];
    if (s.is_event) {
      if (s.event >= t.n) throw contract_error("trace: subject refers to a missing event");
      if (!t.order.count({s.event, e}))
        throw contract_error("trace: an event must come after the one that names it");
    }
  }
  for (const auto& [a, b] : t.order) {
    if (a >= t.n || b >= t.n) throw contract_error("trace: order refers to a missing event");
    if (a == b) throw contract_error("trace: order is not irreflexive");
    if (t.order.count({b, a})) throw contract_error("trace: order is not antisymmetric");
    for (const auto& [c, d] : t.order)
      if (b == c && !t.order.count({a, d})) throw contract_error("trace: order is not transitive");
  }
  for (const auto& r : t.ready)
    if (r.subj.is_event && r.subj.event >= t.n)
      throw contract_error("trace: ready item refers to a missing event");
}

namespace detail {

// All linear extensions of the order, as sequences of original event ids.
inline void linear_extensions_rec(const Trace& t, std::vector<size_t>& placed,
                                  std::vector<bool>& done,
                                  std::vector<std::vector<size_t>>& out) {
  if (placed.size() == t.n) {
    out.push_back(placed);
    return;
  }
  for (size_t e = 0; e < t.n; ++e) {
    if (done[e]) continue;
    bool ok = true;
    for (size_t p = 0; p < t.n && ok; ++p)
      if (!done[p] && t.order.count({p, e})) ok = false;
    if (!ok) continue;
    done[e] = true;
    placed.push_back(e);
    linear_extensions_rec(t, placed, done, out);
    placed.pop_back();
    done[e] = false;
  }
}

inline std::vector<std::vector<size_t>> linear_extensions(const Trace& t) {
  std::vector<std::vector<size_t>> out;
  std::vector<size_t> placed;
  std::vector<bool> done(t.n, false);
  linear_extensions_rec(t, placed, done, out);
  return out;
}

inline std::string subj_render(const SubjRef& s, const std::vector<size_t>& newidx) {
  return s.is_event ? "e" + std::to_string(newidx[s.event]) : "n" + s.name.id;
}

// Encodes the trace as seen through one linear extension; the encoding is a
// total description, so equal encodings mean isomorphic traces.
inline std::string encode_under(const Trace& t, const std::vector<size_t>& ext) {
  std::vector<size_t> newidx(t.n, 0);
  for (size_t i = 0; i < ext.size(); ++i) newidx[ext[i]] = i;
  std::string s;
  for (size_t i = 0; i < ext.size(); ++i) {
    size_t a = ext[i];
    s += to_char(t.pol[a]);
    s += subj_render(t.subj[a], newidx);
    s += '<';  // down-set under new indices
    std::vector<size_t> below;
    for (size_t p = 0; p < t.n; ++p)
      if (t.order.count({p, a})) below.push_back(newidx[p]);
    std::sort(below.begin(), below.end());
    for (size_t b : below) s += std::to_string(b) + ",";
    s += ';';
  }
  s += "R:";
  std::set<std::string> items;
  for (const auto& r : t.ready) items.insert(std::string(1, to_char(r.pol)) + subj_render(r.subj, newidx));
  for (const auto& it : items) s += it + ";";
  return s;
}

inline Trace relabel(const Trace& t, const std::vector<size_t>& ext) {
  std::vector<size_t> newidx(t.n, 0);
  for (size_t i = 0; i < ext.size(); ++i) newidx[ext[i]] = i;
  Trace r;
  r.n = t.n;
  r.pol.resize(t.n);
  r.subj.resize(t.n);
  for (size_t i = 0; i < t.n; ++i) {
    r.pol[i] = t.pol[ext[i]];
    SubjRef s = t.subj[ext[i]];
    if (s.is_event) s.event = newidx[s.event];
    r.subj[i] = s;
  }
  for (const auto& [a, b] : t.order) r.order.insert({newidx[a], newidx[b]});
  for (ReadyItem r0 : t.ready) {
    if (r0.subj.is_event) r0.subj.event = newidx[r0.subj.event];
    r.ready.insert(r0);
  }
  return r;
}

}  // namespace detail

// Isomorphism-invariant relabeling: the linear extension whose encoding is
// lexicographically least names the events 0..n-1.
inline Trace canonicalize(const Trace& t) {
  validate_trace(t);
  auto exts = detail::linear_extensions(t);
  if (exts.empty()) throw contract_error("canonicalize: order admits no linear extension");
  const std::vector<size_t>* best = &exts[0];
  std::string best_enc = detail::encode_under(t, exts[0]);
  for (size_t i = 1; i < exts.size(); ++i) {
    std::string enc = detail::encode_under(t, exts[i]);
    if (enc < best_enc) {
      best_enc = std::move(enc);
      best = &exts[i];
    }
  }
  return detail::relabel(t, *best);
}

namespace detail {
inline std::string encode_identity(const Trace& t) {
  std::vector<size_t> idx(t.n);
  for (size_t i = 0; i < t.n; ++i) idx[i] = i;
  return encode_under(t, idx);
}
}  // namespace detail

// The canonical key; equal exactly for isomorphic traces.
inline std::string trace_key(const Trace& t) { return detail::encode_identity(canonicalize(t)); }

// Compact one-line rendering, for logs and verdicts.
inline std::string trace_str(const Trace& t) {
  auto subj = [&](const SubjRef& s) {
    return s.is_event ? "#" + std::to_string(s.event + 1) : s.name.id;
  };
  std::string out = "{";
  for (size_t i = 0; i < t.n; ++i) {
    if (i) out += " ";
    out += std::to_string(i + 1) + ":" + subj(t.subj[i]) + to_char(t.pol[i]);
  }
  out += "; <:";
  for (const auto& [a, b] : t.order)
    out += " " + std::to_string(a + 1) + "<" + std::to_string(b + 1);
  out += "; N:";
  for (const auto& r : t.ready) out += std::string(" ") + to_char(r.pol) + subj(r.subj);
  out += "}";
  return out;
}

inline Trace dual(const Trace& t) {
  Trace r = t;
  for (auto& p : r.pol) p = dual(p);
  std::set<ReadyItem> rd;
  for (ReadyItem it : r.ready) {
    it.pol = dual(it.pol);
    rd.insert(it);
  }
  r.ready = std::move(rd);
  return r;
}

// One trace per linear extension of the order; everything else unchanged.
inline std::vector<Trace> total_orderings(const Trace& t) {
  validate_trace(t);
  std::vector<Trace> out;
  for (const auto& ext : detail::linear_extensions(t)) {
    Trace r = t;
    r.order.clear();
    for (size_t i = 0; i < ext.size(); ++i)
      for (size_t j = i + 1; j < ext.size(); ++j) r.order.insert({ext[i], ext[j]});
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON form
//
// {"events":[{"id":1,"pol":"+","subj":{"name":"a"}}],
//  "order":[[1,2]],                         // Hasse pairs, 1-based ids
//  "ready":[{"pol":"-","subj":{"event":1}}]}

inline nlohmann::json trace_to_json(const Trace& t) {
  validate_trace(t);
  nlohmann::json j;
  j["events"] = nlohmann::json::array();
  auto subj_json = [](const SubjRef& s) {
    nlohmann::json r;
    if (s.is_event) r["event"] = s.event + 1;
    else r["name"] = s.name.id;
    return r;
  };
  for (size_t i = 0; i < t.n; ++i)
    j["events"].push_back({{"id", i + 1},
                           {"pol", std::string(1, to_char(t.pol[i]))},
                           {"subj", subj_json(t.subj[i])}});
  j["order"] = nlohmann::json::array();
  for (const auto& [a, b] : t.order) {
    bool direct = true;  // emit the Hasse relation only
    for (size_t c = 0; c < t.n && direct; ++c)
      if (t.order.count({a, c}) && t.order.count({c, b})) direct = false;
    if (direct) j["order"].push_back({a + 1, b + 1});
  }
  j["ready"] = nlohmann::json::array();
  for (const auto& r : t.ready)
    j["ready"].push_back({{"pol", std::string(1, to_char(r.pol))}, {"subj", subj_json(r.subj)}});
  return j;
}

inline Trace trace_from_json(const nlohmann::json& j) {
  Trace t;
  auto pol_of = [](const nlohmann::json& v) {
    std::string s = v.get<std::string>();
    if (s == "+") return Polarity::pos;
    if (s == "-") return Polarity::neg;
    throw carrier_error("trace json: polarity must be \"+\" or \"-\"");
  };
  auto subj_of = [&](const nlohmann::json& v) {
    if (v.contains("name")) return SubjRef::of_name(Name{v["name"].get<std::string>()});
    if (v.contains("event")) {
      size_t id = v["event"].get<size_t>();
      if (id == 0) throw carrier_error("trace json: event ids are 1-based");
      return SubjRef::of_event(id - 1);
    }
    throw carrier_error("trace json: subj needs \"name\" or \"event\"");
  };
  const auto& events = j.at("events");
  t.n = events.size();
  t.pol.resize(t.n);
  t.subj.resize(t.n);
  std::vector<bool> seen(t.n, false);
  for (const auto& e : events) {
    size_t id = e.at("id").get<size_t>();
    if (id == 0 || id > t.n) throw carrier_error("trace json: event ids must be 1..n");
    if (seen[id - 1]) throw carrier_error("trace json: duplicate event id");
    seen[id - 1] = true;
    t.pol[id - 1] = pol_of(e.at("pol"));
    t.subj[id - 1] = subj_of(e.at("subj"));
  }
  if (j.contains("order"))
    for (const auto& p : j["order"]) {
      size_t a = p.at(0).get<size_t>(), b = p.at(1).get<size_t>();
      if (a == 0 || b == 0 || a > t.n || b > t.n)
        throw carrier_error("trace json: order ids must be 1..n");
      t.order.insert({a - 1, b - 1});
    }
  if (j.contains("ready"))
    for (const auto& r : j["ready"])
      t.ready.insert(ReadyItem{pol_of(r.at("pol")), subj_of(r.at("subj"))});
  close_order(t);
  validate_trace(t);
  return t;
}

// ---------------------------------------------------------------------------
// Extraction: the trace a simple term leaves along an exhaustive pre-trace.

namespace detail {

inline Trace extract_trace_impl(const Term& source, const Elaboration& el, const PreTrace& rho) {
  // events = the visible labels, in label order
  std::vector<VisibleLabel> events;
  for (const auto& l : rho)
    if (const auto* v = std::get_if<VisibleLabel>(&l)) events.push_back(*v);

  std::map<Name, size_t> revealed;  // object of a visible label -> its event
  for (size_t i = 0; i < events.size(); ++i) revealed[events[i].object] = i;

  std::set<Name> source_free = free_names(source);
  Trace t;
  t.n = events.size();
  for (const auto& e : events) {
    t.pol.push_back(e.pol);
    auto it = revealed.find(e.subject);
    if (it != revealed.end()) {
      t.subj.push_back(SubjRef::of_event(it->second));
    } else if (source_free.count(e.subject)) {
      t.subj.push_back(SubjRef::of_name(e.subject));
    } else {
      throw contract_error("extract_trace: visible subject is neither free nor revealed");
    }
  }

  // order = causal order of the whole pre-trace, restricted to the events;
  // closure is taken before restriction so internal chains still order them.
  auto full = causal_order(rho);
  std::vector<size_t> visible_index(rho.size(), SIZE_MAX);
  size_t vi = 0;
  for (size_t i = 0; i < rho.size(); ++i)
    if (std::holds_alternative<VisibleLabel>(rho[i])) visible_index[i] = vi++;
  for (const auto& [a, b] : full)
    if (visible_index[a] != SIZE_MAX && visible_index[b] != SIZE_MAX)
      t.order.insert({visible_index[a], visible_index[b]});

  // ready = the active inactions of the reduct whose subject is observable
  Term r = reduct(el.core, [&] {
    // any linearization will do: greedy replay
    Interaction lin;
    std::vector<Label> remaining = rho;
    Term cur = el.core;
    while (!remaining.empty()) {
      bool fired = false;
      for (const auto& s : transitions(cur)) {
        auto pos = std::find(remaining.begin(), remaining.end(), s.label);
        if (pos == remaining.end()) continue;
        lin.push_back(s.label);
        remaining.erase(pos);
        cur = s.next;
        fired = true;
        break;
      }
      if (!fired) throw contract_error("extract_trace: pre-trace is not a path");
    }
    return lin;
  }());
  std::vector<detail::ActiveInaction> acts;
  std::string path;
  detail::active_inactions(r, path, acts);
  for (const auto& a : acts) {
    auto it = revealed.find(a.subject);
    if (it != revealed.end()) t.ready.insert(ReadyItem{a.pol, SubjRef::of_event(it->second)});
    else if (source_free.count(a.subject)) t.ready.insert(ReadyItem{a.pol, SubjRef::of_name(a.subject)});
    // otherwise the subject is restricted and was never revealed: unobservable
  }
  validate_trace(t);
  return t;
}

}  // namespace detail

// The trace induced by an exhaustive pre-trace of a simple term.
inline Trace extract_trace(const Term& s, const PreTrace& rho) {
  auto ex = exhaustive_pretraces(s);  // also checks is_simple
  if (!ex.count(rho)) throw contract_error("extract_trace: pre-trace is not exhaustive");
  NameSupply supply;
  reserve_names(supply, s);
  Elaboration el = elaborate_full(s, supply);
  return detail::extract_trace_impl(s, el, rho);
}

// ---------------------------------------------------------------------------
// Implementation: a simple term whose unique exhaustive pre-trace induces T.
//
// Per event a (with object z_a):
//   A_a := lin x_{b1 a}. ... lin x_{bk a}. lin subj(a)^pol(a)(z_a).
//            ( prod_{a<c} lin ~y_{a c}.1 || prod_{subj(c)=a} A_c
//              || prod_{(e,a) in ready} z_a^e.0 )
// with b1<...<bk the events strictly below a.  Top level:
//   new {x,y}. ( (A_a1 || ... || A_am) | prod_{a<b} lin y_{a b}. lin ~x_{a b}.1 )
//   || prod_{(e,u) in ready, u a name} u^e.0
// Events never interact with each other: the forest joins with ||, and only
// the coordination pairs sit across an interacting composition.
// Unit factors fold away.

namespace detail {

inline Term fold_terms(const std::vector<Term>& ts, Term (*join)(Term, Term)) {
  Term acc;
  for (const auto& t : ts) {
    if (const auto* l = as<Lit>(t); l && l->text == "1") continue;
    acc = acc ? join(acc, t) : t;
  }
  return acc ? acc : mk_lit("1");
}

}  // namespace detail

inline Term implement_trace(const Trace& t0) {
  validate_trace(t0);
  const Trace& t = t0;

  // generated names must avoid the trace's own names
  std::set<std::string> taken;
  for (const auto& s : t.subj)
    if (!s.is_event) taken.insert(s.name.id);
  for (const auto& r : t.ready)
    if (!r.subj.is_event) taken.insert(r.subj.name.id);
  std::string suffix;
  auto clashes = [&](const std::string& base) {
    for (size_t a = 0; a < t.n; ++a) {
      if (taken.count("z_" + std::to_string(a + 1) + base)) return true;
      for (size_t b = 0; b < t.n; ++b) {
        if (taken.count("x" + std::to_string(a + 1) + "_" + std::to_string(b + 1) + base)) return true;
        if (taken.count("y" + std::to_string(a + 1) + "_" + std::to_string(b + 1) + base)) return true;
      }
    }
    return false;
  };
  while (clashes(suffix)) suffix += "_";
  auto zname = [&](size_t a) { return Name{"z_" + std::to_string(a + 1) + suffix}; };
  auto xname = [&](size_t a, size_t b) {
    return Name{"x" + std::to_string(a + 1) + "_" + std::to_string(b + 1) + suffix};
  };
  auto yname = [&](size_t a, size_t b) {
    return Name{"y" + std::to_string(a + 1) + "_" + std::to_string(b + 1) + suffix};
  };

  NameSupply supply;  // objects of coordination prefixes are never used
  auto lin1 = [&](const Name& subj, Polarity pol, const Term& body) {
    return mk_lin(Action{subj, pol, supply.fresh()}, body);
  };

  std::function<Term(size_t)> build_event = [&](size_t a) -> Term {
    std::vector<Term> cont;
    for (size_t c = 0; c < t.n; ++c)
      if (t.order.count({a, c})) cont.push_back(lin1(yname(a, c), Polarity::neg, mk_lit("1")));
    for (size_t c = 0; c < t.n; ++c)
      if (t.subj[c].is_event && t.subj[c].event == a) cont.push_back(build_event(c));
    for (const auto& r : t.ready)
      if (r.subj.is_event && r.subj.event == a)
        cont.push_back(mk_prefix(Action{zname(a), r.pol, supply.fresh()}, mk_lit("0")));
    Name subj = t.subj[a].is_event ? zname(t.subj[a].event) : t.subj[a].name;
    Term core = mk_lin(Action{subj, t.pol[a], zname(a)}, detail::fold_terms(cont, mk_noipar));
    for (size_t b = t.n; b-- > 0;)  // guards, outermost = least index
      if (t.order.count({b, a})) core = lin1(xname(b, a), Polarity::pos, core);
    return core;
  };

  std::vector<Term> roots;
  for (size_t a = 0; a < t.n; ++a)
    if (!t.subj[a].is_event) roots.push_back(build_event(a));
  std::vector<Term> coords;
  for (size_t a = 0; a < t.n; ++a)
    for (size_t b = 0; b < t.n; ++b)
      if (t.order.count({a, b}))
        coords.push_back(lin1(yname(a, b), Polarity::pos, lin1(xname(a, b), Polarity::neg, mk_lit("1"))));

  Term body = mk_par(detail::fold_terms(roots, mk_noipar), detail::fold_terms(coords, mk_par));
  if (const auto* p = as<Par>(body)) {
    const auto* l = as<Lit>(p->left);
    const auto* r = as<Lit>(p->right);
    if (l && l->text == "1") body = p->right;
    else if (r && r->text == "1") body = p->left;
  }
  std::vector<Name> bound;
  for (size_t a = 0; a < t.n; ++a)
    for (size_t b = 0; b < t.n; ++b)
      if (t.order.count({a, b})) {
        bound.push_back(xname(a, b));
        bound.push_back(yname(a, b));
      }
  for (size_t i = bound.size(); i-- > 0;) body = mk_nu(bound[i], body);

  std::vector<Term> offside{body};
  for (const auto& r : t.ready)
    if (!r.subj.is_event)
      offside.push_back(mk_prefix(Action{r.subj.name, r.pol, supply.fresh()}, mk_lit("0")));
  return detail::fold_terms(offside, mk_noipar);
}

// ---------------------------------------------------------------------------
// Synchronization count: the number of ways two traces can fully annihilate.

inline Nat sync_count(const Trace& t, const Trace& u) {
  validate_trace(t);
  validate_trace(u);
  if (t.n != u.n) return 0;
  size_t n = t.n;
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  Nat count = 0;
  do {
    bool ok = true;
    for (size_t a = 0; a < n && ok; ++a) {
      if (u.pol[perm[a]] != dual(t.pol[a])) ok = false;              // polarity flip
      else if (t.subj[a].is_event != u.subj[perm[a]].is_event) ok = false;
      else if (t.subj[a].is_event) {                                 // subj compat
        if (u.subj[perm[a]].event != perm[t.subj[a].event]) ok = false;
      } else if (u.subj[perm[a]].name != t.subj[a].name) ok = false;
    }
    if (ok) {  // union of the two strict orders must stay acyclic
      std::vector<std::vector<size_t>> adj(n);
      for (const auto& [a, b] : t.order) adj[a].push_back(b);
      for (const auto& [a, b] : u.order)
        for (size_t x = 0; x < n; ++x)
          for (size_t y = 0; y < n; ++y)
            if (perm[x] == a && perm[y] == b) adj[x].push_back(y);
      std::vector<int> mark(n, 0);
      std::function<bool(size_t)> cyc = [&](size_t v) -> bool {
        mark[v] = 1;
        for (size_t w : adj[v]) {
          if (mark[w] == 1) return true;
          if (mark[w] == 0 && cyc(w)) return true;
        }
        mark[v] = 2;
        return false;
      };
      for (size_t v = 0; v < n && ok; ++v)
        if (mark[v] == 0 && cyc(v)) ok = false;
    }
    if (ok) {  // no ready clash
      for (const auto& r : t.ready) {
        SubjRef s = r.subj;
        if (s.is_event) s.event = perm[s.event];
        if (u.ready.count(ReadyItem{dual(r.pol), s})) {
          ok = false;
          break;
        }
      }
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// ---------------------------------------------------------------------------
// Decomposition into a linear combination of canonical traces.

struct LinearCombination {
  // canonical key -> (canonical trace, nonzero coefficient)
  std::map<std::string, std::pair<Trace, SemiringValue>> terms;

  void add(SemiringId id, const Trace& canon, const SemiringValue& k) {
    if (k.is_zero()) return;
    std::string key = detail::encode_identity(canon);
    auto it = terms.find(key);
    if (it == terms.end()) {
      terms.emplace(std::move(key), std::make_pair(canon, k));
      return;
    }
    SemiringValue sum = sr_add(id, it->second.second, k);
    if (sum.is_zero()) terms.erase(it);
    else it->second.second = sum;
  }

  bool operator==(const LinearCombination& o) const {
    if (terms.size() != o.terms.size()) return false;
    auto a = terms.begin();
    auto b = o.terms.begin();
    for (; a != terms.end(); ++a, ++b)
      if (a->first != b->first || a->second.second != b->second.second) return false;
    return true;
  }

  std::string str() const {
    std::string out;
    for (const auto& [k, tv] : terms) {
      if (!out.empty()) out += "  +  ";
      out += tv.second.str() + " * " + trace_str(tv.first);
    }
    return out.empty() ? "0" : out;
  }
};

// Every term is a combination of traces: affine-expand, then let each simple
// summand contribute its exhaustive pre-traces' extracted traces.
inline LinearCombination decompose(const Term& t, SemiringId id) {
  LinearCombination out;
  for (const auto& [s, k] : affine_expand(t, id).entries()) {
    NameSupply supply;
    reserve_names(supply, s);
    Elaboration el = elaborate_full(s, supply);
    detail::ExhaustiveEnum e(el);
    for (const auto& rho : e.extensions(el.core))
      out.add(id, canonicalize(detail::extract_trace_impl(s, el, rho)), k);
  }
  return out;
}

// Parallel composition of traces, realized through their implementations.
inline LinearCombination trace_par_compose(const Trace& t, const Trace& u) {
  return decompose(mk_par(implement_trace(t), implement_trace(u)), SemiringId::nat);
}

}  // namespace piquant
