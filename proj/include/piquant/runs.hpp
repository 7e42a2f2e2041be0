#pragma once

// Runs, pre-traces, causal order and quantitative outcomes.
//
// A run is a homotopy class of maximal internal paths: paths that differ only
// by swapping adjacent independent steps are the same run.  Two maximal
// internal paths are homotopic exactly when they fire the same label set, so
// classes are enumerated as label sets.  Reducts are built so that homotopic
// paths produce literally identical terms (fresh names derive from positions,
// adjacent binder runs are sorted), which makes memoization by printed term
// sound and keeps the enumeration polynomial in the number of classes.

#include "piquant/lts.hpp"
#include "piquant/semiring.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace piquant {

// Labels are independent when their positions are pairwise incomparable
// under the prefix order.  Independent steps commute.
inline bool independent(const Label& a, const Label& b) {
  for (const auto& p : positions_of(a))
    for (const auto& q : positions_of(b))
      if (p == q || p.proper_prefix_of(q) || q.proper_prefix_of(p)) return false;
  return true;
}

using PreTrace = std::vector<Label>;  // sorted, duplicate-free

struct Run {
  PreTrace labels;     // the class, as its label set
  Interaction path;    // one representative linearization
  Term final_state;    // internal-normal reduct, identical across the class
};

// The active multiset of value literals determines a term's state.
inline SemiringValue state(const Term& t, SemiringId id) {
  if (const auto* x = as<Lit>(t)) return sr_from_literal(id, x->text);
  if (as<Prefix>(t)) return sr_one(id);
  if (const auto* x = as<Place>(t)) return state(x->body, id);
  if (const auto* x = as<Nu>(t)) return state(x->body, id);
  if (const auto* x = as<Par>(t)) return sr_mul(id, state(x->left, id), state(x->right, id));
  if (const auto* x = as<NoIPar>(t)) return sr_mul(id, state(x->left, id), state(x->right, id));
  throw contract_error("state: derived form in core term");
}

// Checks every literal in the term against the carrier, so that evaluation
// rejects ill-valued terms even when pruning would skip them.
inline void validate_literals(const Term& t, SemiringId id) {
  if (const auto* x = as<Lit>(t)) {
    sr_from_literal(id, x->text);
    return;
  }
  if (const auto* x = as<Prefix>(t)) return validate_literals(x->body, id);
  if (const auto* x = as<Place>(t)) return validate_literals(x->body, id);
  if (const auto* x = as<Nu>(t)) return validate_literals(x->body, id);
  if (const auto* x = as<Par>(t)) {
    validate_literals(x->left, id);
    validate_literals(x->right, id);
    return;
  }
  if (const auto* x = as<NoIPar>(t)) {
    validate_literals(x->left, id);
    validate_literals(x->right, id);
    return;
  }
  throw contract_error("validate_literals: derived form in core term");
}

// True when a 0 literal sits in active position.  Active zeros persist along
// every transition, so such a term's every run has state 0.
inline bool has_active_zero(const Term& t) {
  if (const auto* x = as<Lit>(t)) return is_zero_literal(x->text);
  if (as<Prefix>(t)) return false;
  if (const auto* x = as<Place>(t)) return has_active_zero(x->body);
  if (const auto* x = as<Nu>(t)) return has_active_zero(x->body);
  if (const auto* x = as<Par>(t)) return has_active_zero(x->left) || has_active_zero(x->right);
  if (const auto* x = as<NoIPar>(t)) return has_active_zero(x->left) || has_active_zero(x->right);
  throw contract_error("has_active_zero: derived form in core term");
}

namespace detail {

inline std::vector<Step> internal_steps(const Term& t) {
  std::vector<Step> out;
  for (auto& s : transitions(t))
    if (std::holds_alternative<InternalLabel>(s.label)) out.push_back(std::move(s));
  return out;
}

inline PreTrace with_label(const PreTrace& set, const Label& lab) {
  PreTrace r = set;
  r.insert(std::upper_bound(r.begin(), r.end(), lab), lab);
  return r;
}

struct RunEnum {
  // per start term: label set of each maximal internal path -> final term
  std::map<std::string, std::map<PreTrace, Term>> memo;

  const std::map<PreTrace, Term>& enumerate(const Term& t) {
    std::string key = print_term(t);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::map<PreTrace, Term> classes;
    auto steps = internal_steps(t);
    if (steps.empty()) {
      classes.emplace(PreTrace{}, t);
    } else {
      for (const auto& s : steps) {
        for (const auto& [set, fin] : enumerate(s.next))
          classes.emplace(with_label(set, s.label), fin);  // collisions: same class
      }
    }
    return memo.emplace(std::move(key), std::move(classes)).first->second;
  }
};

}  // namespace detail

// All runs of a core term: one entry per homotopy class of maximal internal
// paths, with a representative path recovered by greedy replay.
inline std::vector<Run> runs(const Term& t) {
  detail::RunEnum e;
  std::vector<Run> out;
  for (const auto& [set, fin] : e.enumerate(t)) {
    Run r;
    r.labels = set;
    r.final_state = fin;
    std::vector<Label> remaining = set;
    Term cur = t;
    while (!remaining.empty()) {
      bool fired = false;
      for (const auto& s : detail::internal_steps(cur)) {
        auto pos = std::find(remaining.begin(), remaining.end(), s.label);
        if (pos == remaining.end()) continue;
        r.path.push_back(s.label);
        remaining.erase(pos);
        cur = s.next;
        fired = true;
        break;
      }
      if (!fired) throw contract_error("runs: replay stuck; class is not a path");
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<PreTrace> pretraces(const Term& t) {
  detail::RunEnum e;
  std::vector<PreTrace> out;
  for (const auto& [set, fin] : e.enumerate(t)) out.push_back(set);
  return out;
}

// Causal order of a run: the least partial order in which every label comes
// after the labels guarding it.  Label a guards b when a position of a is a
// proper prefix of a position of b; the order is its transitive closure, and
// equals the intersection of the step orders of all linearizations.
inline bool causally_before(const Label& a, const Label& b) {
  for (const auto& p : positions_of(a))
    for (const auto& q : positions_of(b))
      if (p.proper_prefix_of(q)) return true;
  return false;
}

// pairs (i,j) with labels[i] strictly below labels[j]
inline std::set<std::pair<size_t, size_t>> causal_order(const PreTrace& labels) {
  size_t n = labels.size();
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && causally_before(labels[i], labels[j])) below[i][j] = true;
  for (size_t k = 0; k < n; ++k)  // Floyd-Warshall closure
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (below[i][k] && below[k][j]) below[i][j] = true;
  std::set<std::pair<size_t, size_t>> out;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (below[i][j]) {
        if (below[j][i]) throw contract_error("causal_order: cyclic guarding");
        out.emplace(i, j);
      }
  return out;
}

namespace detail {

struct OutcomeEnum {
  SemiringId id;
  // Positions of private must-fire syncs (the witness actions recorded by
  // elaboration).  Such a sync is independent of every other explorable label
  // and belongs to every maximal run once enabled, so it is fired first and
  // alone instead of in every interleaving.
  std::vector<Position> eager;
  // label set of each surviving class -> its state value
  std::map<std::string, std::map<PreTrace, SemiringValue>> memo;

  explicit OutcomeEnum(SemiringId i, std::vector<Position> e = {})
      : id(i), eager(std::move(e)) {}

  bool is_eager(const Label& lab) const {
    for (const auto& p : positions_of(lab))
      for (const auto& w : eager)
        if (p == w) return true;
    return false;
  }

  const std::map<PreTrace, SemiringValue>& values(const Term& t) {
    std::string key = print_term(t);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::map<PreTrace, SemiringValue> classes;
    // An active 0 persists to every final state, and 0 annihilates products
    // in every carrier here, so the whole subtree contributes nothing.
    if (!has_active_zero(t)) {
      auto steps = internal_steps(t);
      const Step* pending = nullptr;
      for (const auto& s : steps)
        if (!label_consumes_zero(t, s.label) && is_eager(s.label)) {
          pending = &s;
          break;
        }
      if (pending) {
        for (const auto& [set, v] : values(pending->next))
          classes.emplace(with_label(set, pending->label), v);
      } else if (steps.empty()) {
        classes.emplace(PreTrace{}, state(t, id));
      } else {
        for (const auto& s : steps) {
          if (label_consumes_zero(t, s.label)) continue;  // child would be pruned
          for (const auto& [set, v] : values(s.next)) {
            auto [slot, inserted] = classes.emplace(with_label(set, s.label), v);
            if (!inserted && slot->second != v)
              throw contract_error("outcome: homotopic paths disagree on state");
          }
        }
      }
    }
    return memo.emplace(std::move(key), std::move(classes)).first->second;
  }
};

}  // namespace detail

// The outcome of a core term: the semiring sum of the states of its runs.
// `eager` may carry the witness positions recorded by elaboration; it only
// prunes redundant interleavings and never changes the result.
inline SemiringValue outcome(const Term& t, SemiringId id,
                             const std::vector<Position>& eager = {}) {
  validate_literals(t, id);
  detail::OutcomeEnum e(id, eager);
  SemiringValue acc = sr_zero(id);
  for (const auto& [set, v] : e.values(t)) acc = sr_add(id, acc, v);
  return acc;
}

}  // namespace piquant
