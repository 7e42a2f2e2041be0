#pragma once

// Observational-equivalence checking.
//
// P and Q are equivalent when outcome(P|R) = outcome(Q|R) for every context
// R; simple contexts suffice.  Equality of trace normal forms is a sound
// certificate of equivalence.  A finite battery of simple contexts (plus the
// dual implementations of both normal forms) searches for a separating R;
// finding one is conclusive the other way.  Neither succeeding leaves the
// question open: distinct normal forms alone prove nothing.

#include "piquant/traces.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace piquant {

// Deterministic battery of simple contexts over the given names: unit,
// inactions, linear chains up to `depth`, and parallel pairs of those.
inline std::vector<Term> enumerate_contexts(const std::set<Name>& names, size_t depth) {
  NameSupply supply;
  std::vector<Term> testers{mk_lit("1")};
  for (const Name& u : names)
    for (Polarity e : {Polarity::pos, Polarity::neg})
      testers.push_back(mk_prefix(Action{u, e, supply.fresh()}, mk_lit("0")));
  std::vector<Term> chains{mk_lit("1")};
  for (size_t len = 1; len <= depth; ++len) {
    std::vector<Term> next;
    for (const Name& u : names)
      for (Polarity e : {Polarity::pos, Polarity::neg})
        for (const Term& tail : chains)
          next.push_back(mk_lin(Action{u, e, supply.fresh()}, tail));
    for (const Term& c : next) testers.push_back(c);
    chains = std::move(next);  // chains of exactly `len`, extended next round
  }
  std::vector<Term> out = testers;
  for (size_t i = 0; i < testers.size(); ++i)
    for (size_t j = i; j < testers.size(); ++j) out.push_back(mk_par(testers[i], testers[j]));
  std::vector<Term> dedup;
  std::set<std::string> seen;
  for (const Term& t : out)
    if (seen.insert(alpha_canonical(t)).second) dedup.push_back(t);
  return dedup;
}

struct Verdict {
  enum class Status { equivalent, distinguished, unknown };
  Status status = Status::unknown;
  std::string left_nf, right_nf;  // trace normal forms, printable
  size_t battery_size = 0;
  // set when distinguished:
  std::optional<Term> context;
  SemiringValue left_outcome, right_outcome;
};

namespace detail {

inline SemiringValue outcome_in_context(const Term& p, const Term& r, SemiringId id) {
  Term whole = mk_par(p, r);
  NameSupply supply;
  reserve_names(supply, whole);
  Elaboration el = elaborate_full(whole, supply);
  return outcome(el.core, id, el.lin_witnesses);
}

// In the may and must carriers only reaching w is observable.
inline bool outcomes_agree(const SemiringValue& a, const SemiringValue& b, bool omega_only) {
  if (omega_only) return a.is_omega() == b.is_omega();
  return a == b;
}

inline Verdict check_equiv_impl(const Term& p, const Term& q, SemiringId id, size_t depth,
                                bool omega_only) {
  Verdict v;
  LinearCombination np = decompose(p, id);
  LinearCombination nq = decompose(q, id);
  v.left_nf = np.str();
  v.right_nf = nq.str();
  if (np == nq) {
    v.status = Verdict::Status::equivalent;
    return v;
  }
  std::set<Name> names;
  for (const Name& n : free_names(p)) names.insert(n);
  for (const Name& n : free_names(q)) names.insert(n);
  std::vector<Term> battery = enumerate_contexts(names, depth);
  for (const auto& comb : {&np, &nq})
    for (const auto& [key, tv] : comb->terms) battery.push_back(implement_trace(dual(tv.first)));
  std::set<std::string> seen;
  for (const Term& r : battery) {
    if (!seen.insert(alpha_canonical(r)).second) continue;
    ++v.battery_size;
    SemiringValue a = outcome_in_context(p, r, id);
    SemiringValue b = outcome_in_context(q, r, id);
    if (!outcomes_agree(a, b, omega_only)) {
      v.status = Verdict::Status::distinguished;
      v.context = r;
      v.left_outcome = a;
      v.right_outcome = b;
      return v;
    }
  }
  v.status = Verdict::Status::unknown;
  return v;
}

inline void require_test_literals(const Term& t) {
  if (const auto* x = as<Lit>(t)) {
    if (x->text != "0" && x->text != "1" && x->text != "w")
      throw carrier_error("may/must testing: literal " + x->text + " is not 0, 1 or w");
    return;
  }
  if (const auto* x = as<Prefix>(t)) return require_test_literals(x->body);
  if (const auto* x = as<LinPrefix>(t)) return require_test_literals(x->body);
  if (const auto* x = as<Place>(t)) return require_test_literals(x->body);
  if (const auto* x = as<Nu>(t)) return require_test_literals(x->body);
  if (const auto* x = as<Par>(t)) {
    require_test_literals(x->left);
    require_test_literals(x->right);
    return;
  }
  if (const auto* x = as<NoIPar>(t)) {
    require_test_literals(x->left);
    require_test_literals(x->right);
    return;
  }
  if (const auto* x = as<Sum>(t)) {
    require_test_literals(x->left);
    require_test_literals(x->right);
    return;
  }
  if (const auto* x = as<Scale>(t)) {
    if (x->lit != "0" && x->lit != "1" && x->lit != "w")
      throw carrier_error("may/must testing: scalar " + x->lit + " is not 0, 1 or w");
    return require_test_literals(x->body);
  }
}

}  // namespace detail

// Three-way check: equal normal forms certify equivalence, a separating
// battery context certifies inequivalence, otherwise unknown.
inline Verdict check_equiv(const Term& p, const Term& q, SemiringId id, size_t depth) {
  return detail::check_equiv_impl(p, q, id, depth, false);
}

// May and must testing compare only whether w is reached.
inline Verdict may_equiv(const Term& p, const Term& q, size_t depth) {
  detail::require_test_literals(p);
  detail::require_test_literals(q);
  return detail::check_equiv_impl(p, q, SemiringId::may, depth, true);
}

inline Verdict must_equiv(const Term& p, const Term& q, size_t depth) {
  detail::require_test_literals(p);
  detail::require_test_literals(q);
  return detail::check_equiv_impl(p, q, SemiringId::must, depth, true);
}

}  // namespace piquant
