#pragma once

// The position-decorated labelled transition system.
//
// Every label records where in the term it happened:
//   visible   u+(x):pos   an action at `pos` fired, revealing its object x
//   internal  (l,r)       dual actions at positions l and r interacted
//
// Positions address the syntax tree: parallel operands are digits 1/2, a
// prefix or place addresses its continuation as 1, `new` is transparent.  A
// fired prefix leaves @ behind, so positions never move and never repeat.
//
// An interaction replaces P|Q by new z.(P'[z/x] | Q'[z/y]) where z is a fresh
// name derived from the interaction's absolute position pair; homotopic
// reorderings therefore produce literally identical reducts (adjacent binder
// runs are kept sorted by construction).

#include "piquant/syntax.hpp"

#include <string>
#include <variant>
#include <vector>

namespace piquant {

struct VisibleLabel {
  Name subject;
  Polarity pol;
  Name object;
  Position at;
  auto operator<=>(const VisibleLabel&) const = default;
};

struct InternalLabel {
  Position left, right;
  auto operator<=>(const InternalLabel&) const = default;
};

using Label = std::variant<VisibleLabel, InternalLabel>;

inline std::string to_string(const Label& l) {
  if (const auto* v = std::get_if<VisibleLabel>(&l))
    return v->subject.id + to_char(v->pol) + "(" + v->object.id + "):" + v->at.str();
  const auto& i = std::get<InternalLabel>(l);
  return "(" + i.left.str() + "," + i.right.str() + ")";
}

inline std::vector<Position> positions_of(const Label& l) {
  if (const auto* v = std::get_if<VisibleLabel>(&l)) return {v->at};
  const auto& i = std::get<InternalLabel>(l);
  return {i.left, i.right};
}

struct Step {
  Label label;
  Term next;
};

namespace detail {

inline Name interaction_name(const Position& l, const Position& r) {
  return Name{"#i" + l.digits + "_" + r.digits};
}

inline std::vector<Step> trans_rec(const Term& t, const Position& at) {
  std::vector<Step> out;
  if (as<Lit>(t)) return out;
  if (const auto* x = as<Prefix>(t)) {
    out.push_back(Step{VisibleLabel{x->act.subject, x->act.pol, x->act.object, at},
                       mk_place(x->body)});
    return out;
  }
  if (const auto* x = as<Place>(t)) {
    for (auto& s : trans_rec(x->body, at.child('1')))
      out.push_back(Step{s.label, mk_place(s.next)});
    return out;
  }
  auto both_sides = [&](const Term& l, const Term& r, bool interact,
                        auto rebuild) {
    auto ls = trans_rec(l, at.child('1'));
    auto rs = trans_rec(r, at.child('2'));
    for (auto& s : ls) out.push_back(Step{s.label, rebuild(s.next, r)});
    for (auto& s : rs) out.push_back(Step{s.label, rebuild(l, s.next)});
    if (!interact) return;
    for (const auto& sl : ls) {
      const auto* vl = std::get_if<VisibleLabel>(&sl.label);
      if (!vl) continue;
      for (const auto& sr : rs) {
        const auto* vr = std::get_if<VisibleLabel>(&sr.label);
        if (!vr) continue;
        if (vl->subject != vr->subject || vl->pol != dual(vr->pol)) continue;
        Name z = interaction_name(vl->at, vr->at);
        // The rename cannot capture: z is derived from two live positions,
        // and any '#i' binder already present came from positions that are
        // dead (their prefixes fired).  The supply is a formality.
        NameSupply formal;
        Term pl = substitute(sl.next, vl->object, z, formal);
        Term pr = substitute(sr.next, vr->object, z, formal);
        out.push_back(Step{InternalLabel{vl->at, vr->at}, mk_nu(z, mk_par(pl, pr))});
      }
    }
  };
  if (const auto* x = as<Par>(t)) {
    both_sides(x->left, x->right, true,
               [](const Term& a, const Term& b) { return mk_par(a, b); });
    return out;
  }
  if (const auto* x = as<NoIPar>(t)) {
    both_sides(x->left, x->right, false,
               [](const Term& a, const Term& b) { return mk_noipar(a, b); });
    return out;
  }
  if (const auto* x = as<Nu>(t)) {
    for (auto& s : trans_rec(x->body, at)) {  // transparent: no digit
      if (const auto* v = std::get_if<VisibleLabel>(&s.label); v && v->subject == x->name)
        continue;  // the restricted name cannot be observed
      out.push_back(Step{s.label, mk_nu(x->name, s.next)});
    }
    return out;
  }
  throw contract_error("transitions: derived form in core term");
}

}  // namespace detail

// All transitions of a core term, labels carrying absolute positions.
inline std::vector<Step> transitions(const Term& t) {
  if (!is_core(t)) throw contract_error("transitions: term has derived forms; elaborate first");
  return detail::trans_rec(t, Position{});
}

using Interaction = std::vector<Label>;

// Replays an interaction; rejects the first step that is not enabled.
inline Term reduct(const Term& t, const Interaction& p) {
  Term cur = t;
  for (const auto& lab : p) {
    bool found = false;
    for (auto& s : transitions(cur)) {
      if (s.label == lab) {
        cur = s.next;
        found = true;
        break;
      }
    }
    if (!found) throw contract_error("reduct: label " + to_string(lab) + " is not enabled");
  }
  return cur;
}

// The subterm a position points at; `new` wrappers are skipped so the result
// of walking to an action position is its Prefix node.
inline Term subterm_at(const Term& t, const Position& pos) {
  Term cur = t;
  size_t i = 0;
  for (;;) {
    if (const auto* x = as<Nu>(cur)) {
      cur = x->body;
      continue;
    }
    if (i == pos.digits.size()) return cur;
    char d = pos.digits[i++];
    if (const auto* x = as<Prefix>(cur)) {
      if (d != '1') throw contract_error("subterm_at: bad digit under prefix");
      cur = x->body;
    } else if (const auto* x = as<Place>(cur)) {
      if (d != '1') throw contract_error("subterm_at: bad digit under place");
      cur = x->body;
    } else if (const auto* x = as<Par>(cur)) {
      cur = d == '1' ? x->left : x->right;
    } else if (const auto* x = as<NoIPar>(cur)) {
      cur = d == '1' ? x->left : x->right;
    } else {
      throw contract_error("subterm_at: position walks off the term");
    }
  }
}

// True when the action at `pos` has continuation 0 (an inaction, or the
// failure branch of a linear-action encoding).  Consuming it pins the run's
// state to 0.
inline bool consumes_zero_continuation(const Term& t, const Position& pos) {
  Term node = subterm_at(t, pos);
  const Term* body = nullptr;
  if (const auto* x = as<Prefix>(node)) body = &x->body;
  else return false;
  Term b = *body;
  while (const auto* n = as<Nu>(b)) b = n->body;
  const auto* l = as<Lit>(b);
  return l && is_zero_literal(l->text);
}

inline bool label_consumes_zero(const Term& t, const Label& lab) {
  for (const auto& p : positions_of(lab))
    if (consumes_zero_continuation(t, p)) return true;
  return false;
}

}  // namespace piquant
