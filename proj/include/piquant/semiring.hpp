#pragma once

// Observation semirings: the carriers quantitative testing sums run states in.
//
//   nat     (N, +, *, 0, 1)            unbounded counting
//   bool01  ({0,1}, max, *, 0, 1)      possibility
//   may     ({0,1,w}, +_may, *, 0, 1)  may-testing; addition is max for 0<1<w
//   must    ({0,1,w}, +_must, *, 0, 1) must-testing; 1 dominates addition
//
// may and must share the carrier and the multiplication (0 absorbs, 1 is
// neutral, w*w=w); they differ only in addition.  `w` is the success value
// written ω elsewhere; literals are decimal digits or the letter w.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>

namespace piquant {

using Nat = boost::multiprecision::cpp_int;

// Raised when a literal or value falls outside the selected carrier.
struct carrier_error : std::runtime_error {
  explicit carrier_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised on internal contract violations (callers broke a precondition).
struct contract_error : std::logic_error {
  explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

enum class SemiringId { nat, bool01, may, must };

inline const char* to_string(SemiringId id) {
  switch (id) {
    case SemiringId::nat: return "nat";
    case SemiringId::bool01: return "bool01";
    case SemiringId::may: return "may";
    case SemiringId::must: return "must";
  }
  return "?";
}

inline SemiringId semiring_from_string(const std::string& s) {
  if (s == "nat") return SemiringId::nat;
  if (s == "bool01") return SemiringId::bool01;
  if (s == "may") return SemiringId::may;
  if (s == "must") return SemiringId::must;
  throw carrier_error("unknown semiring: " + s);
}

// A value of one of the four carriers: a nonnegative integer or w.
// Values are immutable once built; all operations return fresh values.
class SemiringValue {
 public:
  SemiringValue() : omega_(false), n_(0) {}
  static SemiringValue integer(Nat n) {
    if (n < 0) throw carrier_error("negative value has no carrier");
    SemiringValue v;
    v.n_ = std::move(n);
    return v;
  }
  static SemiringValue omega() {
    SemiringValue v;
    v.omega_ = true;
    return v;
  }

  bool is_omega() const { return omega_; }
  bool is_zero() const { return !omega_ && n_ == 0; }
  bool is_one() const { return !omega_ && n_ == 1; }
  const Nat& nat() const {
    if (omega_) throw carrier_error("w is not an integer");
    return n_;
  }

  friend bool operator==(const SemiringValue& a, const SemiringValue& b) {
    return a.omega_ == b.omega_ && (a.omega_ || a.n_ == b.n_);
  }
  friend bool operator!=(const SemiringValue& a, const SemiringValue& b) { return !(a == b); }
  // Total order used for deterministic printing only; w sorts above integers.
  friend bool operator<(const SemiringValue& a, const SemiringValue& b) {
    if (a.omega_ != b.omega_) return !a.omega_;
    if (a.omega_) return false;
    return a.n_ < b.n_;
  }

  std::string str() const { return omega_ ? "w" : n_.str(); }

 private:
  bool omega_;
  Nat n_;
};

inline std::string to_string(const SemiringValue& v) { return v.str(); }

namespace detail {
// 0, 1 and w as the three-point chain 0 < 1 < w; only valid for values
// already checked against a {0,1,w} carrier.
inline int chain3(const SemiringValue& v) {
  if (v.is_omega()) return 2;
  if (v.is_zero()) return 0;
  return 1;
}
inline SemiringValue unchain3(int k) {
  switch (k) {
    case 0: return SemiringValue::integer(0);
    case 1: return SemiringValue::integer(1);
    default: return SemiringValue::omega();
  }
}
}  // namespace detail

// Membership test for a carrier; sr_check throws carrier_error instead.
inline bool sr_contains(SemiringId id, const SemiringValue& v) {
  switch (id) {
    case SemiringId::nat: return !v.is_omega();
    case SemiringId::bool01: return !v.is_omega() && v.nat() <= 1;
    case SemiringId::may:
    case SemiringId::must: return v.is_omega() || v.nat() <= 1;
  }
  return false;
}

inline const SemiringValue& sr_check(SemiringId id, const SemiringValue& v) {
  if (!sr_contains(id, v))
    throw carrier_error("value " + v.str() + " not in carrier " + std::string(to_string(id)));
  return v;
}

inline SemiringValue sr_zero(SemiringId) { return SemiringValue::integer(0); }
inline SemiringValue sr_one(SemiringId) { return SemiringValue::integer(1); }

inline SemiringValue sr_add(SemiringId id, const SemiringValue& a, const SemiringValue& b) {
  sr_check(id, a);
  sr_check(id, b);
  switch (id) {
    case SemiringId::nat:
      return SemiringValue::integer(a.nat() + b.nat());
    case SemiringId::bool01:
      return SemiringValue::integer((a.is_zero() && b.is_zero()) ? 0 : 1);
    case SemiringId::may:
      return detail::unchain3(std::max(detail::chain3(a), detail::chain3(b)));
    case SemiringId::must: {
      // 1 dominates; 0 is neutral; w+w=w.  In particular 1+w = w+1 = 1.
      if (a.is_one() || b.is_one()) return SemiringValue::integer(1);
      if (a.is_omega() || b.is_omega()) return SemiringValue::omega();
      return SemiringValue::integer(0);
    }
  }
  throw contract_error("unreachable semiring id");
}

inline SemiringValue sr_mul(SemiringId id, const SemiringValue& a, const SemiringValue& b) {
  sr_check(id, a);
  sr_check(id, b);
  switch (id) {
    case SemiringId::nat:
      return SemiringValue::integer(a.nat() * b.nat());
    case SemiringId::bool01:
      return SemiringValue::integer(a.nat() * b.nat());
    case SemiringId::may:
    case SemiringId::must: {
      // 0 absorbs, 1 is neutral, w*w=w: max on the chain unless a zero appears.
      if (a.is_zero() || b.is_zero()) return SemiringValue::integer(0);
      return detail::unchain3(std::max(detail::chain3(a), detail::chain3(b)));
    }
  }
  throw contract_error("unreachable semiring id");
}

inline bool sr_idempotent_add(SemiringId id) { return id != SemiringId::nat; }

// Literal syntax: decimal digits (arbitrary precision) or `w`.
// The literal is validated against the carrier: w needs may/must, digits >1
// need nat.
inline SemiringValue sr_from_literal(SemiringId id, const std::string& text) {
  if (text.empty()) throw carrier_error("empty outcome literal");
  SemiringValue v;
  if (text == "w") {
    v = SemiringValue::omega();
  } else {
    for (char c : text)
      if (c < '0' || c > '9') throw carrier_error("bad outcome literal: " + text);
    v = SemiringValue::integer(Nat(text));
  }
  sr_check(id, v);
  return v;
}

}  // namespace piquant
