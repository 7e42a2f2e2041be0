#include "piquant/syntax.hpp"

#include "catch_amalgamated.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

using namespace piquant;

namespace {

Term parse(const std::string& src, ParseOptions opts = {}) {
  NameSupply supply;
  return parse_term(src, supply, opts);
}

std::string reprint(const std::string& src) { return print_term(parse(src)); }

std::string canon(const std::string& src) { return alpha_canonical(parse(src)); }

}  // namespace

TEST_CASE("parse and print round-trip") {
  // print is a fixpoint: parsing a printed term prints identically
  for (const std::string& src : {
           "1",
           "0",
           "23",
           "w",
           "a+(x).x.1",
           "a-(x).0",
           "a.1",
           "~a.1",
           "@(a.1)",
           "a.1 | b.1",
           "a.1 || b.1",
           "new a.(a.1 | ~a.1)",
           "new a b.(a.1 | b.1)",
           "(1 (+) 2)",
           "3*(a.1)",
           "lin a.1",
           "lin a+(x).lin x+(z).1",
           "a.(b.1 | c.1)",
       }) {
    std::string once = reprint(src);
    CHECK(reprint(once) == once);
  }
}

TEST_CASE("unused objects print sugared") {
  // only supply-made objects are sugared away; user names stay explicit
  CHECK(reprint("a+(x).1") == "a+(x).1");
  CHECK(reprint("a-(x).1") == "a-(x).1");
  CHECK(reprint("a.1") == "a.1");
  CHECK(reprint("~a.1") == "~a.1");
  CHECK(reprint("a+(x).x.1") == "a+(x).x.1");
}

TEST_CASE("operator shape") {
  // prefix binds tighter than |, which binds tighter than ||
  Term t = parse("a.1 | b.1 || c.1");
  const auto* top = as<NoIPar>(t);
  REQUIRE(top != nullptr);
  CHECK(as<Par>(top->left) != nullptr);
  CHECK(as<Prefix>(top->right) != nullptr);

  Term u = parse("a.b.1 | c.1");
  const auto* pr = as<Par>(u);
  REQUIRE(pr != nullptr);
  const auto* l = as<Prefix>(pr->left);
  REQUIRE(l != nullptr);
  CHECK(l->act.subject.id == "a");
  const auto* lb = as<Prefix>(l->body);
  REQUIRE(lb != nullptr);
  CHECK(lb->act.subject.id == "b");
}

TEST_CASE("parse errors carry positions") {
  for (const std::string& bad : {
           "new .1",
           "a.",
           "a.1 |",
           "(1 (+) ",
           "lin",
           "a+(x",
           "a+(x).",
           "~",
           "3*",
           "@",
           "a.1)",
           "",
       }) {
    CHECK_THROWS_AS(parse(bad), parse_error);
  }
  try {
    parse("a.1 | ?");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line == 1);
    CHECK(e.col == 7);
  }
}

TEST_CASE("internal names are rejected at the surface") {
  CHECK_THROWS_AS(parse("#1.1"), parse_error);
  CHECK_THROWS_AS(parse("a+(#2).1"), parse_error);
  ParseOptions opts;
  opts.allow_internal_names = true;
  CHECK_NOTHROW(parse("#1.1", opts));
}

TEST_CASE("polarity given twice is rejected") {
  CHECK_THROWS_AS(parse("~a+.1"), parse_error);
  CHECK_THROWS_AS(parse("~a-(x).1"), parse_error);
}

TEST_CASE("free names") {
  auto fn = [](const std::string& src) {
    std::set<std::string> out;
    for (const auto& n : free_names(parse(src))) out.insert(n.id);
    return out;
  };
  CHECK(fn("1") == std::set<std::string>{});
  CHECK(fn("a.1 | ~b.1") == std::set<std::string>{"a", "b"});
  CHECK(fn("new a.(a.1 | b.1)") == std::set<std::string>{"b"});
  CHECK(fn("a+(x).x.1") == std::set<std::string>{"a"});
  CHECK(fn("a+(x).y.1") == std::set<std::string>{"a", "y"});
  CHECK(fn("lin a+(x).(x.1 | c.1)") == std::set<std::string>{"a", "c"});
  CHECK(fn("(a.1 (+) b.1)") == std::set<std::string>{"a", "b"});
  CHECK(fn("2*(a.1)") == std::set<std::string>{"a"});
}

TEST_CASE("substitution avoids capture by new") {
  NameSupply supply;
  Term t = parse_term("new b.(a.1 | b.1)", supply);
  Term r = substitute(t, Name{"a"}, Name{"b"}, supply);
  auto fns = free_names(r);
  REQUIRE(fns.size() == 1);
  CHECK(fns.begin()->id == "b");
  const auto* nu = as<Nu>(r);
  REQUIRE(nu != nullptr);
  CHECK(nu->name.id != "b");  // the binder moved out of the way
}

TEST_CASE("substitution avoids capture by prefix objects") {
  NameSupply supply;
  Term t = parse_term("a+(x).(x.1 | y.1)", supply);
  Term r = substitute(t, Name{"y"}, Name{"x"}, supply);
  std::set<std::string> ids;
  for (const auto& n : free_names(r)) ids.insert(n.id);
  CHECK(ids == std::set<std::string>{"a", "x"});
  const auto* pf = as<Prefix>(r);
  REQUIRE(pf != nullptr);
  CHECK(pf->act.object.id != "x");
}

TEST_CASE("alpha canonical identifies alpha-equivalent terms") {
  CHECK(canon("new a.(a.1)") == canon("new b.(b.1)"));
  CHECK(canon("a+(x).x.1") == canon("a+(y).y.1"));
  // binders of one run permute: swapping a and b is an alpha-renaming
  CHECK(canon("new a b.(a.1 | b.1)") == canon("new a b.(b.1 | a.1)"));
  CHECK(canon("a.1") != canon("b.1"));
  CHECK(canon("a.1") != canon("~a.1"));
}

TEST_CASE("alpha canonical absorbs binder-run order") {
  CHECK(canon("new a.new b.(a.1 | b.1)") == canon("new b.new a.(b.1 | a.1)"));
  CHECK(canon("new a b.(a.1 | b.1)") == canon("new b a.(b.1 | a.1)"));
}

TEST_CASE("mk_nu keeps binder runs sorted") {
  NameSupply supply;
  Term inner = parse_term("c.1", supply);
  Term t1 = mk_nu(Name{"a"}, mk_nu(Name{"b"}, inner));
  Term t2 = mk_nu(Name{"b"}, mk_nu(Name{"a"}, inner));
  CHECK(print_term(t1) == print_term(t2));
}

TEST_CASE("hygiene separates shadowed binders") {
  NameSupply supply;
  Term t = parse_term("new a.(a.1 | new a.(a.1))", supply);
  Term h = hygiene(t, supply);
  std::set<std::string> bound;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (const auto* nu = as<Nu>(u)) {
      CHECK(bound.insert(nu->name.id).second);
      walk(nu->body);
    } else if (const auto* pf = as<Prefix>(u)) {
      walk(pf->body);
    } else if (const auto* pl = as<Place>(u)) {
      walk(pl->body);
    } else if (const auto* pr = as<Par>(u)) {
      walk(pr->left);
      walk(pr->right);
    } else if (const auto* np = as<NoIPar>(u)) {
      walk(np->left);
      walk(np->right);
    }
  };
  walk(h);
  CHECK(bound.size() == 2);
}

TEST_CASE("name supply dodges reserved names") {
  NameSupply supply;
  Term t = parse("new a.(a.1)");  // parsing bound an unused internal object
  reserve_names(supply, t);
  Name f = supply.fresh();
  CHECK(all_names(t).count(f) == 0);

  NameSupply supply2;
  supply2.reserve(41);
  CHECK(supply2.fresh().id == "#42");
}

TEST_CASE("reserve_names skips structured internal names") {
  NameSupply supply;
  Term t = parse("#i11_2.1 | #3.1", ParseOptions{.allow_internal_names = true});
  reserve_names(supply, t);
  // the two prefixes got implicit objects #4 and #5; #i11_2 is not number 11
  CHECK(supply.fresh().id == "#6");
}

TEST_CASE("elaboration of sum") {
  NameSupply supply;
  Term t = parse_term("(2 (+) 3)", supply);
  Elaboration el = elaborate_full(t, supply);
  CHECK(print_term(el.core) == "new #1.(#1.2 | #1.3 | ~#1.1)");
  CHECK(el.lin_witnesses.empty());
  CHECK(el.inactions.empty());
  CHECK(is_core(el.core));
}

TEST_CASE("elaboration of scale") {
  NameSupply supply;
  Term t = parse_term("3*(a.1)", supply);
  Elaboration el = elaborate_full(t, supply);
  CHECK(print_term(el.core) == "3 | a.1");
}

TEST_CASE("elaboration of lin prefix") {
  NameSupply supply;
  Term t = parse_term("lin a.1", supply);
  Elaboration el = elaborate_full(t, supply);
  CHECK(print_term(el.core) == "new #2.(a.(1 | #2.1) | (#2.0 | ~#2.1))");
  REQUIRE(el.lin_witnesses.size() == 1);
  CHECK(el.lin_witnesses.front() == Position{"112"});
  CHECK(el.inactions.empty());
  CHECK(is_core(el.core));
}

TEST_CASE("elaboration records source inactions") {
  NameSupply supply;
  Term t = parse_term("a.0 | b.1", supply);
  Elaboration el = elaborate_full(t, supply);
  CHECK(print_term(el.core) == "a.0 | b.1");
  REQUIRE(el.inactions.size() == 1);
  CHECK(el.inactions.front() == Position{"1"});
}

TEST_CASE("elaboration positions nest under prefixes") {
  NameSupply supply;
  Term t = parse_term("b.(1 (+) 2)", supply);
  Elaboration el = elaborate_full(t, supply);
  CHECK(print_term(el.core) == "b.new #2.(#2.1 | #2.2 | ~#2.1)");
}

TEST_CASE("is_core flags derived forms") {
  CHECK(is_core(parse("a.1 | new b.(b.0 || @(1))")));
  CHECK_FALSE(is_core(parse("(1 (+) 2)")));
  CHECK_FALSE(is_core(parse("2*(a.1)")));
  CHECK_FALSE(is_core(parse("lin a.1")));
  CHECK_FALSE(is_core(parse("a.(1 (+) 2)")));
}

TEST_CASE("structural equality") {
  CHECK(term_eq(parse("a.b.1 | c.1"), parse("a.b.1 | c.1")));
  CHECK_FALSE(term_eq(parse("a.1 | b.1"), parse("b.1 | a.1")));
  // bound names matter for term_eq but not for alpha_equal
  NameSupply supply;
  Term t1 = mk_nu(Name{"a"}, mk_prefix(Action{Name{"a"}, Polarity::pos, Name{"x"}}, mk_lit("1")));
  Term t2 = mk_nu(Name{"b"}, mk_prefix(Action{Name{"b"}, Polarity::pos, Name{"x"}}, mk_lit("1")));
  CHECK_FALSE(term_eq(t1, t2));
  CHECK(alpha_equal(t1, t2));
}

TEST_CASE("literal normalization") {
  CHECK(reprint("007") == "7");
  CHECK(reprint("000") == "0");
  CHECK(term_eq(parse("007"), parse("7")));
}
