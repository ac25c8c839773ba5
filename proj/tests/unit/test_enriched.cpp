#include <doctest.h>

#include <algorithm>
#include <random>

#include "corpus.hpp"
#include "typika/enriched.hpp"
#include "typika/errors.hpp"
#include "typika/parser.hpp"

using namespace typika;
using namespace typika::testing;

namespace {

ConceptExpr C(const char* text) { return parse_concept(text); }
Axiom Q(const char* text) { return parse_axiom(text); }

ConceptSet type_of(std::initializer_list<const char*> texts) {
  ConceptSet s;
  for (const char* t : texts) s.insert(to_nnf(C(t)));
  return s;
}

// Aspect ranks default to zero; `set` overrides named aspects.
EnrichedModel model(std::shared_ptr<const Domain> d, const KnowledgeBase& kb, RankFunction global,
                    std::initializer_list<std::pair<const char*, RankFunction>> set = {}) {
  EnrichedModel m{std::move(d), aspect_set(kb), {}};
  m.ranks.global = std::move(global);
  m.ranks.per_aspect.assign(m.aspects.size(), RankFunction(m.domain->size(), 0));
  for (const auto& [name, k] : set) m.ranks.per_aspect.at(m.aspects.index_of(C(name))) = k;
  return m;
}

std::shared_ptr<const Domain> share(Domain d) { return std::make_shared<const Domain>(std::move(d)); }

std::shared_ptr<const Domain> canonical(const KnowledgeBase& kb) { return share(build_canonical_domain(kb)); }

std::vector<RankAssignment> ranks_of(const std::vector<EnrichedModel>& ms) {
  std::vector<RankAssignment> out;
  for (const auto& m : ms) out.push_back(m.ranks);
  std::sort(out.begin(), out.end());
  return out;
}

unsigned rank_of(const EnrichedModel& m, const char* concept_text) {
  return min_rank(m.ranks.global, eval_concept(*m.domain, C(concept_text))).value();
}

// x: flying bird with nice feather; y: grounded penguin with nice feather;
// z: grounded penguin without it.
std::shared_ptr<const Domain> xyz() {
  return share(Domain::from_types({
      type_of({"Bird", "not Penguin", "Fly", "HasNiceFeather"}),
      type_of({"Bird", "Penguin", "not Fly", "HasNiceFeather"}),
      type_of({"Bird", "Penguin", "not Fly", "not HasNiceFeather"}),
  }));
}

const std::vector<const char*> tiny_kbs{
    "T(A) => B",
    "T(A) => B\nT(B) => A",
    "A => B\nT(B) => not A",
};

}  // namespace

TEST_CASE("rank function helpers") {
  CHECK(is_rank_function({0, 1, 1, 2}));
  CHECK_FALSE(is_rank_function({1, 2}));
  CHECK_FALSE(is_rank_function({0, 2}));
  CHECK(is_rank_function({}));
  CHECK(compress({3, 7, 3, 0}) == RankFunction{1, 2, 1, 0});
  CHECK(min_rank({2, 1, 3}, {true, false, true}) == 2U);
  CHECK_FALSE(min_rank({2, 1, 3}, {false, false, false}).has_value());
  CHECK(minimal_elements({2, 1, 2}, {true, false, true}) == ElementSet{true, false, true});

  std::mt19937 rng(4);
  for (int i = 0; i < 200; ++i) {
    RankFunction k(1 + i % 6);
    for (auto& v : k) v = rng() % 5;
    const auto c = compress(k);
    CHECK(is_rank_function(c));
    CHECK(compress(c) == c);
    for (std::size_t a = 0; a < k.size(); ++a) {
      for (std::size_t b = 0; b < k.size(); ++b) CHECK((k[a] < k[b]) == (c[a] < c[b]));
    }
  }
  // Ordered partitions of 3 elements: 1 + 6 + 6.
  CHECK(all_rank_functions(3, 2).size() == 13);
}

TEST_CASE("least rank function") {
  // min(C) ⊆ A with C = {0,1}, C ⊓ ¬A = {0}: element 0 must sit above 1.
  const auto k = least_rank_function(3, {{{true, true, false}, {true, false, false}}});
  CHECK(k == RankFunction{1, 0, 0});
  CHECK_THROWS_AS(least_rank_function(2, {{{true, true}, {true, true}}}), Error);
  CHECK(least_rank_function(2, {}) == RankFunction{0, 0});
}

TEST_CASE("coupling: preference on one aspect only") {
  const auto kb = penguins_kb();
  const auto d = share(Domain::from_types({
      type_of({"Bird", "Penguin", "not Fly", "HasNiceFeather"}),
      type_of({"Bird", "Penguin", "Fly", "HasNiceFeather"}),
  }));
  CHECK(check_coupling(model(d, kb, {0, 1}, {{"not Fly", {0, 1}}}), kb));
  CHECK_FALSE(check_coupling(model(d, kb, {0, 0}, {{"not Fly", {0, 1}}}), kb));
  CHECK_FALSE(check_coupling(model(d, kb, {1, 0}, {{"not Fly", {0, 1}}}), kb));
}

TEST_CASE("coupling: the more specific concept wins") {
  const auto kb = penguins_kb();
  // w: typical bird; x: grounded penguin without feather; y: flying penguin.
  const auto d = share(Domain::from_types({
      type_of({"Bird", "not Penguin", "Fly", "HasNiceFeather"}),
      type_of({"Bird", "Penguin", "not Fly", "not HasNiceFeather"}),
      type_of({"Bird", "Penguin", "Fly", "HasNiceFeather"}),
  }));
  const std::initializer_list<std::pair<const char*, RankFunction>> aspects{{"not Fly", {1, 0, 1}},
                                                                            {"HasNiceFeather", {0, 1, 0}}};
  const auto good = model(d, kb, {0, 1, 2}, aspects);
  CHECK(rank_of(good, "Bird") == 0);
  CHECK(rank_of(good, "Penguin") == 1);
  CHECK(check_coupling(good, kb));
  CHECK_FALSE(check_coupling(model(d, kb, {0, 2, 1}, aspects), kb));
  CHECK_FALSE(check_coupling(model(d, kb, {0, 1, 1}, aspects), kb));
}

TEST_CASE("coupling holds vacuously without preferences or violations") {
  const auto kb = penguins_kb();
  const auto d = share(Domain::from_types({type_of({"Bird", "not Penguin", "Fly", "HasNiceFeather"})}));
  const auto m = model(d, kb, {0});
  CHECK(check_coupling(m, kb));
  CHECK(check_coupling(m, kb, CouplingMode::Iff));
  CHECK(satisfies_kb(m, kb));
}

TEST_CASE("iff coupling forbids unexplained preference") {
  const auto kb = penguins_kb();
  const auto d = share(Domain::from_types({
      type_of({"Bird", "not Penguin", "Fly", "HasNiceFeather"}),
      type_of({"Bird", "not Penguin", "Fly", "HasNiceFeather", "Tall"}),
  }));
  const auto m = model(d, kb, {0, 1});
  CHECK(check_coupling(m, kb));
  CHECK_FALSE(check_coupling(m, kb, CouplingMode::Iff));
}

TEST_CASE("feathered penguins") {
  const auto kb = penguins_kb();
  const auto d = xyz();
  const auto m = model(d, kb, {0, 1, 2}, {{"Fly", {0, 1, 1}}, {"HasNiceFeather", {0, 0, 1}}});
  const auto m2 = model(d, kb, {0, 1, 1}, {{"Fly", {0, 1, 1}}, {"HasNiceFeather", {0, 1, 1}}});
  CHECK(check_coupling(m, kb));
  CHECK(check_coupling(m2, kb));
  CHECK(satisfies_kb(m, kb));
  CHECK(satisfies_kb(m2, kb));
  CHECK(holds_in(*d, m.ranks.global, Q("T(Penguin) => HasNiceFeather")));
  CHECK_FALSE(holds_in(*d, m2.ranks.global, Q("T(Penguin) => HasNiceFeather")));

  // m beats m2 on aspects; on global ranks m2 is the lower one.
  CHECK(aspect_preferred(m, m2));
  CHECK_FALSE(aspect_preferred(m2, m));
  CHECK_FALSE(globally_preferred(m, m2, {m, m2}));
  CHECK(globally_preferred(m2, m, {m, m2}));
  CHECK_FALSE(globally_preferred(m2, m, {m}));
}

TEST_CASE("preference relations on small edits") {
  const auto kb = penguins_kb();
  const auto d = xyz();
  const auto base = model(d, kb, {0, 1, 1}, {{"Fly", {0, 1, 1}}, {"HasNiceFeather", {0, 1, 1}}});
  CHECK_FALSE(aspect_preferred(base, base));
  CHECK_FALSE(globally_preferred(base, base, {base}));

  const auto lower = model(d, kb, {0, 1, 1}, {{"Fly", {0, 1, 1}}, {"HasNiceFeather", {0, 0, 1}}});
  CHECK(aspect_preferred(lower, base));

  const auto mixed = model(d, kb, {0, 1, 1}, {{"Fly", {0, 0, 1}}, {"HasNiceFeather", {0, 1, 2}}});
  CHECK_FALSE(aspect_preferred(mixed, base));
  CHECK_FALSE(aspect_preferred(base, mixed));

  const auto flat = model(d, kb, {0, 0, 0}, {{"Fly", {0, 1, 1}}, {"HasNiceFeather", {0, 1, 1}}});
  CHECK(globally_preferred(flat, base, {flat}));
  CHECK_FALSE(globally_preferred(flat, base, {}));
}

TEST_CASE("different domains are refused") {
  const auto kb = penguins_kb();
  const auto a = model(xyz(), kb, {0, 1, 1});
  const auto b = model(share(Domain::from_types({type_of({"Bird", "not Penguin", "Fly", "HasNiceFeather"})})), kb, {0});
  CHECK_THROWS_AS(aspect_preferred(a, b), DomainMismatch);
  CHECK_THROWS_AS(globally_preferred(a, b, {a}), DomainMismatch);
}

TEST_CASE("penguins in minimal canonical models") {
  const auto kb = penguins_kb();
  const EnrichedSemantics sem(kb, canonical(kb), default_rank_bound(kb));
  const auto& minimal = sem.minimal_models();
  REQUIRE_FALSE(minimal.empty());
  for (const auto& m : minimal) {
    CHECK(satisfies_kb(m, kb));
    CHECK(check_coupling(m, kb));
    CHECK(m.ranks.per_aspect == sem.least_aspect_ranks());
    // The nice-feather penguins are the typical ones.
    const auto& d = *m.domain;
    const auto typical = minimal_elements(m.ranks.global, eval_concept(d, C("Penguin")));
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (typical[i]) CHECK(d.types[i].contains(C("HasNiceFeather")));
    }
  }
  CHECK(sem.entails(Q("T(Penguin) => HasNiceFeather")));
  CHECK(sem.entails(Q("T(Penguin) => not Fly")));
  CHECK(sem.entails(Q("T(Bird) => Fly")));
  const auto cm = sem.countermodel(Q("T(Penguin) => Fly"));
  REQUIRE(cm);
  CHECK_FALSE(holds_in(*cm->domain, cm->ranks.global, Q("T(Penguin) => Fly")));
  CHECK_FALSE(sem.single_pref_entails(Q("T(Penguin) => HasNiceFeather")));
  CHECK(sem.single_pref_entails(Q("T(Penguin) => not Fly")));
}

TEST_CASE("too small a bound overflows") {
  const auto kb = penguins_kb();
  const EnrichedSemantics sem(kb, canonical(kb), 1);
  CHECK_THROWS_AS(sem.minimal_models(), SearchOverflow);
}

TEST_CASE("students in minimal canonical models") {
  const auto kb = students_kb();
  const EnrichedSemantics sem(kb, canonical(kb), default_rank_bound(kb));
  REQUIRE_FALSE(sem.minimal_models().empty());
  for (const auto& m : sem.minimal_models()) {
    CHECK(rank_of(m, "Student") == 0);
    CHECK(rank_of(m, "(Worker and Student)") == 1);
    CHECK(rank_of(m, "(Worker and Apprentice and Student)") == 2);
  }
  CHECK(sem.entails(Q("T((Worker and Student)) => EarnMoney")));
  CHECK(sem.entails(Q("T((Worker and Apprentice and Student)) => not EarnMoney")));
}

TEST_CASE("strict-only and empty knowledge bases") {
  const auto kb = parse_kb("A => B");
  const EnrichedSemantics sem(kb, canonical(kb), default_rank_bound(kb));
  REQUIRE(sem.minimal_models().size() == 1);
  for (unsigned r : sem.minimal_models()[0].ranks.global) CHECK(r == 0);

  const KnowledgeBase empty;
  const auto d = share(build_canonical_domain(empty, Q("T(A) => A")));
  const EnrichedSemantics none(empty, d, default_rank_bound(empty));
  CHECK(none.entails(Q("T(A) => A")));
  CHECK_FALSE(none.entails(Q("T(A) => not A")));
}

TEST_CASE("engine agrees with exhaustive enumeration") {
  for (const char* text : tiny_kbs) {
    CAPTURE(text);
    const auto kb = parse_kb(text);
    const auto d = canonical(kb);
    const unsigned bound = 2;
    const auto ex = enumerate_enriched_models(kb, d, bound);
    const EnrichedSemantics sem(kb, d, bound);

    CHECK(ranks_of(sem.minimal_models()) == ranks_of(ex.minimal));
    for (const auto& m : ex.aspect_minimal) CHECK(m.ranks.per_aspect == sem.least_aspect_ranks());
    for (const auto& m : ex.minimal) {
      CHECK(std::find(ex.literal_minimal.begin(), ex.literal_minimal.end(), m) != ex.literal_minimal.end());
    }

    const auto singles = enumerate_single_pref_models(kb, d, bound);
    const auto least = sem.least_single_pref_model();
    REQUIRE(std::find(singles.begin(), singles.end(), least) != singles.end());
    for (const auto& s : singles) {
      for (std::size_t i = 0; i < s.global.size(); ++i) CHECK(least.global[i] <= s.global[i]);
    }

    for (const auto& q : closure_queries(kb)) {
      CAPTURE(to_string(q));
      bool enriched_cm = false;
      for (const auto& m : ex.models) enriched_cm |= !holds_in(*d, m.ranks.global, q);
      bool single_cm = false;
      for (const auto& s : singles) single_cm |= !holds_in(*d, s.global, q);
      CHECK(sem.any_countermodel(q, Regime::Enriched).has_value() == enriched_cm);
      CHECK(sem.any_countermodel(q, Regime::SinglePreference).has_value() == single_cm);

      bool minimal_cm = false;
      for (const auto& m : ex.minimal) minimal_cm |= !holds_in(*d, m.ranks.global, q);
      CHECK(sem.entails(q) == !minimal_cm);
      CHECK(sem.single_pref_entails(q) == holds_in(*d, least.global, q));
    }
  }
}

TEST_CASE("every exhaustive model is coupled and satisfies the KB") {
  const auto kb = parse_kb(tiny_kbs[0]);
  const auto d = canonical(kb);
  const auto ex = enumerate_enriched_models(kb, d, 2);
  REQUIRE_FALSE(ex.models.empty());
  for (const auto& m : ex.models) {
    CHECK(check_coupling(m, kb));
    CHECK(satisfies_kb(m, kb));
  }
  const auto iff = enumerate_enriched_models(kb, d, 2, CouplingMode::Iff);
  CHECK(iff.models.size() <= ex.models.size());
  for (const auto& m : iff.models) CHECK(std::find(ex.models.begin(), ex.models.end(), m) != ex.models.end());
}

TEST_CASE("budget overflow") {
  const auto kb = penguins_kb();
  CHECK_THROWS_AS(enumerate_enriched_models(kb, canonical(kb), 4, CouplingMode::If, 1000), SearchOverflow);
}

TEST_CASE("uniform model") {
  const auto kb = penguins_kb();
  const EnrichedSemantics sem(kb, canonical(kb), default_rank_bound(kb));
  const auto least = sem.least_single_pref_model();
  const auto m = sem.uniform_model(least.global);
  for (const auto& k : m.ranks.per_aspect) CHECK(k == least.global);
  CHECK(satisfies_kb(least, kb));
}
