#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "autorb/group.hpp"

using namespace autorb;

namespace {

GroupElem perm_of(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<uint8_t> img(n);
  std::iota(img.begin(), img.end(), 0);
  for (const auto& cyc : cycles)
    for (std::size_t i = 0; i < cyc.size(); ++i)
      img[cyc[i] - 1] = static_cast<uint8_t>(cyc[(i + 1) % cyc.size()] - 1);
  return GroupElem::perm(std::move(img));
}

FiniteGroup make_a5() {
  return FiniteGroup::closure({perm_of(5, {{1, 2, 3, 4, 5}}), perm_of(5, {{3, 4, 5}})});
}

FiniteGroup make_s4() {
  return FiniteGroup::closure({perm_of(4, {{1, 2}}), perm_of(4, {{1, 2, 3, 4}})});
}

}  // namespace

TEST_CASE("closure of nothing is the trivial group") {
  FiniteGroup g = FiniteGroup::closure({});
  CHECK(g.order() == 1);
  CHECK(g.identity_id() == 0);
  CHECK(g.order_census() == std::vector<int>{1});
  CHECK(g.conjugacy_classes().count() == 1);
}

TEST_CASE("closure of A5 generators") {
  FiniteGroup g = make_a5();
  CHECK(g.order() == 60);
  CHECK(g.elem_order(g.identity_id()) == 1);
  CHECK(g.order_census() == std::vector<int>{1, 2, 3, 5});
}

TEST_CASE("A5 conjugacy classes") {
  FiniteGroup g = make_a5();
  auto sizes = g.conjugacy_classes().sizes;
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int64_t>{1, 12, 12, 15, 20});
  // class size times centralizer order is the group order
  const auto& cc = g.conjugacy_classes();
  const auto& info = g.class_info();
  for (int c = 0; c < cc.count(); ++c)
    CHECK(info[c].cent_order * cc.sizes[c] == 60);
}

TEST_CASE("centralizers") {
  FiniteGroup g = make_a5();
  CHECK(g.centralizer(g.identity_id()).order() == 60);
  int32_t five_cycle = g.id_of(perm_of(5, {{1, 2, 3, 4, 5}}));
  REQUIRE(five_cycle >= 0);
  CHECK(g.centralizer(five_cycle).order() == 5);
  CHECK(g.centralizer_order(five_cycle) == 5);
}

TEST_CASE("center") {
  FiniteGroup a5 = make_a5();
  CHECK(a5.center().order() == 1);
  FiniteGroup c2c2 = FiniteGroup::closure({perm_of(4, {{1, 2}}), perm_of(4, {{3, 4}})});
  CHECK(c2c2.order() == 4);
  CHECK(c2c2.center().order() == 4);
  CHECK(c2c2.is_abelian());
}

TEST_CASE("derived subgroup with exhaustive oracle") {
  FiniteGroup s4 = make_s4();
  CHECK(s4.order() == 24);
  auto derived = s4.derived_subgroup();
  CHECK(derived.order() == 12);

  // Oracle: the subgroup generated by every commutator.
  std::vector<int32_t> comms;
  for (int32_t a = 0; a < 24; ++a)
    for (int32_t b = 0; b < 24; ++b)
      comms.push_back(s4.mul(s4.mul(s4.inv(a), s4.inv(b)), s4.mul(a, b)));
  auto oracle = s4.subgroup_closure(comms);
  CHECK(derived == oracle);

  FiniteGroup a5 = make_a5();
  CHECK(a5.derived_subgroup().order() == 60);  // perfect
}

TEST_CASE("normality and normal closure") {
  FiniteGroup s4 = make_s4();
  auto a4 = s4.derived_subgroup();
  CHECK(s4.is_normal(a4));
  int32_t t = s4.id_of(perm_of(4, {{1, 2}}));
  auto c2 = s4.subgroup_closure({t});
  CHECK(c2.order() == 2);
  CHECK_FALSE(s4.is_normal(c2));
  CHECK(s4.normal_closure({t}).order() == 24);  // transpositions generate
}

TEST_CASE("quotients") {
  FiniteGroup s4 = make_s4();
  auto v4 = s4.subgroup_closure(
      {s4.id_of(perm_of(4, {{1, 2}, {3, 4}})), s4.id_of(perm_of(4, {{1, 3}, {2, 4}}))});
  CHECK(v4.order() == 4);
  CHECK(s4.is_normal(v4));
  FiniteGroup q = s4.quotient(v4);
  CHECK(q.order() == 6);
  CHECK(q.order_census() == std::vector<int>{1, 2, 3});

  auto a4 = s4.derived_subgroup();
  CHECK(s4.quotient(a4).order() == 2);
  CHECK(s4.quotient(s4.whole_subgroup()).order() == 1);

  FiniteGroup a5 = make_a5();
  CHECK(a5.quotient(a5.trivial_subgroup()).order() == 60);

  int32_t t = s4.id_of(perm_of(4, {{1, 2}}));
  CHECK_THROWS_AS(s4.quotient(s4.subgroup_closure({t})), structure_error);
}

TEST_CASE("quotient multiplication is representative independent") {
  FiniteGroup s4 = make_s4();
  auto v4 = s4.subgroup_closure(
      {s4.id_of(perm_of(4, {{1, 2}, {3, 4}})), s4.id_of(perm_of(4, {{1, 3}, {2, 4}}))});
  FiniteGroup q = s4.quotient(v4);
  std::mt19937 rng(99);
  std::uniform_int_distribution<int32_t> pick(0, 23);
  std::uniform_int_distribution<std::size_t> pickn(0, v4.members().size() - 1);
  for (int t = 0; t < 200; ++t) {
    int32_t a = pick(rng), b = pick(rng);
    int32_t a2 = s4.mul(a, v4.members()[pickn(rng)]);
    int32_t b2 = s4.mul(b, v4.members()[pickn(rng)]);
    CHECK(FiniteGroup::coset_id(q, s4.mul(a, b)) ==
          FiniteGroup::coset_id(q, s4.mul(a2, b2)));
  }
}

TEST_CASE("socle") {
  FiniteGroup s4 = make_s4();
  auto soc = s4.socle();
  CHECK(soc.order() == 4);  // the Klein four-group is the unique minimal normal
  CHECK(s4.is_normal(soc));
  CHECK(soc.is_abelian());

  FiniteGroup a5 = make_a5();
  CHECK(a5.socle().order() == 60);  // simple
  CHECK_THROWS_AS(a5.socle(10), cap_error);
}

TEST_CASE("abelian groups have singleton classes") {
  FiniteGroup g = FiniteGroup::closure(
      {perm_of(6, {{1, 2}}), perm_of(6, {{3, 4}}), perm_of(6, {{5, 6}})});
  CHECK(g.order() == 8);
  CHECK(g.conjugacy_classes().count() == 8);
  for (int64_t s : g.conjugacy_classes().sizes) CHECK(s == 1);
}

TEST_CASE("subgroup handle basics") {
  FiniteGroup a5 = make_a5();
  auto whole = a5.whole_subgroup();
  CHECK(whole.generators().size() <= 3);
  CHECK_FALSE(whole.is_abelian());
  CHECK(a5.trivial_subgroup().order() == 1);
  // Non-closed member list is rejected.
  int32_t g = a5.generator_ids()[0];
  CHECK_THROWS_AS(SubgroupHandle(a5, {a5.identity_id(), g}), structure_error);
}

TEST_CASE("element printing") {
  GroupElem e = perm_of(5, {{1, 2, 3}});
  CHECK(to_string(e) == "(1 2 3)");
  CHECK(to_string(perm_of(5, {})) == "()");
  const Field& f4 = Field::get(2, 2);
  GroupElem m = GroupElem::mat(Mat::from_rows(f4, {{1, 2}, {0, 1}}));
  CHECK(to_string(m) == "[[1,w],[0,1]]");
  GroupElem aff = GroupElem::affine(Mat::identity(f4, 2), Mat(f4, 2, 1));
  CHECK(to_string(aff) == "[[1,0],[0,1]] | [[0],[0]]");
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(FiniteGroup::closure({perm_of(5, {{1, 2, 3, 4, 5}}), perm_of(5, {{3, 4, 5}})}, 10),
                  cap_error);
  const Field& f4 = Field::get(2, 2);
  CHECK_THROWS_AS(
      FiniteGroup::closure({perm_of(3, {{1, 2}}), GroupElem::mat(Mat::identity(f4, 2))}),
      structure_error);
  CHECK_THROWS_AS(mul(perm_of(3, {{1, 2}}), perm_of(4, {{1, 2}})), dim_error);
}

TEST_CASE("projective canonicalization") {
  const Field& f9 = Field::get(3, 2);
  Mat m = Mat::from_rows(f9, {{2, 1}, {0, 2}});
  GroupElem a = GroupElem::projective(m);
  GroupElem b = GroupElem::projective(m.scaled(2));  // scalar multiple
  CHECK(equal(a, b));
  CHECK(std::get<MatPart>(a.v).m.at(0, 0) == 1);
}
