#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "autorb/orbit.hpp"

using namespace autorb;

namespace {

std::unique_ptr<Construction> build(const char* text) {
  return Construction::build(parse_spec(text));
}

AutoGenSet inner_only(const FiniteGroup& g) {
  AutoGenSet set;
  for (int32_t gid : g.generator_ids()) set.add(inner_automorphism(g, gid));
  return set;
}

}  // namespace

TEST_CASE("signature partitions") {
  auto tiny = FiniteGroup::closure({});
  CHECK(signature_partition(tiny, 2).blocks == 1);

  auto ea = build("EA(2,3)");
  CHECK(signature_partition(ea->group(), 1).blocks == 2);
  CHECK(signature_partition(ea->group(), 3).blocks == 2);

  auto asl = build("ASL(2,4)");
  CHECK(signature_partition(asl->group(), 1).blocks == 5);  // order census only
  CHECK(signature_partition(asl->group(), 2).blocks == 6);
  CHECK_THROWS_AS(signature_partition(asl->group(), 4), structure_error);
}

TEST_CASE("orbit closure under selected map sets") {
  auto a5c = build("A(5)");
  const FiniteGroup& g = a5c->group();

  AutoGenSet empty;
  CHECK(orbit_closure(g, empty).blocks == 60);

  AutoGenSet inner = inner_only(g);
  CHECK(orbit_closure(g, inner).blocks == 5);  // conjugacy classes

  CHECK(orbit_closure(g, a5c->autogens()).blocks == 4);  // 5-classes fuse
}

TEST_CASE("closure blocks are unions of conjugacy classes") {
  auto c = build("A(5)");
  const FiniteGroup& g = c->group();
  auto part = orbit_closure(g, c->autogens());
  const auto& cc = g.conjugacy_classes();
  for (int32_t id = 0; id < static_cast<int32_t>(g.order()); ++id)
    CHECK(part.block_of[id] == part.block_of[cc.reps[cc.class_of[id]]]);
}

TEST_CASE("omega certification on small targets") {
  for (int k = 1; k <= 6; ++k) {
    auto ea = build(("EA(2," + std::to_string(k) + ")").c_str());
    auto w = omega(ea->group(), ea->autogens());
    CHECK(w.certified());
    CHECK(w.lo == 2);
  }
  auto sl22 = build("SL(2,2)");
  auto w = omega(sl22->group(), sl22->autogens());
  CHECK(w.certified());
  CHECK(w.lo == 3);

  auto psl25 = build("PSL(2,5)");
  auto w5 = omega(psl25->group(), psl25->autogens());
  CHECK(w5.certified());
  CHECK(w5.lo == 4);
}

TEST_CASE("partition sandwich is coherent") {
  for (const char* text : {"A(5)", "SL(2,2)", "PSL(2,5)", "EA(2,3)", "S(4)"}) {
    auto c = build(text);
    auto w = omega(c->group(), c->autogens());  // throws if coarsening fails
    CHECK(w.lo <= w.hi);
    auto sizes = w.orbit_partition().block_sizes();
    CHECK(std::accumulate(sizes.begin(), sizes.end(), int64_t{0}) ==
          static_cast<int64_t>(c->group().order()));
  }
}

TEST_CASE("brute force automorphism search") {
  auto trivial = FiniteGroup::closure({});
  auto bt = brute_force_aut(trivial);
  CHECK(bt.aut_order == 1);
  CHECK(bt.orbits.blocks == 1);

  auto ea2 = build("EA(2,2)");
  auto b2 = brute_force_aut(ea2->group());
  CHECK(b2.aut_order == 6);  // |GL(2,2)|
  CHECK(b2.orbits.blocks == 2);

  auto ea3 = build("EA(2,3)");
  CHECK(brute_force_aut(ea3->group()).aut_order == 168);  // |GL(3,2)|

  auto sl22 = build("SL(2,2)");
  auto bs = brute_force_aut(sl22->group());
  CHECK(bs.aut_order == 6);
  CHECK(bs.orbits.blocks == 3);

  auto a5 = build("A(5)");
  auto ba = brute_force_aut(a5->group());
  CHECK(ba.aut_order == 120);
  CHECK(ba.orbits.blocks == 4);

  auto psl34 = build("PSL(2,5)");
  CHECK_THROWS_AS(brute_force_aut(psl34->group(), 50), cap_error);
}

TEST_CASE("the transposition conjugation is among the A5 automorphisms") {
  auto c = build("A(5)");
  const FiniteGroup& g = c->group();
  const AutoMap* outer = nullptr;
  for (const auto& m : c->autogens().maps)
    if (m.desc().kind == AutoDescriptor::Kind::explicit_images) outer = &m;
  REQUIRE(outer != nullptr);
  auto ba = brute_force_aut(g);
  bool found = false;
  for (const auto& m : ba.maps.maps)
    if (m.img() == outer->img()) found = true;
  CHECK(found);
}

TEST_CASE("exact search agrees with the sandwich and preserves signatures") {
  auto c = build("PSL(2,5)");
  auto w = omega_exact(c->group(), c->autogens(), 512);
  CHECK(w.exact);
  CHECK(w.certified());
  CHECK(w.lo == 4);
  CHECK(*w.aut_order == 120);

  auto sig = signature_partition(c->group(), 3);
  auto ba = brute_force_aut(c->group());
  for (const auto& m : ba.maps.maps)
    for (int32_t id = 0; id < static_cast<int32_t>(c->group().order()); ++id)
      CHECK(sig.block_of[m(id)] == sig.block_of[id]);
}

TEST_CASE("direct power orbit count") {
  CHECK(direct_power_orbit_count(4, 2) == 10);
  CHECK(direct_power_orbit_count(2, 3) == 4);
  for (uint64_t w = 1; w <= 6; ++w) CHECK(direct_power_orbit_count(w, 1) == w);
  CHECK(direct_power_orbit_count(1, 5) == 1);
  CHECK_THROWS_AS(direct_power_orbit_count(0, 2), structure_error);
}

TEST_CASE("canonical forms on ASL(2,4), exhaustive") {
  auto c = build("ASL(2,4)");
  const FiniteGroup& g = c->group();
  auto closure = orbit_closure(g, c->autogens());
  REQUIRE(closure.blocks == 6);
  std::set<int32_t> forms;
  for (int32_t id = 0; id < static_cast<int32_t>(g.order()); ++id) {
    auto can = canonical_form_gmf(*c, id);
    forms.insert(can.rep_id);
    CHECK(closure.block_of[can.rep_id] == closure.block_of[id]);
    CHECK(canonical_form_gmf(*c, can.rep_id).rep_id == can.rep_id);
  }
  CHECK(forms.size() == 6);
}

TEST_CASE("canonical form spot checks on GMF(2,4)") {
  auto c = build("GMF(2,4)");
  const FiniteGroup& g = c->group();
  const Field& f = Field::get(2, 2);
  Mat id2 = Mat::identity(f, 2);
  Mat j = Mat::from_rows(f, {{1, 1}, {0, 1}});

  CHECK(canonical_form_gmf(*c, g.identity_id()).rep_id == g.identity_id());

  // rank-2 normal form is its own representative
  Mat y2(f, 2, 2);
  y2.set(0, 0, 1);
  y2.set(1, 1, 1);
  int32_t r2 = g.id_of(GroupElem::affine(id2, y2));
  CHECK(canonical_form_gmf(*c, r2).rep_id == r2);

  // a scrambled rank-2 translation reaches the same representative
  Mat y2b = Mat::from_rows(f, {{2, 3}, {1, 1}});
  REQUIRE(y2b.rank() == 2);
  CHECK(canonical_form_gmf(*c, g.id_of(GroupElem::affine(id2, y2b))).rep_id == r2);

  // (J, [v;0]) reduces to (J, 0)
  Mat yv(f, 2, 2);
  yv.set(0, 0, 2);
  yv.set(0, 1, 1);
  int32_t jv = g.id_of(GroupElem::affine(j, yv));
  int32_t j0 = g.id_of(GroupElem::affine(j, Mat(f, 2, 2)));
  CHECK(g.elem_order(jv) == 2);
  CHECK(canonical_form_gmf(*c, jv).rep_id == j0);

  // an order-4 element lands on (J, [0;e1])
  Mat y4(f, 2, 2);
  y4.set(1, 0, 1);
  int32_t rep4 = g.id_of(GroupElem::affine(j, y4));
  Mat y4b = Mat::from_rows(f, {{3, 1}, {2, 2}});
  int32_t g4 = g.id_of(GroupElem::affine(j, y4b));
  CHECK(g.elem_order(g4) == 4);
  CHECK(canonical_form_gmf(*c, g4).rep_id == rep4);
  CHECK(canonical_form_gmf(*c, rep4).rep_id == rep4);

  // chains verify internally; a non-gmf construction is rejected
  auto a5 = build("A(5)");
  CHECK_THROWS_AS(canonical_form_gmf(*a5, 0), structure_error);
}

TEST_CASE("lemma bound on the affine pairs") {
  auto c = build("ASL(2,4)");
  auto rep = verify_lemma_bound(c->group(), *c->translation_subgroup(), c->autogens());
  CHECK(rep.certified_all);
  CHECK(rep.omega_g.lo == 6);
  CHECK(rep.omega_n.lo == 2);
  CHECK(rep.omega_q.lo == 4);
  CHECK(rep.certified_inequality);
  CHECK(rep.phi_inequality);
  CHECK_FALSE(rep.phi_equality);  // 6 > 2 + 4 - 1
}

TEST_CASE("lemma bound rejects a non-invariant subgroup") {
  auto c = build("EA(2,2)");
  const FiniteGroup& g = c->group();
  auto n = g.subgroup_closure({g.generator_ids()[0]});
  // The full linear maps move the first basis line.
  CHECK_THROWS_AS(verify_lemma_bound(g, n, c->autogens()), verify_error);
}

TEST_CASE("orbit partition accessors") {
  auto c = build("EA(2,2)");
  auto w = omega(c->group(), c->autogens());
  CHECK(w.orbit_partition().block_sizes() == std::vector<int64_t>{1, 3});
  CHECK(w.orbit_partition().block_reps() == std::vector<int32_t>{0, 1});
}
