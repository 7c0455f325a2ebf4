#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "autorb/constructions.hpp"

using namespace autorb;

namespace {

std::unique_ptr<Construction> build(const char* text) {
  return Construction::build(parse_spec(text));
}

}  // namespace

TEST_CASE("special linear groups") {
  CHECK(build("SL(2,2)")->group().order() == 6);
  CHECK(build("SL(2,4)")->group().order() == 60);
  CHECK(build("SL(2,9)")->group().order() == 720);
  CHECK(build("SL(2,16)")->group().order() == 4080);
}

TEST_CASE("projective groups") {
  CHECK(build("PSL(2,4)")->group().order() == 60);
  CHECK(build("PSL(2,5)")->group().order() == 60);
  CHECK(build("PSL(2,7)")->group().order() == 168);
  CHECK(build("PSL(2,8)")->group().order() == 504);
  CHECK(build("PSL(2,9)")->group().order() == 360);
  CHECK(build("PGL(2,5)")->group().order() == 120);
  CHECK(build("PGL(2,9)")->group().order() == 720);
  CHECK(build("GL(2,4)")->group().order() == 180);
}

TEST_CASE("PSL(3,4)") {
  auto c = build("PSL(3,4)");
  CHECK(c->group().order() == 20160);
  CHECK(c->group().order_census() == std::vector<int>{1, 2, 3, 4, 5, 7});
}

TEST_CASE("censuses") {
  CHECK(build("PSL(2,8)")->group().order_census() == std::vector<int>{1, 2, 3, 7, 9});
  CHECK(build("PSL(2,4)")->group().order_census() == std::vector<int>{1, 2, 3, 5});
  // A6 and PSL(2,9) share their element-order census.
  CHECK(build("A(6)")->group().order_census() ==
        build("PSL(2,9)")->group().order_census());
}

TEST_CASE("affine semidirect products") {
  auto asl = build("ASL(2,4)");
  CHECK(asl->group().order() == 960);
  REQUIRE(asl->translation_subgroup().has_value());
  const auto& m = *asl->translation_subgroup();
  CHECK(m.order() == 16);
  CHECK(m.is_abelian());
  CHECK(asl->group().is_normal(m));
  // exponent 2
  for (int32_t id : m.members())
    CHECK(asl->group().elem_order(id) <= 2);

  auto gmf = build("GMF(2,4)");
  CHECK(gmf->group().order() == 15360);
  CHECK(gmf->translation_subgroup()->order() == 256);
  CHECK(gmf->translation_subgroup()->is_abelian());
  CHECK(gmf->group().order_census() == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("ASL(2,4) and GMF(1,4) are the same table") {
  auto a = build("ASL(2,4)");
  auto b = build("GMF(1,4)");
  REQUIRE(a->group().order() == b->group().order());
  for (int32_t id = 0; id < static_cast<int32_t>(a->group().order()); ++id)
    CHECK(equal(a->group().elem(id), b->group().elem(id)));
}

TEST_CASE("permutation families") {
  CHECK(build("A(5)")->group().order() == 60);
  CHECK(build("A(6)")->group().order() == 360);
  CHECK(build("S(6)")->group().order() == 720);
  CHECK(build("A(2)")->group().order() == 1);
  CHECK(build("S(1)")->group().order() == 1);
}

TEST_CASE("elementary abelian and products") {
  auto ea = build("EA(2,4)");
  CHECK(ea->group().order() == 16);
  CHECK(ea->group().order_census() == std::vector<int>{1, 2});

  CHECK(build("POW(A(5),2)")->group().order() == 3600);
  CHECK(build("DP(A(4),EA(2,2))")->group().order() == 48);

  // POW(x,1) is an isomorphic copy of the base.
  auto p1 = build("POW(PSL(2,4),1)");
  CHECK(p1->group().order() == 60);
  CHECK(p1->group().order_census() == build("PSL(2,4)")->group().order_census());
}

TEST_CASE("quotient by the translation block is the acting linear group") {
  auto asl = build("ASL(2,4)");
  FiniteGroup q = asl->group().quotient(*asl->translation_subgroup());
  CHECK(q.order() == 60);
  CHECK(q.order_census() == std::vector<int>{1, 2, 3, 5});
}

TEST_CASE("socle of a direct power of a simple group is everything") {
  auto p = build("POW(A(5),2)");
  CHECK(p->group().socle().order() == 3600);
}

TEST_CASE("construction is deterministic across builds") {
  auto a = build("PSL(2,7)");
  auto b = build("PSL(2,7)");
  REQUIRE(a->group().order() == b->group().order());
  for (int32_t id = 0; id < static_cast<int32_t>(a->group().order()); ++id)
    CHECK(encoded(a->group().elem(id)) == encoded(b->group().elem(id)));
}

TEST_CASE("automorphism generators preserve element orders") {
  for (const char* text : {"SL(2,4)", "PSL(2,9)", "GMF(1,4)", "A(5)"}) {
    auto c = build(text);
    const FiniteGroup& g = c->group();
    for (const auto& map : c->autogens().maps)
      for (int32_t id = 0; id < static_cast<int32_t>(g.order()); id += 7)
        CHECK(g.elem_order(map(id)) == g.elem_order(id));
  }
}

TEST_CASE("frobenius map is among the SL(2,4) autogens") {
  auto c = build("SL(2,4)");
  bool found = false;
  for (const auto& map : c->autogens().maps)
    if (map.desc().kind == AutoDescriptor::Kind::field_auto) found = true;
  CHECK(found);
}

TEST_CASE("GL transvections act transitively on nonzero EA vectors") {
  auto c = build("EA(2,3)");
  const FiniteGroup& g = c->group();
  // Nonidentity elements form one orbit under the linear maps: check that
  // some map moves each nonidentity element off itself and the orbit of
  // the first nonidentity element covers everything.
  std::vector<bool> reached(g.order(), false);
  std::vector<int32_t> stack{1};
  reached[1] = true;
  while (!stack.empty()) {
    int32_t x = stack.back();
    stack.pop_back();
    for (const auto& map : c->autogens().maps) {
      if (!reached[map(x)]) {
        reached[map(x)] = true;
        stack.push_back(map(x));
      }
    }
  }
  for (int32_t id = 1; id < static_cast<int32_t>(g.order()); ++id) CHECK(reached[id]);
}

TEST_CASE("trusted flags") {
  CHECK(build("SL(2,4)")->autogens().trusted.empty());
  CHECK(build("GMF(2,4)")->autogens().trusted.empty());
  CHECK_FALSE(build("PSL(2,9)")->autogens().trusted.empty());
  CHECK_FALSE(build("PSL(3,4)")->autogens().trusted.empty());
  CHECK_FALSE(build("A(5)")->autogens().trusted.empty());
  CHECK_FALSE(build("POW(A(5),2)")->autogens().trusted.empty());
}

TEST_CASE("a broken map is rejected, never silently dropped") {
  auto c = build("A(5)");
  const FiniteGroup& g = c->group();
  std::vector<int32_t> images(g.order());
  std::iota(images.begin(), images.end(), 0);
  // Swap the images of two elements of different orders.
  int32_t three = -1, five = -1;
  for (int32_t id = 0; id < static_cast<int32_t>(g.order()); ++id) {
    int o = g.elem_order(id);
    if (o == 3 && three < 0) three = id;
    if (o == 5 && five < 0) five = id;
  }
  std::swap(images[three], images[five]);
  CHECK_THROWS_AS(explicit_automorphism(g, std::move(images), "broken"), verify_error);
}

TEST_CASE("gamma generators match the block-matrix action on a sample") {
  auto c = build("GMF(1,4)");
  const FiniteGroup& g = c->group();
  const Field& f = Field::get(2, 2);
  for (const auto& map : c->autogens().maps) {
    if (map.desc().kind != AutoDescriptor::Kind::gamma_conj) continue;
    const Mat& a = *map.desc().a;
    const Mat& b = *map.desc().b;
    const Mat& cm = *map.desc().c;
    for (int32_t id = 0; id < static_cast<int32_t>(g.order()); id += 97) {
      const auto& ap = std::get<AffinePart>(g.elem(id).v);
      // 3x3 block conjugation computed directly
      Mat gamma(f, 3, 3), gel(f, 3, 3);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          gamma.set(i, j, a.at(i, j));
          gel.set(i, j, ap.x.at(i, j));
        }
      gamma.set(0, 2, b.at(0, 0));
      gamma.set(1, 2, b.at(1, 0));
      gamma.set(2, 2, cm.at(0, 0));
      gel.set(0, 2, ap.y.at(0, 0));
      gel.set(1, 2, ap.y.at(1, 0));
      gel.set(2, 2, 1);
      Mat conj = (gamma.inverse() * gel) * gamma;
      const auto& img = std::get<AffinePart>(g.elem(map(id)).v);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) CHECK(conj.at(i, j) == img.x.at(i, j));
        CHECK(conj.at(i, 2) == img.y.at(i, 0));
      }
      CHECK(conj.at(2, 2) == 1);
    }
  }
}
