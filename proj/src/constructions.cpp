#include "autorb/constructions.hpp"

#include <algorithm>
#include <numeric>

namespace autorb {
namespace {

long long factorial(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

std::vector<int> poly_basis(const Field& f) {
  // Additive basis 1, x, x^2, ... (codes are powers of p).
  std::vector<int> basis;
  int code = 1;
  for (int i = 0; i < f.k(); ++i) {
    basis.push_back(code);
    code *= f.p();
  }
  return basis;
}

std::vector<uint8_t> perm_identity(int n) {
  std::vector<uint8_t> img(n);
  std::iota(img.begin(), img.end(), 0);
  return img;
}

// 1-based cycle.
std::vector<uint8_t> perm_from_cycle(int n, const std::vector<int>& cycle) {
  auto img = perm_identity(n);
  for (std::size_t i = 0; i < cycle.size(); ++i)
    img[cycle[i] - 1] = static_cast<uint8_t>(cycle[(i + 1) % cycle.size()] - 1);
  return img;
}

void expect_order(const FiniteGroup& g, long long expected, const char* what) {
  if (static_cast<long long>(g.order()) != expected)
    throw structure_error(std::string(what) + ": closure order " +
                          std::to_string(g.order()) + " != expected " +
                          std::to_string(expected));
}

}  // namespace

std::vector<Mat> sl2_generator_mats(const Field& f) {
  std::vector<Mat> gens;
  for (int lambda : poly_basis(f)) {
    Mat upper = Mat::identity(f, 2);
    upper.set(0, 1, lambda);
    gens.push_back(upper);
    Mat lower = Mat::identity(f, 2);
    lower.set(1, 0, lambda);
    gens.push_back(lower);
  }
  return gens;
}

std::vector<Mat> gl2_generator_mats(const Field& f) {
  auto gens = sl2_generator_mats(f);
  if (f.q() > 2) {
    Mat d = Mat::identity(f, 2);
    d.set(0, 0, f.generator());
    gens.push_back(d);
  }
  return gens;
}

std::vector<Mat> sl3_generator_mats(const Field& f) {
  std::vector<Mat> gens;
  for (int lambda : poly_basis(f)) {
    Mat t = Mat::identity(f, 3);
    t.set(0, 1, lambda);
    gens.push_back(t);
  }
  Mat cyc(f, 3, 3);
  cyc.set(0, 2, 1);
  cyc.set(1, 0, 1);
  cyc.set(2, 1, 1);
  gens.push_back(cyc);
  return gens;
}

std::vector<Mat> gl3_generator_mats(const Field& f) {
  auto gens = sl3_generator_mats(f);
  if (f.q() > 2) {
    Mat d = Mat::identity(f, 3);
    d.set(0, 0, f.generator());
    gens.push_back(d);
  }
  return gens;
}

std::vector<Mat> glk_generator_mats(const Field& f, int k) {
  std::vector<Mat> gens;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      for (int lambda : poly_basis(f)) {
        Mat t = Mat::identity(f, k);
        t.set(i, j, lambda);
        gens.push_back(t);
      }
    }
  if (f.q() > 2) {
    Mat d = Mat::identity(f, k);
    d.set(0, 0, f.generator());
    gens.push_back(d);
  }
  if (gens.empty()) gens.push_back(Mat::identity(f, k));  // k == 1 over GF(2)
  return gens;
}

namespace {

// ---------------------------------------------------------------------------
// Map builders. Each transforms every element by an explicit formula and
// verifies the result; a formula that leaves the element table signals a
// construction bug and aborts via verify_error / structure_error.

std::vector<int32_t> images_by_formula(const FiniteGroup& g,
                                       const std::function<GroupElem(const GroupElem&)>& f) {
  std::vector<int32_t> images(g.order());
  for (int32_t id = 0; id < static_cast<int32_t>(g.order()); ++id) {
    int32_t to = g.id_of(f(g.elem(id)));
    if (to < 0) throw verify_error("map image left the element table");
    images[id] = to;
  }
  return images;
}

AutoMap ambient_conj_map(const FiniteGroup& g, const Mat& p, std::string label,
                         std::optional<std::string> trusted) {
  Mat pinv = p.inverse();
  auto images = images_by_formula(g, [&](const GroupElem& e) {
    const auto& mp = std::get<MatPart>(e.v);
    Mat conj = (pinv * mp.m) * p;
    return mp.projective ? GroupElem::projective(std::move(conj))
                         : GroupElem::mat(std::move(conj));
  });
  AutoDescriptor d;
  d.kind = AutoDescriptor::Kind::ambient_conj;
  d.label = std::move(label);
  d.trusted_external = std::move(trusted);
  d.a = p;
  return AutoMap::make(g, std::move(d), std::move(images));
}

AutoMap field_auto_map(const FiniteGroup& g, int power, std::string label) {
  auto images = images_by_formula(g, [&](const GroupElem& e) -> GroupElem {
    if (const auto* mp = std::get_if<MatPart>(&e.v)) {
      Mat m = mp->m.frobenius(power);
      return mp->projective ? GroupElem::projective(std::move(m))
                            : GroupElem::mat(std::move(m));
    }
    const auto& ap = std::get<AffinePart>(e.v);
    return GroupElem::affine(ap.x.frobenius(power), ap.y.frobenius(power));
  });
  AutoDescriptor d;
  d.kind = AutoDescriptor::Kind::field_auto;
  d.label = std::move(label);
  d.frob_power = power;
  return AutoMap::make(g, std::move(d), std::move(images));
}

AutoMap graph_auto_map(const FiniteGroup& g, std::optional<std::string> trusted) {
  auto images = images_by_formula(g, [&](const GroupElem& e) {
    const auto& mp = std::get<MatPart>(e.v);
    Mat m = mp.m.inverse().transposed();
    return mp.projective ? GroupElem::projective(std::move(m))
                         : GroupElem::mat(std::move(m));
  });
  AutoDescriptor d;
  d.kind = AutoDescriptor::Kind::graph_auto;
  d.label = "inverse-transpose";
  d.trusted_external = std::move(trusted);
  return AutoMap::make(g, std::move(d), std::move(images));
}

GroupElem gamma_conj_apply(const AffinePart& ap, const Mat& a, const Mat& b, const Mat& c) {
  Mat ainv = a.inverse();
  Mat x = (ainv * ap.x) * a;
  Mat xm1 = ap.x - Mat::identity(ap.x.field(), ap.x.rows());
  Mat y = (ainv * ((xm1 * b) + (ap.y * c)));
  return GroupElem::affine(std::move(x), std::move(y));
}

AutoMap gamma_conj_map(const FiniteGroup& g, const Mat& a, const Mat& b, const Mat& c,
                       std::string label) {
  auto images = images_by_formula(g, [&](const GroupElem& e) {
    return gamma_conj_apply(std::get<AffinePart>(e.v), a, b, c);
  });
  AutoDescriptor d;
  d.kind = AutoDescriptor::Kind::gamma_conj;
  d.label = std::move(label);
  d.a = a;
  d.b = b;
  d.c = c;
  return AutoMap::make(g, std::move(d), std::move(images));
}

void add_inner_maps(AutoGenSet& set, const FiniteGroup& g) {
  for (int32_t gid : g.generator_ids()) set.add(inner_automorphism(g, gid));
}

constexpr const char* kTrustedClassification = "aut-generators:external-classification";
constexpr const char* kTrustedGraph = "aut-generators:graph-automorphism";
constexpr const char* kTrustedSymmetric = "aut-generators:symmetric-extension";
constexpr const char* kTrustedWreath = "aut-generators:wreath-product";

}  // namespace

std::unique_ptr<Construction> Construction::build(const GroupSpec& spec, std::size_t cap) {
  using Name = GroupSpec::Name;
  auto c = std::unique_ptr<Construction>(new Construction());
  c->spec_ = spec;

  switch (spec.name) {
    case Name::SL: {
      int n = spec.ints[0], q = spec.ints[1];
      const Field& f = Field::get_order(q);
      auto mats = (n == 2) ? sl2_generator_mats(f) : sl3_generator_mats(f);
      std::vector<GroupElem> gens;
      for (auto& m : mats) gens.push_back(GroupElem::mat(m));
      c->group_ = std::make_unique<FiniteGroup>(FiniteGroup::closure(std::move(gens), cap));
      long long expected = (n == 2)
          ? static_cast<long long>(q) * (q - 1) * (q + 1)
          : static_cast<long long>(q) * q * q * (q * q - 1) * (static_cast<long long>(q) * q * q - 1);
      expect_order(*c->group_, expected, "SL");
      add_inner_maps(c->autogens_, *c->group_);
      std::optional<std::string> trusted;
      if (q % 2 != 0) trusted = kTrustedClassification;
      auto ambient = (n == 2) ? gl2_generator_mats(f) : gl3_generator_mats(f);
      int idx = 0;
      for (const auto& p : ambient)
        c->autogens_.add(ambient_conj_map(*c->group_, p, "gl-conj(" + std::to_string(idx++) + ")", trusted));
      if (f.k() > 1) c->autogens_.add(field_auto_map(*c->group_, 1, "frobenius"));
      break;
    }

    case Name::GL: {
      int q = spec.ints[1];
      const Field& f = Field::get_order(q);
      std::vector<GroupElem> gens;
      for (auto& m : gl2_generator_mats(f)) gens.push_back(GroupElem::mat(m));
      c->group_ = std::make_unique<FiniteGroup>(FiniteGroup::closure(std::move(gens), cap));
      expect_order(*c->group_, static_cast<long long>(q * q - 1) * (q * q - q), "GL");
      add_inner_maps(c->autogens_, *c->group_);
      if (f.k() > 1) c->autogens_.add(field_auto_map(*c->group_, 1, "frobenius"));
      break;
    }

    case Name::PSL: {
      int n = spec.ints[0], q = spec.ints[1];
      const Field& f = Field::get_order(q);
      bool char2 = (q % 2 == 0);
      auto mats = (n == 2) ? sl2_generator_mats(f) : sl3_generator_mats(f);
      std::vector<GroupElem> gens;
      for (auto& m : mats)
        gens.push_back(char2 && n == 2 ? GroupElem::mat(m) : GroupElem::projective(m));
      c->group_ = std::make_unique<FiniteGroup>(FiniteGroup::closure(std::move(gens), cap));
      long long expected;
      if (n == 2)
        expected = static_cast<long long>(q) * (q - 1) * (q + 1) / (char2 ? 1 : 2);
      else
        expected = static_cast<long long>(q) * q * q * (q * q - 1) *
                   (static_cast<long long>(q) * q * q - 1) / ((q - 1) % 3 == 0 ? 3 : 1);
      expect_order(*c->group_, expected, "PSL");
      add_inner_maps(c->autogens_, *c->group_);
      std::optional<std::string> trusted;
      if (!char2) trusted = kTrustedClassification;
      if (n == 3) trusted = kTrustedGraph;
      auto ambient = (n == 2) ? gl2_generator_mats(f) : gl3_generator_mats(f);
      int idx = 0;
      for (const auto& p : ambient)
        c->autogens_.add(ambient_conj_map(*c->group_, p, "gl-conj(" + std::to_string(idx++) + ")", trusted));
      if (f.k() > 1) c->autogens_.add(field_auto_map(*c->group_, 1, "frobenius"));
      if (n == 3) c->autogens_.add(graph_auto_map(*c->group_, kTrustedGraph));
      break;
    }

    case Name::PGL: {
      int q = spec.ints[1];
      const Field& f = Field::get_order(q);
      std::vector<GroupElem> gens;
      for (auto& m : gl2_generator_mats(f)) gens.push_back(GroupElem::projective(m));
      c->group_ = std::make_unique<FiniteGroup>(FiniteGroup::closure(std::move(gens), cap));
      expect_order(*c->group_, static_cast<long long>(q) * q * q - q, "PGL");
      add_inner_maps(c->autogens_, *c->group_);
      if (f.k() > 1)
        c->autogens_.add(field_auto_map(*c->group_, 1, "frobenius"));
      break;
    }

    case Name::GMF:
    case Name::ASL: {
      int m = (spec.name == Name::GMF) ? spec.ints[0] : 1;
      int q = spec.ints[1];
      const Field& f = Field::get_order(q);
      auto sl_mats = sl2_generator_mats(f);
      std::vector<GroupElem> gens;
      for (auto& x : sl_mats)
        gens.push_back(GroupElem::affine(x, Mat(f, 2, m)));
      for (int j = 0; j < m; ++j) {
        Mat y(f, 2, m);
        y.set(0, j, 1);
        gens.push_back(GroupElem::affine(Mat::identity(f, 2), y));
      }
      long long expected = static_cast<long long>(q) * (q - 1) * (q + 1);
      for (int i = 0; i < 2 * m; ++i) expected *= q;
      if (expected > static_cast<long long>(cap))
        throw cap_error("GMF order exceeds the configured cap");
      c->group_ = std::make_unique<FiniteGroup>(FiniteGroup::closure(std::move(gens), cap));
      expect_order(*c->group_, expected, "GMF");

      std::vector<int32_t> m_members;
      for (int32_t id = 0; id < static_cast<int32_t>(c->group_->order()); ++id)
        if (std::get<AffinePart>(c->group_->elem(id).v).x.is_identity())
          m_members.push_back(id);
      c->m_.emplace(*c->group_, std::move(m_members));
      c->gmf_ = GmfInfo{&f, m, sl_mats};

      add_inner_maps(c->autogens_, *c->group_);
      Mat zero_b(f, 2, m);
      Mat id_c = Mat::identity(f, m);
      Mat id_a = Mat::identity(f, 2);
      int idx = 0;
      for (const auto& a : gl2_generator_mats(f))
        c->autogens_.add(gamma_conj_map(*c->group_, a, zero_b, id_c,
                                        "gamma-a(" + std::to_string(idx++) + ")"));
      idx = 0;
      for (const auto& cm : glk_generator_mats(f, m))
        c->autogens_.add(gamma_conj_map(*c->group_, id_a, zero_b, cm,
                                        "gamma-c(" + std::to_string(idx++) + ")"));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < m; ++j) {
          Mat b(f, 2, m);
          b.set(i, j, 1);
          c->autogens_.add(gamma_conj_map(*c->group_, id_a, b, id_c,
                                          "gamma-b(" + std::to_string(i) + "," + std::to_string(j) + ")"));
        }
      c->autogens_.add(field_auto_map(*c->group_, 1, "frobenius"));
      break;
    }

    case Name::A:
    case Name::S: {
      int n = spec.ints[0];
      bool alternating = (spec.name == Name::A);
      std::vector<GroupElem> gens;
      if (alternating && n >= 3) {
        gens.push_back(GroupElem::perm(perm_from_cycle(n, {1, 2, 3})));
        if (n > 3) {
          std::vector<int> cyc;
          if (n % 2 == 1)
            for (int i = 1; i <= n; ++i) cyc.push_back(i);
          else
            for (int i = 2; i <= n; ++i) cyc.push_back(i);
          gens.push_back(GroupElem::perm(perm_from_cycle(n, cyc)));
        }
      } else if (!alternating && n >= 2) {
        gens.push_back(GroupElem::perm(perm_from_cycle(n, {1, 2})));
        if (n > 2) {
          std::vector<int> cyc;
          for (int i = 1; i <= n; ++i) cyc.push_back(i);
          gens.push_back(GroupElem::perm(perm_from_cycle(n, cyc)));
        }
      } else {
        gens.push_back(GroupElem::perm(perm_identity(std::max(n, 1))));
      }
      c->group_ = std::make_unique<FiniteGroup>(FiniteGroup::closure(std::move(gens), cap));
      long long expected = alternating ? (n >= 3 ? factorial(n) / 2 : 1) : factorial(n);
      expect_order(*c->group_, expected, alternating ? "A(n)" : "S(n)");
      add_inner_maps(c->autogens_, *c->group_);
      if (alternating && n >= 3) {
        // Conjugation by a transposition extends the inner action.
        auto t = perm_from_cycle(n, {1, 2});
        auto images = images_by_formula(*c->group_, [&](const GroupElem& e) {
          const auto& p = std::get<PermPart>(e.v);
          std::vector<uint8_t> r(p.img.size());
          for (std::size_t i = 0; i < r.size(); ++i) r[t[i]] = t[p.img[i]];
          return GroupElem::perm(std::move(r));
        });
        c->autogens_.add(explicit_automorphism(*c->group_, std::move(images),
                                               "transposition-conj", kTrustedSymmetric));
      }
      break;
    }

    case Name::EA: {
      int p = spec.ints[0], k = spec.ints[1];
      std::vector<uint8_t> rot(p);
      for (int i = 0; i < p; ++i) rot[i] = static_cast<uint8_t>((i + 1) % p);
      std::vector<GroupElem> gens;
      for (int j = 0; j < k; ++j) {
        std::vector<GroupElem> parts;
        for (int i = 0; i < k; ++i)
          parts.push_back(i == j ? GroupElem::perm(rot) : GroupElem::perm(perm_identity(p)));
        gens.push_back(GroupElem::tuple(std::move(parts)));
      }
      c->group_ = std::make_unique<FiniteGroup>(FiniteGroup::closure(std::move(gens), cap));
      long long expected = 1;
      for (int i = 0; i < k; ++i) expected *= p;
      expect_order(*c->group_, expected, "EA");
      c->autogens_ = elementary_abelian_autogens(*c->group_);
      break;
    }

    case Name::POW: {
      int m = spec.ints[0];
      auto base = Construction::build(spec.subs[0], cap);
      long long expected = 1;
      for (int i = 0; i < m; ++i) {
        expected *= static_cast<long long>(base->group().order());
        if (expected > static_cast<long long>(cap))
          throw cap_error("direct power exceeds the configured cap");
      }
      const FiniteGroup& bg = base->group();
      std::vector<GroupElem> gens;
      for (int i = 0; i < m; ++i)
        for (int32_t gid : bg.generator_ids()) {
          std::vector<GroupElem> parts;
          for (int j = 0; j < m; ++j)
            parts.push_back(j == i ? bg.elem(gid) : bg.elem(bg.identity_id()));
          gens.push_back(GroupElem::tuple(std::move(parts)));
        }
      c->group_ = std::make_unique<FiniteGroup>(FiniteGroup::closure(std::move(gens), cap));
      expect_order(*c->group_, expected, "POW");

      add_inner_maps(c->autogens_, *c->group_);
      const FiniteGroup& g = *c->group_;
      // Factor-wise lifts of the base group's non-inner maps.
      for (const auto& bmap : base->autogens().maps) {
        if (bmap.desc().kind == AutoDescriptor::Kind::inner) continue;
        for (int i = 0; i < m; ++i) {
          auto images = images_by_formula(g, [&](const GroupElem& e) {
            auto parts = std::get<TuplePart>(e.v).parts;
            int32_t bid = bg.id_of(parts[i]);
            if (bid < 0) throw verify_error("component left the base group");
            parts[i] = bg.elem(bmap(bid));
            return GroupElem::tuple(std::move(parts));
          });
          c->autogens_.add(explicit_automorphism(
              g, std::move(images),
              "factor(" + std::to_string(i) + "):" + bmap.desc().label, kTrustedWreath));
        }
      }
      if (m >= 2) {
        auto permute_coords = [&](const std::vector<int>& to, const std::string& label) {
          auto images = images_by_formula(g, [&](const GroupElem& e) {
            const auto& parts = std::get<TuplePart>(e.v).parts;
            std::vector<GroupElem> r(parts.size(), parts[0]);
            for (int i = 0; i < m; ++i) r[to[i]] = parts[i];
            return GroupElem::tuple(std::move(r));
          });
          c->autogens_.add(explicit_automorphism(g, std::move(images), label, kTrustedWreath));
        };
        std::vector<int> swap01(m);
        std::iota(swap01.begin(), swap01.end(), 0);
        std::swap(swap01[0], swap01[1]);
        permute_coords(swap01, "coordinate-swap(0,1)");
        if (m > 2) {
          std::vector<int> cyc(m);
          for (int i = 0; i < m; ++i) cyc[i] = (i + 1) % m;
          permute_coords(cyc, "coordinate-cycle");
        }
      }
      c->children_.push_back(std::move(base));
      break;
    }

    case Name::DP: {
      std::vector<std::unique_ptr<Construction>> factors;
      long long expected = 1;
      for (const auto& sub : spec.subs) {
        factors.push_back(Construction::build(sub, cap));
        expected *= static_cast<long long>(factors.back()->group().order());
        if (expected > static_cast<long long>(cap))
          throw cap_error("direct product exceeds the configured cap");
      }
      int m = static_cast<int>(factors.size());
      std::vector<GroupElem> gens;
      for (int i = 0; i < m; ++i) {
        const FiniteGroup& fg = factors[i]->group();
        for (int32_t gid : fg.generator_ids()) {
          std::vector<GroupElem> parts;
          for (int j = 0; j < m; ++j) {
            const FiniteGroup& og = factors[j]->group();
            parts.push_back(j == i ? fg.elem(gid) : og.elem(og.identity_id()));
          }
          gens.push_back(GroupElem::tuple(std::move(parts)));
        }
      }
      c->group_ = std::make_unique<FiniteGroup>(FiniteGroup::closure(std::move(gens), cap));
      expect_order(*c->group_, expected, "DP");
      add_inner_maps(c->autogens_, *c->group_);
      const FiniteGroup& g = *c->group_;
      for (int i = 0; i < m; ++i) {
        const FiniteGroup& fg = factors[i]->group();
        for (const auto& fmap : factors[i]->autogens().maps) {
          if (fmap.desc().kind == AutoDescriptor::Kind::inner) continue;
          auto images = images_by_formula(g, [&](const GroupElem& e) {
            auto parts = std::get<TuplePart>(e.v).parts;
            int32_t bid = fg.id_of(parts[i]);
            if (bid < 0) throw verify_error("component left the factor group");
            parts[i] = fg.elem(fmap(bid));
            return GroupElem::tuple(std::move(parts));
          });
          c->autogens_.add(explicit_automorphism(
              g, std::move(images),
              "factor(" + std::to_string(i) + "):" + fmap.desc().label, kTrustedWreath));
        }
      }
      for (auto& fc : factors) c->children_.push_back(std::move(fc));
      break;
    }
  }

  return c;
}

}  // namespace autorb
