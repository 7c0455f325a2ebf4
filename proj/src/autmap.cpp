#include "autorb/autmap.hpp"

#include <algorithm>

namespace autorb {

void verify_automorphism(const FiniteGroup& g, const std::vector<int32_t>& images) {
  const auto n = static_cast<int32_t>(g.order());
  if (static_cast<int32_t>(images.size()) != n)
    throw verify_error("image table has the wrong length");
  std::vector<bool> seen(n, false);
  for (int32_t x : images) {
    if (x < 0 || x >= n || seen[x]) throw verify_error("image table is not a bijection");
    seen[x] = true;
  }
  if (images[g.identity_id()] != g.identity_id())
    throw verify_error("map does not fix the identity");
  for (int32_t x = 0; x < n; ++x)
    for (int32_t s : g.generator_ids())
      if (images[g.mul(x, s)] != g.mul(images[x], images[s]))
        throw verify_error("map is not multiplicative");
}

AutoMap AutoMap::make(const FiniteGroup& g, AutoDescriptor desc,
                      std::vector<int32_t> images) {
  verify_automorphism(g, images);
  return AutoMap(std::move(desc), std::move(images));
}

void AutoGenSet::add(AutoMap m) {
  if (m.desc().trusted_external) {
    const std::string& t = *m.desc().trusted_external;
    auto it = std::lower_bound(trusted.begin(), trusted.end(), t);
    if (it == trusted.end() || *it != t) trusted.insert(it, t);
  }
  maps.push_back(std::move(m));
}

AutoMap inner_automorphism(const FiniteGroup& g, int32_t gen_id) {
  std::vector<int32_t> images(g.order());
  for (int32_t x = 0; x < static_cast<int32_t>(g.order()); ++x)
    images[x] = g.conj(gen_id, x);
  AutoDescriptor d;
  d.kind = AutoDescriptor::Kind::inner;
  d.label = "inner(" + std::to_string(gen_id) + ")";
  d.inner_gen = gen_id;
  return AutoMap::make(g, std::move(d), std::move(images));
}

AutoMap explicit_automorphism(const FiniteGroup& g, std::vector<int32_t> images,
                              std::string label, std::optional<std::string> trusted) {
  AutoDescriptor d;
  d.kind = AutoDescriptor::Kind::explicit_images;
  d.label = std::move(label);
  d.trusted_external = std::move(trusted);
  return AutoMap::make(g, std::move(d), std::move(images));
}

bool is_elementary_abelian(const FiniteGroup& g, int* p_out, int* k_out) {
  if (!g.is_abelian()) return false;
  if (g.order() == 1) return false;
  int p = 0;
  for (int32_t id = 0; id < static_cast<int32_t>(g.order()); ++id) {
    if (id == g.identity_id()) continue;
    int o = g.elem_order(id);
    if (p == 0) {
      p = o;
      for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    } else if (o != p) {
      return false;
    }
  }
  int k = 0;
  std::size_t t = 1;
  while (t < g.order()) {
    t *= p;
    ++k;
  }
  if (t != g.order()) return false;
  if (p_out != nullptr) *p_out = p;
  if (k_out != nullptr) *k_out = k;
  return true;
}

AutoGenSet elementary_abelian_autogens(const FiniteGroup& g) {
  int p = 0, k = 0;
  if (!is_elementary_abelian(g, &p, &k))
    throw structure_error("group is not elementary abelian");

  // Greedy basis in ascending id order.
  std::vector<int32_t> basis;
  {
    std::vector<bool> in(g.order(), false);
    std::vector<int32_t> span{g.identity_id()};
    in[g.identity_id()] = true;
    for (int32_t id = 0; id < static_cast<int32_t>(g.order()); ++id) {
      if (in[id]) continue;
      basis.push_back(id);
      for (std::size_t i = 0; i < span.size(); ++i)
        for (int32_t b : basis) {
          int32_t y = g.mul(span[i], b);
          if (!in[y]) {
            in[y] = true;
            span.push_back(y);
          }
        }
    }
  }
  if (static_cast<int>(basis.size()) != k)
    throw structure_error("basis extraction failed");

  // Enumerate ids by coordinate vector (base-p digits, digit i on basis i).
  std::size_t total = g.order();
  std::vector<int32_t> by_coords(total);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t t = code;
    int32_t e = g.identity_id();
    for (int i = 0; i < k; ++i) {
      int d = static_cast<int>(t % p);
      t /= p;
      if (d > 0) e = g.mul(e, g.power(basis[i], d));
    }
    by_coords[code] = e;
  }

  const Field& fp = Field::get(p, 1);
  auto apply_matrix = [&](const Mat& m) {
    std::vector<int32_t> images(total);
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t t = code;
      std::vector<int> v(k);
      for (int i = 0; i < k; ++i) {
        v[i] = static_cast<int>(t % p);
        t /= p;
      }
      std::size_t out = 0;
      for (int i = k - 1; i >= 0; --i) {
        int acc = 0;
        for (int j = 0; j < k; ++j) acc = fp.add(acc, fp.mul(m.at(i, j), v[j]));
        out = out * p + acc;
      }
      images[by_coords[code]] = by_coords[out];
    }
    return images;
  };

  AutoGenSet set;
  for (int32_t gid : g.generator_ids()) set.add(inner_automorphism(g, gid));
  auto add_matrix_map = [&](Mat m, const std::string& label) {
    AutoDescriptor d;
    d.kind = AutoDescriptor::Kind::ambient_conj;
    d.label = label;
    d.a = m;
    set.add(AutoMap::make(g, std::move(d), apply_matrix(m)));
  };
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      Mat t = Mat::identity(fp, k);
      t.set(i, j, 1);
      add_matrix_map(t, "gl-transvection(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  if (p > 2) {
    Mat d = Mat::identity(fp, k);
    d.set(0, 0, fp.generator());
    add_matrix_map(d, "gl-diagonal");
  }
  return set;
}

}  // namespace autorb
