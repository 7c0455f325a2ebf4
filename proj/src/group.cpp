#include "autorb/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>

namespace autorb {

// ---------------------------------------------------------------------------
// GroupElem

GroupElem GroupElem::perm(std::vector<uint8_t> img) {
  std::vector<bool> seen(img.size(), false);
  for (uint8_t x : img) {
    if (x >= img.size() || seen[x]) throw structure_error("image table is not a bijection");
    seen[x] = true;
  }
  return GroupElem{PermPart{std::move(img)}};
}

GroupElem GroupElem::mat(Mat m) {
  if (m.rows() != m.cols()) throw dim_error("group matrices must be square");
  return GroupElem{MatPart{std::move(m), false}};
}

namespace {

Mat scalar_canonical(Mat m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) return m.scaled(m.field().inv(m.at(i, j)));
  return m;
}

}  // namespace

GroupElem GroupElem::projective(Mat m) {
  if (m.rows() != m.cols()) throw dim_error("group matrices must be square");
  return GroupElem{MatPart{scalar_canonical(std::move(m)), true}};
}

GroupElem GroupElem::affine(Mat x, Mat y) {
  if (x.rows() != x.cols() || x.rows() != y.rows())
    throw dim_error("affine pair shape mismatch");
  return GroupElem{AffinePart{std::move(x), std::move(y)}};
}

GroupElem GroupElem::tuple(std::vector<GroupElem> parts) {
  if (parts.empty()) throw structure_error("empty tuple element");
  return GroupElem{TuplePart{std::move(parts)}};
}

GroupElem GroupElem::coset(std::shared_ptr<const QuotientCtx> ctx, int32_t rep) {
  return GroupElem{CosetPart{std::move(ctx), rep}};
}

GroupElem mul(const GroupElem& a, const GroupElem& b) {
  if (a.v.index() != b.v.index()) throw structure_error("element kinds differ");
  if (const auto* pa = std::get_if<PermPart>(&a.v)) {
    const auto& pb = std::get<PermPart>(b.v);
    if (pa->img.size() != pb.img.size()) throw dim_error("permutation degrees differ");
    std::vector<uint8_t> r(pa->img.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = pb.img[pa->img[i]];
    return GroupElem{PermPart{std::move(r)}};
  }
  if (const auto* ma = std::get_if<MatPart>(&a.v)) {
    const auto& mb = std::get<MatPart>(b.v);
    if (ma->projective != mb.projective) throw structure_error("projective flags differ");
    Mat prod = ma->m * mb.m;
    if (ma->projective) prod = scalar_canonical(std::move(prod));
    return GroupElem{MatPart{std::move(prod), ma->projective}};
  }
  if (const auto* fa = std::get_if<AffinePart>(&a.v)) {
    const auto& fb = std::get<AffinePart>(b.v);
    Mat x = fa->x * fb.x;
    Mat y = (fa->x * fb.y) + fa->y;
    return GroupElem{AffinePart{std::move(x), std::move(y)}};
  }
  if (const auto* ta = std::get_if<TuplePart>(&a.v)) {
    const auto& tb = std::get<TuplePart>(b.v);
    if (ta->parts.size() != tb.parts.size()) throw dim_error("tuple lengths differ");
    std::vector<GroupElem> r;
    r.reserve(ta->parts.size());
    for (std::size_t i = 0; i < ta->parts.size(); ++i)
      r.push_back(mul(ta->parts[i], tb.parts[i]));
    return GroupElem{TuplePart{std::move(r)}};
  }
  const auto& ca = std::get<CosetPart>(a.v);
  const auto& cb = std::get<CosetPart>(b.v);
  if (ca.ctx != cb.ctx) throw structure_error("cosets from different quotients");
  int32_t prod = ca.ctx->parent->mul(ca.rep, cb.rep);
  return GroupElem{CosetPart{ca.ctx, ca.ctx->label[prod]}};
}

GroupElem inverse(const GroupElem& a) {
  if (const auto* p = std::get_if<PermPart>(&a.v)) {
    std::vector<uint8_t> r(p->img.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[p->img[i]] = static_cast<uint8_t>(i);
    return GroupElem{PermPart{std::move(r)}};
  }
  if (const auto* m = std::get_if<MatPart>(&a.v)) {
    Mat inv = m->m.inverse();
    if (m->projective) inv = scalar_canonical(std::move(inv));
    return GroupElem{MatPart{std::move(inv), m->projective}};
  }
  if (const auto* f = std::get_if<AffinePart>(&a.v)) {
    Mat xi = f->x.inverse();
    Mat y = (xi * f->y).scaled(f->y.field().neg(1));
    return GroupElem{AffinePart{std::move(xi), std::move(y)}};
  }
  if (const auto* t = std::get_if<TuplePart>(&a.v)) {
    std::vector<GroupElem> r;
    r.reserve(t->parts.size());
    for (const auto& part : t->parts) r.push_back(inverse(part));
    return GroupElem{TuplePart{std::move(r)}};
  }
  const auto& c = std::get<CosetPart>(a.v);
  return GroupElem{CosetPart{c.ctx, c.ctx->label[c.ctx->parent->inv(c.rep)]}};
}

GroupElem identity_like(const GroupElem& a) {
  if (const auto* p = std::get_if<PermPart>(&a.v)) {
    std::vector<uint8_t> r(p->img.size());
    std::iota(r.begin(), r.end(), 0);
    return GroupElem{PermPart{std::move(r)}};
  }
  if (const auto* m = std::get_if<MatPart>(&a.v))
    return GroupElem{MatPart{Mat::identity(m->m.field(), m->m.rows()), m->projective}};
  if (const auto* f = std::get_if<AffinePart>(&a.v))
    return GroupElem{AffinePart{Mat::identity(f->x.field(), f->x.rows()),
                                Mat(f->y.field(), f->y.rows(), f->y.cols())}};
  if (const auto* t = std::get_if<TuplePart>(&a.v)) {
    std::vector<GroupElem> r;
    r.reserve(t->parts.size());
    for (const auto& part : t->parts) r.push_back(identity_like(part));
    return GroupElem{TuplePart{std::move(r)}};
  }
  const auto& c = std::get<CosetPart>(a.v);
  return GroupElem{CosetPart{c.ctx, c.ctx->label[c.ctx->parent->identity_id()]}};
}

bool is_identity(const GroupElem& a) { return equal(a, identity_like(a)); }

bool equal(const GroupElem& a, const GroupElem& b) {
  return a.v.index() == b.v.index() && encoded(a) == encoded(b);
}

void encode(const GroupElem& a, std::string& out) {
  if (const auto* p = std::get_if<PermPart>(&a.v)) {
    out.push_back('P');
    out.push_back(static_cast<char>(p->img.size()));
    for (uint8_t x : p->img) out.push_back(static_cast<char>(x));
    return;
  }
  if (const auto* m = std::get_if<MatPart>(&a.v)) {
    out.push_back(m->projective ? 'Q' : 'M');
    m->m.encode(out);
    return;
  }
  if (const auto* f = std::get_if<AffinePart>(&a.v)) {
    out.push_back('A');
    f->x.encode(out);
    f->y.encode(out);
    return;
  }
  if (const auto* t = std::get_if<TuplePart>(&a.v)) {
    out.push_back('T');
    out.push_back(static_cast<char>(t->parts.size()));
    for (const auto& part : t->parts) encode(part, out);
    return;
  }
  const auto& c = std::get<CosetPart>(a.v);
  out.push_back('C');
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((c.rep >> (8 * i)) & 0xff));
}

std::string encoded(const GroupElem& a) {
  std::string s;
  encode(a, s);
  return s;
}

std::string to_string(const GroupElem& a) {
  if (const auto* p = std::get_if<PermPart>(&a.v)) {
    std::string s;
    std::vector<bool> seen(p->img.size(), false);
    for (std::size_t i = 0; i < p->img.size(); ++i) {
      if (seen[i] || p->img[i] == i) continue;
      s += "(" + std::to_string(i + 1);
      seen[i] = true;
      for (std::size_t j = p->img[i]; j != i; j = p->img[j]) {
        seen[j] = true;
        s += " " + std::to_string(j + 1);
      }
      s += ")";
    }
    return s.empty() ? "()" : s;
  }
  if (const auto* m = std::get_if<MatPart>(&a.v)) return m->m.str();
  if (const auto* f = std::get_if<AffinePart>(&a.v))
    return f->x.str() + " | " + f->y.str();
  if (const auto* t = std::get_if<TuplePart>(&a.v)) {
    std::string s = "(";
    for (std::size_t i = 0; i < t->parts.size(); ++i) {
      if (i) s += ", ";
      s += to_string(t->parts[i]);
    }
    return s + ")";
  }
  const auto& c = std::get<CosetPart>(a.v);
  return to_string(c.ctx->parent->elem(c.rep)) + "*N";
}

// ---------------------------------------------------------------------------
// SubgroupHandle

namespace {

// Greedy generator extraction; `closed` ends up as the subgroup generated.
std::vector<int32_t> greedy_generators(const FiniteGroup& parent,
                                       const std::vector<int32_t>& members,
                                       std::size_t* closed_size) {
  std::vector<int32_t> gens;
  std::vector<bool> in(parent.order(), false);
  std::vector<int32_t> closed{parent.identity_id()};
  in[parent.identity_id()] = true;
  for (int32_t m : members) {
    if (in[m]) continue;
    gens.push_back(m);
    for (std::size_t i = 0; i < closed.size(); ++i)
      for (int32_t g : gens) {
        int32_t y = parent.mul(closed[i], g);
        if (!in[y]) {
          in[y] = true;
          closed.push_back(y);
        }
      }
  }
  if (closed_size != nullptr) *closed_size = closed.size();
  return gens;
}

}  // namespace

SubgroupHandle::SubgroupHandle(const FiniteGroup& parent, std::vector<int32_t> members)
    : parent_(&parent), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty() || !contains(parent.identity_id()))
    throw structure_error("subgroup must contain the identity");
  // The greedy span of the members equals the member set iff the set is
  // closed under multiplication; cheap compared with an all-pairs check.
  std::size_t span = 0;
  greedy_generators(parent, members_, &span);
  if (span != members_.size())
    throw structure_error("member list is not closed under multiplication");
}

bool SubgroupHandle::contains(int32_t id) const {
  return std::binary_search(members_.begin(), members_.end(), id);
}

std::vector<int32_t> SubgroupHandle::generators() const {
  return greedy_generators(*parent_, members_, nullptr);
}

bool SubgroupHandle::is_abelian() const {
  auto gens = generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (parent_->mul(gens[i], gens[j]) != parent_->mul(gens[j], gens[i]))
        return false;
  return true;
}

bool SubgroupHandle::operator==(const SubgroupHandle& o) const {
  return parent_ == o.parent_ && members_ == o.members_;
}

// ---------------------------------------------------------------------------
// FiniteGroup

int32_t FiniteGroup::range(int32_t id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= elems_.size())
    throw structure_error("element id out of range");
  return id;
}

FiniteGroup FiniteGroup::closure(std::vector<GroupElem> gens, std::size_t cap) {
  FiniteGroup g;
  GroupElem id = gens.empty() ? GroupElem::perm({0}) : identity_like(gens[0]);
  g.elems_.push_back(id);
  g.index_.emplace(encoded(id), 0);
  g.identity_ = 0;

  std::vector<GroupElem> gen_elems;
  for (auto& e : gens) {
    auto key = encoded(e);
    auto it = g.index_.find(key);
    if (it == g.index_.end()) {
      int32_t nid = static_cast<int32_t>(g.elems_.size());
      g.index_.emplace(std::move(key), nid);
      g.elems_.push_back(e);
      g.gen_ids_.push_back(nid);
      gen_elems.push_back(std::move(e));
    }
    // duplicate or identity generators are dropped
  }

  for (std::size_t i = 0; i < g.elems_.size(); ++i) {
    for (const auto& gen : gen_elems) {
      GroupElem prod = autorb::mul(g.elems_[i], gen);
      auto key = encoded(prod);
      if (g.index_.find(key) == g.index_.end()) {
        if (g.elems_.size() >= cap)
          throw cap_error("closure exceeded the configured order cap");
        g.index_.emplace(std::move(key), static_cast<int32_t>(g.elems_.size()));
        g.elems_.push_back(std::move(prod));
      }
    }
  }

  g.inv_.resize(g.elems_.size());
  for (std::size_t i = 0; i < g.elems_.size(); ++i) {
    auto it = g.index_.find(encoded(inverse(g.elems_[i])));
    if (it == g.index_.end()) throw structure_error("inverse escaped the closure");
    g.inv_[i] = it->second;
  }

  if (g.elems_.size() <= kCayleyLimit) {
    std::size_t n = g.elems_.size();
    g.cayley_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        auto it = g.index_.find(encoded(autorb::mul(g.elems_[a], g.elems_[b])));
        if (it == g.index_.end()) throw structure_error("product escaped the closure");
        g.cayley_[a * n + b] = static_cast<uint16_t>(it->second);
      }
  }
  return g;
}

int32_t FiniteGroup::id_of(const GroupElem& e) const {
  auto it = index_.find(encoded(e));
  return it == index_.end() ? -1 : it->second;
}

int32_t FiniteGroup::mul(int32_t a, int32_t b) const {
  range(a);
  range(b);
  if (!cayley_.empty()) return cayley_[static_cast<std::size_t>(a) * order() + b];
  auto it = index_.find(encoded(autorb::mul(elems_[a], elems_[b])));
  if (it == index_.end()) throw structure_error("product escaped the element table");
  return it->second;
}

int32_t FiniteGroup::power(int32_t a, long long e) const {
  range(a);
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  int32_t r = identity_;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

int FiniteGroup::elem_order(int32_t id) const {
  range(id);
  int n = 1;
  int32_t x = id;
  while (x != identity_) {
    x = mul(x, id);
    ++n;
  }
  return n;
}

std::vector<int> FiniteGroup::order_census() const {
  const auto& cc = conjugacy_classes();
  std::set<int> orders;
  for (int32_t rep : cc.reps) orders.insert(elem_order(rep));
  return std::vector<int>(orders.begin(), orders.end());
}

const ConjClasses& FiniteGroup::conjugacy_classes() const {
  std::call_once(caches_->classes_once, [this] {
    ConjClasses cc;
    cc.class_of.assign(order(), -1);
    std::vector<int32_t> stack;
    for (int32_t id = 0; id < static_cast<int32_t>(order()); ++id) {
      if (cc.class_of[id] >= 0) continue;
      int32_t c = static_cast<int32_t>(cc.reps.size());
      cc.reps.push_back(id);
      cc.class_of[id] = c;
      int64_t size = 1;
      stack.assign(1, id);
      while (!stack.empty()) {
        int32_t x = stack.back();
        stack.pop_back();
        for (int32_t g : gen_ids_) {
          int32_t y = conj(g, x);
          if (cc.class_of[y] < 0) {
            cc.class_of[y] = c;
            ++size;
            stack.push_back(y);
          }
        }
      }
      cc.sizes.push_back(size);
    }
    caches_->classes = std::move(cc);
  });
  return caches_->classes;
}

const std::vector<FiniteGroup::ClassInfo>& FiniteGroup::class_info() const {
  std::call_once(caches_->info_once, [this] {
    const auto& cc = conjugacy_classes();
    std::vector<ClassInfo> info(cc.count());
    for (int c = 0; c < cc.count(); ++c) {
      int32_t rep = cc.reps[c];
      info[c].order = elem_order(rep);
      SubgroupHandle cent = centralizer(rep);
      info[c].cent_order = static_cast<int64_t>(cent.order());
      info[c].cent_abelian = cent.is_abelian();
      if (info[c].cent_order * cc.sizes[c] != static_cast<int64_t>(order()))
        throw structure_error("class size times centralizer order mismatch");
    }
    caches_->info = std::move(info);
  });
  return caches_->info;
}

SubgroupHandle FiniteGroup::centralizer(int32_t id) const {
  range(id);
  std::vector<int32_t> members;
  for (int32_t x = 0; x < static_cast<int32_t>(order()); ++x)
    if (mul(x, id) == mul(id, x)) members.push_back(x);
  return SubgroupHandle(*this, std::move(members));
}

SubgroupHandle FiniteGroup::centralizer_of_set(const std::vector<int32_t>& ids) const {
  std::vector<int32_t> members;
  for (int32_t x = 0; x < static_cast<int32_t>(order()); ++x) {
    bool ok = true;
    for (int32_t id : ids)
      if (mul(x, id) != mul(id, x)) {
        ok = false;
        break;
      }
    if (ok) members.push_back(x);
  }
  return SubgroupHandle(*this, std::move(members));
}

std::size_t FiniteGroup::centralizer_order(int32_t id) const {
  const auto& cc = conjugacy_classes();
  const auto& info = class_info();
  return static_cast<std::size_t>(info[cc.class_of[range(id)]].cent_order);
}

SubgroupHandle FiniteGroup::center() const {
  std::vector<int32_t> members;
  for (int32_t x = 0; x < static_cast<int32_t>(order()); ++x) {
    bool ok = true;
    for (int32_t g : gen_ids_)
      if (mul(x, g) != mul(g, x)) {
        ok = false;
        break;
      }
    if (ok) members.push_back(x);
  }
  return SubgroupHandle(*this, std::move(members));
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t i = 0; i < gen_ids_.size(); ++i)
    for (std::size_t j = i + 1; j < gen_ids_.size(); ++j)
      if (mul(gen_ids_[i], gen_ids_[j]) != mul(gen_ids_[j], gen_ids_[i])) return false;
  return true;
}

SubgroupHandle FiniteGroup::subgroup_closure(std::vector<int32_t> gen_ids) const {
  std::vector<bool> in(order(), false);
  std::vector<int32_t> closed{identity_};
  in[identity_] = true;
  for (int32_t g : gen_ids) range(g);
  for (std::size_t i = 0; i < closed.size(); ++i)
    for (int32_t g : gen_ids) {
      int32_t y = mul(closed[i], g);
      if (!in[y]) {
        in[y] = true;
        closed.push_back(y);
      }
    }
  return SubgroupHandle(*this, std::move(closed));
}

SubgroupHandle FiniteGroup::normal_closure(const std::vector<int32_t>& seeds) const {
  std::vector<int32_t> sub_gens;
  std::vector<bool> in(order(), false);
  std::vector<int32_t> closed{identity_};
  in[identity_] = true;
  std::deque<int32_t> pending(seeds.begin(), seeds.end());
  while (!pending.empty()) {
    int32_t x = pending.front();
    pending.pop_front();
    range(x);
    if (in[x]) continue;
    sub_gens.push_back(x);
    for (std::size_t i = 0; i < closed.size(); ++i)
      for (int32_t g : sub_gens) {
        int32_t y = mul(closed[i], g);
        if (!in[y]) {
          in[y] = true;
          closed.push_back(y);
        }
      }
    for (int32_t g : gen_ids_) pending.push_back(conj(g, x));
  }
  return SubgroupHandle(*this, std::move(closed));
}

SubgroupHandle FiniteGroup::derived_subgroup() const {
  std::vector<int32_t> seeds;
  for (int32_t a : gen_ids_)
    for (int32_t b : gen_ids_) {
      int32_t c = mul(mul(inv(a), inv(b)), mul(a, b));
      if (c != identity_) seeds.push_back(c);
    }
  return normal_closure(seeds);
}

bool FiniteGroup::is_normal(const SubgroupHandle& h) const {
  if (&h.parent() != this) throw structure_error("handle belongs to another group");
  for (int32_t hg : h.generators())
    for (int32_t g : gen_ids_)
      if (!h.contains(conj(g, hg))) return false;
  return true;
}

SubgroupHandle FiniteGroup::whole_subgroup() const {
  std::vector<int32_t> all(order());
  std::iota(all.begin(), all.end(), 0);
  return SubgroupHandle(*this, std::move(all));
}

SubgroupHandle FiniteGroup::trivial_subgroup() const {
  return SubgroupHandle(*this, {identity_});
}

FiniteGroup FiniteGroup::quotient(const SubgroupHandle& n) const {
  if (&n.parent() != this) throw structure_error("handle belongs to another group");
  if (!is_normal(n)) throw structure_error("subgroup is not normal");

  auto ctx = std::make_shared<QuotientCtx>();
  ctx->parent = this;
  ctx->label.assign(order(), -1);
  for (int32_t id = 0; id < static_cast<int32_t>(order()); ++id) {
    if (ctx->label[id] >= 0) continue;
    for (int32_t m : n.members()) ctx->label[mul(id, m)] = id;
  }

  // Representative independence, spot-checked on fixed pseudo-random pairs.
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int32_t> pick(0, static_cast<int32_t>(order()) - 1);
  std::uniform_int_distribution<std::size_t> pickn(0, n.members().size() - 1);
  for (int t = 0; t < 16; ++t) {
    int32_t a = pick(rng), b = pick(rng);
    int32_t a2 = mul(a, n.members()[pickn(rng)]);
    int32_t b2 = mul(b, n.members()[pickn(rng)]);
    if (ctx->label[mul(a2, b2)] != ctx->label[mul(a, b)])
      throw structure_error("coset multiplication is not well-defined");
  }

  std::vector<GroupElem> gens;
  for (int32_t g : gen_ids_)
    gens.push_back(GroupElem::coset(ctx, ctx->label[g]));
  FiniteGroup q = closure(std::move(gens));
  if (q.order() * n.order() != order())
    throw structure_error("quotient order mismatch");
  return q;
}

int32_t FiniteGroup::coset_id(const FiniteGroup& quotient_group, int32_t parent_id) {
  const auto* c = std::get_if<CosetPart>(&quotient_group.elem(0).v);
  if (c == nullptr) throw structure_error("group is not a quotient");
  int32_t rep = c->ctx->label[parent_id];
  int32_t qid = quotient_group.id_of(GroupElem::coset(c->ctx, rep));
  if (qid < 0) throw structure_error("coset not found in quotient");
  return qid;
}

SubgroupHandle FiniteGroup::socle(std::size_t cap) const {
  if (order() > cap) throw cap_error("socle computation exceeds the configured cap");
  const auto& cc = conjugacy_classes();
  std::vector<std::vector<int32_t>> candidates;
  for (int32_t rep : cc.reps) {
    if (rep == identity_) continue;
    auto nc = normal_closure({rep});
    auto mem = nc.members();
    if (std::find(candidates.begin(), candidates.end(), mem) == candidates.end())
      candidates.push_back(std::move(mem));
  }
  auto contains_all = [](const std::vector<int32_t>& big, const std::vector<int32_t>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
  };
  std::vector<int32_t> join_gens;
  for (const auto& cand : candidates) {
    bool minimal = true;
    for (const auto& other : candidates)
      if (&other != &cand && other.size() < cand.size() && contains_all(cand, other)) {
        minimal = false;
        break;
      }
    if (minimal) {
      SubgroupHandle h(*this, cand);
      auto gens = h.generators();
      join_gens.insert(join_gens.end(), gens.begin(), gens.end());
    }
  }
  if (join_gens.empty()) return trivial_subgroup();
  return subgroup_closure(std::move(join_gens));
}

}  // namespace autorb
