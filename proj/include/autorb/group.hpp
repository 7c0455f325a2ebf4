#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "autorb/linalg.hpp"

namespace autorb {

class FiniteGroup;
struct QuotientCtx;
struct GroupElem;

/// Permutation on points 0..n-1, stored as the image table.
struct PermPart {
  std::vector<uint8_t> img;
};

/// Matrix element. Projective elements store the canonical representative
/// of their scalar class: the first nonzero entry in row-major order is
/// scaled to 1.
struct MatPart {
  Mat m;
  bool projective;
};

/// Affine pair (X, Y) for the block matrix [[X, Y], [0, I]]; the product
/// rule is (X1,Y1)*(X2,Y2) = (X1*X2, X1*Y2 + Y1).
struct AffinePart {
  Mat x;
  Mat y;
};

/// Direct-product tuple; components multiply independently.
struct TuplePart {
  std::vector<GroupElem> parts;
};

/// Coset of a normal subgroup, named by the minimal-id representative of
/// the coset in the parent group.
struct CosetPart {
  std::shared_ptr<const QuotientCtx> ctx;
  int32_t rep;
};

struct GroupElem {
  std::variant<PermPart, MatPart, AffinePart, TuplePart, CosetPart> v;

  static GroupElem perm(std::vector<uint8_t> img);
  static GroupElem mat(Mat m);
  static GroupElem projective(Mat m);  // canonicalizes
  static GroupElem affine(Mat x, Mat y);
  static GroupElem tuple(std::vector<GroupElem> parts);
  static GroupElem coset(std::shared_ptr<const QuotientCtx> ctx, int32_t rep);
};

GroupElem mul(const GroupElem& a, const GroupElem& b);
GroupElem inverse(const GroupElem& a);
GroupElem identity_like(const GroupElem& a);
bool is_identity(const GroupElem& a);
bool equal(const GroupElem& a, const GroupElem& b);
void encode(const GroupElem& a, std::string& out);
std::string encoded(const GroupElem& a);
std::string to_string(const GroupElem& a);

struct ConjClasses {
  std::vector<int32_t> class_of;  // element id -> class index
  std::vector<int32_t> reps;      // class index -> minimal member id
  std::vector<int64_t> sizes;
  int count() const { return static_cast<int>(reps.size()); }
};

/// A subgroup given by its sorted member ids. Handles stay valid while
/// the parent group is alive and unmoved.
class SubgroupHandle {
public:
  SubgroupHandle(const FiniteGroup& parent, std::vector<int32_t> members);

  const FiniteGroup& parent() const { return *parent_; }
  const std::vector<int32_t>& members() const { return members_; }
  std::size_t order() const { return members_.size(); }
  bool contains(int32_t id) const;

  /// Small generating set, extracted greedily in ascending id order.
  std::vector<int32_t> generators() const;

  bool is_abelian() const;
  bool operator==(const SubgroupHandle& o) const;

private:
  const FiniteGroup* parent_;
  std::vector<int32_t> members_;
};

struct QuotientCtx {
  const FiniteGroup* parent;
  std::vector<int32_t> label;  // parent id -> minimal id in its coset
};

/// A finite group enumerated from generators: every element gets an
/// integer id in breadth-first discovery order (identity = 0). Immutable
/// after closure(); queries are read-only and may run concurrently.
class FiniteGroup {
public:
  static constexpr std::size_t kDefaultCap = 2'000'000;
  static constexpr std::size_t kCayleyLimit = 4096;

  /// Breadth-first closure of the generators with deterministic id
  /// assignment. Throws cap_error when the order would exceed `cap`,
  /// structure_error on incompatible generator kinds.
  static FiniteGroup closure(std::vector<GroupElem> gens,
                             std::size_t cap = kDefaultCap);

  std::size_t order() const { return elems_.size(); }
  int32_t identity_id() const { return identity_; }
  const GroupElem& elem(int32_t id) const { return elems_[range(id)]; }
  int32_t id_of(const GroupElem& e) const;  // -1 if not an element
  const std::vector<int32_t>& generator_ids() const { return gen_ids_; }

  int32_t mul(int32_t a, int32_t b) const;
  int32_t inv(int32_t a) const { return inv_[range(a)]; }
  /// g^-1 * x * g
  int32_t conj(int32_t g, int32_t x) const { return mul(mul(inv(g), x), g); }
  int32_t power(int32_t a, long long e) const;

  int elem_order(int32_t id) const;
  std::vector<int> order_census() const;  // sorted distinct element orders

  const ConjClasses& conjugacy_classes() const;

  struct ClassInfo {
    int order;            // element order on the class
    int64_t cent_order;   // centralizer order (|class| * cent = |G| checked)
    bool cent_abelian;
  };
  const std::vector<ClassInfo>& class_info() const;

  SubgroupHandle centralizer(int32_t id) const;
  SubgroupHandle centralizer_of_set(const std::vector<int32_t>& ids) const;
  std::size_t centralizer_order(int32_t id) const;
  SubgroupHandle center() const;
  bool is_abelian() const;

  SubgroupHandle subgroup_closure(std::vector<int32_t> gen_ids) const;
  SubgroupHandle normal_closure(const std::vector<int32_t>& seeds) const;
  SubgroupHandle derived_subgroup() const;
  bool is_normal(const SubgroupHandle& h) const;
  SubgroupHandle whole_subgroup() const;
  SubgroupHandle trivial_subgroup() const;

  /// Quotient by a verified-normal subgroup; elements are cosets labelled
  /// by minimal representatives. The parent must outlive the quotient.
  FiniteGroup quotient(const SubgroupHandle& n) const;

  /// Join of all minimal normal subgroups, found as inclusion-minimal
  /// normal closures of single class representatives.
  SubgroupHandle socle(std::size_t cap = 100000) const;

  /// Maps a parent element id to the id of its coset inside a quotient
  /// group previously produced by quotient().
  static int32_t coset_id(const FiniteGroup& quotient_group, int32_t parent_id);

  FiniteGroup(FiniteGroup&&) = default;
  FiniteGroup& operator=(FiniteGroup&&) = default;
  FiniteGroup(const FiniteGroup&) = delete;
  FiniteGroup& operator=(const FiniteGroup&) = delete;

private:
  FiniteGroup() = default;
  int32_t range(int32_t id) const;

  std::vector<GroupElem> elems_;
  std::unordered_map<std::string, int32_t> index_;
  std::vector<int32_t> inv_;
  std::vector<int32_t> gen_ids_;
  int32_t identity_ = 0;
  std::vector<uint16_t> cayley_;  // full table when order <= kCayleyLimit

  struct Caches {
    std::once_flag classes_once;
    ConjClasses classes;
    std::once_flag info_once;
    std::vector<ClassInfo> info;
  };
  std::unique_ptr<Caches> caches_ = std::make_unique<Caches>();
};

}  // namespace autorb
