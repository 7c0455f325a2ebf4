#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "autorb/autmap.hpp"
#include "autorb/groupspec.hpp"

namespace autorb {

/// A group built from a GroupSpec together with the structural extras the
/// builder knows: the translation block M of affine semidirect products,
/// the ambient generator matrices behind the automorphism maps, and the
/// verified automorphism generator set used for upper-bound closures.
class Construction {
public:
  static std::unique_ptr<Construction> build(const GroupSpec& spec,
                                             std::size_t cap = FiniteGroup::kDefaultCap);

  const GroupSpec& spec() const { return spec_; }
  const FiniteGroup& group() const { return *group_; }

  /// GMF(m,q) and ASL(2,q): the subgroup M = {(1, Y)}; empty otherwise.
  const std::optional<SubgroupHandle>& translation_subgroup() const { return m_; }

  struct GmfInfo {
    const Field* field;
    int m;
    std::vector<Mat> sl_gen_mats;  // 2x2 generators of the acting SL(2,q)
  };
  const std::optional<GmfInfo>& gmf_info() const { return gmf_; }

  /// Verified automorphism generators (inner maps always included).
  const AutoGenSet& autogens() const { return autogens_; }

private:
  Construction() = default;

  GroupSpec spec_;
  std::unique_ptr<FiniteGroup> group_;
  std::optional<SubgroupHandle> m_;
  std::optional<GmfInfo> gmf_;
  std::vector<std::unique_ptr<Construction>> children_;
  AutoGenSet autogens_;
};

/// Generator matrices, exposed for tests and the canonical-form engine.
std::vector<Mat> sl2_generator_mats(const Field& f);
std::vector<Mat> gl2_generator_mats(const Field& f);
std::vector<Mat> sl3_generator_mats(const Field& f);
std::vector<Mat> gl3_generator_mats(const Field& f);
std::vector<Mat> glk_generator_mats(const Field& f, int k);

}  // namespace autorb
