#pragma once

#include <optional>
#include <string>
#include <vector>

#include "autorb/group.hpp"

namespace autorb {

/// How an automorphism generator was produced. Kept for provenance and
/// reporting; the induced map on element ids is always re-verified.
struct AutoDescriptor {
  enum class Kind {
    inner,            // conjugation by a group element
    ambient_conj,     // conjugation by a matrix of an ambient linear group
    field_auto,       // entrywise Frobenius power
    graph_auto,       // inverse-transpose
    gamma_conj,       // block conjugation (A, B, C) on affine pairs
    explicit_images,  // image table given directly
  };

  Kind kind;
  std::string label;
  /// Set when the completeness of the generating set this map belongs to
  /// rests on theory outside the verified computation. Bounds remain
  /// valid either way; the flag is carried into reports.
  std::optional<std::string> trusted_external;

  std::optional<Mat> a, b, c;  // ambient_conj uses a; gamma_conj uses a, b, c
  int frob_power = 1;
  int32_t inner_gen = -1;
};

/// A verified automorphism of one FiniteGroup, materialized as a
/// permutation of its element ids. Only constructible through make(),
/// which proves bijectivity and multiplicativity.
class AutoMap {
public:
  static AutoMap make(const FiniteGroup& g, AutoDescriptor desc,
                      std::vector<int32_t> images);

  const AutoDescriptor& desc() const { return desc_; }
  const std::vector<int32_t>& img() const { return img_; }
  int32_t operator()(int32_t id) const { return img_[id]; }

private:
  AutoMap(AutoDescriptor desc, std::vector<int32_t> img)
      : desc_(std::move(desc)), img_(std::move(img)) {}

  AutoDescriptor desc_;
  std::vector<int32_t> img_;
};

struct AutoGenSet {
  std::vector<AutoMap> maps;
  std::vector<std::string> trusted;  // sorted distinct assumption labels

  void add(AutoMap m);
};

/// Throws verify_error unless `images` is a bijection on element ids with
/// images[x*s] == images[x]*images[s] for every x and every generator s
/// (which forces multiplicativity on all products).
void verify_automorphism(const FiniteGroup& g, const std::vector<int32_t>& images);

AutoMap inner_automorphism(const FiniteGroup& g, int32_t gen_id);

AutoMap explicit_automorphism(const FiniteGroup& g, std::vector<int32_t> images,
                              std::string label,
                              std::optional<std::string> trusted = std::nullopt);

/// True when every non-identity element has the same prime order p and
/// the group is abelian; reports p and the rank k.
bool is_elementary_abelian(const FiniteGroup& g, int* p_out = nullptr,
                           int* k_out = nullptr);

/// Full linear automorphism action for an elementary abelian group of any
/// element kind: extracts a basis, enumerates coordinates and returns the
/// maps of the elementary transvections (plus a diagonal scaling for odd
/// p), all verified.
AutoGenSet elementary_abelian_autogens(const FiniteGroup& g);

}  // namespace autorb
