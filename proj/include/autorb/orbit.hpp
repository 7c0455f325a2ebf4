#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autorb/constructions.hpp"

namespace autorb {

/// A partition of the element ids of one group. Blocks are numbered
/// canonically: block 0 contains element 0, later blocks appear in order
/// of their minimal member id.
struct OrbitPartition {
  std::vector<int32_t> block_of;
  int32_t blocks = 0;
  std::string provenance;

  std::vector<int64_t> block_sizes() const;
  std::vector<int32_t> block_reps() const;  // minimal member id per block
};

OrbitPartition canonical_partition(std::vector<int32_t> raw, std::string provenance);

/// Lower-bound partition: elements grouped by automorphism-invariant
/// signatures. Level 1 uses the element order; level 2 adds centralizer
/// order and centralizer abelianness; level 3 adds the power profile
/// (conjugacy class sizes of g^k for k dividing the order).
OrbitPartition signature_partition(const FiniteGroup& g, int level);

/// Upper-bound partition: orbits of the subgroup of Aut(G) generated by
/// the supplied verified maps.
OrbitPartition orbit_closure(const FiniteGroup& g, const AutoGenSet& auts);

struct OmegaOptions {
  int level = 2;
  bool auto_escalate = true;  // retry at level 3 when the sandwich is open
};

/// Certified sandwich for the automorphism orbit count: lo <= omega <= hi
/// unconditionally; equality certifies the exact value (the two witness
/// partitions are then identical).
struct CertifiedOmega {
  int64_t lo = 0;
  int64_t hi = 0;
  int level_used = 2;
  std::vector<std::string> trusted;
  OrbitPartition lower;
  OrbitPartition upper;
  bool exact = false;  // upper partition came from a full Aut search
  std::optional<uint64_t> aut_order;

  bool certified() const { return lo == hi; }
  const OrbitPartition& orbit_partition() const { return upper; }
};

CertifiedOmega omega(const FiniteGroup& g, const AutoGenSet& auts, OmegaOptions opt = {});

struct BruteAut {
  AutoGenSet maps;  // every automorphism, as verified explicit images
  uint64_t aut_order = 0;
  OrbitPartition orbits;
};

/// Exhaustive backtracking search over generator images, pruned by
/// signature equality and by multiplication-table consistency. Returns
/// the full automorphism group. Throws cap_error above `aut_limit`.
BruteAut brute_force_aut(const FiniteGroup& g, std::size_t aut_limit = 512);

/// omega() with the upper partition replaced by the exact Aut orbits;
/// also asserts that the exact count lies inside the sandwich.
CertifiedOmega omega_exact(const FiniteGroup& g, const AutoGenSet& auts,
                           std::size_t aut_limit, OmegaOptions opt = {});

/// Orbit count of the m-th direct power of a group with the given orbit
/// count: binomial(m + w - 1, w - 1) in exact integer arithmetic.
uint64_t direct_power_orbit_count(uint64_t omega_base, uint64_t m);

/// One step of a GMF reduction chain: either conjugation by the block
/// matrix (A, B, C) or an entrywise Frobenius power.
struct GmfStep {
  enum class Kind { gamma, frobenius };
  Kind kind;
  std::optional<Mat> a, b, c;
  int frob_power = 1;
};

struct GmfCanonical {
  int32_t rep_id;
  std::vector<GmfStep> chain;  // applying the chain to the input yields rep_id
};

GroupElem apply_gmf_step(const GroupElem& e, const GmfStep& step);

/// Orbit representative of one element of a GMF group, by the rank/order
/// case ladder, with the conjugating chain as a witness (re-applied and
/// checked internally).
GmfCanonical canonical_form_gmf(const Construction& gmf, int32_t id);

/// Orbit-count bound check for a subgroup invariant under the supplied
/// maps: with r orbits inside N and s induced orbits on G/N, G has at
/// least r + s - 1 orbits; on equality every nontrivial coset of N lies
/// inside a single orbit block. Also computes certified omega values for
/// G, for N rebuilt as an abstract group, and for G/N under the induced
/// maps.
struct LemmaBoundReport {
  CertifiedOmega omega_g, omega_n, omega_q;
  int64_t orbits_g = 0;            // blocks of G under the supplied maps
  int64_t orbits_n_restricted = 0; // blocks inside N under their restrictions
  int64_t orbits_q_induced = 0;    // blocks of G/N under the induced maps
  bool phi_inequality = false;     // orbits_g >= restricted + induced - 1
  bool phi_equality = false;
  enum class Fusion { not_applicable, holds, fails } fusion = Fusion::not_applicable;
  bool certified_all = false;      // the three omega values are certified
  bool certified_inequality = false;
};

LemmaBoundReport verify_lemma_bound(const FiniteGroup& g, const SubgroupHandle& n,
                                    const AutoGenSet& auts, OmegaOptions opt = {},
                                    const AutoGenSet* n_abstract_auts = nullptr,
                                    std::size_t n_brute_limit = 512);

}  // namespace autorb
