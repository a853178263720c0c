#pragma once
#include <string>
#include <vector>

#include "stackfan/intmat.hpp"

namespace stackfan {

// A rational polyhedral fan, stored as primitive ray generators (one per row)
// plus the ray-index sets of its maximal cones (0-based, sorted).  The face
// lattice is derived on demand, never stored.
struct Fan {
  long lattice_rank = 0;
  IntMat rays{0, 0};
  std::vector<std::vector<int>> max_cones;
};

enum class GroupKind { Trivial, FullTorus, Subgroup, Beta };

// Group half of a stacky fan.  Subgroup form: `subgroup` rows generate the
// character sublattice M' of the quotient torus inside Z^{lattice_rank}.
// Beta form: `beta` has one row per coordinate of the target group (free
// coordinates first, then one per torsion invariant) and lattice_rank
// columns, with `target` giving the free rank and torsion invariants.
struct GroupData {
  GroupKind kind = GroupKind::Trivial;
  SublatticeSpec subgroup{0, IntMat(0, 0)};
  IntMat beta{0, 0};
  FgAbelianGroup target;
};

struct StackyFan {
  Fan fan;
  GroupData group;
};

struct ValidationIssue {
  std::string kind;    // "primitivity" | "duplicate_ray" | "index_range" |
                       // "duplicate_index" | "maximality" | "strong_convexity" |
                       // "overlap"
  std::string detail;
};

struct ValidationReport {
  bool valid = true;
  std::vector<ValidationIssue> issues;
  std::vector<std::string> warnings;
};

ValidationReport validate_fan(const Fan& f);

// True iff `rayset` is exactly the ray set of a face of some maximal cone
// (supporting-hyperplane test over the rationals; the empty set always spans
// the zero cone).
bool spans_cone(const Fan& f, const std::vector<int>& rayset);

// All inclusion-minimal ray-index sets that do not span a cone, sorted
// lexicographically.
std::vector<std::vector<int>> minimal_nonfaces(const Fan& f);

// Every maximal cone's rays extend to a basis of the lattice (all SNF
// invariant factors 1).
bool is_smooth(const Fan& f);

// Every maximal cone is full-dimensional, every facet of a maximal cone is
// shared by exactly two maximal cones, and the facet-adjacency graph is
// connected.
bool is_complete(const Fan& f);

// An ordering of the maximal cones together with the face data tau_i
// (intersection of sigma_i with its facet-neighbors placed later) and the
// complementary faces tau'_i, satisfying:
//   tau_i subset of sigma_j  =>  i <= j
//   tau'_i subset of sigma_j =>  j <= i
struct ShellingOrder {
  std::vector<long> order;               // permutation of max-cone indices
  std::vector<std::vector<int>> tau;     // ray-index sets, position-aligned
  std::vector<std::vector<int>> tau_prime;
};

ShellingOrder shelling_order(const Fan& f);

// Re-derives tau/tau' from the order and checks every condition from
// scratch; used to assert orders independently of the search.
bool verify_shelling(const Fan& f, const ShellingOrder& so, std::string* why = nullptr);

// Output of the generically-stacky reduction: fan' lives on L + Z^s with the
// coordinate cone tau adjoined to every cone of the input, beta' = [B | Q]
// over the free presentation of the target, and the reduced stacky fan
// carries the Subgroup form M' spanned by the rows of beta'.  The split data
// decomposes the character group of the kernel as F-part (acting through the
// original torus) plus H-part (acting trivially on the orbit closure).
struct StackyReduction {
  StackyFan reduced;            // fan' with Subgroup(M') group data
  std::vector<int> tau_rays;    // ray indices of the adjoined cone (empty if s = 0)
  long s = 0;                   // number of adjoined coordinates
  IntMat beta_prime{0, 0};
  QuotientGroup g_dual;         // characters of the kernel group: Z^{n+s}/M'
  SublatticeSpec mprime_f{0, IntMat(0, 0)};  // F-part characters in Z^n
  FgAbelianGroup h_dual;        // H-part character group
  bool split_ok = false;        // G^dual decomposes as F^dual + H^dual
};

StackyReduction stacky_reduction(const StackyFan& sf);

// Character sublattice M' in Z^{lattice_rank} for each reduced group form.
SublatticeSpec character_sublattice(const StackyFan& sf);

}  // namespace stackfan
