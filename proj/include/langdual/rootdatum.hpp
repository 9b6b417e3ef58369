#pragma once

// Abstract root data: lattice Lambda = Z^rank in a fixed basis, its dual
// lattice in the dual basis, coroots in Lambda and roots in the dual, with
// roots[i] <-> coroots[i].

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "langdual/exactlin.hpp"

namespace langdual {

struct RootDatum {
  std::size_t rank = 0;
  std::vector<IntVector> roots;    // dual-basis coordinates
  std::vector<IntVector> coroots;  // primal-basis coordinates
  std::string label;

  std::size_t num_roots() const { return roots.size(); }

  /// <coroots[i], roots[j]> = roots[j](h_i).
  Integer pairing(std::size_t coroot, std::size_t root) const { return dot(coroots[coroot], roots[root]); }

  friend bool operator==(const RootDatum&, const RootDatum&) = default;
};

class InvalidRootDatum : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct AxiomCheck {
  bool pass = true;
  std::vector<std::size_t> witness;  // offending root/coroot indices
  std::string detail;
};

/// Per-axiom validation result. `structure` covers shape problems (length
/// mismatch, wrong vector size, zero or duplicated roots).
struct AxiomReport {
  AxiomCheck structure;
  AxiomCheck pairing_two;   // <x, x*> = 2
  AxiomCheck reflections;   // reflections permute X and X*
  AxiomCheck reduced;       // x, cx in X => c = +-1

  bool ok() const { return structure.pass && pairing_two.pass && reflections.pass && reduced.pass; }
  std::string summary() const;
};

AxiomReport validate(const RootDatum& d);

/// Throws InvalidRootDatum with the report summary if validation fails.
void require_valid(const RootDatum& d);

/// Swaps roots and coroots (and the two lattices). Index bijection is kept.
RootDatum dualize(const RootDatum& d);

/// Positive system, simple roots and Cartan matrix of a datum.
///
/// The positive system is cut out by the functional v -> sum_k M^k v_k with
/// M = 1 + max |coordinate|. It is computed both on the roots and on the
/// coroots; the one whose sorted index set is lexicographically smaller is
/// kept. Dualizing swaps the two candidates, so a datum and its dual always
/// agree on which indices are positive and simple.
struct PositiveSystem {
  std::vector<bool> positive;         // per root index
  std::vector<std::size_t> simple;    // ascending root indices
};

PositiveSystem positive_system(const RootDatum& d);

/// A[i][j] = <h_{simple[i]}, alpha_{simple[j]}>.
IntMatrix cartan_matrix(const RootDatum& d);
IntMatrix cartan_matrix(const RootDatum& d, const PositiveSystem& ps);

/// True iff alpha(h_beta) = beta(h_alpha) for all root pairs.
bool is_ade(const RootDatum& d);

/// First root pair (i, j) with alpha_j(h_i) != alpha_i(h_j), if any.
std::optional<std::pair<std::size_t, std::size_t>> ade_asymmetry_witness(const RootDatum& d);

struct FundamentalGroup {
  IntVector torsion;       // invariant factors > 1 of Lambda_ss / Z-span(C)
  std::size_t free_rank = 0;  // central torus rank
};

FundamentalGroup fundamental_group(const RootDatum& d);

/// Rank of the span of the coroots.
std::size_t semisimple_rank(const RootDatum& d);

/// Index of a root vector in d.roots, if present.
std::optional<std::size_t> find_root(const RootDatum& d, const IntVector& v);

/// Value of the positive-system functional on a vector (see PositiveSystem).
Integer generic_functional(const std::vector<IntVector>& all, const IntVector& v);

// ---------------------------------------------------------------------------
// Construction from Dynkin descriptors.

enum class Family { A, B, C, D, E, F, G };

struct SimpleFactor {
  Family family;
  std::size_t rank;
};

enum class Isogeny { SimplyConnected, Adjoint, Custom };

struct DynkinDescriptor {
  std::vector<SimpleFactor> factors;
  std::size_t torus_rank = 0;
  Isogeny isogeny = Isogeny::SimplyConnected;
  /// Custom only: rows are a basis of Lambda_ss in fundamental-coweight
  /// coordinates of the semisimple block (factors concatenated in order).
  IntMatrix custom_lattice;
};

class InvalidDescriptor : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bourbaki-numbered Cartan matrix of one simple factor.
IntMatrix family_cartan_matrix(Family family, std::size_t rank);

RootDatum build_from_dynkin(const DynkinDescriptor& desc);

/// Parses "A1", "B3:sc", "A1xT1:adj", "D4xA2:sc", "T2". Factors are joined
/// by 'x'; each may carry ":sc" or ":adj". Suffixes must agree; the default
/// is simply-connected.
DynkinDescriptor parse_descriptor(const std::string& text);

std::string descriptor_label(const DynkinDescriptor& desc);

/// Names the Cartan type and isogeny of a datum from its own data, e.g.
/// "C3 (adj)" or "A1 x T1 (sc)". Components follow the simple-root order.
std::string identify_type(const RootDatum& d);
char family_letter(Family f);

}  // namespace langdual
