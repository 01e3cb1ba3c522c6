#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "isocx/field.hpp"
#include "isocx/matrix.hpp"
#include "isocx/modular_complex.hpp"

namespace isocx {

/// prod Z/p^{e_i} with e_1 >= e_2 >= ... >= 1.
struct AbelianPGroup {
  std::uint32_t p = 2;
  std::vector<unsigned> exps;

  std::uint64_t order() const;
  unsigned log_order() const;
  friend bool operator==(const AbelianPGroup&, const AbelianPGroup&) = default;
};
// throws on a non-prime p, unsorted or zero exponents, more than 3 factors or |G| > p^9
void validate_group(const AbelianPGroup& g);

/// A subgroup as the lattice L with (p^{e_i}) Z^n <= L <= Z^n, stored as its
/// upper-triangular Hermite form (positive diagonal, entries above reduced).
struct Subgroup {
  std::vector<std::vector<std::int64_t>> hnf;
  unsigned log_order = 0;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  friend auto operator<=>(const Subgroup& a, const Subgroup& b) {
    if (auto c = a.log_order <=> b.log_order; c != 0) return c;
    return a.hnf <=> b.hnf;
  }
};

// generated by the given elements (integer vectors, read mod p^{e_i})
Subgroup subgroup_generated(const AbelianPGroup& g, const std::vector<std::vector<std::int64_t>>& gens);
bool subgroup_contains(const Subgroup& big, const Subgroup& small);
bool subgroup_has_element(const Subgroup& s, const std::vector<std::int64_t>& x);
// exponents of the invariant factors, descending
std::vector<unsigned> isomorphism_type(const AbelianPGroup& g, const Subgroup& s);
bool is_elementary(const AbelianPGroup& g, const Subgroup& s);

// sorted by order, then Hermite form; max_log_order prunes the search to subgroups of order <= p^max
std::vector<Subgroup> enumerate_subgroups(const AbelianPGroup& g, std::optional<unsigned> log_order = std::nullopt,
                                          std::optional<unsigned> max_log_order = std::nullopt);

struct SimplicialComplexData {
  std::vector<Subgroup> vertices;
  // faces[d]: chains of d+1 vertex indices, increasing
  std::vector<std::vector<std::vector<std::size_t>>> faces;

  int dimension() const { return int(faces.size()) - 1; }
  std::size_t count(int d) const { return d < 0 || d > dimension() ? 0 : faces[std::size_t(d)].size(); }
};

// chains of the inclusion order on the given vertices (sorted by order)
SimplicialComplexData chain_complex_on(std::vector<Subgroup> vertices);
// proper nontrivial subgroups of G
SimplicialComplexData order_complex(const AbelianPGroup& g);

/// Reduced homology in degrees -1 .. dimension.
struct ReducedHomology {
  bool integral = true;
  std::vector<std::size_t> ranks;
  std::vector<std::vector<BigInt>> torsion;  // invariant factors > 1, integral only

  std::size_t rank(int deg) const { return deg < -1 || deg + 1 >= int(ranks.size()) ? 0 : ranks[std::size_t(deg + 1)]; }
  bool torsion_free() const;
  // nonzero (degree, rank) pairs
  std::vector<std::pair<int, std::size_t>> support() const;
};
ReducedHomology reduced_homology(const SimplicialComplexData& x);
ReducedHomology reduced_homology(const SimplicialComplexData& x, const Field& k);

struct GroupChain {
  std::vector<std::size_t> members;  // indices into the subgroup list, increasing
};

/// Chains 0 < G_1 < ... < G_q with |G_q| = p^r inside (Z/p^M)^2, as a cochain complex over k.
struct GroupComplex {
  AbelianPGroup ambient;
  std::vector<Subgroup> subgroups;  // all subgroups of order p .. p^r
  std::vector<std::vector<GroupChain>> chains;  // chains[q]
  FieldComplex complex;
};
GroupComplex build_group_complex(std::uint32_t p, unsigned r, unsigned m, const Field& k);
GroupComplex build_group_complex(std::uint32_t p, unsigned r, unsigned m);

struct ProductFactor {
  Subgroup group;
  std::vector<unsigned> type;
  HomologyProfile homology;  // of D_G(k), cochain degrees
  bool prediction_ok = false;
};
struct ProductDecompositionReport {
  bool ok = false;
  bool dims_match = false;
  bool differential_match = false;
  bool homology_match = false;
  std::vector<ProductFactor> factors;
  HomologyProfile total;  // of the group complex
  std::size_t elementary = 0;  // number of (Z/p)^r subgroups of order p^r
};
ProductDecompositionReport product_decomposition_check(std::uint32_t p, unsigned r, unsigned m);

}  // namespace isocx
