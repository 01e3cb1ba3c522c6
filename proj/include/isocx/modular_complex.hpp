#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "isocx/field.hpp"
#include "isocx/matrix.hpp"

namespace isocx {

/// Bounded cochain complex of finite-dimensional k-spaces in degrees lo .. lo+dims.size()-1.
/// d[i] maps degree lo+i to lo+i+1 (shape dims[i+1] x dims[i]).
struct FieldComplex {
  Field field;
  int lo = 0;
  std::vector<std::size_t> dims;
  std::vector<MatrixFq> d;

  int hi() const { return lo + int(dims.size()) - 1; }
  std::size_t dim(int deg) const { return deg < lo || deg > hi() ? 0 : dims[std::size_t(deg - lo)]; }
};

/// (degree, rank) for every degree of the complex, zeros included.
struct HomologyProfile {
  std::vector<std::pair<int, std::size_t>> ranks;

  std::size_t rank(int deg) const;
  // nonzero entries only
  std::vector<std::pair<int, std::size_t>> support() const;
};

struct Specialization {
  enum class Kind { ClosedPoint, FieldPoint };
  Kind kind = Kind::ClosedPoint;
  Fq a{};

  static Specialization closed_point() { return {}; }
  static Specialization field_point(Fq a) { return {Kind::FieldPoint, a}; }
  Fq value() const { return kind == Kind::ClosedPoint ? Fq{} : a; }
};

// compositions of r into q positive parts, lexicographic
std::vector<std::vector<unsigned>> compositions(unsigned r, unsigned q);

// dim K^q_{p^r} (x) k for q = 0..r, from the basis bookkeeping only
std::vector<std::uint64_t> complex_dims(std::uint32_t p, unsigned r);

FieldComplex build_complex(std::uint32_t p, unsigned r, const Specialization& spec, const FieldSpec& q_ext);
FieldComplex build_complex(std::uint32_t p, unsigned r, const Specialization& spec = Specialization::closed_point());

// throws std::logic_error if d o d != 0
void check_complex(const FieldComplex& c);
HomologyProfile cohomology(const FieldComplex& c);

struct RankGeneratingReport {
  bool ok = false;
  // dims[r][q] from the complex bookkeeping, gen[r][q] = coeff of T^r in (f-1)^q
  std::vector<std::vector<std::int64_t>> dims, gen;
  // for r <= coh_rmax: computed H^r rank and the expected (-1)^r coeff of (1-T)(1-pT)
  std::vector<std::int64_t> h_computed, h_expected;
  std::vector<std::int64_t> euler_computed, euler_expected;
  bool concentrated = true;
};
RankGeneratingReport rank_generating_check(std::uint32_t p, unsigned r_max, unsigned coh_rmax);

struct H2Report {
  bool ok = false;
  bool square_commutes = false;
  bool differential_is_u1 = false;
  std::size_t coker_u1 = 0, coker_s = 0;
  std::size_t h1 = 0, h2 = 0;
  bool induced_iso = false;
};
H2Report h2_cokernel_check(std::uint32_t p);

}  // namespace isocx
