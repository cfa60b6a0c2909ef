#pragma once
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sseq/complex.hpp"

namespace sseq {

// Mod-2 truncated polynomial rings Z/2[h_1..h_k]/(h_i^{n_i+1}), the shape of
// Chow rings of products of projective spaces, with just enough structure to
// evaluate the degree-two Steenrod square and its twist by a line bundle.

class ChowRing {
 public:
  ChowRing() = default;  // no variables; only codimension zero survives
  ChowRing(std::vector<std::string> names, std::vector<int> bounds);

  static ChowRing point() { return ChowRing(); }
  static ChowRing projective(int n);  // Z/2[h]/(h^{n+1})

  int variables() const { return int(names_.size()); }
  const std::string& name(int i) const { return names_.at(size_t(i)); }
  int bound(int i) const { return bounds_.at(size_t(i)); }
  int dimension() const;  // top codimension with a nonzero group

  // Exponent vectors of the monomial basis in one codimension, in
  // lexicographic order; empty outside [0, dimension()].
  std::vector<std::vector<int>> basis(int codim) const;

  // The same ring with one fresh variable of bound one appended.
  ChowRing suspend(const std::string& name) const;

  bool operator==(const ChowRing& o) const { return names_ == o.names_ && bounds_ == o.bounds_; }
  bool operator!=(const ChowRing& o) const { return !(*this == o); }

 private:
  std::vector<std::string> names_;
  std::vector<int> bounds_;
};

// Homogeneous mod-2 class, stored as the set of basis monomials it contains.
struct ChowClass {
  ChowRing ring;
  int codim = 0;
  std::set<std::vector<int>> monomials;

  bool is_zero() const { return monomials.empty(); }
  bool operator==(const ChowClass& o) const {
    return ring == o.ring && codim == o.codim && monomials == o.monomials;
  }
  bool operator!=(const ChowClass& o) const { return !(*this == o); }
};

ChowClass chow_zero(const ChowRing& r, int codim);
ChowClass chow_unit(const ChowRing& r);
ChowClass chow_var(const ChowRing& r, int i);
// Mod-2 sum of the listed monomials; repeats cancel in pairs.
ChowClass chow_class(const ChowRing& r, int codim,
                     const std::vector<std::vector<int>>& monomials);

ChowClass chow_add(const ChowClass& a, const ChowClass& b);
ChowClass chow_mul(const ChowClass& a, const ChowClass& b);
ChowClass chow_pow(const ChowClass& a, int k);
std::string chow_str(const ChowClass& x);

// Coordinates in the monomial basis of the class's codimension, and back.
Vec chow_coords(const ChowClass& x);
ChowClass chow_from_coords(const ChowRing& r, int codim, const Vec& v);
// The codimension-p piece as a presented group: (Z/2)^{basis} with monomial labels.
Presentation chow_group(const ChowRing& r, int codim);

// Image under the name-preserving ring map onto target; a monomial dies when
// one of its exponents passes the target bound.
ChowClass chow_transport(const ChowClass& x, const ChowRing& target);

// Sq^2 on a monomial m: the sum of m h_i over the variables with odd exponent
// in m, truncated at the nilpotency bounds. Extended additively.
ChowClass sq2(const ChowClass& x);

// Phi = Sq^2 + c1 * (-), the twisted operation; Phi o Phi = 0 holds in every
// codimension for every codimension-one twist.
ChowClass twisted_phi(const ChowClass& c1, const ChowClass& x);

// Matrix of twisted_phi from codimension p to p + 1 in the monomial bases.
Mat twisted_phi_matrix(const ChowRing& r, const ChowClass& c1, int p);

// Sq^2(x sigma) against Sq^2(x) sigma for a fresh bound-one variable sigma.
struct SuspensionCheck {
  ChowClass of_product;  // Sq^2 applied to x sigma
  ChowClass suspended;   // Sq^2(x) sigma
  bool commutes = false;
};
SuspensionCheck suspension_check(const ChowClass& x);

// Filtered complex with the codimension-p groups of r in cochain degrees
// band_lo .. band_hi + 1 and twisted_phi as the differential, filtered by
// cochain degree. On the second display page the diagonal spots (p, p) carry
// the codimension-p groups and the display d_2 between them is twisted_phi;
// everything else vanishes.
FilteredComplex diagonal_differential_assembly(const ChowRing& r, const ChowClass& c1,
                                               int band_lo, int band_hi);

// The recorded rank-one band for the special linear group of rank two: both
// spots are Z/2, the page-two differential between them is an isomorphism,
// and the source spot dies on page three. The generating cycles survive only
// as labels.
struct Sl3Fixture {
  FilteredComplex complex;
  std::pair<int, int> source;  // display (degree, level)
  std::pair<int, int> target;
  std::string source_label;
  std::string target_label;
};
Sl3Fixture sl3_fixture();

}  // namespace sseq
