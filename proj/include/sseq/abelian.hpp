#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sseq/errors.hpp"
#include "sseq/matrix.hpp"

namespace sseq {

// Finitely generated abelian group presented as Z^g / column-span(relations).
// Elements are generator-coordinate vectors of length g, considered modulo the
// relation lattice. Immutable after construction; copies share the cached
// relation solver.
class Presentation {
 public:
  Presentation() : gens_(0), rels_(0, 0) { init(); }
  explicit Presentation(int generators) : gens_(generators), rels_(generators, 0) { init(); }
  Presentation(int generators, Mat relations, std::vector<std::string> labels = {});

  static Presentation zero() { return Presentation(0); }
  static Presentation free_group(int n) { return Presentation(n); }
  static Presentation cyclic(const Int& n);  // Z/n, with Z/0 = Z

  int generators() const { return gens_; }
  const Mat& relations() const { return rels_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const LinearSystem& relation_system() const { return *sys_; }

  bool is_element_zero(const Vec& x) const;
  bool elements_equal(const Vec& x, const Vec& y) const;

  // structural identity: same generator count and relation matrix (labels ignored)
  bool operator==(const Presentation& o) const { return gens_ == o.gens_ && rels_ == o.rels_; }
  bool operator!=(const Presentation& o) const { return !(*this == o); }

 private:
  void init();
  int gens_;
  Mat rels_;
  std::vector<std::string> labels_;
  std::shared_ptr<const LinearSystem> sys_;
};

struct Invariants {
  int free_rank = 0;
  Vec torsion;  // entries >= 2, each dividing the next
  bool operator==(const Invariants& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  std::optional<Int> order() const;  // nullopt when infinite
  std::string to_string() const;     // "0", "Z/2 + Z/4 + Z^2", ...
};

Invariants invariants(const Presentation& g);

// Homomorphism of presented groups: [x] -> [matrix * x]. The constructor
// verifies the matrix sends every source relation into the target relation
// lattice and throws a structural error otherwise.
class Homo {
 public:
  Homo(Presentation source, Presentation target, Mat matrix);
  static Homo zero(Presentation source, Presentation target);
  static Homo identity(Presentation g);

  const Presentation& source() const { return src_; }
  const Presentation& target() const { return tgt_; }
  const Mat& matrix() const { return m_; }
  Vec apply(const Vec& x) const { return m_.apply(x); }
  Homo compose(const Homo& inner) const;  // this o inner
  bool is_zero_map() const;
  bool equals(const Homo& o) const;  // same presentations, equal on generators as group elements
  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const { return is_injective() && is_surjective(); }

 private:
  Presentation src_, tgt_;
  Mat m_;
};

// Subgroup of an ambient presented group, generated by the columns of `gens`
// (ambient coordinates). Carries its own presentation; the inclusion of that
// presentation into the ambient group is injective by construction.
class Subgroup {
 public:
  Subgroup(Presentation ambient, Mat gens);

  const Presentation& ambient() const { return ambient_; }
  const Mat& gens() const { return gens_; }
  const Presentation& group() const { return group_; }
  Homo inclusion() const { return Homo(group_, ambient_, gens_); }

  bool contains(const Vec& ambient_vec) const;
  // coordinates with respect to the subgroup presentation (some preimage)
  std::optional<Vec> coords(const Vec& ambient_vec) const;
  bool contains_subgroup(const Subgroup& other) const;
  bool equals(const Subgroup& other) const;  // mutual membership of generators
  bool is_full() const;
  bool is_zero_subgroup() const;

 private:
  Presentation ambient_;
  Mat gens_;
  Presentation group_;
  std::shared_ptr<const LinearSystem> member_;  // solver for [gens | ambient relations]
};

Subgroup full_subgroup(const Presentation& g);
Subgroup zero_subgroup(const Presentation& g);

Subgroup kernel(const Homo& f);
Subgroup image(const Homo& f);
Subgroup preimage(const Homo& f, const Subgroup& s);  // s inside f's target
Subgroup sum(const Subgroup& s, const Subgroup& t);
Subgroup intersect(const Subgroup& s, const Subgroup& t);

struct QuotientData {
  Presentation group;
  Homo projection;  // ambient -> quotient, identity matrix on generators
};
QuotientData quotient(const Subgroup& s);

// Induced map on quotients; requires f(s_src) inside s_tgt.
Homo induced(const Homo& f, const Subgroup& s_src, const Subgroup& s_tgt);

// Two-sided inverse of an isomorphism.
Homo inverse(const Homo& f);

bool is_exact(const Homo& f, const Homo& g);  // image(f) == kernel(g)

// Presentation of t/s for nested subgroups s <= t of a common ambient group,
// with deterministic lifting: generators of the quotient are t's generators.
class Subquotient {
 public:
  Subquotient(Subgroup t, const Subgroup& s);
  const Presentation& group() const { return group_; }
  const Subgroup& numerator() const { return t_; }
  // class of an ambient vector lying in t
  Vec project(const Vec& ambient_vec) const;
  // ambient representative of a class (the stored generator combination)
  Vec lift(const Vec& class_vec) const { return t_.gens().apply(class_vec); }

 private:
  Subgroup t_;
  Presentation group_;
};

struct Normalized {
  Presentation canonical;  // torsion summands in divisor order, then free summands
  Homo to_canonical;
  Homo from_canonical;
};
Normalized normalize(const Presentation& g);

// All elements of a finite group as coordinate representatives; throws an
// unsupported error when the group is infinite or larger than `bound`.
std::vector<Vec> enumerate_elements(const Presentation& g, const Int& bound);

}  // namespace sseq
