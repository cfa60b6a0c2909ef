#pragma once
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sseq/abelian.hpp"
#include "sseq/complex.hpp"
#include "sseq/field.hpp"

namespace sseq {

// The field a symbol lives over: a finite field itself, or the rational
// function field in one variable over it.
struct FieldModel {
  enum class Kind { finite, rational };
  Kind kind = Kind::finite;
  std::shared_ptr<const FiniteField> k;  // the field, or the field of constants

  static FieldModel finite(long q);
  static FieldModel finite(std::shared_ptr<const FiniteField> f);
  static FieldModel rational(long q);
  bool operator==(const FieldModel& o) const { return kind == o.kind && k.get() == o.k.get(); }
  bool operator!=(const FieldModel& o) const { return !(*this == o); }
};

// One entry of a symbol tuple: a code for finite models, a reduced fraction
// for the function field.
struct FieldElem {
  long code = 0;
  RatFunc frac;
};
FieldElem elem(long code);
FieldElem elem(RatFunc f);

// Mod-2 sum of weight-n tuples of nonzero elements. normalize() rewrites to a
// canonical form: every entry is factored into the unit-class generator and
// monic irreducibles (multilinearly, dropping squares), literal pairs
// {a, 1-a} kill a tuple, a repeated entry {a, a} turns into {a, -1} once,
// entries are sorted, and equal tuples cancel in pairs. Equality of
// normalized symbols is literal equality.
struct Symbol {
  FieldModel field;
  int weight = 0;
  std::vector<std::vector<FieldElem>> terms;
};

Symbol make_symbol(FieldModel f, int weight, std::vector<std::vector<FieldElem>> terms);
Symbol normalize(const Symbol& s);
bool symbols_equal(const Symbol& a, const Symbol& b);
std::string symbol_to_string(const Symbol& s);

// Closed point of the line over the constants: a monic irreducible, or the
// point at infinity. The residue field is the quotient extension, subject to
// the discrete-log table bound.
struct Place {
  std::shared_ptr<const FiniteField> k;
  bool at_infinity = false;
  Poly pi;  // monic irreducible; zero polynomial at infinity
  std::shared_ptr<const FiniteField> residue;
  int degree() const { return at_infinity ? 1 : pi.deg(); }
  std::string name() const { return at_infinity ? "inf" : pstr(pi); }
};

Place finite_place(std::shared_ptr<const FiniteField> k, Poly pi);
Place infinite_place(std::shared_ptr<const FiniteField> k);
std::vector<Place> places_up_to(const std::shared_ptr<const FiniteField>& k, int max_degree,
                                bool with_infinity);

int valuation(const Place& v, const RatFunc& f);    // f nonzero
long residue_at(const Place& v, const RatFunc& u);  // u a unit at v

// Residue of a symbol at a place: pick the uniformizer part of each entry or
// its unit part, multilinearly; one uniformizer survives per term and each
// extra one contributes a -1. Weight drops by one; the result is normalized
// over the residue field.
Symbol tame_symbol(const Place& v, const Symbol& s);

// Presented Milnor K-group together with the dictionary expressing symbols in
// generator coordinates. Over the function field the group is the subgroup
// supported on places of degree within the bound. Integral models exist for
// weights <= 1 (and all weights over finite fields); the rest are mod 2.
struct KGroup {
  FieldModel field;
  int weight = 0;
  bool mod2 = true;
  int bound = 0;  // support degree bound; 0 for finite fields
  Presentation group;
  std::vector<Symbol> generator_symbols;
  std::map<std::string, int> index;  // canonical tuple key -> generator

  Vec coords(const Symbol& s) const;
};

KGroup kgroup(const FieldModel& f, int n, bool mod2 = true, int bound = 0);

// Identity-on-generators reduction from the integral model to the mod-2 one.
Homo reduction_map(const KGroup& integral, const KGroup& mod2);

// Gersten complex of the line: degree 0 is the supported K-group of the
// function field, degree 1 the sum of residue K-groups over the places
// (infinity included for the projective line), differential given by tame
// symbols (valuations in the integral weight-1 case).
enum class LineSpace { affine, projective };

struct GerstenComplex {
  LineSpace space = LineSpace::affine;
  long q = 0;
  int weight = 0;
  int bound = 0;
  bool mod2 = true;
  CochainComplex complex;
  KGroup top;                 // the degree-0 model
  std::vector<Place> places;  // degree-1 summands, in order
  std::vector<int> offsets;   // first generator index of each place block
};

GerstenComplex gersten_complex(LineSpace space, long q, int n, int bound, bool mod2,
                               int threads = 1);

// Both models plus the identity-on-generators reduction between them
// (weights <= 1, where the integral model exists).
struct GerstenPair {
  GerstenComplex integral;
  GerstenComplex mod2;
  ChainMap reduction;
};
GerstenPair gersten_pair(LineSpace space, long q, int n, int bound, int threads = 1);

// Filtered export: the one-level filtration, or the two-level filtration of
// the integral complex by multiples of 2 whose layers are the mod-2 and the
// doubled copy.
FilteredComplex gersten_filtered(LineSpace space, long q, int n, int bound, bool mod2,
                                 bool two_level, int threads = 1);

// Weil reciprocity on the projective line: the degree-weighted transfers of
// the residues of s over all places sum to zero. Throws when the support of
// s reaches past the bound.
bool reciprocity_holds(const Symbol& s, int bound);

// Desk-scale certificate that enumerated Steinberg relation instances span
// the full relation lattice of the supported weight-2 group.
struct SaturationReport {
  int generators = 0;
  int lattice_rank = 0;     // rank of the relation lattice (residue kernel)
  int enumerated_rank = 0;  // rank of the span of enumerated instances
  long instances = 0;
  bool saturated = false;
};
SaturationReport weight2_saturation(long q, int bound, int radius);

}  // namespace sseq
