#include "sseq/milnor.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <thread>

namespace sseq {

namespace {

// Canonical multiplicative atom mod squares: the unit-class generator of the
// constants, or a monic irreducible.
struct Atom {
  bool constant = true;
  Poly p;
};

bool atom_eq(const Atom& a, const Atom& b) {
  if (a.constant != b.constant) return false;
  return a.constant || a.p == b.p;
}

bool atom_less(const Atom& a, const Atom& b) {
  if (a.constant != b.constant) return a.constant;
  if (a.constant) return false;
  return pless(a.p, b.p);
}

std::string atom_key(const Atom& a) { return a.constant ? "u" : pstr(a.p); }

using Tuple = std::vector<Atom>;

bool tuple_eq(const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!atom_eq(a[i], b[i])) return false;
  return true;
}

bool tuple_less(const Tuple& a, const Tuple& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (atom_less(a[i], b[i])) return true;
    if (atom_less(b[i], a[i])) return false;
  }
  return a.size() < b.size();
}

std::string tuple_key(const Tuple& t) {
  if (t.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += atom_key(t[i]);
  }
  return out;
}

void validate_symbol(const Symbol& s) {
  if (!s.field.k) throw invalid_error("symbol: missing field");
  if (s.weight < 0) throw invalid_error("symbol: negative weight");
  const long q = s.field.k->order();
  for (const auto& term : s.terms) {
    if (int(term.size()) != s.weight) throw invalid_error("symbol: tuple has the wrong weight");
    for (const auto& e : term) {
      if (s.field.kind == FieldModel::Kind::finite) {
        if (e.code == 0) throw invalid_error("symbol: zero entry");
        if (e.code < 0 || e.code >= q) throw invalid_error("symbol: entry code out of range");
      } else {
        if (!e.frac.num.k || !e.frac.den.k || e.frac.num.k.get() != s.field.k.get() ||
            e.frac.den.k.get() != s.field.k.get())
          throw invalid_error("symbol: mixed fields");
        if (e.frac.is_zero()) throw invalid_error("symbol: zero entry");
      }
    }
  }
}

// Factor an entry into its odd-multiplicity atoms; a square entry has none.
std::vector<Atom> atomize(const FieldModel& f, const FieldElem& e) {
  std::vector<Atom> out;
  if (f.kind == FieldModel::Kind::finite) {
    if (f.k->dlog(e.code) & 1) out.push_back(Atom{true, Poly{}});
    return out;
  }
  RatFunc r = ratfunc(e.frac.num, e.frac.den);
  PolyFactor fn = factor_poly(r.num);
  PolyFactor fd = factor_poly(r.den);
  if (f.k->dlog(f.k->div(fn.unit, fd.unit)) & 1) out.push_back(Atom{true, Poly{}});
  std::vector<std::pair<Poly, int>> fac = fn.factors;
  fac.insert(fac.end(), fd.factors.begin(), fd.factors.end());
  std::sort(fac.begin(), fac.end(),
            [](const auto& a, const auto& b) { return pless(a.first, b.first); });
  for (size_t i = 0; i < fac.size();) {
    int parity = 0;
    size_t j = i;
    while (j < fac.size() && fac[j].first == fac[i].first) parity ^= (fac[j++].second & 1);
    if (parity) out.push_back(Atom{false, fac[i].first});
    i = j;
  }
  std::sort(out.begin(), out.end(), atom_less);
  return out;
}

// Normal form of one atom tuple, or nothing when a rewrite kills it: repeated
// entries become {a, -1}, which is zero when -1 is a square and the unit
// generator otherwise, and a repeated constant pair is Steinberg when 1-g = g.
std::optional<Tuple> canonical_tuple(const FieldModel& f, Tuple t) {
  const FiniteField& k = *f.k;
  const bool minus_one_square = k.is_square(k.sub(0, 1));
  const bool half_point = k.sub(1, k.generator()) == k.generator();
  for (;;) {
    std::sort(t.begin(), t.end(), atom_less);
    int pair = -1, irr_pair = -1;
    for (size_t i = 0; i + 1 < t.size(); ++i)
      if (atom_eq(t[i], t[i + 1])) {
        if (pair < 0) pair = int(i);
        if (!t[i].constant) {
          irr_pair = int(i);
          break;
        }
      }
    if (pair < 0) return t;
    if (t[size_t(pair)].constant && half_point) return std::nullopt;
    if (minus_one_square) return std::nullopt;
    if (irr_pair < 0) return t;
    t[size_t(irr_pair) + 1] = Atom{true, Poly{}};
  }
}

// Literal relation pairs in a raw tuple: an entry equal to 1-a or -a of
// another one.
bool literal_kill(const FieldModel& f, const std::vector<FieldElem>& term) {
  for (size_t i = 0; i < term.size(); ++i)
    for (size_t j = 0; j < term.size(); ++j) {
      if (i == j) continue;
      if (f.kind == FieldModel::Kind::finite) {
        if (f.k->sub(1, term[i].code) == term[j].code) return true;
        if (f.k->neg(term[i].code) == term[j].code) return true;
      } else {
        RatFunc a = ratfunc(term[i].frac.num, term[i].frac.den);
        RatFunc b = ratfunc(term[j].frac.num, term[j].frac.den);
        if (one_minus(a) == b) return true;
        if (rneg(a) == b) return true;
      }
    }
  return false;
}

// The full rewriting pipeline. Relation columns skip the literal kills: they
// express a relation instance in generator coordinates instead of using it.
std::vector<Tuple> canonical_tuples(const Symbol& s, bool literal_relations) {
  validate_symbol(s);
  std::vector<Tuple> tuples;
  for (const auto& term : s.terms) {
    if (literal_relations && literal_kill(s.field, term)) continue;
    std::vector<Tuple> expanded{Tuple{}};
    for (const auto& e : term) {
      std::vector<Atom> slot = atomize(s.field, e);
      std::vector<Tuple> next;
      for (const auto& pre : expanded)
        for (const auto& a : slot) {
          Tuple t = pre;
          t.push_back(a);
          next.push_back(std::move(t));
        }
      expanded = std::move(next);
    }
    for (auto& t : expanded)
      if (auto c = canonical_tuple(s.field, std::move(t))) tuples.push_back(std::move(*c));
  }
  std::sort(tuples.begin(), tuples.end(), tuple_less);
  std::vector<Tuple> kept;
  for (auto& t : tuples) {
    if (!kept.empty() && tuple_eq(kept.back(), t))
      kept.pop_back();
    else
      kept.push_back(std::move(t));
  }
  return kept;
}

std::vector<FieldElem> tuple_elems(const FieldModel& f, const Tuple& t) {
  std::vector<FieldElem> out;
  for (const auto& a : t) {
    if (f.kind == FieldModel::Kind::finite)
      out.push_back(elem(f.k->generator()));
    else if (a.constant)
      out.push_back(elem(rf_const(f.k, f.k->generator())));
    else
      out.push_back(elem(rf_poly(a.p)));
  }
  return out;
}

Symbol from_tuples(const FieldModel& f, int weight, const std::vector<Tuple>& ts) {
  Symbol out{f, weight, {}};
  for (const auto& t : ts) out.terms.push_back(tuple_elems(f, t));
  return out;
}

long encode_residue(const Place& v, const Poly& r) {
  if (v.residue.get() == v.k.get()) return r.is_zero() ? 0 : r.c[0];
  return v.residue->encode(r.c);
}

// Direct sum with block-diagonal relations, keeping the given labels.
Presentation block_sum(const std::vector<Presentation>& parts,
                       const std::vector<std::string>& labels) {
  int gens = 0, rels = 0;
  for (const auto& p : parts) {
    gens += p.generators();
    rels += p.relations().cols();
  }
  Mat r = Mat::zero(gens, rels);
  int go = 0, ro = 0;
  for (const auto& p : parts) {
    const Mat& pr = p.relations();
    for (int i = 0; i < pr.rows(); ++i)
      for (int j = 0; j < pr.cols(); ++j) r.at(go + i, ro + j) = pr.at(i, j);
    go += p.generators();
    ro += pr.cols();
  }
  return Presentation(gens, std::move(r), labels);
}

Vec relation_coords(const KGroup& kg, const Symbol& s) {
  Vec out(kg.index.size(), Int(0));
  for (const auto& t : canonical_tuples(s, false)) {
    auto it = kg.index.find(tuple_key(t));
    if (it == kg.index.end())
      throw internal_error("kgroup: a relation instance left the generator span");
    out[size_t(it->second)] += 1;
  }
  return out;
}

Presentation rank_one(bool mod2, long order, const std::string& label) {
  if (mod2) return Presentation(1, Mat::column({Int(2)}), {label});
  if (order == 0) return Presentation(1, Mat::zero(1, 0), {label});
  return Presentation(1, Mat::column({Int(order)}), {label});
}

}  // namespace

FieldModel FieldModel::finite(long q) {
  return FieldModel{Kind::finite, FiniteField::prime_power(q)};
}

FieldModel FieldModel::finite(std::shared_ptr<const FiniteField> f) {
  if (!f) throw invalid_error("field model: missing field");
  return FieldModel{Kind::finite, std::move(f)};
}

FieldModel FieldModel::rational(long q) {
  return FieldModel{Kind::rational, FiniteField::prime_power(q)};
}

FieldElem elem(long code) {
  FieldElem e;
  e.code = code;
  return e;
}

FieldElem elem(RatFunc f) {
  FieldElem e;
  e.frac = std::move(f);
  return e;
}

Symbol make_symbol(FieldModel f, int weight, std::vector<std::vector<FieldElem>> terms) {
  Symbol s{std::move(f), weight, std::move(terms)};
  validate_symbol(s);
  return s;
}

Symbol normalize(const Symbol& s) {
  return from_tuples(s.field, s.weight, canonical_tuples(s, true));
}

bool symbols_equal(const Symbol& a, const Symbol& b) {
  if (a.field != b.field || a.weight != b.weight) return false;
  std::vector<Tuple> ta = canonical_tuples(a, true);
  std::vector<Tuple> tb = canonical_tuples(b, true);
  if (ta.size() != tb.size()) return false;
  for (size_t i = 0; i < ta.size(); ++i)
    if (!tuple_eq(ta[i], tb[i])) return false;
  return true;
}

std::string symbol_to_string(const Symbol& s) {
  if (s.terms.empty()) return "0";
  std::string out;
  for (size_t t = 0; t < s.terms.size(); ++t) {
    if (t) out += " + ";
    out += "{";
    for (size_t i = 0; i < s.terms[t].size(); ++i) {
      if (i) out += ",";
      out += s.field.kind == FieldModel::Kind::finite ? std::to_string(s.terms[t][i].code)
                                                      : rstr(s.terms[t][i].frac);
    }
    out += "}";
  }
  return out;
}

Place finite_place(std::shared_ptr<const FiniteField> k, Poly pi) {
  if (!k) throw invalid_error("place: missing field");
  if (pi.k.get() != k.get()) throw invalid_error("place: polynomial over a different field");
  if (pi.deg() < 1 || !pi.is_monic() || !is_irreducible(pi))
    throw invalid_error("place: the polynomial must be monic irreducible");
  Place v;
  v.k = k;
  v.pi = pi;
  v.residue = pi.deg() == 1 ? k : FiniteField::extension(k, pi.c);
  return v;
}

Place infinite_place(std::shared_ptr<const FiniteField> k) {
  if (!k) throw invalid_error("place: missing field");
  Place v;
  v.k = k;
  v.at_infinity = true;
  v.residue = k;
  return v;
}

std::vector<Place> places_up_to(const std::shared_ptr<const FiniteField>& k, int max_degree,
                                bool with_infinity) {
  if (!k) throw invalid_error("place: missing field");
  if (max_degree < 0) throw invalid_error("place: negative degree bound");
  std::vector<Place> out;
  for (int d = 1; d <= max_degree; ++d) {
    std::vector<Poly> irr = monic_irreducibles(k, d);
    std::sort(irr.begin(), irr.end(), pless);
    for (auto& p : irr) out.push_back(finite_place(k, p));
  }
  if (with_infinity) out.push_back(infinite_place(k));
  return out;
}

int valuation(const Place& v, const RatFunc& f) {
  if (f.is_zero()) throw invalid_error("valuation: zero element");
  if (!f.num.k || f.num.k.get() != v.k.get())
    throw invalid_error("valuation: element over a different field");
  if (v.at_infinity) return f.den.deg() - f.num.deg();
  auto mult = [&](Poly a) {
    int m = 0;
    for (;;) {
      auto qr = pdivmod(a, v.pi);
      if (!qr.second.is_zero()) return m;
      ++m;
      a = qr.first;
    }
  };
  return mult(f.num) - mult(f.den);
}

long residue_at(const Place& v, const RatFunc& u) {
  if (valuation(v, u) != 0) throw invalid_error("residue: not a unit at the place");
  if (v.at_infinity) return v.k->div(u.num.lc(), u.den.lc());
  long a = encode_residue(v, pmod(u.num, v.pi));
  long b = encode_residue(v, pmod(u.den, v.pi));
  return v.residue->div(a, b);
}

Symbol tame_symbol(const Place& v, const Symbol& s) {
  if (s.field.kind != FieldModel::Kind::rational)
    throw invalid_error("tame symbol: needs the function field");
  if (s.field.k.get() != v.k.get()) throw invalid_error("tame symbol: place over a different field");
  if (s.weight < 1) throw invalid_error("tame symbol: weight must be positive");
  validate_symbol(s);
  RatFunc pi =
      v.at_infinity ? ratfunc(poly_const(v.k, 1), poly_x(v.k)) : rf_poly(v.pi);
  FieldModel res = FieldModel::finite(v.residue);
  const long minus_one = v.residue->sub(0, 1);
  std::vector<std::vector<FieldElem>> out;
  for (const auto& term : s.terms) {
    std::vector<long> unit_res(term.size());
    std::vector<int> odd_slots;
    for (size_t i = 0; i < term.size(); ++i) {
      RatFunc f = ratfunc(term[i].frac.num, term[i].frac.den);
      int val = valuation(v, f);
      RatFunc u = f;
      for (int e = 0; e < val; ++e) u = rdiv(u, pi);
      for (int e = 0; e < -val; ++e) u = rmul(u, pi);
      unit_res[i] = residue_at(v, u);
      if (val % 2 != 0) odd_slots.push_back(int(i));
    }
    // expand each slot as pi^odd * unit; tuples keeping k uniformizers drop
    // them and pick up k-1 copies of -1
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << odd_slots.size()); ++mask) {
      std::vector<bool> picked(term.size(), false);
      int k = 0;
      for (size_t b = 0; b < odd_slots.size(); ++b)
        if (mask >> b & 1) {
          picked[size_t(odd_slots[b])] = true;
          ++k;
        }
      std::vector<FieldElem> tup;
      for (size_t i = 0; i < term.size(); ++i)
        if (!picked[i]) tup.push_back(elem(unit_res[i]));
      for (int c = 0; c + 1 < k; ++c) tup.push_back(elem(minus_one));
      out.push_back(std::move(tup));
    }
  }
  return normalize(make_symbol(res, s.weight - 1, std::move(out)));
}

Vec KGroup::coords(const Symbol& s) const {
  if (s.field != field) throw invalid_error("kgroup: symbol over a different field");
  if (s.weight != weight) throw invalid_error("kgroup: symbol weight mismatch");
  Vec out(size_t(group.generators()), Int(0));
  if (!mod2) {
    validate_symbol(s);
    if (weight == 0) {
      if (!out.empty()) out[0] = Int(long(s.terms.size()));
      return out;
    }
    if (field.kind == FieldModel::Kind::finite) {
      if (weight >= 2) return out;  // the group vanishes
      for (const auto& term : s.terms) out[0] += Int(field.k->dlog(term[0].code));
      return out;
    }
    // weight one over the function field: exact unit logs and valuations
    for (const auto& term : s.terms) {
      RatFunc f = ratfunc(term[0].frac.num, term[0].frac.den);
      PolyFactor fn = factor_poly(f.num);
      PolyFactor fd = factor_poly(f.den);
      out[0] += Int(field.k->dlog(field.k->div(fn.unit, fd.unit)));
      for (const auto& [p, m] : fn.factors) {
        auto it = index.find(pstr(p));
        if (it == index.end()) throw invalid_error("kgroup: symbol support exceeds the bound");
        out[size_t(it->second)] += Int(m);
      }
      for (const auto& [p, m] : fd.factors) {
        auto it = index.find(pstr(p));
        if (it == index.end()) throw invalid_error("kgroup: symbol support exceeds the bound");
        out[size_t(it->second)] -= Int(m);
      }
    }
    return out;
  }
  for (const auto& t : canonical_tuples(s, true)) {
    auto it = index.find(tuple_key(t));
    if (it == index.end()) throw invalid_error("kgroup: symbol support exceeds the bound");
    out[size_t(it->second)] += 1;
  }
  return out;
}

KGroup kgroup(const FieldModel& f, int n, bool mod2, int bound) {
  if (!f.k) throw invalid_error("kgroup: missing field");
  if (n < 0) throw invalid_error("kgroup: negative weight");
  KGroup out;
  out.field = f;
  out.weight = n;
  out.mod2 = mod2;
  out.bound = f.kind == FieldModel::Kind::rational ? bound : 0;
  const auto& k = f.k;
  const long q = k->order();

  auto add_gen = [&](const Tuple& t) {
    out.index[tuple_key(t)] = int(out.generator_symbols.size());
    out.generator_symbols.push_back(from_tuples(f, n, {t}));
  };

  if (f.kind == FieldModel::Kind::finite) {
    if (n == 0) {
      out.group = rank_one(mod2, 0, "1");
      add_gen(Tuple{});
      return out;
    }
    if (n == 1) {
      out.group = rank_one(mod2, q - 1, "{u}");
      add_gen(Tuple{Atom{true, Poly{}}});
      return out;
    }
    if (!mod2) {
      out.group = Presentation::zero();  // higher weights vanish over a finite field
      return out;
    }
    // candidate normal form, then every Steinberg instance as a relation
    std::optional<Tuple> cand = canonical_tuple(f, Tuple(size_t(n), Atom{true, Poly{}}));
    if (!cand) {
      out.group = Presentation::zero();
      return out;
    }
    add_gen(*cand);
    std::vector<Int> cols{Int(2)};
    for (long a = 2; a < q; ++a) {
      std::vector<FieldElem> term{elem(a), elem(k->sub(1, a))};
      for (int i = 2; i < n; ++i) term.push_back(elem(k->generator()));
      Vec col = relation_coords(out, Symbol{f, n, {term}});
      if (col[0] != 0) cols.push_back(col[0]);
    }
    Mat rel = Mat::zero(1, int(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) rel.at(0, int(j)) = cols[j];
    out.group = Presentation(1, std::move(rel), {"{" + tuple_key(*cand) + "}"});
    if (!invariants(out.group).is_zero())
      throw internal_error("kgroup: the finite-field model disagrees with the known vanishing");
    return out;
  }

  if (bound < 1) throw invalid_error("kgroup: the function field needs a positive degree bound");
  if (!mod2 && n > 1)
    throw unsupported_error("kgroup: no integral model above weight one over the function field");
  if (mod2 && n > 2)
    throw unsupported_error("kgroup: weights above two are not modeled over the function field");

  if (n == 0) {
    out.group = rank_one(mod2, 0, "1");
    add_gen(Tuple{});
    return out;
  }

  std::vector<Atom> pool{Atom{true, Poly{}}};
  for (int d = 1; d <= bound; ++d) {
    std::vector<Poly> irr = monic_irreducibles(k, d);
    std::sort(irr.begin(), irr.end(), pless);
    for (auto& p : irr) pool.push_back(Atom{false, std::move(p)});
  }

  if (n == 1) {
    std::vector<std::string> labels;
    for (const auto& a : pool) {
      labels.push_back("{" + atom_key(a) + "}");
      add_gen(Tuple{a});
    }
    int m = int(pool.size());
    if (mod2) {
      out.group = Presentation(m, Mat::diag(Vec(size_t(m), Int(2))), labels);
    } else {
      Mat rel = Mat::zero(m, 1);
      rel.at(0, 0) = Int(q - 1);  // the torsion of the constants; places are free
      out.group = Presentation(m, std::move(rel), labels);
    }
    return out;
  }

  // weight two mod 2: pairs of pool atoms in normal form, relations cut out
  // by the residue parities at every place inside the bound
  std::vector<std::string> labels;
  for (size_t i = 0; i < pool.size(); ++i)
    for (size_t j = i; j < pool.size(); ++j) {
      std::optional<Tuple> c = canonical_tuple(f, Tuple{pool[i], pool[j]});
      if (!c || out.index.count(tuple_key(*c))) continue;
      labels.push_back("{" + tuple_key(*c) + "}");
      add_gen(*c);
    }
  std::vector<Place> places = places_up_to(k, bound, false);
  std::map<std::string, int> row_of;
  for (size_t i = 0; i < places.size(); ++i) row_of[places[i].name()] = int(i);
  const int gens = int(out.generator_symbols.size());
  Mat m = Mat::zero(int(places.size()), gens);
  for (int j = 0; j < gens; ++j) {
    const Symbol& s = out.generator_symbols[size_t(j)];
    for (const auto& e : s.terms[0]) {
      if (e.frac.num.deg() < 1) continue;
      int row = row_of.at(pstr(e.frac.num));
      Symbol t = tame_symbol(places[size_t(row)], s);
      m.at(row, j) = Int(long(t.terms.size()) & 1);
    }
  }
  Homo res(Presentation::free_group(gens),
           Presentation(int(places.size()), Mat::diag(Vec(places.size(), Int(2)))), m);
  out.group = Presentation(gens, kernel(res).inclusion().matrix(), labels);
  Invariants want{0, std::vector<Int>(places.size(), Int(2))};
  if (!(invariants(out.group) == want))
    throw internal_error("kgroup: the residue certificate failed");
  return out;
}

Homo reduction_map(const KGroup& integral, const KGroup& mod2) {
  if (integral.mod2 || !mod2.mod2 || integral.field != mod2.field ||
      integral.weight != mod2.weight || integral.bound != mod2.bound ||
      integral.index != mod2.index)
    throw structural_error("reduction: model mismatch");
  return Homo(integral.group, mod2.group, Mat::identity(integral.group.generators()));
}

namespace {

GerstenComplex build_gersten(LineSpace space, long q, int n, int bound, bool mod2, int threads) {
  if (bound < 1) throw invalid_error("gersten: degree bound must be positive");
  if (n < 0) throw invalid_error("gersten: negative weight");
  if (threads < 1) throw invalid_error("gersten: thread count must be positive");
  if (!mod2 && n > 1) throw unsupported_error("gersten: no integral model above weight one");
  if (mod2 && n > 2) throw unsupported_error("gersten: weights above two are not modeled");
  FieldModel F = FieldModel::rational(q);
  GerstenComplex g;
  g.space = space;
  g.q = q;
  g.weight = n;
  g.bound = bound;
  g.mod2 = mod2;
  g.top = kgroup(F, n, mod2, bound);
  g.places = places_up_to(F.k, bound, space == LineSpace::projective);

  std::vector<Presentation> blocks;
  std::vector<std::string> labels;
  int g1 = 0;
  for (const auto& v : g.places) {
    g.offsets.push_back(g1);
    if (n == 0) {
      blocks.push_back(Presentation::zero());
      continue;
    }
    KGroup rg = kgroup(FieldModel::finite(v.residue), n - 1, mod2, 0);
    for (const auto& l : rg.group.labels()) labels.push_back(v.name() + ":" + l);
    g1 += rg.group.generators();
    blocks.push_back(std::move(rg.group));
  }
  Presentation deg1 = block_sum(blocks, labels);

  std::map<std::string, int> place_of;
  for (size_t i = 0; i < g.places.size(); ++i)
    if (!g.places[i].at_infinity) place_of[pstr(g.places[i].pi)] = int(i);
  const int gens = g.top.group.generators();
  Mat d1 = Mat::zero(g1, gens);
  auto column = [&](int j) {
    if (n == 0) return;
    const Symbol& s = g.top.generator_symbols[size_t(j)];
    std::vector<int> support;
    for (const auto& e : s.terms[0])
      if (e.frac.num.deg() >= 1) support.push_back(place_of.at(pstr(e.frac.num)));
    if (space == LineSpace::projective) support.push_back(int(g.places.size()) - 1);
    for (int pi : support) {
      const Place& v = g.places[size_t(pi)];
      if (!mod2)
        d1.at(g.offsets[size_t(pi)], j) = Int(long(valuation(v, s.terms[0][0].frac)));
      else
        d1.at(g.offsets[size_t(pi)], j) =
            Int(long(tame_symbol(v, s).terms.size()) & 1);  // residue blocks are lines
    }
  };
  if (threads <= 1 || gens < 2 * threads) {
    for (int j = 0; j < gens; ++j) column(j);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (int j = w; j < gens; j += threads) column(j);
      });
    for (auto& t : pool) t.join();
  }
  g.complex = CochainComplex(0, {g.top.group, std::move(deg1)}, {std::move(d1)});
  return g;
}

// Mod-2 column rank, for the cheap stability pass at weight two.
long f2_rank(const std::vector<std::vector<std::uint64_t>>& cols) {
  std::vector<std::vector<std::uint64_t>> basis;
  std::vector<size_t> pivots;
  long rank = 0;
  for (auto col : cols) {
    for (size_t b = 0; b < basis.size(); ++b)
      if (col[pivots[b] / 64] >> (pivots[b] % 64) & 1)
        for (size_t w = 0; w < col.size(); ++w) col[w] ^= basis[b][w];
    size_t pivot = col.size() * 64;
    for (size_t w = 0; w < col.size() && pivot == col.size() * 64; ++w)
      if (col[w])
        for (size_t b = 0; b < 64; ++b)
          if (col[w] >> b & 1) {
            pivot = w * 64 + b;
            break;
          }
    if (pivot == col.size() * 64) continue;
    basis.push_back(std::move(col));
    pivots.push_back(pivot);
    ++rank;
  }
  return rank;
}

long weight2_h1_dim(LineSpace space, long q, int bound) {
  FieldModel F = FieldModel::rational(q);
  std::vector<Atom> pool{Atom{true, Poly{}}};
  for (int d = 1; d <= bound; ++d) {
    std::vector<Poly> irr = monic_irreducibles(F.k, d);
    std::sort(irr.begin(), irr.end(), pless);
    for (auto& p : irr) pool.push_back(Atom{false, std::move(p)});
  }
  std::vector<Place> places = places_up_to(F.k, bound, space == LineSpace::projective);
  std::map<std::string, int> row_of;
  for (size_t i = 0; i < places.size(); ++i) row_of[places[i].name()] = int(i);
  const size_t words = (places.size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> cols;
  for (size_t i = 0; i < pool.size(); ++i)
    for (size_t j = i; j < pool.size(); ++j) {
      std::optional<Tuple> c = canonical_tuple(F, Tuple{pool[i], pool[j]});
      if (!c) continue;
      Symbol s = from_tuples(F, 2, {*c});
      std::vector<int> support;
      for (const auto& a : *c)
        if (!a.constant) support.push_back(row_of.at(pstr(a.p)));
      if (space == LineSpace::projective) support.push_back(int(places.size()) - 1);
      std::vector<std::uint64_t> col(words, 0);
      bool nonzero = false;
      for (int row : support)
        if (long(tame_symbol(places[size_t(row)], s).terms.size()) & 1) {
          col[size_t(row) / 64] ^= std::uint64_t(1) << (row % 64);
          nonzero = true;
        }
      if (nonzero) cols.push_back(std::move(col));
    }
  return long(places.size()) - f2_rank(cols);
}

}  // namespace

GerstenComplex gersten_complex(LineSpace space, long q, int n, int bound, bool mod2,
                               int threads) {
  GerstenComplex g = build_gersten(space, q, n, bound, mod2, threads);
  if (mod2 && n == 2) {
    // raising the bound only needs residue parities, not a presentation
    long dim = weight2_h1_dim(space, q, bound);
    if (dim != weight2_h1_dim(space, q, bound + 1))
      throw internal_error("gersten: cohomology failed to stabilize at the bound");
    Invariants h1{0, std::vector<Int>(size_t(dim), Int(2))};
    if (!invariants(cohomology(g.complex, 0).group()).is_zero() ||
        !(invariants(cohomology(g.complex, 1).group()) == h1))
      throw internal_error("gersten: the rank shortcut disagrees with the presentation");
    return g;
  }
  GerstenComplex h = build_gersten(space, q, n, bound + 1, mod2, threads);
  for (int i = 0; i <= 1; ++i)
    if (!(invariants(cohomology(g.complex, i).group()) ==
          invariants(cohomology(h.complex, i).group())))
      throw internal_error("gersten: cohomology failed to stabilize at the bound");
  return g;
}

GerstenPair gersten_pair(LineSpace space, long q, int n, int bound, int threads) {
  if (n > 1) throw unsupported_error("gersten: no integral model above weight one");
  GerstenComplex a = gersten_complex(space, q, n, bound, false, threads);
  GerstenComplex b = gersten_complex(space, q, n, bound, true, threads);
  std::map<int, Mat> comps;
  comps[0] = Mat::identity(a.complex.group(0).generators());
  comps[1] = Mat::identity(a.complex.group(1).generators());
  ChainMap red(a.complex, b.complex, std::move(comps));
  return GerstenPair{std::move(a), std::move(b), std::move(red)};
}

FilteredComplex gersten_filtered(LineSpace space, long q, int n, int bound, bool mod2,
                                 bool two_level, int threads) {
  if (!two_level)
    return FilteredComplex::trivial(gersten_complex(space, q, n, bound, mod2, threads).complex,
                                    0);
  if (mod2) throw invalid_error("gersten: the two-level filtration needs the integral model");
  GerstenComplex g = gersten_complex(space, q, n, bound, false, threads);
  std::map<std::pair<int, int>, Mat> levels;
  for (int i = 0; i <= 1; ++i)
    levels[{1, i}] = Mat::diag(Vec(size_t(g.complex.group(i).generators()), Int(2)));
  return FilteredComplex(g.complex, 0, 1, std::move(levels));
}

bool reciprocity_holds(const Symbol& s, int bound) {
  if (s.field.kind != FieldModel::Kind::rational)
    throw invalid_error("reciprocity: needs the function field");
  if (s.weight < 1 || s.weight > 2) throw invalid_error("reciprocity: weight must be one or two");
  if (bound < 1) throw invalid_error("reciprocity: degree bound must be positive");
  validate_symbol(s);
  for (const auto& term : s.terms)
    for (const auto& e : term)
      for (const auto& a : atomize(s.field, e))
        if (!a.constant && a.p.deg() > bound)
          throw invalid_error("reciprocity: symbol support exceeds the bound");
  long parity = 0;
  for (const auto& v : places_up_to(s.field.k, bound, true)) {
    Symbol t = tame_symbol(v, s);
    if (s.weight == 1) {
      parity ^= long(v.degree()) * long(t.terms.size()) & 1;
    } else {
      // transfer each residue unit down by the field norm
      for (const auto& term : t.terms)
        parity ^= s.field.k->dlog(v.residue->norm_to_base(term[0].code)) & 1;
    }
  }
  return parity == 0;
}

SaturationReport weight2_saturation(long q, int bound, int radius) {
  if (bound < 1) throw invalid_error("saturation: degree bound must be positive");
  if (radius < 1) throw invalid_error("saturation: radius must be positive");
  FieldModel F = FieldModel::rational(q);
  KGroup kg = kgroup(F, 2, true, bound);
  SaturationReport rep;
  rep.generators = kg.group.generators();
  const size_t words = size_t(rep.generators + 63) / 64;

  auto to_bits = [&](const Vec& v) {
    std::vector<std::uint64_t> col(words, 0);
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] % 2 != 0) col[i / 64] ^= std::uint64_t(1) << (i % 64);
    return col;
  };
  std::vector<std::vector<std::uint64_t>> lattice;
  const Mat& rel = kg.group.relations();
  for (int j = 0; j < rel.cols(); ++j) lattice.push_back(to_bits(rel.col(j)));
  rep.lattice_rank = int(f2_rank(lattice));

  // monic polynomials within the radius whose factors stay inside the bound
  std::vector<Poly> monics{poly_const(F.k, 1)};
  for (int d = 1; d <= radius; ++d) {
    std::vector<long> digits(size_t(d), 0);
    for (;;) {
      std::vector<long> c = digits;
      c.push_back(1);
      Poly p = poly(F.k, c);
      bool ok = true;
      for (const auto& [f, m] : factor_poly(p).factors)
        if (f.deg() > bound) ok = false;
      if (ok) monics.push_back(std::move(p));
      size_t i = 0;
      while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }

  std::vector<Place> places = places_up_to(F.k, bound, true);
  std::vector<std::vector<std::uint64_t>> span;
  for (const auto& A : monics)
    for (const auto& B : monics) {
      if (pgcd(A, B).deg() > 0) continue;
      for (long c = 1; c < q; ++c) {
        RatFunc f = ratfunc(pmul(A, poly_const(F.k, c)), B);
        RatFunc w = one_minus(f);
        if (w.is_zero()) continue;
        bool ok = true;
        for (const auto& [p, m] : factor_poly(w.num).factors)
          if (p.deg() > bound) ok = false;
        if (!ok) continue;
        Symbol inst = make_symbol(F, 2, {{elem(f), elem(w)}});
        for (const auto& v : places) {
          bool touches = v.at_infinity || valuation(v, f) != 0 || valuation(v, w) != 0;
          if (touches && !tame_symbol(v, inst).terms.empty())
            throw internal_error("saturation: a relation instance has a nonzero residue");
        }
        span.push_back(to_bits(relation_coords(kg, inst)));
        ++rep.instances;
      }
    }
  rep.enumerated_rank = int(f2_rank(span));
  rep.saturated = rep.enumerated_rank == rep.lattice_rank;
  return rep;
}

}  // namespace sseq
