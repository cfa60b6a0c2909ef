#include "sseq/cli.hpp"

#include <CLI11.hpp>

#include "sseq/bodies.hpp"
#include <algorithm>
#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "sseq/chow.hpp"
#include "sseq/errors.hpp"
#include "sseq/instance.hpp"
#include "sseq/milnor.hpp"
#include "sseq/report.hpp"

namespace sseq {
namespace {

using ojson = nlohmann::ordered_json;

std::string read_text(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw invalid_error("cli: cannot open '" + path + "'");
  buf << f.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw invalid_error("cli: cannot write '" + out_path + "'");
  f << text;
  if (!f) throw invalid_error("cli: cannot write '" + out_path + "'");
}

struct LoadedInstance {
  Instance ins;
  std::string canonical;
  std::string digest;
};

LoadedInstance load(const std::string& path, std::istream& in) {
  Instance ins = parse_instance(read_text(path, in));
  std::string canonical = serialize_instance(ins);
  std::string digest = fnv1a64_hex(canonical);
  return LoadedInstance{std::move(ins), std::move(canonical), std::move(digest)};
}

ojson int_json(const Int& x) {
  if (x.fits_slong_p()) return ojson(x.get_si());
  return ojson(x.get_str());
}

ojson vec_json(const Vec& v) {
  ojson a = ojson::array();
  for (const Int& x : v) a.push_back(int_json(x));
  return a;
}

std::string inv_str(const Presentation& g) { return invariants(g).to_string(); }

class Timer {
 public:
  long stop() const {
    auto dt = std::chrono::steady_clock::now() - start_;
    return long(std::chrono::duration_cast<std::chrono::milliseconds>(dt).count());
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// nonzero spots of one page in display coordinates, sorted
ojson spots_json(const Page& pg) {
  std::vector<std::tuple<int, int, std::string>> rows;
  for (const auto& [key, entry] : pg.entries()) {
    Invariants v = invariants(entry.group());
    if (v.is_zero()) continue;
    auto [p, q] = display_position(key.first, key.second);
    rows.emplace_back(p, q, v.to_string());
  }
  std::sort(rows.begin(), rows.end());
  ojson a = ojson::array();
  for (const auto& [p, q, s] : rows) {
    ojson e;
    e["p"] = p;
    e["q"] = q;
    e["group"] = s;
    a.push_back(std::move(e));
  }
  return a;
}

ojson diffs_json(const Page& pg) {
  std::vector<std::tuple<int, int, int, int, bool, bool>> rows;
  for (const auto& [key, entry] : pg.entries()) {
    (void)entry;
    Homo d = pg.differential(key.first, key.second);
    if (d.is_zero_map()) continue;
    auto [p, q] = display_position(key.first, key.second);
    auto [tp, tq] = display_position(key.first + pg.r(), key.second - pg.r() + 1);
    rows.emplace_back(p, q, tp, tq, d.is_injective(), d.is_surjective());
  }
  std::sort(rows.begin(), rows.end());
  ojson a = ojson::array();
  for (const auto& [p, q, tp, tq, inj, sur] : rows) {
    ojson e;
    e["from"] = ojson::array({p, q});
    e["to"] = ojson::array({tp, tq});
    e["injective"] = inj;
    e["surjective"] = sur;
    e["isomorphism"] = inj && sur;
    a.push_back(std::move(e));
  }
  return a;
}

ojson one_page_json(const FilteredComplex& f, int display_n) {
  Page pg = page(f, internal_page(display_n));
  ojson j;
  j["page"] = display_n;
  j["spots"] = spots_json(pg);
  j["differentials"] = diffs_json(pg);
  return j;
}

// pages 2..r_max, each worker on its own copy of the instance so nothing is
// shared; output order is fixed by the page index, not by scheduling
ojson pages_json(const Instance& ins, const std::string& canonical, int r_max, int threads) {
  int count = r_max - 1;
  std::vector<ojson> result(static_cast<size_t>(count));
  if (threads <= 1 || count <= 1) {
    for (int k = 0; k < count; ++k) result[size_t(k)] = one_page_json(ins.filtration, k + 2);
  } else {
    int workers = std::min(threads, count);
    std::vector<std::exception_ptr> errs(static_cast<size_t>(workers));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          Instance mine = parse_instance(canonical);
          for (int k = w; k < count; k += workers)
            result[size_t(k)] = one_page_json(mine.filtration, k + 2);
        } catch (...) {
          errs[size_t(w)] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }
  ojson a = ojson::array();
  for (auto& r : result) a.push_back(std::move(r));
  return a;
}

ojson convergence_json(const FilteredComplex& f) {
  ConvergenceData cv = verify_convergence(f);
  ojson j;
  j["stable_page"] = display_page(cv.stable.stable_r);
  j["spots"] = spots_json(cv.stable.infinity());
  ojson coh = ojson::array();
  for (const auto& [n, filt] : cv.filtrations) {
    ojson e;
    e["degree"] = n;
    e["group"] = inv_str(filt.h.group());
    ojson graded = ojson::array();
    for (const auto& [key, sq] : cv.graded) {
      if (key.second != n) continue;
      Invariants v = invariants(sq.group());
      if (v.is_zero()) continue;
      ojson ge;
      ge["level"] = key.first;
      ge["group"] = v.to_string();
      graded.push_back(std::move(ge));
    }
    e["graded"] = std::move(graded);
    coh.push_back(std::move(e));
  }
  j["cohomology"] = std::move(coh);
  return j;
}

ojson metadata_json(const InstanceMetadata& m) {
  ojson j = ojson::object();
  if (m.d) j["d"] = *m.d;
  if (m.s) j["s"] = *m.s;
  if (m.twist) j["twist"] = *m.twist;
  return j;
}

ojson validate_body_obj(const Instance& ins) {
  const CochainComplex& c = ins.filtration.complex();
  ojson body;
  body["verdict"] = "ok";
  body["complex"] = ojson{{"lo", c.lo()}, {"hi", c.hi()}};
  body["filtration"] = ojson{{"p_min", ins.filtration.p_min()}, {"p_max", ins.filtration.p_max()}};
  ojson groups = ojson::array();
  for (int i = c.lo(); i <= c.hi(); ++i) {
    ojson e;
    e["degree"] = i;
    e["group"] = inv_str(c.group(i));
    groups.push_back(std::move(e));
  }
  body["groups"] = std::move(groups);
  body["metadata"] = metadata_json(ins.metadata);
  body["secondary"] = bool(ins.secondary);
  return body;
}

int cmd_validate(const std::string& input, ReportFormat fmt, const std::string& out_path,
                 std::istream& in, std::ostream& out) {
  Timer timer;
  LoadedInstance li = load(input, in);
  Report r;
  r.command = "validate --input " + input;
  r.digest = li.digest;
  r.body = validate_body_obj(li.ins);
  r.elapsed_ms = timer.stop();
  emit(render_report(r, fmt), out_path, out);
  return 0;
}

ojson pages_body_obj(const Instance& ins, const std::string& canonical, int r_max, int threads) {
  if (r_max < 2) throw invalid_error("pages: --r-max must be at least 2");
  if (threads < 1) throw invalid_error("pages: --threads must be positive");
  ojson body;
  body["pages"] = pages_json(ins, canonical, r_max, threads);
  body["infinity"] = convergence_json(ins.filtration);
  return body;
}

int cmd_pages(const std::string& input, int r_max, int threads, ReportFormat fmt,
              const std::string& out_path, std::istream& in, std::ostream& out) {
  if (r_max < 2) throw invalid_error("pages: --r-max must be at least 2");
  if (threads < 1) throw invalid_error("pages: --threads must be positive");
  Timer timer;
  LoadedInstance li = load(input, in);
  Report r;
  r.command = "pages --input " + input + " --r-max " + std::to_string(r_max);
  r.digest = li.digest;
  r.body = pages_body_obj(li.ins, li.canonical, r_max, threads);
  r.elapsed_ms = timer.stop();
  emit(render_report(r, fmt), out_path, out);
  return 0;
}

std::string class_echo(const std::vector<long>& cls) {
  std::string s;
  for (size_t i = 0; i < cls.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(cls[i]);
  }
  return s;
}

int resolve_degree(const Instance& ins, std::optional<int> degree_opt) {
  std::optional<int> degree = degree_opt ? degree_opt : ins.metadata.d;
  if (!degree)
    throw invalid_error("tower: no --degree given and the instance declares no dimension");
  return *degree;
}

ojson tower_body_obj(const Instance& ins, int degree, const std::vector<long>& cls) {
  Vec alpha;
  for (long v : cls) alpha.push_back(Int(v));
  ObstructionTower t = obstruction_tower(ins.filtration, CohomologyClass{degree, alpha}, degree);
  ojson body;
  body["degree"] = t.degree;
  body["class"] = vec_json(t.alpha);
  ojson stages = ojson::array();
  for (const ObstructionStage& st : t.stages) {
    ojson e;
    e["n"] = st.n;
    e["level"] = st.level;
    e["value"] = vec_json(st.value);
    e["zero"] = st.zero;
    stages.push_back(std::move(e));
  }
  body["stages"] = std::move(stages);
  body["vanishes"] = t.vanishes;
  body["first_nonzero"] = t.first_nonzero;
  if (ins.metadata.s) {
    StageBoundCheck sb = check_stage_bound(ins.filtration, degree, *ins.metadata.s);
    ojson e;
    e["declared_s"] = *ins.metadata.s;
    e["last_decisive_stage"] = sb.bound;
    e["respected"] = sb.respected;
    e["violations"] = sb.violations;
    body["stage_bound"] = std::move(e);
  }
  return body;
}

int cmd_tower(const std::string& input, std::optional<int> degree_opt,
              const std::vector<long>& cls, ReportFormat fmt, const std::string& out_path,
              std::istream& in, std::ostream& out) {
  Timer timer;
  LoadedInstance li = load(input, in);
  int degree = resolve_degree(li.ins, degree_opt);
  Report r;
  r.command = "tower --input " + input + " --degree " + std::to_string(degree) + " --class " +
              class_echo(cls);
  r.digest = li.digest;
  r.body = tower_body_obj(li.ins, degree, cls);
  r.elapsed_ms = timer.stop();
  emit(render_report(r, fmt), out_path, out);
  return 0;
}

ojson secondary_body_obj(const Instance& ins) {
  if (!ins.secondary) throw invalid_error("secondary: the instance has no secondary block");
  SecondaryPipeline p = secondary_pipeline(*ins.secondary);
  SecondaryObstruction so = secondary_obstruction(p);
  ojson body;
  body["integral"] = inv_str(p.integral_group);
  body["mod2"] = inv_str(p.mod2_group);
  body["target"] = inv_str(p.operation.target());
  body["cokernel"] = inv_str(so.cokernel);
  body["value"] = vec_json(so.value);
  body["zero"] = so.zero;
  return body;
}

int cmd_secondary(const std::string& input, ReportFormat fmt, const std::string& out_path,
                  std::istream& in, std::ostream& out) {
  Timer timer;
  LoadedInstance li = load(input, in);
  Report r;
  r.command = "secondary --input " + input;
  r.digest = li.digest;
  r.body = secondary_body_obj(li.ins);
  r.elapsed_ms = timer.stop();
  emit(render_report(r, fmt), out_path, out);
  return 0;
}

int cmd_gersten(const std::string& space, long q, int n, int bound, bool mod2, int threads,
                const std::string& out_path, std::ostream& out) {
  LineSpace sp;
  if (space == "P1")
    sp = LineSpace::projective;
  else if (space == "A1")
    sp = LineSpace::affine;
  else
    throw invalid_error("gersten: space must be P1 or A1");
  FilteredComplex f = gersten_filtered(sp, q, n, bound, mod2, /*two_level=*/!mod2, threads);
  Instance ins{"1", InstanceMetadata{}, std::move(f), std::nullopt};
  emit(serialize_instance(ins), out_path, out);
  return 0;
}

int cmd_fixtures(const std::string& name, const std::string& out_path, std::ostream& out) {
  emit(serialize_instance(fixture_instance(name)), out_path, out);
  return 0;
}

// ring specs are comma lists of name:bound; class specs are sums of monomials
// in those names, like "h^2" or "a*b^2 + a^2*b", with "1" and "0" allowed
std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

ChowRing parse_ring_spec(const std::string& spec) {
  std::vector<std::string> names;
  std::vector<int> bounds;
  for (const std::string& part : split(spec, ',')) {
    std::string p = trim(part);
    size_t colon = p.find(':');
    if (colon == std::string::npos || colon == 0)
      throw invalid_error("sq2: ring spec must look like name:bound[,name:bound...]");
    std::string name = trim(p.substr(0, colon));
    std::string num = trim(p.substr(colon + 1));
    try {
      size_t used = 0;
      int b = std::stoi(num, &used);
      if (used != num.size()) throw std::invalid_argument(num);
      bounds.push_back(b);
    } catch (const std::exception&) {
      throw invalid_error("sq2: ring bound '" + num + "' is not an integer");
    }
    names.push_back(name);
  }
  return ChowRing(std::move(names), std::move(bounds));
}

int variable_index(const ChowRing& r, const std::string& name) {
  for (int i = 0; i < r.variables(); ++i)
    if (r.name(i) == name) return i;
  throw invalid_error("sq2: unknown variable '" + name + "'");
}

ChowClass parse_class_spec(const ChowRing& r, const std::string& spec, int zero_codim) {
  std::string body = trim(spec);
  if (body == "0") return chow_zero(r, zero_codim);
  std::vector<std::vector<int>> monomials;
  int codim = -1;
  for (const std::string& term : split(body, '+')) {
    std::string t = trim(term);
    if (t.empty()) throw invalid_error("sq2: empty term in class spec");
    std::vector<int> e(size_t(r.variables()), 0);
    int total = 0;
    if (t != "1") {
      for (const std::string& factor : split(t, '*')) {
        std::string f = trim(factor);
        size_t caret = f.find('^');
        std::string name = caret == std::string::npos ? f : trim(f.substr(0, caret));
        int exp = 1;
        if (caret != std::string::npos) {
          std::string num = trim(f.substr(caret + 1));
          try {
            size_t used = 0;
            exp = std::stoi(num, &used);
            if (used != num.size()) throw std::invalid_argument(num);
          } catch (const std::exception&) {
            throw invalid_error("sq2: exponent '" + num + "' is not an integer");
          }
        }
        if (exp < 1) throw invalid_error("sq2: exponents must be positive");
        e[size_t(variable_index(r, name))] += exp;
      }
      for (int v : e) total += v;
    }
    if (codim == -1) codim = total;
    if (total != codim) throw invalid_error("chow: inhomogeneous class");
    monomials.push_back(std::move(e));
  }
  return chow_class(r, codim, monomials);
}

std::string ring_echo(const ChowRing& r) {
  std::string s;
  for (int i = 0; i < r.variables(); ++i) {
    if (i) s += ",";
    s += r.name(i) + ":" + std::to_string(r.bound(i));
  }
  return s;
}

ojson sq2_body_obj(const std::string& ring_spec, const std::string& twist_spec,
                   const std::string& class_spec) {
  ChowRing ring = parse_ring_spec(ring_spec);
  ChowClass c1 = parse_class_spec(ring, twist_spec, 1);
  ChowClass x = parse_class_spec(ring, class_spec, 0);
  ChowClass square = sq2(x);
  ChowClass phi = twisted_phi(c1, x);
  ChowClass phi_twice = twisted_phi(c1, phi);
  SuspensionCheck sc = suspension_check(x);
  ojson body;
  body["ring"] = ring_echo(ring);
  body["twist"] = chow_str(c1);
  body["class"] = chow_str(x);
  body["codim"] = x.codim;
  body["sq2"] = chow_str(square);
  body["twisted_phi"] = chow_str(phi);
  body["twisted_phi_twice"] = chow_str(phi_twice);
  body["suspension_commutes"] = sc.commutes;
  return body;
}

int cmd_sq2(const std::string& ring_spec, const std::string& twist_spec,
            const std::string& class_spec, ReportFormat fmt, const std::string& out_path,
            std::ostream& out) {
  Timer timer;
  Report r;
  r.command = "sq2 " + ring_spec + " " + twist_spec + " " + class_spec;
  r.body = sq2_body_obj(ring_spec, twist_spec, class_spec);
  r.elapsed_ms = timer.stop();
  emit(render_report(r, fmt), out_path, out);
  return 0;
}

}  // namespace

std::string validate_body(const Instance& ins) { return validate_body_obj(ins).dump(); }

std::string pages_body(const Instance& ins, int r_max, int threads) {
  return pages_body_obj(ins, serialize_instance(ins), r_max, threads).dump();
}

std::string tower_body(const Instance& ins, std::optional<int> degree,
                       const std::vector<long>& cls) {
  return tower_body_obj(ins, resolve_degree(ins, degree), cls).dump();
}

std::string secondary_body(const Instance& ins) { return secondary_body_obj(ins).dump(); }

std::string sq2_body(const std::string& ring_spec, const std::string& twist_spec,
                     const std::string& class_spec) {
  return sq2_body_obj(ring_spec, twist_spec, class_spec).dump();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact spectral sequences, obstruction towers, and symbol calculus", "sseq"};
  app.require_subcommand(1);

  std::string input, out_path, fmt_name = "text";
  int r_max = 3, threads = 1;
  std::optional<int> degree;
  std::vector<long> cls;
  long seed = 0;
  std::string space, fixture_name;
  long q = 3;
  int weight = 1, bound = 1;
  bool mod2 = false;
  std::string ring_spec, twist_spec, class_spec;

  auto add_io = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--input", input, "instance file, or - for stdin")->required();
    sub->add_option("--out", out_path, "write the result here instead of stdout");
    if (with_format) sub->add_option("--format", fmt_name, "text or json");
    sub->add_option("--seed", seed, "seed echoed for reproducibility; commands are deterministic");
  };

  CLI::App* validate = app.add_subcommand("validate", "parse an instance and check every invariant");
  add_io(validate, true);

  CLI::App* pages = app.add_subcommand("pages", "page-by-page report with the certified stable page");
  add_io(pages, true);
  pages->add_option("--r-max", r_max, "last page to list, numbered from 2");
  pages->add_option("--threads", threads, "parallel page evaluation");

  CLI::App* tower = app.add_subcommand("tower", "successive obstructions of a cocycle");
  add_io(tower, true);
  tower->add_option("--degree", degree, "cohomological degree; defaults to the declared d");
  tower->add_option("--class", cls, "cocycle in generator coordinates, comma separated")
      ->required()
      ->delimiter(',');

  CLI::App* secondary = app.add_subcommand("secondary", "cokernel pipeline of the secondary block");
  add_io(secondary, true);

  CLI::App* gersten = app.add_subcommand("gersten", "write a Gersten instance for the line");
  gersten->add_option("space", space, "P1 or A1")->required();
  gersten->add_option("q", q, "odd prime power order of the constants")->required();
  gersten->add_option("n", weight, "symbol weight")->required();
  gersten->add_option("D", bound, "degree bound on the places")->required();
  gersten->add_flag("--mod2", mod2, "mod-2 coefficients");
  gersten->add_option("--threads", threads, "parallel column assembly");
  gersten->add_option("--out", out_path, "write the instance here instead of stdout");
  gersten->add_option("--seed", seed, "seed echoed for reproducibility");

  CLI::App* sq2cmd = app.add_subcommand("sq2", "squaring operation and its twist on a ring spec");
  sq2cmd->add_option("ring", ring_spec, "variables as name:bound, comma separated")->required();
  sq2cmd->add_option("twist", twist_spec, "codimension-one class, or 0")->required();
  sq2cmd->add_option("class", class_spec, "homogeneous class, like a*b^2 + a^2*b")->required();
  sq2cmd->add_option("--format", fmt_name, "text or json");
  sq2cmd->add_option("--out", out_path, "write the report here instead of stdout");
  sq2cmd->add_option("--seed", seed, "seed echoed for reproducibility");

  CLI::App* fixtures = app.add_subcommand("fixtures", "write a named shipped instance");
  fixtures->add_option("name", fixture_name, "z4, killing, sl3, or secondary")->required();
  fixtures->add_option("--out", out_path, "write the instance here instead of stdout");
  fixtures->add_option("--seed", seed, "seed echoed for reproducibility");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 1;
  }

  try {
    ReportFormat fmt = parse_format(fmt_name);
    std::istream& in = std::cin;
    if (validate->parsed()) return cmd_validate(input, fmt, out_path, in, out);
    if (pages->parsed()) return cmd_pages(input, r_max, threads, fmt, out_path, in, out);
    if (tower->parsed()) return cmd_tower(input, degree, cls, fmt, out_path, in, out);
    if (secondary->parsed()) return cmd_secondary(input, fmt, out_path, in, out);
    if (gersten->parsed()) return cmd_gersten(space, q, weight, bound, mod2, threads, out_path, out);
    if (sq2cmd->parsed()) return cmd_sq2(ring_spec, twist_spec, class_spec, fmt, out_path, out);
    if (fixtures->parsed()) return cmd_fixtures(fixture_name, out_path, out);
    err << "error: no command\n";
    return 1;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return e.which() == error::kind::unsupported ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace sseq
