#include "sseq/instance.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sseq/chow.hpp"
#include "sseq/errors.hpp"
#include "sseq/fixtures.hpp"

namespace sseq {

using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw invalid_error("instance: " + msg); }

const ojson& field(const ojson& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where + " must be an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where + " is missing '" + key + "'");
  return *it;
}

void reject_unknown(const ojson& j, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) bad(where + " has an unknown key '" + it.key() + "'");
  }
}

long as_long(const ojson& j, const std::string& where) {
  if (j.is_number_unsigned()) {
    auto u = j.get<unsigned long long>();
    if (u > static_cast<unsigned long long>(std::numeric_limits<long>::max()))
      bad(where + " exceeds the integer range of the format");
    return long(u);
  }
  if (!j.is_number_integer()) bad(where + " must be a plain integer");
  auto v = j.get<long long>();
  if (v < std::numeric_limits<long>::min() || v > std::numeric_limits<long>::max())
    bad(where + " exceeds the integer range of the format");
  return long(v);
}

int as_int(const ojson& j, const std::string& where) {
  long v = as_long(j, where);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    bad(where + " exceeds the integer range of the format");
  return int(v);
}

std::string as_string(const ojson& j, const std::string& where) {
  if (!j.is_string()) bad(where + " must be a string");
  return j.get<std::string>();
}

Mat mat_from(const ojson& j, const std::string& where) {
  reject_unknown(j, {"rows", "cols", "entries"}, where);
  int rows = as_int(field(j, "rows", where), where + ".rows");
  int cols = as_int(field(j, "cols", where), where + ".cols");
  if (rows < 0 || cols < 0) bad(where + " has negative shape");
  const ojson& e = field(j, "entries", where);
  if (!e.is_array()) bad(where + ".entries must be an array");
  if (long(e.size()) != long(rows) * long(cols)) bad(where + ".entries has the wrong length");
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k)
      m.at(i, k) = as_long(e[size_t(i) * size_t(cols) + size_t(k)],
                           where + ".entries[" + std::to_string(i * cols + k) + "]");
  return m;
}

long int_as_long(const Int& x, const std::string& where) {
  if (!x.fits_slong_p()) bad(where + " exceeds the integer range of the format");
  return x.get_si();
}

ojson mat_to(const Mat& m, const std::string& where) {
  ojson j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  ojson e = ojson::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int k = 0; k < m.cols(); ++k) e.push_back(int_as_long(m.at(i, k), where));
  j["entries"] = std::move(e);
  return j;
}

Presentation group_from(const ojson& j, const std::string& where) {
  reject_unknown(j, {"generators", "relations", "labels"}, where);
  int gens = as_int(field(j, "generators", where), where + ".generators");
  Mat rels = mat_from(field(j, "relations", where), where + ".relations");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const ojson& l = j["labels"];
    if (!l.is_array()) bad(where + ".labels must be an array");
    for (size_t i = 0; i < l.size(); ++i)
      labels.push_back(as_string(l[i], where + ".labels[" + std::to_string(i) + "]"));
  }
  try {
    return Presentation(gens, std::move(rels), std::move(labels));
  } catch (const error& e) {
    throw error(e.which(), "instance: " + where + ": " + e.what());
  }
}

ojson group_to(const Presentation& g, const std::string& where) {
  ojson j;
  j["generators"] = g.generators();
  j["relations"] = mat_to(g.relations(), where + ".relations");
  if (!g.labels().empty()) j["labels"] = g.labels();
  return j;
}

Vec vec_from(const ojson& j, const std::string& where) {
  if (!j.is_array()) bad(where + " must be an array");
  Vec v;
  for (size_t i = 0; i < j.size(); ++i)
    v.push_back(Int(as_long(j[i], where + "[" + std::to_string(i) + "]")));
  return v;
}

ojson vec_to(const Vec& v, const std::string& where) {
  ojson j = ojson::array();
  for (const Int& x : v) j.push_back(int_as_long(x, where));
  return j;
}

CochainComplex complex_from(const ojson& j) {
  reject_unknown(j, {"lo", "groups", "differentials"}, "complex");
  int lo = as_int(field(j, "lo", "complex"), "complex.lo");
  const ojson& gs = field(j, "groups", "complex");
  if (!gs.is_array() || gs.empty()) bad("complex.groups must be a nonempty array");
  std::vector<Presentation> groups;
  for (size_t i = 0; i < gs.size(); ++i)
    groups.push_back(group_from(gs[i], "complex.groups[" + std::to_string(i) + "]"));
  const ojson& ds = field(j, "differentials", "complex");
  if (!ds.is_array()) bad("complex.differentials must be an array");
  if (ds.size() + 1 != gs.size())
    bad("complex.differentials must have one entry less than complex.groups");
  std::vector<Mat> diffs;
  for (size_t i = 0; i < ds.size(); ++i)
    diffs.push_back(mat_from(ds[i], "complex.differentials[" + std::to_string(i) + "]"));
  try {
    return CochainComplex(lo, std::move(groups), std::move(diffs));
  } catch (const error& e) {
    throw error(e.which(), "instance: complex: " + std::string(e.what()));
  }
}

ojson complex_to(const CochainComplex& c) {
  ojson j;
  j["lo"] = c.lo();
  ojson gs = ojson::array();
  for (int i = c.lo(); i <= c.hi(); ++i)
    gs.push_back(group_to(c.group(i), "complex.groups[" + std::to_string(i - c.lo()) + "]"));
  j["groups"] = std::move(gs);
  ojson ds = ojson::array();
  for (int i = c.lo(); i < c.hi(); ++i)
    ds.push_back(
        mat_to(c.differential_matrix(i), "complex.differentials[" + std::to_string(i - c.lo()) + "]"));
  j["differentials"] = std::move(ds);
  return j;
}

FilteredComplex filtration_from(const ojson& j, CochainComplex c) {
  reject_unknown(j, {"p_min", "p_max", "levels"}, "filtration");
  int p_min = as_int(field(j, "p_min", "filtration"), "filtration.p_min");
  int p_max = as_int(field(j, "p_max", "filtration"), "filtration.p_max");
  const ojson& ls = field(j, "levels", "filtration");
  if (!ls.is_array()) bad("filtration.levels must be an array");

  // canonical coverage: every (level, degree) with p_min < level <= p_max,
  // lo <= degree <= hi, exactly once and sorted
  std::map<std::pair<int, int>, Mat> gens;
  std::pair<int, int> prev{p_min, c.hi()};
  for (size_t k = 0; k < ls.size(); ++k) {
    std::string where = "filtration.levels[" + std::to_string(k) + "]";
    reject_unknown(ls[k], {"level", "degree", "generators"}, where);
    int level = as_int(field(ls[k], "level", where), where + ".level");
    int degree = as_int(field(ls[k], "degree", where), where + ".degree");
    if (level <= p_min || level > p_max) bad(where + " lies outside (p_min, p_max]");
    if (degree < c.lo() || degree > c.hi()) bad(where + " lies outside the complex degrees");
    std::pair<int, int> key{level, degree};
    if (!(prev < key)) bad("filtration.levels must be sorted by (level, degree)");
    prev = key;
    gens.emplace(key, mat_from(field(ls[k], "generators", where), where + ".generators"));
  }
  long expected = long(std::max(0, p_max - p_min)) * long(c.hi() - c.lo() + 1);
  if (long(ls.size()) != expected)
    bad("filtration.levels must cover every (level, degree) pair above p_min exactly once");
  try {
    return FilteredComplex(std::move(c), p_min, p_max, std::move(gens));
  } catch (const error& e) {
    throw error(e.which(), "instance: filtration: " + std::string(e.what()));
  }
}

ojson filtration_to(const FilteredComplex& f) {
  ojson j;
  j["p_min"] = f.p_min();
  j["p_max"] = f.p_max();
  ojson ls = ojson::array();
  for (int level = f.p_min() + 1; level <= f.p_max(); ++level)
    for (int i = f.complex().lo(); i <= f.complex().hi(); ++i) {
      ojson e;
      e["level"] = level;
      e["degree"] = i;
      e["generators"] = mat_to(f.level(level, i).gens(), "filtration.levels.generators");
      ls.push_back(std::move(e));
    }
  j["levels"] = std::move(ls);
  return j;
}

SecondaryBlock secondary_from(const ojson& j) {
  reject_unknown(j, {"integral", "mod2", "target", "reduction", "operation", "class"}, "secondary");
  SecondaryBlock b{group_from(field(j, "integral", "secondary"), "secondary.integral"),
                   group_from(field(j, "mod2", "secondary"), "secondary.mod2"),
                   group_from(field(j, "target", "secondary"), "secondary.target"),
                   mat_from(field(j, "reduction", "secondary"), "secondary.reduction"),
                   mat_from(field(j, "operation", "secondary"), "secondary.operation"),
                   vec_from(field(j, "class", "secondary"), "secondary.class")};
  secondary_pipeline(b);  // reject unusable blocks at the door
  return b;
}

ojson secondary_to(const SecondaryBlock& b) {
  ojson j;
  j["integral"] = group_to(b.integral, "secondary.integral");
  j["mod2"] = group_to(b.mod2, "secondary.mod2");
  j["target"] = group_to(b.target, "secondary.target");
  j["reduction"] = mat_to(b.reduction, "secondary.reduction");
  j["operation"] = mat_to(b.operation, "secondary.operation");
  j["class"] = vec_to(b.lifted, "secondary.class");
  return j;
}

InstanceMetadata metadata_from(const ojson& j) {
  reject_unknown(j, {"d", "s", "twist"}, "metadata");
  InstanceMetadata m;
  if (j.contains("d")) m.d = as_int(j["d"], "metadata.d");
  if (j.contains("s")) m.s = as_int(j["s"], "metadata.s");
  if (j.contains("twist")) m.twist = as_string(j["twist"], "metadata.twist");
  return m;
}

ojson metadata_to(const InstanceMetadata& m) {
  ojson j = ojson::object();
  if (m.d) j["d"] = *m.d;
  if (m.s) j["s"] = *m.s;
  if (m.twist) j["twist"] = *m.twist;
  return j;
}

}  // namespace

bool SecondaryBlock::operator==(const SecondaryBlock& o) const {
  return integral == o.integral && mod2 == o.mod2 && target == o.target &&
         reduction == o.reduction && operation == o.operation && lifted == o.lifted;
}

bool Instance::operator==(const Instance& o) const {
  if (format_version != o.format_version || !(metadata == o.metadata)) return false;
  if (!(filtration.complex() == o.filtration.complex())) return false;
  if (filtration.p_min() != o.filtration.p_min() || filtration.p_max() != o.filtration.p_max())
    return false;
  for (int p = filtration.p_min(); p <= filtration.p_max(); ++p)
    for (int i = filtration.complex().lo(); i <= filtration.complex().hi(); ++i)
      if (!filtration.level(p, i).equals(o.filtration.level(p, i))) return false;
  return secondary == o.secondary;
}

Instance parse_instance(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("the file must hold a JSON object");
  reject_unknown(j, {"format_version", "metadata", "complex", "filtration", "secondary"}, "instance");
  std::string version = as_string(field(j, "format_version", "instance"), "format_version");
  if (version != "1")
    throw unsupported_error("instance: unsupported format_version '" + version + "'");
  InstanceMetadata meta = metadata_from(field(j, "metadata", "instance"));
  CochainComplex c = complex_from(field(j, "complex", "instance"));
  FilteredComplex f = filtration_from(field(j, "filtration", "instance"), std::move(c));
  std::optional<SecondaryBlock> sec;
  if (j.contains("secondary")) sec = secondary_from(j["secondary"]);
  return Instance{std::move(version), std::move(meta), std::move(f), std::move(sec)};
}

std::string serialize_instance(const Instance& ins) {
  ojson j;
  j["format_version"] = ins.format_version;
  j["metadata"] = metadata_to(ins.metadata);
  j["complex"] = complex_to(ins.filtration.complex());
  j["filtration"] = filtration_to(ins.filtration);
  if (ins.secondary) j["secondary"] = secondary_to(*ins.secondary);
  return j.dump(2) + "\n";
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void write_instance_file(const Instance& ins, const std::string& path) {
  std::string text = serialize_instance(ins);
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write '" + path + "'");
  out << text;
  if (!out) bad("cannot write '" + path + "'");
}

SecondaryPipeline secondary_pipeline(const SecondaryBlock& b) {
  Homo reduction(b.integral, b.mod2, b.reduction);
  Homo operation(b.mod2, b.target, b.operation);
  if (int(b.lifted.size()) != b.target.generators())
    throw invalid_error("secondary: the class must live in the target group");
  return SecondaryPipeline{b.integral, b.mod2, std::move(reduction), std::move(operation), b.lifted};
}

Instance fixture_instance(const std::string& name) {
  if (name == "z4")
    return Instance{"1", InstanceMetadata{1, 3, std::nullopt}, z4_fixture(), std::nullopt};
  if (name == "killing")
    return Instance{"1", InstanceMetadata{1, 3, std::nullopt}, killing_fixture(), std::nullopt};
  if (name == "sl3")
    return Instance{"1", InstanceMetadata{2, std::nullopt, std::nullopt}, sl3_band(), std::nullopt};
  if (name == "secondary") {
    // hyperplane-twisted band on the plane, with the block aimed at the top
    // spot: the operation out of codimension one cancels, so the lifted
    // square generates the cokernel, and the stable page agrees spot for spot
    ChowRing p2 = ChowRing::projective(2);
    ChowClass h = chow_var(p2, 0);
    SecondaryBlock b{Presentation(1, Mat(1, 0), {"h"}),
                     chow_group(p2, 1),
                     chow_group(p2, 2),
                     Mat::identity(1),
                     twisted_phi_matrix(p2, h, 1),
                     Vec{Int(1)}};
    return Instance{"1", InstanceMetadata{2, std::nullopt, std::string("O(1)")},
                    diagonal_differential_assembly(p2, h, 1, 1), b};
  }
  throw invalid_error("fixtures: unknown name '" + name +
                      "' (available: z4, killing, sl3, secondary)");
}

}  // namespace sseq
