#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <json.hpp>
#include <random>
#include <string>

#include "sseq/instance.hpp"
#include "sseq/milnor.hpp"
#include "support.hpp"

using namespace sseq;
using ojson = nlohmann::ordered_json;

namespace {

template <class F>
std::string thrown_message(F fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.what();
  }
  return "";
}

template <class F>
error::kind thrown_kind(F fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.which();
  }
  return error::kind::internal;
}

bool mentions(const std::string& msg, const std::string& word) {
  return msg.find(word) != std::string::npos;
}

// take a valid serialized instance, edit the tree, hand the result back
std::string mutate(const std::string& base, const std::function<void(ojson&)>& edit) {
  ojson j = ojson::parse(base);
  edit(j);
  return j.dump(2) + "\n";
}

void check_round_trip(const Instance& x) {
  std::string text = serialize_instance(x);
  Instance y = parse_instance(text);
  CHECK(y == x);
  CHECK(serialize_instance(y) == text);
}

}  // namespace

TEST_CASE("shipped instances round trip byte for byte") {
  for (const char* name : {"z4", "killing", "sl3", "secondary"}) {
    CAPTURE(name);
    check_round_trip(fixture_instance(name));
  }

  Instance z4 = fixture_instance("z4");
  CHECK(z4.format_version == "1");
  CHECK(z4.metadata.d == 1);
  CHECK(z4.metadata.s == 3);
  CHECK_FALSE(z4.metadata.twist.has_value());
  CHECK_FALSE(z4.secondary.has_value());

  Instance sl3 = fixture_instance("sl3");
  CHECK(sl3.metadata.d == 2);
  CHECK_FALSE(sl3.metadata.s.has_value());

  Instance sec = fixture_instance("secondary");
  CHECK(sec.metadata.twist == std::string("O(1)"));
  REQUIRE(sec.secondary.has_value());
  CHECK(invariants(sec.secondary->target).to_string() == "Z/2");

  std::string msg = thrown_message([] { fixture_instance("nope"); });
  CHECK(mentions(msg, "unknown name 'nope'"));
  CHECK(mentions(msg, "available"));
}

TEST_CASE("generated filtrations survive the round trip") {
  check_round_trip(Instance{"1", {}, gersten_filtered(LineSpace::projective, 3, 1, 2, false, true), {}});
  check_round_trip(Instance{"1", {}, gersten_filtered(LineSpace::projective, 3, 1, 2, true, false), {}});
  check_round_trip(Instance{"1", {}, gersten_filtered(LineSpace::affine, 3, 1, 2, false, true), {}});

  std::mt19937 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    CAPTURE(trial);
    InstanceMetadata m;
    if (trial % 2) m.d = 1;
    if (trial % 3 == 0) m.s = 2;
    check_round_trip(Instance{"1", m, sseq_test::random_filtered(rng), {}});
  }
}

TEST_CASE("instances read back from disk unchanged") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "sseq-instance-test";
  fs::create_directories(dir);
  std::string path = (dir / "z4.json").string();

  Instance x = fixture_instance("z4");
  write_instance_file(x, path);
  Instance y = read_instance_file(path);
  CHECK(y == x);
  std::remove(path.c_str());

  std::string msg = thrown_message([&] { read_instance_file((dir / "missing.json").string()); });
  CHECK(mentions(msg, "cannot open"));
  CHECK(thrown_kind([&] { write_instance_file(x, (dir / "no" / "such" / "dir.json").string()); }) ==
        error::kind::invalid);
}

TEST_CASE("the parser enforces the schema") {
  std::string base = serialize_instance(fixture_instance("z4"));

  CHECK(mentions(thrown_message([] { parse_instance("{"); }), "not valid JSON"));
  CHECK(mentions(thrown_message([] { parse_instance("[]"); }), "must hold a JSON object"));

  auto diag = [&](const std::function<void(ojson&)>& edit) {
    return thrown_message([&] { parse_instance(mutate(base, edit)); });
  };

  CHECK(mentions(diag([](ojson& j) { j.erase("format_version"); }), "missing 'format_version'"));
  CHECK(mentions(diag([](ojson& j) { j["format_version"] = 1; }), "must be a string"));
  CHECK(mentions(diag([](ojson& j) { j["comment"] = "hi"; }), "unknown key 'comment'"));
  CHECK(mentions(diag([](ojson& j) { j["metadata"]["author"] = "x"; }), "unknown key 'author'"));
  CHECK(mentions(diag([](ojson& j) { j["metadata"]["d"] = 1.5; }), "must be a plain integer"));
  CHECK(mentions(diag([](ojson& j) { j["metadata"]["d"] = 1e99; }), "must be a plain integer"));
  CHECK(mentions(diag([](ojson& j) { j["complex"]["groups"] = ojson::array(); }), "nonempty"));
  CHECK(mentions(diag([](ojson& j) { j["complex"]["differentials"] = ojson::array(); }),
                 "one entry less"));
  CHECK(mentions(diag([](ojson& j) { j["complex"]["groups"][0]["relations"]["entries"] = {1, 2}; }),
                 "wrong length"));
  CHECK(mentions(diag([](ojson& j) { j["complex"]["differentials"][0]["entries"][0] = 0.5; }),
                 "must be a plain integer"));
  CHECK(mentions(diag([](ojson& j) { j["complex"]["differentials"][0]["rows"] = -1; }),
                 "negative shape"));
  CHECK(mentions(diag([](ojson& j) { j["complex"]["groups"][0]["labels"] = 7; }),
                 "labels must be an array"));
  CHECK(mentions(diag([](ojson& j) { j["filtration"].erase("p_min"); }), "missing 'p_min'"));
  CHECK(mentions(diag([](ojson& j) { j["filtration"]["levels"][0]["level"] = 99; }),
                 "outside (p_min, p_max]"));
  CHECK(mentions(diag([](ojson& j) { j["filtration"]["levels"][0]["degree"] = 7; }),
                 "outside the complex degrees"));
  CHECK(mentions(diag([](ojson& j) {
                   std::swap(j["filtration"]["levels"][0], j["filtration"]["levels"][1]);
                 }),
                 "sorted by (level, degree)"));
  CHECK(mentions(diag([](ojson& j) { j["filtration"]["levels"].erase(0); }), "exactly once"));
  CHECK(mentions(diag([](ojson& j) {
                   ojson copy = j["filtration"]["levels"][0];
                   j["filtration"]["levels"].insert(j["filtration"]["levels"].begin(), copy);
                 }),
                 "sorted by (level, degree)"));
  CHECK(mentions(diag([](ojson& j) { j["filtration"]["levels"][0]["note"] = 1; }),
                 "unknown key 'note'"));

  // versions other than "1" are refused as unsupported, not invalid
  std::string v2 = mutate(base, [](ojson& j) { j["format_version"] = "2"; });
  CHECK(thrown_kind([&] { parse_instance(v2); }) == error::kind::unsupported);
  CHECK(mentions(thrown_message([&] { parse_instance(v2); }), "unsupported format_version '2'"));
  CHECK(thrown_kind([&] { parse_instance("{"); }) == error::kind::invalid);
}

TEST_CASE("library rejections keep their kind and gain a location") {
  // d following d fails to vanish: flagged as structural, pointed at the complex
  ojson j;
  j["format_version"] = "1";
  j["metadata"] = ojson::object();
  ojson z = {{"generators", 1}, {"relations", {{"rows", 1}, {"cols", 0}, {"entries", ojson::array()}}}};
  j["complex"] = {{"lo", 0},
                  {"groups", {z, z, z}},
                  {"differentials",
                   {{{"rows", 1}, {"cols", 1}, {"entries", {2}}},
                    {{"rows", 1}, {"cols", 1}, {"entries", {3}}}}}};
  j["filtration"] = {{"p_min", 0}, {"p_max", 0}, {"levels", ojson::array()}};
  std::string text = j.dump(2) + "\n";
  CHECK(thrown_kind([&] { parse_instance(text); }) == error::kind::structural);
  CHECK(mentions(thrown_message([&] { parse_instance(text); }), "instance: complex:"));

  // a deeper level that fails to sit inside the previous one
  ojson f;
  f["format_version"] = "1";
  f["metadata"] = ojson::object();
  f["complex"] = {{"lo", 0}, {"groups", {z}}, {"differentials", ojson::array()}};
  f["filtration"] = {{"p_min", 0},
                     {"p_max", 2},
                     {"levels",
                      {{{"level", 1},
                        {"degree", 0},
                        {"generators", {{"rows", 1}, {"cols", 0}, {"entries", ojson::array()}}}},
                       {{"level", 2},
                        {"degree", 0},
                        {"generators", {{"rows", 1}, {"cols", 1}, {"entries", {1}}}}}}}};
  std::string ftext = f.dump(2) + "\n";
  CHECK(thrown_kind([&] { parse_instance(ftext); }) == error::kind::structural);
  CHECK(mentions(thrown_message([&] { parse_instance(ftext); }), "instance: filtration:"));

  // negative generator count is caught by the group constructor, not the schema
  std::string base = serialize_instance(fixture_instance("z4"));
  std::string gmsg = thrown_message([&] {
    parse_instance(mutate(base, [](ojson& j2) { j2["complex"]["groups"][0]["generators"] = -1; }));
  });
  CHECK(mentions(gmsg, "instance: complex.groups[0]:"));
}

TEST_CASE("secondary blocks are checked at the door") {
  std::string base = serialize_instance(fixture_instance("secondary"));

  std::string msg = thrown_message([&] {
    parse_instance(mutate(base, [](ojson& j) { j["secondary"]["class"] = {1, 0}; }));
  });
  CHECK(mentions(msg, "class must live in the target group"));
  CHECK_THROWS_AS(parse_instance(mutate(base,
                                        [](ojson& j) {
                                          j["secondary"]["reduction"]["rows"] = 3;
                                          j["secondary"]["reduction"]["entries"] = {1, 0, 0};
                                        })),
                  error);
  CHECK(mentions(thrown_message([&] {
                   parse_instance(mutate(base, [](ojson& j) { j["secondary"].erase("operation"); }));
                 }),
                 "missing 'operation'"));

  // the shipped block: the twisted operation vanishes, so the cokernel is the
  // whole target and the lifted class survives
  Instance sec = fixture_instance("secondary");
  SecondaryPipeline pipe = secondary_pipeline(*sec.secondary);
  SecondaryObstruction so = secondary_obstruction(pipe);
  CHECK(invariants(so.cokernel).to_string() == "Z/2");
  CHECK_FALSE(so.zero);

  // an onto operation leaves nothing: every class dies in the cokernel
  SecondaryBlock onto{Presentation::free_group(1), Presentation::cyclic(2), Presentation::cyclic(2),
                      Mat::identity(1), Mat::identity(1), Vec{Int(1)}};
  SecondaryObstruction dead = secondary_obstruction(secondary_pipeline(onto));
  CHECK(invariants(dead.cokernel).is_zero());
  CHECK(dead.zero);
}
