#include <filesystem>

#include "doctest.h"
#include "symcap/domain_io.hpp"

using namespace symcap;

namespace {
std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "symcap_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}
}  // namespace

TEST_CASE("rationals as strings") {
  CHECK(rational_to_json(make_rational(6, 4)) == "3/2");
  CHECK(rational_to_json(Rational(5)) == "5");
  CHECK(rational_from_json(Json("3/2")) == make_rational(3, 2));
  CHECK(rational_from_json(Json(7)) == 7);
  CHECK_THROWS_AS(rational_from_json(Json(1.5)), FormatError);
  CHECK(integer_from_json(Json("123456789012345678901234567890")) == Integer("123456789012345678901234567890", 10));
}

TEST_CASE("domain descriptions round trip") {
  std::vector<Domain> ds{Domain{Ellipsoid::ball(make_rational(3, 2))}, Domain{Ellipsoid(1, 5)},
                         Domain{MomentProfile({{0, 3}, {1, 1}, {2, 0}})},
                         Domain{WeightMultiset({{make_rational(1, 2), Integer(3)}, {make_rational(1, 7), Integer("100000000000000000000", 10)}})}};
  for (const auto& d : ds) {
    Json j = to_json(d);
    DomainSpec s = domain_spec_from_json(Json::parse(j.dump()));
    REQUIRE(s.domain.has_value());
    CHECK(*s.domain == d);
  }
}

TEST_CASE("quasiflat descriptions") {
  DomainSpec s = domain_spec_from_json(Json::parse(R"({"type":"quasiflat","params":["64","4096"]})"));
  REQUIRE(s.params);
  CHECK(s.params->B == std::vector<Rational>{64, 4096});
  REQUIRE(s.domain);
  CHECK(std::get<WeightMultiset>(*s.domain) == build_weights(*s.params));
  DomainSpec irr = domain_spec_from_json(Json::parse(R"({"type":"quasiflat","params":["8","80"]})"));
  CHECK_FALSE(irr.domain.has_value());
  CapacitySource src = capacity_source(irr);
  CHECK_FALSE(src.exact);
  DomainSpec pad = domain_spec_from_json(
      Json::parse(R"({"type":"quasiflat","params":["64"],"padding":{"count":"10","bound":"1/1000"}})"));
  REQUIRE(pad.domain);
  CHECK(std::get<WeightMultiset>(*pad.domain).class_count() == 2);
}

TEST_CASE("malformed descriptions name the problem") {
  CHECK_THROWS_WITH_AS(domain_spec_from_json(Json::parse(R"({"a":"1"})")), doctest::Contains("type"), FormatError);
  CHECK_THROWS_WITH_AS(domain_spec_from_json(Json::parse(R"({"type":"torus"})")), doctest::Contains("torus"),
                       FormatError);
  CHECK_THROWS_WITH_AS(domain_spec_from_json(Json::parse(R"({"type":"ellipsoid","a":"1"})")), doctest::Contains("\"b\""),
                       FormatError);
  CHECK_THROWS_AS(domain_spec_from_json(Json::parse(R"({"type":"ball","a":"-1"})")), InvalidDomain);
}

TEST_CASE("files") {
  auto path = scratch("ball.json");
  write_text_file(path, R"({"type":"ball","a":"2"})");
  DomainSpec s = load_domain_spec(path);
  CHECK(std::get<Ellipsoid>(*s.domain) == Ellipsoid::ball(2));
  auto bad = scratch("bad.json");
  write_text_file(bad, "{not json");
  CHECK_THROWS_WITH_AS(load_domain_spec(bad), doctest::Contains("bad.json"), FormatError);
  CHECK_THROWS_WITH_AS(write_text_file("/nonexistent_dir_xyz/out.csv", "x"), doctest::Contains("/nonexistent_dir_xyz"),
                       Error);
  CHECK_THROWS_WITH_AS(read_text_file(scratch("missing.json")), doctest::Contains("missing.json"), Error);
}

TEST_CASE("capacity result serialization") {
  CapacityResult r{make_rational(3, 2), 2, false, {}};
  Json j = to_json(Integer(7), r);
  CHECK(j["k"] == "7");
  CHECK(j["value"] == "3/2");
  CHECK(j["upper"] == "2");
  CHECK(j["exact"] == false);
}

TEST_CASE("csv quoting") {
  CsvTable t{{"a", "b"}, {{"1", "x,y"}, {"say \"hi\"", "2"}}};
  CHECK(t.str() == "a,b\n1,\"x,y\"\n\"say \"\"hi\"\"\",2\n");
}
