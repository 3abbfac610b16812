#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "nilred.h"

using nlohmann::json;

namespace {

struct Session {
  nilred_session* s = nilred_session_new();
  ~Session() { nilred_session_free(s); }
};

struct Parsed {
  nilred_algebra** algebras = nullptr;
  size_t count = 0;
  ~Parsed() {
    for (size_t i = 0; i < count; ++i) nilred_algebra_free(algebras[i]);
    nilred_array_free(algebras);
  }
};

std::string take(char* text) {
  REQUIRE(text != nullptr);
  std::string out = text;
  nilred_string_free(text);
  return out;
}

}  // namespace

TEST_CASE("session lifecycle and option validation") {
  Session s;
  REQUIRE(s.s != nullptr);
  CHECK(std::string(nilred_version()).find('.') != std::string::npos);
  CHECK(nilred_session_set_mode(s.s, NILRED_MODE_FLOAT) == NILRED_OK);
  CHECK(nilred_session_set_tolerance(s.s, 1e-7) == NILRED_OK);
  CHECK(nilred_session_set_tolerance(s.s, -1.0) == NILRED_ERR_VALIDATION);
  CHECK(std::string(nilred_session_last_error(s.s)).find("tolerance") !=
        std::string::npos);
}

TEST_CASE("parse exposes names and dimensions through handles") {
  Session s;
  Parsed p;
  const char* text =
      "algebra first { family = H; p = 1; q = 1; }\n"
      "algebra second { dim_v = 2; dim_z = 1; J1 = [[0,1],[-1,0]]; }\n";
  REQUIRE(nilred_parse(s.s, text, &p.algebras, &p.count) == NILRED_OK);
  REQUIRE(p.count == 2);
  CHECK(std::string(nilred_algebra_name(p.algebras[0])) == "first");
  CHECK(nilred_algebra_dim_v(p.algebras[0]) == 8);
  CHECK(nilred_algebra_dim_z(p.algebras[0]) == 3);
  CHECK(std::string(nilred_algebra_name(p.algebras[1])) == "second");
  CHECK(nilred_algebra_dim_v(p.algebras[1]) == 2);
}

TEST_CASE("syntax errors map to the parse status with a message") {
  Session s;
  Parsed p;
  CHECK(nilred_parse(s.s, "algebra ! {}", &p.algebras, &p.count) == NILRED_ERR_PARSE);
  CHECK(std::string(nilred_session_last_error(s.s)).find("line") != std::string::npos);
  CHECK(p.count == 0);
}

TEST_CASE("validation errors map to the validation status") {
  Session s;
  Parsed p;
  CHECK(nilred_parse(s.s, "algebra a { family = H; p = 0; q = 0; }", &p.algebras,
                     &p.count) == NILRED_ERR_VALIDATION);
  CHECK(std::string(nilred_session_last_error(s.s)).find("p + q") != std::string::npos);
}

TEST_CASE("classify emits a JSON document per the schema") {
  Session s;
  Parsed p;
  REQUIRE(nilred_parse(s.s, "algebra a { family = H; p = 2; q = 0; }", &p.algebras,
                       &p.count) == NILRED_OK);
  char* out = nullptr;
  REQUIRE(nilred_classify(s.s, p.algebras[0], NILRED_FORMAT_JSON, &out) == NILRED_OK);
  json doc = json::parse(take(out));
  CHECK(doc["schema"] == 1);
  CHECK(doc["algebras"][0]["naturally_reductive"]["status"] == "naturally_reductive");
}

TEST_CASE("compare emits the headline pair verdicts") {
  Session s;
  Parsed p;
  const char* text =
      "algebra eleven { family = H; p = 1; q = 1; }\n"
      "algebra twenty { family = H; p = 2; q = 0; }\n";
  REQUIRE(nilred_parse(s.s, text, &p.algebras, &p.count) == NILRED_OK);
  char* out = nullptr;
  REQUIRE(nilred_compare(s.s, p.algebras[0], p.algebras[1], NILRED_FORMAT_JSON, &out) ==
          NILRED_OK);
  json doc = json::parse(take(out));
  CHECK(doc["pair"]["dims-equal"] == true);
  CHECK(doc["pair"]["summaries-equal"] == true);
  CHECK(doc["pair"]["nr-differs"] == true);
}

TEST_CASE("export text re-parses through the C interface") {
  Session s;
  Parsed p;
  REQUIRE(nilred_parse(s.s, "algebra a { family = C; p = 2; }", &p.algebras, &p.count) ==
          NILRED_OK);
  char* out = nullptr;
  REQUIRE(nilred_export(s.s, p.algebras[0], NILRED_FORMAT_TEXT, &out) == NILRED_OK);
  std::string dsl = take(out);
  Parsed again;
  REQUIRE(nilred_parse(s.s, dsl.c_str(), &again.algebras, &again.count) == NILRED_OK);
  REQUIRE(again.count == 1);
  CHECK(nilred_algebra_dim_v(again.algebras[0]) == 4);
  CHECK(nilred_algebra_dim_z(again.algebras[0]) == 1);
}

TEST_CASE("classify_many merges several algebras into one document") {
  Session s;
  Parsed p;
  const char* text =
      "algebra a { family = C; p = 1; }\nalgebra b { family = C; p = 2; }\n";
  REQUIRE(nilred_parse(s.s, text, &p.algebras, &p.count) == NILRED_OK);
  char* out = nullptr;
  REQUIRE(nilred_classify_many(s.s, p.algebras, p.count, NILRED_FORMAT_JSON, &out) ==
          NILRED_OK);
  json doc = json::parse(take(out));
  CHECK(doc["algebras"].size() == 2);
}

TEST_CASE("float mode flows through the session options") {
  Session s;
  Parsed p;
  REQUIRE(nilred_session_set_mode(s.s, NILRED_MODE_FLOAT) == NILRED_OK);
  REQUIRE(nilred_parse(s.s, "algebra a { family = H; p = 1; }", &p.algebras, &p.count) ==
          NILRED_OK);
  char* out = nullptr;
  REQUIRE(nilred_classify(s.s, p.algebras[0], NILRED_FORMAT_JSON, &out) == NILRED_OK);
  json doc = json::parse(take(out));
  CHECK(doc["mode"] == "float");
  CHECK(doc["algebras"][0]["curvature"]["scalar"].is_number());
}

TEST_CASE("selftest passes and reports per-criterion lines") {
  Session s;
  char* out = nullptr;
  nilred_status st = nilred_selftest(s.s, NILRED_FORMAT_JSON, &out);
  json doc = json::parse(take(out));
  CHECK(st == NILRED_OK);
  CHECK(doc["pass"] == true);
  CHECK(doc["criteria"].size() == 7);
  for (const auto& c : doc["criteria"]) CHECK(c["pass"] == true);
}
