#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "autorb/groupspec.hpp"

using namespace autorb;

TEST_CASE("basic parses") {
  GroupSpec s = parse_spec("PSL(2,7)");
  CHECK(s.name == GroupSpec::Name::PSL);
  CHECK(s.ints == std::vector<int>{2, 7});
  CHECK(s.str() == "PSL(2,7)");

  GroupSpec g = parse_spec("GMF(2,4)");
  CHECK(g.name == GroupSpec::Name::GMF);
  CHECK(g.ints == std::vector<int>{2, 4});
}

TEST_CASE("whitespace and case insensitivity") {
  CHECK(parse_spec("  psl ( 2 , 7 ) ") == parse_spec("PSL(2,7)"));
  CHECK(parse_spec("gmf(1,4)") == parse_spec("GMF(1,4)"));
  CHECK(parse_spec("pow( a(5) , 2 )") == parse_spec("POW(A(5),2)"));
}

TEST_CASE("nested specs") {
  GroupSpec p = parse_spec("POW(A(5),2)");
  CHECK(p.name == GroupSpec::Name::POW);
  CHECK(p.subs.size() == 1);
  CHECK(p.subs[0].name == GroupSpec::Name::A);
  CHECK(p.ints == std::vector<int>{2});
  CHECK(p.str() == "POW(A(5),2)");

  GroupSpec d = parse_spec("DP(A(4),EA(2,2))");
  CHECK(d.subs.size() == 2);
  CHECK(d.str() == "DP(A(4),EA(2,2))");
}

TEST_CASE("round trip over the supported forms") {
  for (const char* text :
       {"SL(2,4)", "SL(3,4)", "GL(2,9)", "PSL(2,4)", "PSL(2,5)", "PSL(2,7)", "PSL(2,8)",
        "PSL(2,9)", "PSL(3,4)", "PGL(2,7)", "PGL(2,9)", "GMF(1,4)", "GMF(2,4)",
        "GMF(3,4)", "ASL(2,4)", "EA(2,4)", "EA(3,2)", "A(5)", "A(6)", "S(6)",
        "POW(A(5),2)", "DP(A(4),EA(2,2))", "POW(PSL(2,4),2)"}) {
    GroupSpec s = parse_spec(text);
    CHECK(parse_spec(s.str()) == s);
    CHECK(s.str() == text);
  }
}

TEST_CASE("ASL stays a distinct surface form") {
  GroupSpec asl = parse_spec("ASL(2,4)");
  GroupSpec gmf = parse_spec("GMF(1,4)");
  CHECK(asl.name == GroupSpec::Name::ASL);
  CHECK_FALSE(asl == gmf);
  CHECK(asl.str() == "ASL(2,4)");
}

TEST_CASE("syntax errors carry kind and position") {
  auto expect = [](const char* text, parse_error::Kind kind) {
    try {
      parse_spec(text);
      FAIL("expected parse_error for ", text);
    } catch (const parse_error& e) {
      CHECK(e.kind() == kind);
    }
  };
  expect("PSL(2", parse_error::Kind::syntax);
  expect("PSL 2,7)", parse_error::Kind::syntax);
  expect("(2,7)", parse_error::Kind::syntax);
  expect("PSL(2,7) junk", parse_error::Kind::syntax);
  expect("PSL(2,,7)", parse_error::Kind::syntax);
  expect("FOO(1)", parse_error::Kind::unknown_name);
  expect("PSL(2)", parse_error::Kind::bad_params);      // arity
  expect("PSL(2,6)", parse_error::Kind::bad_params);    // unsupported pair
  expect("PSL(3,5)", parse_error::Kind::bad_params);
  expect("GMF(2,3)", parse_error::Kind::bad_params);    // q not an even prime power
  expect("GMF(2,2)", parse_error::Kind::bad_params);    // q = 2 excluded
  expect("GMF(9,4)", parse_error::Kind::bad_params);    // m too large
  expect("ASL(3,4)", parse_error::Kind::bad_params);
  expect("EA(4,2)", parse_error::Kind::bad_params);     // p not prime
  expect("EA(2,13)", parse_error::Kind::bad_params);    // 2^13 > 4096
  expect("A(11)", parse_error::Kind::bad_params);
  expect("POW(A(5))", parse_error::Kind::bad_params);
  expect("DP(A(5))", parse_error::Kind::bad_params);
}

TEST_CASE("position points at the offending token") {
  try {
    parse_spec("PSL(2,7");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.position() == 7);
  }
  try {
    parse_spec("  FOO(1)");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.kind() == parse_error::Kind::unknown_name);
    CHECK(e.position() == 2);
  }
}
