#include "doctest.h"
#include "store/script.hpp"
#include "support.hpp"

using namespace store;
using testing::error_of;

TEST_SUITE("script") {

TEST_CASE("parse") {
  SUBCASE("quotes, comments and blank lines") {
    const auto cmds = script::parse(
        "# header\n"
        "\n"
        "store goal add \"Protect the \\\"web\\\" server\"  # trailing\n"
        "store threat add 'It''s' --stride T\n");
    REQUIRE(cmds.size() == 2);
    CHECK(cmds[0].line == 3);
    CHECK(cmds[0].args == std::vector<std::string>{"goal", "add", "Protect the \"web\" server"});
    CHECK(cmds[1].line == 4);
    CHECK(cmds[1].args == std::vector<std::string>{"threat", "add", "Its", "--stride", "T"});
  }
  SUBCASE("hash inside quotes is text") {
    const auto cmds = script::parse("store goal add \"#1 goal\"");
    CHECK(cmds[0].args.back() == "#1 goal");
  }
  SUBCASE("variables") {
    const auto cmds = script::parse("store elicit --catalog $CAT/x.json ${CAT}y \"$CAT\" '$CAT'", {{"CAT", "/c"}});
    CHECK(cmds[0].args == std::vector<std::string>{"elicit", "--catalog", "/c/x.json", "/cy", "/c", "$CAT"});
  }
  SUBCASE("errors") {
    CHECK(error_of([] { script::parse("goal add x"); }) == ErrorCode::SyntaxError);
    CHECK(error_of([] { script::parse("store goal add \"open"); }) == ErrorCode::SyntaxError);
    CHECK(error_of([] { script::parse("store elicit --catalog $MISSING"); }) == ErrorCode::SyntaxError);
  }
  SUBCASE("the ERP script parses") {
    const auto cmds = script::parse(testing::read_file(testing::erp_script_path()), {{"CATALOG", "c.json"}});
    CHECK(cmds.size() == 172);
    CHECK(cmds.front().args == std::vector<std::string>{"init", "College ERP system"});
  }
}

}
