#include <sstream>

#include "doctest.h"
#include "replywatch/csv.hpp"
#include "replywatch/errors.hpp"

using namespace replywatch;

TEST_SUITE("csv") {
  TEST_CASE("quoted fields with commas, quotes and newlines") {
    std::istringstream in("a,b\n\"x, y\",\"he said \"\"hi\"\"\"\n\"multi\nline\",z\r\nlast,1\n");
    csv::Reader r(in);
    csv::Row row;
    REQUIRE(r.next(&row));
    CHECK(row == csv::Row{"a", "b"});
    REQUIRE(r.next(&row));
    CHECK(row == csv::Row{"x, y", "he said \"hi\""});
    REQUIRE(r.next(&row));
    CHECK(row == csv::Row{"multi\nline", "z"});
    CHECK(r.line() == 3);
    REQUIRE(r.next(&row));
    CHECK(row == csv::Row{"last", "1"});
    CHECK(r.line() == 5);
    CHECK_FALSE(r.next(&row));
  }

  TEST_CASE("unterminated quote") {
    std::istringstream in("\"abc\n");
    csv::Reader r(in);
    csv::Row row;
    CHECK_THROWS_AS(r.next(&row), ParseError);
  }

  TEST_CASE("header lookup") {
    const csv::Header h({"\xEF\xBB\xBFid", "name"}, {"id"});
    CHECK(h.at("id") == 0);
    CHECK(h.find("name") == 1u);
    CHECK_FALSE(h.find("other"));
    CHECK_THROWS_WITH_AS(csv::Header({"id"}, {"id", "name"}), doctest::Contains("name"),
                         InputError);
  }

  TEST_CASE("escape and join") {
    CHECK(csv::escape("plain") == "plain");
    CHECK(csv::escape("a,b") == "\"a,b\"");
    CHECK(csv::escape("q\"") == "\"q\"\"\"");
    CHECK(csv::join({"a", "b c", "x\ny"}) == "a,b c,\"x\ny\"");
  }
}
