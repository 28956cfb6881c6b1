#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "kcode/io.hpp"

using namespace kcode;

TEST_CASE("request files") {
    std::istringstream in("# worked example\n* 0\n0 2\n1 3 010\n");
    auto reqs = read_requests(in);
    REQUIRE(reqs.size() == 3);
    CHECK(reqs[0] == LayeredRequest{});
    CHECK(reqs[1] == LayeredRequest{{}, 0, 2});
    CHECK(reqs[2] == LayeredRequest{BitString("010"), 1, 3});

    std::ostringstream out;
    write_requests(out, reqs);
    std::istringstream again(out.str());
    CHECK(read_requests(again) == reqs);

    std::istringstream bad("0 2\n");
    CHECK_THROWS_AS(read_requests(bad), ParseError);
    std::istringstream bad2("* 0\nx 2\n");
    CHECK_THROWS_AS(read_requests(bad2), ParseError);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_requests(empty), ParseError);
}

TEST_CASE("length lists") {
    std::istringstream in("1\n2\n\n2\n");
    CHECK(read_lengths(in) == std::vector<int>{1, 2, 2});
}

TEST_CASE("avoid files") {
    std::istringstream in("00\n01\n");
    auto q = read_avoid_set(in);
    CHECK(q.members().size() == 2);
    std::ostringstream out;
    write_avoid_set(out, q);
    CHECK(out.str() == "00\n01\n");

    std::istringstream clash("0\n01\n");
    CHECK_THROWS_AS(read_avoid_set(clash), ParseError);

    CHECK(avoid_hash(q) != avoid_hash(AvoidSet{}));
    std::istringstream same("00\n01\n");
    CHECK(avoid_hash(read_avoid_set(same)) == avoid_hash(q));
}

TEST_CASE("measure tables") {
    std::istringstream in("- 2\n0 5\n01 6\n");
    auto I = read_measure_table(in);
    CHECK(*I(BitString{}) == 2);
    CHECK(*I(BitString("01")) == 6);
    CHECK(!I(BitString("1")));
}

TEST_CASE("run files") {
    std::istringstream in(
        "c=1\nuniverse-maxlen=4\n0 4\n01 8\n@1 01 6\n@2 01 5\n");
    auto run = read_run(in);
    CHECK(run.c() == 1);
    CHECK(run.stages() == 2);
    CHECK(*run.final_value(BitString("01")) == 5);

    std::ostringstream out;
    write_run(out, run);
    std::istringstream again(out.str());
    auto run2 = read_run(again);
    CHECK(run2.initial() == run.initial());
    CHECK(run2.updates().size() == run.updates().size());

    std::istringstream noheader("0 4\n");
    CHECK_THROWS_AS(read_run(noheader), ParseError);
    std::istringstream badline("c=1\nuniverse-maxlen=4\n0 4 9 9\n");
    CHECK_THROWS_AS(read_run(badline), ParseError);
}

TEST_CASE("code files") {
    CodeFile f;
    f.measure_id = "len-log";
    f.measure_params = "0101";
    f.shift = 2;
    f.bound = 16;
    f.avoid_hash = 0xdeadbeefcafef00dull;
    f.bits = BitString("0101101");
    std::ostringstream out;
    write_code_file(out, f);
    std::istringstream in(out.str());
    auto g = read_code_file(in);
    CHECK(g.measure_id == f.measure_id);
    CHECK(g.measure_params == f.measure_params);
    CHECK(g.shift == f.shift);
    CHECK(g.bound == f.bound);
    CHECK(g.avoid_hash == f.avoid_hash);
    CHECK(g.bits == f.bits);

    std::istringstream nobits("measure=len-log\n");
    CHECK_THROWS_AS(read_code_file(nobits), ParseError);
}
