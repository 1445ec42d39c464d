// Acceptance suite: one test per criterion, each printing a pass/fail line.
// Placeholder cases are filled in as the corresponding pipelines land.
#include <catch2/catch_amalgamated.hpp>

TEST_CASE("placeholder") { SUCCEED(); }
