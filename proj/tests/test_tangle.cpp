#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gkn/tangle.hpp"

using namespace gkn;

TEST_CASE("braid closures and component counts") {
  SUBCASE("Hopf link") {
    TangleDiagram d = Tangle::parse("braid 2; word s1 s1; close all");
    CHECK(d.n_components == 2);
    CHECK_FALSE(d.cut_component.has_value());
    LinkingData ld = d.linking_data();
    CHECK(ld.matrix[0][1] == 1);
    CHECK(ld.matrix[1][0] == 1);
  }
  SUBCASE("unknot tangle") {
    TangleDiagram d = Tangle::parse("braid 1; word ; close except 1");
    CHECK(d.n_components == 1);
    CHECK(d.cut_component == 1);
    CHECK(d.events.empty());
  }
  SUBCASE("close all with merged strands is malformed") {
    CHECK_THROWS_WITH_AS(Tangle::parse("braid 2; word s1; close all"),
                         doctest::Contains("1 components where 2 labels declared"), ParseError);
  }
  SUBCASE("Whitehead pair") {
    TangleDiagram d = Tangle::parse(whitehead_text(4));
    CHECK(d.n_components == 2);
    CHECK(d.cut_component == 1);
    CHECK(d.writhe[0] == 0);
    LinkingData ld = d.linking_data({1, 2});
    CHECK(ld.matrix[0][1] == 0);
    CHECK(ld.matrix[1][1] == 4);
  }
}

TEST_CASE("positioned parse errors") {
  auto expect_pos = [](const std::string& text, int line, int col) {
    try {
      Tangle::parse(text);
      FAIL("expected a parse error for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line == line);
      CHECK(e.col == col);
    }
  };
  expect_pos("braid 2; word s1 sZ; close all", 1, 18);
  expect_pos("braid x", 1, 7);
  expect_pos("braid 2; word s1; clos all", 1, 19);
  expect_pos("braid 2; word s1 s1; close all; frame 3 1", 1, 39);
  expect_pos("braid 2\nword s1 s3\nclose all", 2, 9);
  expect_pos("open 1; slice cup@xx", 1, 15);
}

TEST_CASE("slice form") {
  TangleDiagram d = Tangle::parse("open 2; slice cup@2 | x+@1 | cap@3");
  CHECK(d.bottom.size() == 2);
  CHECK(d.n_components >= 1);
  // a cap on equally oriented strands is rejected
  CHECK_THROWS_AS(Tangle::parse("open 2; slice cap@1"), ParseError);
}

TEST_CASE("print and reparse is stable on a diagram corpus") {
  std::vector<std::string> corpus = {
      "braid 1; word ; close all",
      "braid 1; word ; close except 1",
      "braid 1; word ; close except 1; frame 1 3",
      "braid 2; word s1 s1; close all",
      "braid 2; word s1 s1; close except 1",
      "braid 2; word s1 s1; close except 2",
      "braid 2; word s1 s1 s1; close except 1",
      "braid 2; word s1 s1 s1; close except 1; frame 1 -2",
      "braid 2; word s1^-1 s1^-1; close all; frame 2 5",
      "braid 2; word s1 s1^-1 s1; close except 1",
      "braid 3; word s1 s2^-1 s1 s2^-1; close except 1",
      "braid 3; word s1 s2^-1 s1 s2^-1 s1; close except 1; frame 2 -4",
      "braid 3; word s1 s2 s1 s2; close except 1",
      "braid 3; word s1 s1 s2^-1 s2^-1; close all",
      "braid 3; word s2 s2; close all; frame 3 1",
      "braid 4; word s1 s3 s2 s2; close except 2",
      "braid 2; word ; close all; frame 1 1; frame 2 -1",
      "braid 2; word s1 s1; close all; component 1=2; component 2=1",
      "open 2; slice cup@2 | x+@1 | cap@3",
      "open 1; slice cup@2 | x+@1 | x+@1 | cap@2",
  };
  REQUIRE(corpus.size() == 20);
  for (const auto& text : corpus) {
    CAPTURE(text);
    TangleDiagram d1 = Tangle::parse(text);
    std::string printed = Tangle::print(d1);
    TangleDiagram d2 = Tangle::parse(printed);
    CHECK(Tangle::print(d2) == printed);
    CHECK(d2.n_components == d1.n_components);
    CHECK(d2.cut_component == d1.cut_component);
    CHECK(d2.framings == d1.framings);
    CHECK(d2.writhe == d1.writhe);
    CHECK(d2.events.size() == d1.events.size());
  }
}

TEST_CASE("exact linking signatures") {
  SUBCASE("framed unknots") {
    TangleDiagram up = Tangle::parse("braid 1; word ; close all; frame 1 1");
    LinkingData l1 = up.linking_data();
    CHECK(l1.s_plus == 1);
    CHECK(l1.s_minus == 0);
    TangleDiagram dn = Tangle::parse("braid 1; word ; close all; frame 1 -1");
    LinkingData l2 = dn.linking_data();
    CHECK(l2.s_plus == 0);
    CHECK(l2.s_minus == 1);
  }
  SUBCASE("Whitehead matrix [[0,0],[0,f]]") {
    for (long long f : {-3LL, 0LL, 2LL}) {
      TangleDiagram d = Tangle::parse(whitehead_text(f));
      LinkingData ld = d.linking_data({1, 2});
      CHECK(ld.s_plus == (f > 0 ? 1 : 0));
      CHECK(ld.s_minus == (f < 0 ? 1 : 0));
    }
  }
  SUBCASE("hyperbolic pairs and dense blocks") {
    CHECK(TangleDiagram::exact_signature({{0, 5}, {5, 0}}) == std::make_pair(1, 1));
    CHECK(TangleDiagram::exact_signature({{2, 1}, {1, 2}}) == std::make_pair(2, 0));
    CHECK(TangleDiagram::exact_signature({{1, 2}, {2, 1}}) == std::make_pair(1, 1));
    CHECK(TangleDiagram::exact_signature({{0, 0}, {0, 0}}) == std::make_pair(0, 0));
    CHECK(TangleDiagram::exact_signature({{1, 1, 0}, {1, -1, 2}, {0, 2, 0}}) ==
          std::make_pair(2, 1));
  }
}

TEST_CASE("framing curls restore the declared framings") {
  for (const char* text : {"braid 2; word s1 s1 s1; close except 1; frame 1 -1",
                           "braid 3; word s1 s2^-1 s1 s2^-1 s1; close except 1; frame 2 3",
                           "braid 1; word ; close all; frame 1 2"}) {
    TangleDiagram d = Tangle::parse(text).with_framing_curls();
    for (int c = 1; c <= d.n_components; ++c) CHECK(d.writhe[c - 1] == d.framings[c - 1]);
  }
}
