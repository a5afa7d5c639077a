#include <doctest.h>

#include "helpers.hpp"
#include "lfwave/json_io.hpp"

using namespace lfwave;
using namespace lfwave::testing;

TEST_CASE("wire forms match the documented schemas") {
  FieldParams p21{2, 1};
  SUBCASE("field element") {
    const FieldElement x =
        FieldElement::basic(p21, -1) + FieldElement::basic(p21, -2);
    const Json j = to_json(x);
    CHECK(j == Json::parse(R"({"p":2,"s":1,"blocks":{"-1":[1],"-2":[1]}})"));
    CHECK(field_element_from_json(j) == x);
  }
  SUBCASE("coset address stores the lowest digit index as base") {
    const CosetAddress a = addr(p21, 2, {{-2, 1}, {0, 1}});
    const Json j = to_json(a);
    CHECK(j == Json::parse(R"({"base":-2,"digits":{"-2":[1],"0":[1]}})"));
    CHECK(address_from_json(p21, j) == a);
  }
  SUBCASE("spectrum stores the resolution exponent") {
    SpectralStepFunction f(p21, 2);
    f.set(addr(p21, 2, {{-1, 1}}), {1.0, 0.0});
    const Json j = to_json(f);
    CHECK(j.at("base") == 2);
    CHECK(j.at("values").size() == 1);
  }
}

TEST_CASE("tree round trip preserves ids") {
  const ValidTree chain = chain_tree();
  const Json j = to_json(chain);
  const ValidTree back = tree_from_json(j);
  CHECK(back == chain);
  CHECK(to_json(back) == j);
}

TEST_CASE("family and system round trips rebuild identically") {
  const ValidTree tree = chain_tree();
  const MRAFamily family = chain_family();
  const Json fam_json = family_to_json(family, tree);
  auto [tree2, family2] = family_from_json(fam_json);
  CHECK(tree2 == tree);
  CHECK(family_stored_deviation(fam_json, family2) == 0.0);

  const WaveletSystem system = WaveletSystem::build(family);
  const Json sys_json = system_to_json(system, tree);
  auto [tree3, system2] = system_from_json(sys_json);
  CHECK(system_stored_deviation(sys_json, system2) == 0.0);
}

TEST_CASE("elementary set round trip") {
  const ElementarySet set = ElementarySet::from_tree(chain_tree());
  const ElementarySet back = elementary_set_from_json(to_json(set));
  CHECK(back.N() == set.N());
  CHECK(back.M() == set.M());
  CHECK(back.cosets() == set.cosets());
}

TEST_CASE("schema violations") {
  CHECK_THROWS_AS(expect_document(Json{{"format", "bogus"}}, "tree"),
                  SchemaError);
  CHECK_THROWS_AS(
      expect_document(wrap_document("mask", Json::object()), "tree"),
      SchemaError);
  CHECK_THROWS_AS(field_element_from_json(Json{{"p", 4}, {"s", 1}}),
                  SchemaError);
  // Structural problems (dangling child link) surface on load.
  CHECK_THROWS_AS(
      tree_from_json(Json::parse(
          R"({"p":2,"s":1,"N":2,"nodes":[{"id":0,"label":[0],"parent":null,
              "children":[7]}]})")),
      SchemaError);
  // Digits below the declared base are rejected.
  FieldParams p21{2, 1};
  CHECK_THROWS_AS(
      address_from_json(p21,
                        Json::parse(R"({"base":-1,"digits":{"-2":[1]}})")),
      SchemaError);
}

TEST_CASE("stored-spectra deviation flags tampering") {
  const ValidTree tree = chain_tree();
  const MRAFamily family = chain_family();
  Json j = family_to_json(family, tree);
  j["scaling"]["values"][1]["re"] = 3.0;
  auto [t2, rebuilt] = family_from_json(j);
  CHECK(family_stored_deviation(j, rebuilt) > 1e-3);
}
