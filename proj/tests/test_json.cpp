#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "bohrlab/error.hpp"
#include "bohrlab/json_io.hpp"
#include "bohrlab/nets.hpp"

using namespace bohrlab;

namespace {

std::string caught_name(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.name();
  }
  return "";
}

bool same_table(const GroupPtr& a, const GroupPtr& b) {
  if (a->order() != b->order()) return false;
  for (int x = 0; x < a->order(); ++x)
    for (int y = 0; y < a->order(); ++y)
      if (a->mul(x, y) != b->mul(x, y)) return false;
  return true;
}

}  // namespace

TEST_CASE("descriptor json roundtrips every serializable kind", "[json]") {
  std::vector<GroupDescriptor> kinds;
  kinds.push_back(GroupDescriptor::cyclic(9));
  kinds.push_back(GroupDescriptor::dihedral(5));
  kinds.push_back(GroupDescriptor::quaternion8());
  kinds.push_back(GroupDescriptor::symmetric(4));
  kinds.push_back(GroupDescriptor::product(
      {GroupDescriptor::cyclic(2), GroupDescriptor::cyclic(6)}));
  kinds.push_back(
      GroupDescriptor::perm_gens(4, {{2, 3, 1, 4}, {2, 1, 4, 3}}));
  {
    GroupDescriptor sub;
    sub.kind = GroupDescriptor::Kind::subgroup;
    sub.factors.push_back(GroupDescriptor::cyclic(8));
    sub.members = {0, 4};
    kinds.push_back(sub);
  }

  for (const GroupDescriptor& d : kinds) {
    const OrderedJson j = descriptor_to_json(d);
    const OrderedJson back =
        descriptor_to_json(descriptor_from_json(parse_json(j.dump())));
    REQUIRE(j == back);
    // the rebuilt descriptor names the same group
    REQUIRE(same_table(build_group(d), build_group(descriptor_from_json(back))));
  }
}

TEST_CASE("derived groups refuse to serialize", "[json]") {
  GroupDescriptor d;
  d.kind = GroupDescriptor::Kind::derived;
  REQUIRE(caught_name([&] { descriptor_to_json(d); }) == "bad descriptor");
}

TEST_CASE("descriptor parsing rejects structural garbage", "[json]") {
  REQUIRE(caught_name([] { parse_json("{ not json"); }) == "schema violation");
  REQUIRE(caught_name([] {
            descriptor_from_json(parse_json(R"({"type":"rubik"})"));
          }) == "schema violation");
  REQUIRE(caught_name([] {
            descriptor_from_json(parse_json(R"({"type":"cyclic"})"));
          }) == "schema violation");
  REQUIRE(caught_name([] {
            descriptor_from_json(parse_json(R"({"type":"cyclic","n":"six"})"));
          }) == "schema violation");
  REQUIRE(caught_name([] {
            descriptor_from_json(parse_json(R"({"type":"product","factors":[]})"));
          }) == "schema violation");
}

TEST_CASE("subset json carries size, density and members", "[json]") {
  const GroupPtr g = build_group(GroupDescriptor::cyclic(10));
  const Subset a(g, {1, 3, 7});
  const OrderedJson j = subset_to_json(a);
  REQUIRE(j["size"] == 3);
  REQUIRE(j["density"] == 0.3);
  REQUIRE(j["members"] == OrderedJson::array({1, 3, 7}));
  REQUIRE(members_from_json(j["members"], 10) == a.members());
  REQUIRE(caught_name([&] { members_from_json(j["members"], 5); }) ==
          "schema violation");
  REQUIRE(caught_name([&] {
            members_from_json(parse_json("[0, 1.5]"), 10);
          }) == "schema violation");
}

TEST_CASE("matrix json uses [re, im] pairs and roundtrips bitwise", "[json]") {
  CMatrix m(2, 2);
  m << Complex(1.0 / 3.0, -2.0), Complex(0.0, 1e-17),
      Complex(-0.123456789012345678, 9.9), Complex(2.5, 0.0);
  const OrderedJson j = matrix_to_json(m);
  REQUIRE(j[0][0][0] == 1.0 / 3.0);
  REQUIRE(j[0][0][1] == -2.0);
  const CMatrix back = matrix_from_json(parse_json(j.dump()));
  REQUIRE((back - m).cwiseAbs().maxCoeff() == 0.0);

  REQUIRE(caught_name([] { matrix_from_json(parse_json("[[1, 2]]")); }) ==
          "schema violation");
  REQUIRE(caught_name([] {
            matrix_from_json(parse_json("[[[0,0],[1,0]],[[1,0]]]"));
          }) == "schema violation");
}

TEST_CASE("map json roundtrips a character bitwise", "[json]") {
  const GroupPtr g = build_group(GroupDescriptor::cyclic(6));
  std::vector<CMatrix> images;
  for (int x = 0; x < 6; ++x) {
    CMatrix m(1, 1);
    m(0, 0) = std::polar(1.0, 2.0 * std::numbers::pi * x / 6.0);
    images.push_back(m);
  }
  const GroupMap f(g, images);
  const GroupMap back = map_from_json(parse_json(map_to_json(f).dump()));
  REQUIRE(back.dim() == 1);
  REQUIRE(same_table(back.group(), g));
  for (int x = 0; x < 6; ++x)
    REQUIRE((back.image(x) - f.image(x)).cwiseAbs().maxCoeff() == 0.0);

  OrderedJson bad = map_to_json(f);
  bad["images"].erase(5);
  REQUIRE(caught_name([&] { map_from_json(bad); }) == "schema violation");
  OrderedJson wrong_dim = map_to_json(f);
  wrong_dim["dim"] = 2;
  REQUIRE(caught_name([&] { map_from_json(wrong_dim); }) == "schema violation");
}

TEST_CASE("eps json roundtrips all three kinds", "[json]") {
  const EpsFunction c = EpsFunction::constant(0.375);
  const EpsFunction p = EpsFunction::power(1.5, -2.0, 0.5);
  const EpsFunction t = [] {
    EpsFunction e;
    e.kind = EpsFunction::Kind::table;
    e.entries = {{1.0, 1, 0.5}, {4.0, 2, 0.0625}};
    return e;
  }();

  for (const EpsFunction* e : {&c, &p, &t}) {
    const OrderedJson j = eps_to_json(*e);
    const EpsFunction back = eps_from_json(parse_json(j.dump()));
    REQUIRE(eps_to_json(back) == j);
    REQUIRE(back.kind == e->kind);
  }
  const EpsFunction back_t = eps_from_json(eps_to_json(t));
  REQUIRE(back_t(4.0, 2) == 0.0625);

  REQUIRE(caught_name([] {
            eps_from_json(parse_json(R"({"kind":"linear"})"));
          }) == "schema violation");
  REQUIRE(caught_name([] {
            eps_from_json(parse_json(R"({"kind":"table","entries":[[1,0.5]]})"));
          }) == "schema violation");
}

TEST_CASE("net json reports the certificate without points by default", "[json]") {
  const EpsNet net = torus_net(1, 0.5);
  const OrderedJson j = net_to_json(net);
  REQUIRE(j["target"] == "torus");
  REQUIRE(j["dim"] == 1);
  REQUIRE(j["size"] == static_cast<int>(net.points.size()));
  REQUIRE(j["grid_m"] == net.grid_m);
  REQUIRE(j["certified_radius"] == net.certified_radius);
  REQUIRE_FALSE(j.contains("points"));

  const OrderedJson full = net_to_json(net, true);
  REQUIRE(full["points"].size() == net.points.size());
  const CMatrix p0 = matrix_from_json(full["points"][0]);
  REQUIRE((p0 - static_cast<const CMatrix&>(net.points[0])).cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("doubles survive a dump and parse cycle exactly", "[json]") {
  const std::vector<double> samples{
      0.1, 1.0 / 3.0, 2 * std::sin(std::numbers::pi / 16.0),
      1e-300, 123456.789012345678, 5e-324};
  for (const double x : samples) {
    OrderedJson j;
    j["x"] = x;
    const OrderedJson back = parse_json(j.dump());
    REQUIRE(back["x"].get<double>() == x);
  }
}
