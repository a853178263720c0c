#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "stackfan/errors.hpp"
#include "stackfan/fan.hpp"

using namespace stackfan;

namespace {

Fan make_fan(long n, const std::vector<std::vector<long>>& rays,
             std::vector<std::vector<int>> cones) {
  Fan f;
  f.lattice_rank = n;
  f.rays = IntMat((long)rays.size(), n);
  for (size_t i = 0; i < rays.size(); ++i)
    for (long j = 0; j < n; ++j) f.rays.at((long)i, j) = rays[i][j];
  for (auto& c : cones) std::sort(c.begin(), c.end());
  f.max_cones = std::move(cones);
  return f;
}

Fan projective_line() { return make_fan(1, {{1}, {-1}}, {{0}, {1}}); }
Fan projective_plane() {
  return make_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}});
}
Fan projective_3space() {
  return make_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}},
                  {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}
Fan p1_times_p1() {
  return make_fan(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

bool has_issue(const ValidationReport& r, const std::string& kind) {
  for (const auto& i : r.issues)
    if (i.kind == kind) return true;
  return false;
}

}  // namespace

TEST_CASE("validation accepts the standard smooth complete fans") {
  for (const Fan& f :
       {projective_line(), projective_plane(), projective_3space(), p1_times_p1()}) {
    ValidationReport r = validate_fan(f);
    CHECK(r.valid);
    CHECK(r.issues.empty());
    CHECK(r.warnings.empty());
  }
  // point fan: nothing to check
  Fan pt = make_fan(0, {}, {});
  CHECK(validate_fan(pt).valid);
}

TEST_CASE("validation issue kinds") {
  // imprimitive and zero rays
  Fan f1 = make_fan(2, {{2, 0}, {0, 1}}, {{0, 1}});
  CHECK(has_issue(validate_fan(f1), "primitivity"));
  Fan f2 = make_fan(2, {{0, 0}, {0, 1}}, {{0, 1}});
  CHECK(has_issue(validate_fan(f2), "primitivity"));
  // duplicate ray
  Fan f3 = make_fan(1, {{1}, {1}}, {{0}, {1}});
  CHECK(has_issue(validate_fan(f3), "duplicate_ray"));
  // out-of-range index
  Fan f4 = make_fan(1, {{1}}, {{0, 5}});
  CHECK(has_issue(validate_fan(f4), "index_range"));
  // repeated index inside a cone
  Fan f5 = make_fan(1, {{1}}, {});
  f5.max_cones = {{0, 0}};
  CHECK(has_issue(validate_fan(f5), "index_range"));
  // non-maximal cone listed
  Fan f6 = make_fan(2, {{1, 0}, {0, 1}}, {{0, 1}, {0}});
  CHECK(has_issue(validate_fan(f6), "maximality"));
  // a cone containing a line is not strongly convex
  Fan f7 = make_fan(2, {{1, 0}, {-1, 0}}, {{0, 1}});
  CHECK(has_issue(validate_fan(f7), "strong_convexity"));
  // two cones meeting outside their common face
  Fan f8 = make_fan(2, {{1, 0}, {0, 1}, {1, 2}}, {{0, 1}, {0, 2}});
  CHECK(has_issue(validate_fan(f8), "overlap"));
}

TEST_CASE("spans_cone: faces of listed cones, monotone under subsets") {
  Fan p2 = projective_plane();
  CHECK(spans_cone(p2, {}));
  CHECK(spans_cone(p2, {0}));
  CHECK(spans_cone(p2, {1}));
  CHECK(spans_cone(p2, {2}));
  CHECK(spans_cone(p2, {0, 1}));
  CHECK(spans_cone(p2, {1, 2}));
  CHECK(spans_cone(p2, {0, 2}));
  CHECK_FALSE(spans_cone(p2, {0, 1, 2}));
  // order of the query set must not matter
  CHECK(spans_cone(p2, {2, 0}));
  // fan with no cones: only the empty set spans
  Fan empty = make_fan(2, {{1, 0}}, {});
  CHECK(spans_cone(empty, {}));
  CHECK_FALSE(spans_cone(empty, {0}));
}

TEST_CASE("minimal non-faces of the golden fans") {
  CHECK(minimal_nonfaces(projective_line()) == std::vector<std::vector<int>>{{0, 1}});
  CHECK(minimal_nonfaces(projective_plane()) == std::vector<std::vector<int>>{{0, 1, 2}});
  CHECK(minimal_nonfaces(projective_3space()) == std::vector<std::vector<int>>{{0, 1, 2, 3}});
  CHECK(minimal_nonfaces(p1_times_p1()) == std::vector<std::vector<int>>({{0, 1}, {2, 3}}));
  // affine plane: a full simplex has no non-faces
  Fan a2 = make_fan(2, {{1, 0}, {0, 1}}, {{0, 1}});
  CHECK(minimal_nonfaces(a2).empty());
  // punctured plane: the two rays never span together
  Fan punct = make_fan(2, {{1, 0}, {0, 1}}, {{0}, {1}});
  CHECK(minimal_nonfaces(punct) == std::vector<std::vector<int>>{{0, 1}});
}

TEST_CASE("smoothness") {
  CHECK(is_smooth(projective_line()));
  CHECK(is_smooth(projective_plane()));
  CHECK(is_smooth(projective_3space()));
  CHECK(is_smooth(p1_times_p1()));
  // cone of index two
  Fan sing = make_fan(2, {{1, 0}, {1, 2}}, {{0, 1}});
  CHECK_FALSE(is_smooth(sing));
  // weighted plane with one singular corner
  Fan w112 = make_fan(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK_FALSE(is_smooth(w112));
  // more rays than the lattice rank in one cone
  Fan crowded = make_fan(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1, 2}});
  CHECK_FALSE(is_smooth(crowded));
  Fan pt = make_fan(0, {}, {});
  CHECK(is_smooth(pt));
}

TEST_CASE("completeness") {
  CHECK(is_complete(projective_line()));
  CHECK(is_complete(projective_plane()));
  CHECK(is_complete(projective_3space()));
  CHECK(is_complete(p1_times_p1()));
  CHECK(is_complete(make_fan(0, {}, {})));  // point fan
  // single affine cone
  CHECK_FALSE(is_complete(make_fan(1, {{1}}, {{0}})));
  // plane with a missing chamber
  Fan gap = make_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}});
  CHECK_FALSE(is_complete(gap));
  // lower-dimensional cone
  CHECK_FALSE(is_complete(make_fan(2, {{1, 0}, {-1, 0}}, {{0}, {1}})));
}

TEST_CASE("shelling of the projective line, frozen") {
  Fan p1 = projective_line();
  ShellingOrder so = shelling_order(p1);
  REQUIRE(so.order.size() == 2);
  CHECK(so.order == std::vector<long>({0, 1}));
  CHECK(so.tau[0].empty());              // first cell is the whole torus
  CHECK(so.tau_prime[0] == std::vector<int>{0});
  CHECK(so.tau[1] == std::vector<int>{1});  // last cell is a point
  CHECK(so.tau_prime[1].empty());
  CHECK(verify_shelling(p1, so));
  // the reversed order is also a shelling; verify it independently
  ShellingOrder rev;
  rev.order = {1, 0};
  rev.tau = {{}, {0}};
  rev.tau_prime = {{1}, {}};
  CHECK(verify_shelling(p1, rev));
  // tampered data must be rejected with a reason
  ShellingOrder bad = so;
  bad.tau[0] = {0};
  std::string why;
  CHECK_FALSE(verify_shelling(p1, bad, &why));
  CHECK(!why.empty());
}

TEST_CASE("shelling of the plane and the quadric surface") {
  for (const Fan& f : {projective_plane(), p1_times_p1(), projective_3space()}) {
    ShellingOrder so = shelling_order(f);
    REQUIRE(so.order.size() == f.max_cones.size());
    CHECK(verify_shelling(f, so));
    // the first cell is always the dense torus and the last is a point
    CHECK(so.tau.front().empty());
    CHECK(so.tau_prime.back().empty());
    // cell dimensions partition the cone dimension
    for (size_t i = 0; i < so.order.size(); ++i)
      CHECK((long)(so.tau[i].size() + so.tau_prime[i].size()) == f.lattice_rank);
  }
}

TEST_CASE("shelling requires a smooth complete fan") {
  CHECK_THROWS_AS(shelling_order(make_fan(1, {{1}}, {{0}})), math_error);
  Fan w112 = make_fan(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK_THROWS_AS(shelling_order(w112), math_error);
}

TEST_CASE("character sublattices of the reduced group forms") {
  Fan p1 = projective_line();
  StackyFan triv{p1, {GroupKind::Trivial, {}, IntMat(0, 0), {}}};
  SublatticeSpec s1 = character_sublattice(triv);
  CHECK(s1.generators.rows == 1);
  CHECK(s1.generators.at(0, 0) == 1);
  StackyFan full{p1, {GroupKind::FullTorus, {}, IntMat(0, 0), {}}};
  CHECK(character_sublattice(full).generators.rows == 0);
  IntMat gens(2, 1);
  gens.at(0, 0) = 4;
  gens.at(1, 0) = 6;
  StackyFan sub{p1, {GroupKind::Subgroup, {1, gens}, IntMat(0, 0), {}}};
  SublatticeSpec s3 = character_sublattice(sub);
  REQUIRE(s3.generators.rows == 1);
  CHECK(s3.generators.at(0, 0) == 2);  // canonical basis of <4, 6>
  StackyFan beta{p1, {GroupKind::Beta, {}, IntMat::identity(1), {1, {}}}};
  CHECK_THROWS_AS(character_sublattice(beta), math_error);
}

TEST_CASE("reduction of the classifying stack of mu_2, frozen") {
  // point fan, target Z/2, empty presentation matrix
  StackyFan sf;
  sf.fan = make_fan(0, {}, {});
  sf.group.kind = GroupKind::Beta;
  sf.group.beta = IntMat(1, 0);
  sf.group.target = {0, {2}};
  StackyReduction r = stacky_reduction(sf);
  CHECK(r.s == 1);
  CHECK(r.tau_rays == std::vector<int>{0});
  REQUIRE(r.beta_prime.rows == 1);
  REQUIRE(r.beta_prime.cols == 1);
  CHECK(r.beta_prime.at(0, 0) == 2);
  // reduced fan: single ray spanning the adjoined coordinate
  CHECK(r.reduced.fan.lattice_rank == 1);
  CHECK(r.reduced.fan.rays.rows == 1);
  CHECK(r.reduced.fan.rays.at(0, 0) == 1);
  CHECK(r.reduced.fan.max_cones == std::vector<std::vector<int>>{{0}});
  // kernel characters: index-two sublattice, dual group Z/2
  CHECK(r.reduced.group.kind == GroupKind::Subgroup);
  REQUIRE(r.reduced.group.subgroup.generators.rows == 1);
  CHECK(r.reduced.group.subgroup.generators.at(0, 0) == 2);
  CHECK(r.g_dual.group.free_rank == 0);
  CHECK(r.g_dual.group.torsion == std::vector<Int>{2});
  // split: F trivial, H = Z/2
  CHECK(r.mprime_f.generators.rows == 0);
  CHECK(r.h_dual.free_rank == 0);
  CHECK(r.h_dual.torsion == std::vector<Int>{2});
  CHECK(r.split_ok);
}

TEST_CASE("free-target reduction is a passthrough") {
  // punctured plane with weights (1,2): beta maps onto Z with finite cokernel
  StackyFan sf;
  sf.fan = make_fan(2, {{1, 0}, {0, 1}}, {{0}, {1}});
  sf.group.kind = GroupKind::Beta;
  sf.group.beta = IntMat(1, 2);
  sf.group.beta.at(0, 0) = 1;
  sf.group.beta.at(0, 1) = 2;
  sf.group.target = {1, {}};
  StackyReduction r = stacky_reduction(sf);
  CHECK(r.s == 0);
  CHECK(r.tau_rays.empty());
  CHECK(r.reduced.fan.lattice_rank == 2);
  CHECK(r.reduced.fan.rays.rows == 2);
  CHECK(r.reduced.fan.max_cones == sf.fan.max_cones);
  REQUIRE(r.reduced.group.subgroup.generators.rows == 1);
  CHECK(r.reduced.group.subgroup.generators.at(0, 0) == 1);
  CHECK(r.reduced.group.subgroup.generators.at(0, 1) == 2);
  // kernel of a (1,2)-weighted torus map is a one-dimensional torus
  CHECK(r.g_dual.group.free_rank == 1);
  CHECK(r.g_dual.group.torsion.empty());
  CHECK(r.split_ok);
  // identity beta: trivial kernel
  StackyFan id;
  id.fan = projective_line();
  id.group.kind = GroupKind::Beta;
  id.group.beta = IntMat::identity(1);
  id.group.target = {1, {}};
  StackyReduction r2 = stacky_reduction(id);
  CHECK(r2.s == 0);
  CHECK(r2.g_dual.group.is_trivial());
  CHECK(r2.split_ok);
}

TEST_CASE("torsion-row lifts differing by the order give identical reductions") {
  auto build = [](long entry) {
    StackyFan sf;
    sf.fan = make_fan(1, {{1}}, {{0}});
    sf.group.kind = GroupKind::Beta;
    sf.group.beta = IntMat(1, 1);
    sf.group.beta.at(0, 0) = entry;
    sf.group.target = {0, {2}};
    return stacky_reduction(sf);
  };
  StackyReduction a = build(1), b = build(3), c = build(-1);
  CHECK(a.beta_prime.at(0, 0) == b.beta_prime.at(0, 0));
  CHECK(a.beta_prime.at(0, 1) == b.beta_prime.at(0, 1));
  CHECK(a.beta_prime.at(0, 0) == c.beta_prime.at(0, 0));
  CHECK(a.g_dual.group.free_rank == b.g_dual.group.free_rank);
  CHECK(a.g_dual.group.torsion == b.g_dual.group.torsion);
  CHECK(a.reduced.group.subgroup.generators.rows == c.reduced.group.subgroup.generators.rows);
}

TEST_CASE("non-split kernel extension is flagged") {
  // beta = (2) into Z/4: kernel characters Z^2 / <(2,4)> = Z + Z/2, but the
  // F/H pieces give Z + Z/4
  StackyFan sf;
  sf.fan = make_fan(1, {{1}}, {{0}});
  sf.group.kind = GroupKind::Beta;
  sf.group.beta = IntMat(1, 1);
  sf.group.beta.at(0, 0) = 2;
  sf.group.target = {0, {4}};
  StackyReduction r = stacky_reduction(sf);
  CHECK(r.g_dual.group.free_rank == 1);
  CHECK(r.g_dual.group.torsion == std::vector<Int>{2});
  CHECK(r.h_dual.torsion == std::vector<Int>{4});
  CHECK_FALSE(r.split_ok);
}

TEST_CASE("beta images of infinite index are rejected") {
  StackyFan sf;
  sf.fan = make_fan(1, {{1}}, {{0}});
  sf.group.kind = GroupKind::Beta;
  sf.group.beta = IntMat(1, 1);  // zero map into Z
  sf.group.target = {1, {}};
  CHECK_THROWS_AS(stacky_reduction(sf), math_error);
}
