#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "serrelab/error.hpp"
#include "serrelab/gl2.hpp"

using namespace serrelab;

namespace {

// Conjugation orbit of g computed directly.
std::set<MatrixModN> orbit(const MatrixModN& g) {
  std::set<MatrixModN> out;
  for (const auto& h : gl2_elements(g.level())) out.insert(h * g * h.inverse());
  return out;
}

std::size_t find_class(const ClassTable& table, const MatrixModN& g) { return table.class_of(g); }

}  // namespace

TEST_CASE("group orders") {
  for (std::uint32_t n = 1; n <= 12; ++n) {
    INFO("N = " << n);
    CHECK(gl2_order(n) == oracle::gl2_order(n));
    CHECK(gl2_elements(n).size() == gl2_order(n));
    CHECK(sl2_order(n) * euler_phi(n) == gl2_order(n));
  }
  CHECK(gl2_order(2) == 6);
  CHECK(gl2_order(4) == 96);
  CHECK(gl2_order(5) == 480);
  CHECK_THROWS_AS(gl2_elements(25), Error);
}

TEST_CASE("matrix arithmetic") {
  const MatrixModN g(9, 2, 5, 7, 3);
  CHECK(g * g.inverse() == MatrixModN::identity(9));
  CHECK(g.pow(0) == MatrixModN::identity(9));
  CHECK(g.pow(3) == g * g * g);
  CHECK(g.reduce(3) == MatrixModN(3, 2, 2, 1, 0));
  CHECK(MatrixModN::from_key(9, g.key()) == g);
  CHECK(MatrixModN(6, -1, 7, 0, 13) == MatrixModN(6, 5, 1, 0, 1));
  CHECK_THROWS_AS(MatrixModN(4, 2, 0, 0, 2).inverse(), Error);
  for (const auto& x : gl2_elements(4))
    for (const auto& y : gl2_generators(4)) CHECK((x * y).det() == x.det() * y.det() % 4);
}

TEST_CASE("signature character") {
  CHECK(epsilon_char(MatrixModN::identity(2)) == 1);
  CHECK(epsilon_char(MatrixModN(2, 0, 1, 1, 0)) == -1);
  CHECK(epsilon_char(MatrixModN(2, 1, 1, 1, 0)) == 1);
  CHECK_THROWS_AS(epsilon_char(MatrixModN::identity(3)), Error);
  const auto elements = gl2_elements(4);
  for (const auto& x : elements)
    for (const auto& y : elements) CHECK(epsilon_char(x * y) == epsilon_char(x) * epsilon_char(y));
}

TEST_CASE("conjugacy classes at small levels") {
  const auto t2 = conjugacy_classes(2);
  REQUIRE(t2.classes().size() == 3);
  std::multiset<std::uint64_t> sizes;
  for (const auto& c : t2.classes()) sizes.insert(c.size);
  CHECK(sizes == std::multiset<std::uint64_t>{1, 2, 3});
  CHECK(conjugacy_classes(3).classes().size() == 8);

  for (std::uint32_t n : {4u, 5u, 6u}) {
    const auto table = conjugacy_classes(n);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < table.classes().size(); ++i) {
      const auto& c = table.classes()[i];
      total += c.size;
      const auto direct = orbit(c.representative);
      CHECK(direct.size() == c.size);
      CHECK(*direct.begin() == c.representative);
      CHECK(std::vector<MatrixModN>(direct.begin(), direct.end()) == c.members);
      for (const auto& m : c.members) CHECK(find_class(table, m) == i);
    }
    CHECK(total == gl2_order(n));
  }
}

TEST_CASE("descriptors determine classes") {
  for (std::uint32_t n = 2; n <= 9; ++n) {
    INFO("N = " << n);
    const auto table = conjugacy_classes(n);
    CHECK(table.descriptors_exact());
    std::set<std::string> seen;
    for (const auto& c : table.classes()) {
      CHECK(seen.insert(c.descriptor.to_string()).second);
      CHECK(c.descriptor.det() == c.representative.det());
      CHECK(c.descriptor.level % c.descriptor.m == 0);
      for (const auto& g : c.members) CHECK(matches_descriptor(g, c.descriptor));
    }
  }
  const auto scalar = describe(MatrixModN::scalar(6, 5));
  CHECK(scalar.m == 6);
  CHECK(scalar.lambda == 5);
  CHECK(scalar.quotient() == 1);
  const auto unipotent = describe(MatrixModN(6, 1, 1, 0, 1));
  CHECK(unipotent.m == 1);
  CHECK(unipotent.tbar == 2);
  CHECK(unipotent.dbar == 1);
}

TEST_CASE("commutator subgroup") {
  CHECK(commutator_subgroup(2).order() == 3);
  for (std::uint32_t n : {3u, 5u, 9u}) CHECK(commutator_subgroup(n) == special_linear(n));
  for (std::uint32_t n : {4u, 8u}) {
    const auto ker = epsilon_kernel(n);
    const auto sl = special_linear(n);
    std::vector<MatrixModN> both;
    for (const auto& g : sl.elements())
      if (ker.contains(g)) both.push_back(g);
    CHECK(commutator_subgroup(n).elements() == both);
  }
  CHECK(commutator_subgroup(4).index() == 4);
}

TEST_CASE("closures") {
  for (std::uint32_t n = 2; n <= 12; ++n) CHECK(subgroup_closure(n, gl2_generators(n)).is_full());
  const auto borel = subgroup_closure(5, {MatrixModN(5, 2, 0, 0, 1), MatrixModN(5, 1, 1, 0, 1),
                                          MatrixModN(5, 1, 0, 0, 2)});
  CHECK(borel.index() == 6);
  CHECK(borel.reduce(1).is_full());
  const auto normal = normal_closure(5, {MatrixModN(5, 1, 1, 0, 1)}, gl2_generators(5));
  CHECK(normal == special_linear(5));
  const auto partial = grow_closure(5, gl2_generators(5), [](const MatrixModN& g) { return g.det() == 3; });
  CHECK(partial.stopped_early);
  CHECK(partial.elements.back().det() == 3);
}

TEST_CASE("prime-level closure") {
  CHECK(closure_at_prime(7, gl2_generators(7)).full);
  CHECK(closure_at_prime(7, gl2_generators(7)).index == 1);
  const std::vector<MatrixModN> borel{MatrixModN(7, 3, 0, 0, 1), MatrixModN(7, 1, 1, 0, 1),
                                      MatrixModN(7, 1, 0, 0, 3)};
  const auto r = closure_at_prime(7, borel);
  CHECK_FALSE(r.full);
  CHECK(r.index == subgroup_closure(7, borel).index());
  CHECK(r.index == 8);
}

TEST_CASE("trace and determinant data") {
  CHECK(represents_pair(full_group(4), 1, 3));
  CHECK_FALSE(represents_pair(special_linear(4), 1, 3));
  for (std::uint32_t d : {1u, 2u, 4u}) {
    std::size_t total = 0;
    for (std::uint32_t t = 0; t < 7; ++t) {
      const auto set = g_td_set(7, t, d);
      for (const auto& g : set) {
        CHECK(g.trace() == t);
        CHECK(g.det() == d);
      }
      total += set.size();
    }
    CHECK(total == sl2_order(7));
  }
  CHECK(unit_subgroup(8, {3}) == std::vector<std::uint32_t>{1, 3});
  CHECK(unit_subgroup(7, {3}).size() == 6);
  CHECK(represents_all_pairs(3, gl2_elements(3), {1, 2}));
  CHECK_FALSE(represents_all_pairs(3, special_linear(3).elements(), {1, 2}));
}

TEST_CASE("index two subgroups") {
  CHECK(index_two_subgroups(2).size() == 1);
  CHECK(index_two_subgroups(3).size() == 1);
  for (std::uint32_t n : {4u, 8u, 12u}) {
    const auto chars = real_characters(n);
    const auto subs = index_two_subgroups(n);
    CHECK(subs.size() + 1 == chars.size());
    for (const auto& h : subs) CHECK(h.index() == 2);
    const auto elements = gl2_elements(n);
    const auto id = static_cast<std::size_t>(
        std::find(elements.begin(), elements.end(), MatrixModN::identity(n)) - elements.begin());
    for (const auto& chi : chars) {
      CHECK(chi.size() == elements.size());
      CHECK(chi[id] == 1);
    }
    for (std::size_t c = 1; c < chars.size(); ++c)
      CHECK(std::count(chars[c].begin(), chars[c].end(), -1) * 2 == static_cast<long>(elements.size()));
  }
  const auto overs = overgroups_with_index(commutator_subgroup(4), 2);
  CHECK_FALSE(overs.empty());
  for (const auto& h : overs) CHECK(h.index() == 2);
}

TEST_CASE("class covers") {
  const auto t2 = conjugacy_classes(2);
  const auto id = t2.class_of(MatrixModN::identity(2));
  const auto swap = t2.class_of(MatrixModN(2, 0, 1, 1, 0));
  const auto cycle = t2.class_of(MatrixModN(2, 1, 1, 1, 0));

  auto c = class_cover(t2, {id}, false);
  CHECK(c.proper);
  CHECK(c.max_index == 6);
  c = class_cover(t2, {swap}, false);
  CHECK(c.max_index == 3);
  c = class_cover(t2, {id, cycle}, false);
  CHECK(c.max_index == 2);
  REQUIRE(c.smallest);
  CHECK(c.smallest->order() == 3);
  c = class_cover(t2, {swap, cycle}, false);
  CHECK_FALSE(c.proper);
  CHECK(c.max_index == 1);
  CHECK_FALSE(c.smallest);
  CHECK_THROWS_AS(class_cover(t2, {7}, false), Error);

  // Every class of GL2(Z/4Z) except those missed by the commutator quotient.
  const auto t4 = shared_class_table(4);
  std::vector<std::size_t> all(t4->classes().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  CHECK_FALSE(class_cover(*t4, all, false).proper);
  const auto sl = special_linear(4);
  std::vector<std::size_t> in_sl;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (sl.contains(t4->classes()[i].representative)) in_sl.push_back(i);
  const auto cover = class_cover(*t4, in_sl, false);
  CHECK(cover.proper);
  CHECK(cover.max_index >= 2);
  for (std::size_t i : in_sl) {
    const auto& members = t4->classes()[i].members;
    CHECK(std::any_of(members.begin(), members.end(), [&](const MatrixModN& g) { return cover.smallest->contains(g); }));
  }
}

TEST_CASE("trace criterion at primes") {
  const MatrixModN split(7, 1, 0, 0, 2);
  const MatrixModN nonsplit(7, 0, -3, 1, 1);
  CHECK(sl2_by_traces(7, {split, nonsplit}));
  CHECK_FALSE(sl2_by_traces(7, {split}));
  CHECK_FALSE(sl2_by_traces(7, {nonsplit}));
  std::vector<MatrixModN> borel;
  for (const auto& g : gl2_elements(7))
    if (g.c() == 0) borel.push_back(g);
  CHECK_FALSE(sl2_by_traces(7, borel));
  CHECK(sl2_by_traces(7, gl2_elements(7)));
}

namespace {

// Admissible lifts X + pY mod p^2 with the given trace and determinant,
// checked against (X + pY)^k = I + pX.
int check_power_identity(std::uint32_t p, const std::vector<MatrixModN>& xs, std::uint32_t trace,
                         std::uint32_t det, std::uint64_t power, std::size_t expected_lifts) {
  const std::uint32_t n = p * p;
  int failures = 0;
  for (const auto& x : xs) {
    std::size_t lifts = 0;
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b)
        for (std::uint32_t c = 0; c < p; ++c)
          for (std::uint32_t d = 0; d < p; ++d) {
            const MatrixModN g(n, x.a() + p * a, x.b() + p * b, x.c() + p * c, x.d() + p * d);
            if (g.trace() != trace || g.det() != det) continue;
            ++lifts;
            const MatrixModN expect(n, 1 + p * x.a(), p * x.b(), p * x.c(), 1 + p * x.d());
            if (g.pow(power) != expect) ++failures;
          }
    if (lifts != expected_lifts) ++failures;
  }
  return failures;
}

}  // namespace

TEST_CASE("power identities on lifts") {
  const std::vector<MatrixModN> nine{MatrixModN(9, 0, 1, 2, 0), MatrixModN(9, 0, 2, 1, 0), MatrixModN(9, 1, 1, 1, 2),
                                     MatrixModN(9, 1, 2, 2, 2), MatrixModN(9, 2, 1, 1, 1), MatrixModN(9, 2, 2, 2, 1)};
  CHECK(check_power_identity(3, nine, 3, 1, 4, 9) == 0);
  const std::vector<MatrixModN> four{MatrixModN(4, 0, 1, 1, 0), MatrixModN(4, 1, 1, 0, 1), MatrixModN(4, 1, 0, 1, 1)};
  CHECK(check_power_identity(2, four, 2, 3, 2, 4) == 0);
}

TEST_CASE("lifting unipotents") {
  for (std::uint32_t p : {2u, 3u}) {
    const std::uint32_t n = p * p * p;
    const MatrixModN expect(n, 1, p * p, 0, 1);
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b)
        for (std::uint32_t c = 0; c < p; ++c)
          for (std::uint32_t d = 0; d < p; ++d) {
            const std::uint32_t q = p * p;
            const MatrixModN g(n, 1 + q * a, p + q * b, q * c, 1 + q * d);
            CHECK(g.pow(p) == expect);
          }
  }
}

TEST_CASE("trace and determinant fibres") {
  CHECK(g_td_set(2, 0, 1).size() == 4);
  CHECK(g_td_set(2, 1, 1).size() == 2);
  for (std::uint32_t n : {3u, 5u, 7u}) {
    const auto table = conjugacy_classes(n);
    for (std::uint32_t lambda = 1; lambda < n; ++lambda) {
      std::set<std::size_t> classes;
      for (const auto& g : g_td_set(n, 2 * lambda % n, lambda * lambda % n)) classes.insert(table.class_of(g));
      CHECK(classes.size() == 2);
      CHECK(classes.count(table.class_of(MatrixModN::scalar(n, lambda))) == 1);
      CHECK(classes.count(table.class_of(MatrixModN(n, lambda, 1, 0, lambda))) == 1);
    }
  }
}

TEST_CASE("index two subgroups miss a trace-determinant pair") {
  for (std::uint32_t n : {4u, 8u}) {
    const auto units = unit_subgroup(n, {1, 3, 5, 7});
    for (const auto& h : index_two_subgroups(n)) {
      bool missing = false;
      for (std::uint32_t t = 0; t < n && !missing; ++t)
        for (std::uint32_t d : units)
          if (!represents_pair(h, t, d)) {
            missing = true;
            break;
          }
      CHECK(missing);
    }
  }
}

TEST_CASE("subgroups representing every pair at prime squares") {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {2u, 3u}) {
    const std::uint32_t n = p * p;
    const auto elements = gl2_elements(n);
    std::vector<std::uint32_t> units;
    for (std::uint32_t u = 1; u < n; ++u)
      if (gcd_u64(u, n) == 1) units.push_back(u);
    int represented = 0;
    for (int trial = 0; trial < 250; ++trial) {
      std::vector<MatrixModN> gens;
      const int count = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < count; ++i) gens.push_back(elements[rng() % elements.size()]);
      const auto g = subgroup_closure(n, gens);
      if (!g.reduce(p).is_full()) continue;
      if (!represents_all_pairs(n, g.elements(), units)) continue;
      ++represented;
      CHECK(g.is_full());
    }
    CHECK(represented > 0);
  }
}
