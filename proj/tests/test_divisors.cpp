#include <algorithm>
#include <set>

#include "chipfire/burning.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/families.hpp"
#include "chipfire/rng.hpp"
#include "doctest.h"

using namespace chipfire;

namespace {

Divisor random_divisor(SplitMix64& rng, int n, std::int64_t lo,
                       std::int64_t hi) {
  Divisor d(n);
  for (int v = 0; v < n; ++v)
    d[v] = lo + static_cast<std::int64_t>(
                    rng.next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  return d;
}

std::vector<Divisor> collect_stream(int n, std::int64_t k) {
  std::vector<Divisor> out;
  EffectiveDivisorStream stream(n, k);
  while (const Divisor* d = stream.next()) out.push_back(*d);
  return out;
}

// Counts degree-0 divisors that are reduced at q by walking the odometer box
// 0 <= c(v) < val(v) for v != q and keeping the ones whose burn pass from q
// consumes the whole graph.
std::int64_t count_reduced_classes(const Multigraph& g, int q) {
  int n = g.vertex_count();
  std::vector<std::int64_t> c(static_cast<std::size_t>(n), 0);
  std::int64_t found = 0;
  for (;;) {
    Divisor d(n);
    std::int64_t rest = 0;
    for (int v = 0; v < n; ++v)
      if (v != q) {
        d[v] = c[static_cast<std::size_t>(v)];
        rest += d[v];
      }
    d[q] = -rest;
    if (dhar_pass(g, VertexSet(n, {q}), d).all_burned()) ++found;
    int v = n - 1;
    for (; v >= 0; --v) {
      if (v == q) continue;
      if (c[static_cast<std::size_t>(v)] + 1 < g.valence(v)) {
        ++c[static_cast<std::size_t>(v)];
        break;
      }
      c[static_cast<std::size_t>(v)] = 0;
    }
    if (v < 0) break;
  }
  return found;
}

}  // namespace

TEST_SUITE("divisors") {

TEST_CASE("degree, effectiveness, support") {
  CHECK(degree(Divisor(4)) == 0);
  CHECK(degree(Divisor{-1, 2, 0}) == 1);
  CHECK(is_effective(Divisor(3)));
  CHECK(support(Divisor(3)).empty());
  CHECK_FALSE(is_effective(Divisor{-1, 2, 0}));
  CHECK(support(Divisor{-1, 2, 0}) == VertexSet(3, {1}));
  CHECK(unit_divisor(4, 2, 5) == Divisor{0, 0, 5, 0});
  CHECK(degree(unit_divisor(6, 3)) == 1);
}

TEST_CASE("canonical divisor") {
  CHECK(canonical(cycle(7)) == Divisor(7));
  CHECK(canonical(complete(4)) == Divisor{1, 1, 1, 1});
  CHECK(is_effective(canonical(complete(4))));
  CHECK(support(canonical(complete(4))) == VertexSet::all(4));
  for (int n = 1; n <= 5; ++n)
    CHECK(canonical(banana(n)) == Divisor{n - 2, n - 2});
  for (int g = 0; g <= 5; ++g)
    CHECK(degree(canonical(banana(g + 1))) == 2 * g - 2);
}

TEST_CASE("apply_script subtracts the Laplacian image") {
  Multigraph g = cycle(3);
  Divisor d{0, 2, 0};

  FiringScript fire1(3);
  fire1.counts[1] = 1;
  CHECK(apply_script(g, d, fire1) == Divisor{1, 0, 1});

  CHECK(apply_script(g, d, FiringScript(3)) == d);
  FiringScript constant(3);
  constant.counts = {4, 4, 4};
  CHECK(apply_script(g, d, constant) == d);

  SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Multigraph h = random_connected(5, 0.6, rng.next());
    Divisor a = random_divisor(rng, 5, -3, 3);
    FiringScript f(5);
    for (auto& c : f.counts)
      c = -2 + static_cast<std::int64_t>(rng.next_below(5));
    CHECK(degree(apply_script(h, a, f)) == degree(a));
  }
}

TEST_CASE("fire_subset moves chips across the boundary") {
  CHECK(fire_subset(banana(2), Divisor{2, 0}, VertexSet(2, {0})) ==
        Divisor{0, 2});
  Multigraph c4 = cycle(4);
  Divisor ones{1, 1, 1, 1};
  CHECK(fire_subset(c4, ones, VertexSet::all(4)) == ones);
  // adjacent pair {0,1}: each member loses its one boundary edge
  CHECK(fire_subset(c4, ones, VertexSet(4, {0, 1})) == Divisor{0, 0, 2, 2});
  CHECK_THROWS_AS(fire_subset(c4, ones, VertexSet(4)), domain_error);

  SUBCASE("agrees with the indicator script") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 15; ++trial) {
      Multigraph h = random_connected(5, 0.5, rng.next());
      Divisor d = random_divisor(rng, 5, -2, 4);
      VertexSet w(5);
      for (int v = 0; v < 5; ++v)
        if (rng.next_below(2)) w.add(v);
      if (w.empty()) w.add(0);
      FiringScript f(5);
      for (int v : w.members()) f.counts[static_cast<std::size_t>(v)] = 1;
      CHECK(fire_subset(h, d, w) == apply_script(h, d, f));
    }
  }
}

TEST_CASE("principal divisors and equivalence") {
  Multigraph c3 = cycle(3);
  CHECK(is_principal(c3, Divisor(3)));
  CHECK_FALSE(is_principal(c3, Divisor{1, -1, 0}));
  CHECK_FALSE(is_principal(c3, Divisor{1, 0, 0}));  // nonzero degree

  FiringScript w;
  CHECK(equivalent(c3, Divisor{1, 0, 1}, Divisor{0, 2, 0}, &w));
  CHECK(apply_script(c3, Divisor{1, 0, 1}, w) == Divisor{0, 2, 0});
  CHECK(*std::min_element(w.counts.begin(), w.counts.end()) == 0);

  CHECK_FALSE(equivalent(c3, Divisor{1, 0, 0}, Divisor{0, 2, 0}));

  Divisor d{2, -1, 0};
  FiringScript self;
  CHECK(equivalent(c3, d, d, &self));
  CHECK(self == FiringScript(3));

  Multigraph split(4, {{0, 1, 1}, {2, 3, 1}});
  CHECK_THROWS_AS(equivalent(split, Divisor(4), Divisor(4)), domain_error);
}

TEST_CASE("equivalence is an equivalence relation") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 3 + static_cast<int>(rng.next_below(4));
    Multigraph g = random_connected(n, 0.6, rng.next());
    Divisor a = random_divisor(rng, n, -2, 3);
    // b, c sampled from a's class and from scratch
    FiringScript f(n);
    for (auto& count : f.counts)
      count = -1 + static_cast<std::int64_t>(rng.next_below(3));
    Divisor b = apply_script(g, a, f);
    Divisor c = random_divisor(rng, n, -2, 3);
    c[0] += degree(a) - degree(c);  // match degrees

    CHECK(equivalent(g, a, a));
    CHECK(equivalent(g, a, b));
    CHECK(equivalent(g, b, a));
    bool ac = equivalent(g, a, c);
    CHECK(equivalent(g, c, a) == ac);
    // transitivity through b
    if (ac) CHECK(equivalent(g, b, c));
  }
}

TEST_CASE("witness scripts reproduce the target divisor") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 3 + static_cast<int>(rng.next_below(3));
    Multigraph g = random_connected(n, 0.7, rng.next());
    Divisor a = random_divisor(rng, n, -2, 3);
    FiringScript f(n);
    for (auto& count : f.counts)
      count = static_cast<std::int64_t>(rng.next_below(4)) - 1;
    Divisor b = apply_script(g, a, f);
    FiringScript w;
    REQUIRE(equivalent(g, a, b, &w));
    CHECK(apply_script(g, a, w) == b);
  }
}

TEST_CASE("effective divisor counting") {
  CHECK(effective_divisor_count(2, 1) == 2);
  CHECK(effective_divisor_count(6, 2) == 21);
  CHECK(effective_divisor_count(1, 9) == 1);
  CHECK(effective_divisor_count(4, 0) == 1);
  CHECK(effective_divisor_count(3, 5) == 21);
  CHECK_THROWS_AS(effective_divisor_count(0, 1), domain_error);
  CHECK_THROWS_AS(effective_divisor_count(2, -1), domain_error);
  CHECK_THROWS_AS(effective_divisor_count(40, 60), domain_error);  // overflow
}

TEST_CASE("enumeration order starts at the front and moves right") {
  auto pairs = collect_stream(2, 1);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0] == Divisor{1, 0});
  CHECK(pairs[1] == Divisor{0, 1});

  auto single = collect_stream(1, 7);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == Divisor{7});

  auto deg0 = collect_stream(3, 0);
  REQUIRE(deg0.size() == 1);
  CHECK(deg0[0] == Divisor(3));

  auto all = collect_stream(3, 3);
  REQUIRE(all.size() == effective_divisor_count(3, 3));
  CHECK(all.front() == Divisor{3, 0, 0});
  CHECK(all.back() == Divisor{0, 0, 3});
  // each divisor appears exactly once, in strictly descending lex order
  for (std::size_t i = 0; i + 1 < all.size(); ++i)
    CHECK(all[i].chips > all[i + 1].chips);
  for (const Divisor& d : all) {
    CHECK(degree(d) == 3);
    CHECK(is_effective(d));
  }
}

TEST_CASE("random access agrees with the stream") {
  auto all = collect_stream(4, 3);
  REQUIRE(all.size() == effective_divisor_count(4, 3));
  for (std::size_t i = 0; i < all.size(); ++i)
    CHECK(effective_divisor_at(4, 3, i) == all[i]);
  CHECK_THROWS_AS(effective_divisor_at(4, 3, all.size()), domain_error);
}

TEST_CASE("level sets are nested and end at the whole vertex set") {
  FiringScript f(3);
  f.counts = {2, 0, 0};
  auto sets = level_sets(f);
  REQUIRE(sets.size() == 3);
  CHECK(sets[0] == VertexSet(3, {0}));
  CHECK(sets[1] == VertexSet(3, {0}));
  CHECK(sets[2] == VertexSet::all(3));

  FiringScript flat(4);
  flat.counts = {3, 3, 3, 3};
  auto one = level_sets(flat);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == VertexSet::all(4));

  FiringScript mixed(4);
  mixed.counts = {1, -1, 0, 2};
  auto nested = level_sets(mixed);
  REQUIRE(nested.size() == 4);
  for (std::size_t i = 0; i + 1 < nested.size(); ++i)
    for (int v : nested[i].members()) CHECK(nested[i + 1].contains(v));
  CHECK(nested.back() == VertexSet::all(4));
}

TEST_CASE("level-set divisor walk telescopes to the script action") {
  Multigraph c3 = cycle(3);
  Divisor d{0, 2, 0};
  FiringScript f(3);
  f.counts = {2, 0, 0};
  auto walk = level_set_divisor_sequence(c3, d, f);
  REQUIRE(walk.size() == 3);
  CHECK(walk.front() == d);
  CHECK(walk.back() == apply_script(c3, d, f));

  SplitMix64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3 + static_cast<int>(rng.next_below(4));
    Multigraph g = random_connected(n, 0.6, rng.next());
    Divisor a = random_divisor(rng, n, -2, 3);
    FiringScript script(n);
    for (auto& c : script.counts)
      c = -2 + static_cast<std::int64_t>(rng.next_below(6));
    auto seq = level_set_divisor_sequence(g, a, script);
    CHECK(seq.front() == a);
    CHECK(seq.back() == apply_script(g, a, script));
  }
}

TEST_CASE("level-set walk between effective divisors never dips below both") {
  SplitMix64 rng(53);
  int witnessed = 0;
  for (int trial = 0; trial < 200 && witnessed < 40; ++trial) {
    int n = 3 + static_cast<int>(rng.next_below(4));
    Multigraph g = random_connected(n, 0.6, rng.next());
    Divisor a = random_divisor(rng, n, 0, 3);
    FiringScript f(n);
    for (auto& c : f.counts)
      c = -1 + static_cast<std::int64_t>(rng.next_below(3));
    Divisor b = apply_script(g, a, f);
    if (!is_effective(b)) continue;
    FiringScript w;
    REQUIRE(equivalent(g, a, b, &w));
    ++witnessed;
    for (const Divisor& mid : level_set_divisor_sequence(g, a, w))
      for (int v = 0; v < n; ++v)
        CHECK(mid[v] >= std::min(a[v], b[v]));
  }
  CHECK(witnessed >= 40);
}

TEST_CASE("reduced degree-0 divisors count the spanning trees") {
  for (const Multigraph& g : {complete(4), cycle(5), banana(3)}) {
    std::int64_t trees = spanning_tree_count(g);
    for (int q = 0; q < g.vertex_count(); ++q)
      CHECK(count_reduced_classes(g, q) == trees);
  }
}

TEST_CASE("divisor text round-trips") {
  CHECK(parse_divisor("-1 2 0", 3) == Divisor{-1, 2, 0});
  CHECK(parse_divisor("  4  ", 1) == Divisor{4});
  CHECK(format_divisor(Divisor{-1, 2, 0}) == "-1 2 0");
  CHECK(parse_divisor(format_divisor(Divisor{7, -3}), 2) == Divisor{7, -3});
  CHECK_THROWS_AS(parse_divisor("1 2", 3), domain_error);
  CHECK_THROWS_AS(parse_divisor("1 2 3 4", 3), domain_error);
  CHECK_THROWS_AS(parse_divisor("1 x 3", 3), domain_error);
  CHECK_THROWS_AS(parse_divisor("", 1), domain_error);
}

}  // TEST_SUITE
