#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "orthotau/partitions.hpp"

using namespace orthotau;

namespace {

StrictPartition sp(std::vector<int> parts) {
  return StrictPartition{std::move(parts)};
}

StrictTuple tup(std::vector<StrictPartition> cs) {
  return StrictTuple{std::move(cs)};
}

std::vector<HalfInt> halves(std::vector<int> twices) {
  std::vector<HalfInt> v;
  for (int t : twices) v.push_back(HalfInt{t});
  return v;
}

// Independent generator: every subset of {0..max_part} is a strict
// partition; keep those of weight exactly w.  Used as the brute-force
// oracle against the recursive enumerator.
std::vector<StrictPartition> partitions_by_mask(int w) {
  std::vector<StrictPartition> out;
  int bits = w;  // parts are < w since each part costs part+1
  for (unsigned mask = 0; mask < (1u << bits); ++mask) {
    std::vector<int> parts;
    int weight = 0;
    for (int p = bits - 1; p >= 0; --p)
      if (mask & (1u << p)) {
        parts.push_back(p);
        weight += p + 1;
      }
    if (weight == w) out.push_back(StrictPartition{parts});
  }
  return out;
}

}  // namespace

TEST_CASE("strict partition basics") {
  CHECK(strict_partition_valid(sp({})));
  CHECK(strict_partition_valid(sp({0})));
  CHECK(strict_partition_valid(sp({3, 1, 0})));
  CHECK_FALSE(strict_partition_valid(sp({2, 2})));
  CHECK_FALSE(strict_partition_valid(sp({1, 2})));
  CHECK_FALSE(strict_partition_valid(sp({1, -1})));

  CHECK(strict_partition_weight(sp({})) == 0);
  CHECK(strict_partition_weight(sp({0})) == 1);
  CHECK(strict_partition_weight(sp({1})) == 2);
  CHECK(strict_partition_weight(sp({3, 1, 0})) == 7);

  CHECK(strict_partition_to_text(sp({})) == "∅");
  CHECK(strict_partition_to_text(sp({2, 0})) == "(2,0)");
  CHECK(strict_partition_to_text(sp({4})) == "(4)");
}

TEST_CASE("strict partitions of a given weight") {
  auto texts = [](const std::vector<StrictPartition>& v) {
    std::set<std::string> s;
    for (const auto& p : v) s.insert(strict_partition_to_text(p));
    return s;
  };
  CHECK(texts(strict_partitions_of_weight(0)) ==
        std::set<std::string>{"∅"});
  CHECK(texts(strict_partitions_of_weight(1)) == std::set<std::string>{"(0)"});
  CHECK(texts(strict_partitions_of_weight(2)) == std::set<std::string>{"(1)"});
  CHECK(texts(strict_partitions_of_weight(3)) ==
        std::set<std::string>{"(2)", "(1,0)"});
  CHECK(texts(strict_partitions_of_weight(6)) ==
        std::set<std::string>{"(5)", "(4,0)", "(3,1)", "(2,1,0)"});

  for (int w = 0; w <= 9; ++w) {
    auto got = strict_partitions_of_weight(w);
    auto want = partitions_by_mask(w);
    CHECK(texts(got) == texts(want));
    CHECK(got.size() == want.size());  // no duplicates on either side
    for (const auto& p : got) {
      CHECK(strict_partition_valid(p));
      CHECK(strict_partition_weight(p) == w);
    }
  }
}

TEST_CASE("tuple slots follow the canonical order") {
  StrictTuple t = tup({sp({}), sp({1, 0}), sp({2})});
  CHECK(tuple_weight(t) == 6);
  CHECK(tuple_cardinality(t) == 3);
  CHECK(tuple_to_text(t) == "(∅,(1,0),(2))");

  std::vector<TupleSlot> slots = tuple_slots(t);
  REQUIRE(slots.size() == 3);
  CHECK(slots[0].alpha == 2);
  CHECK(slots[0].p.twice == 3);
  CHECK(slots[1].alpha == 2);
  CHECK(slots[1].p.twice == 1);
  CHECK(slots[2].alpha == 3);
  CHECK(slots[2].p.twice == 5);
}

TEST_CASE("tuple enumeration: counts, order, membership") {
  SUBCASE("single component, zero budget") {
    auto ts = enumerate_strict_tuples(1, 0);
    REQUIRE(ts.size() == 1);
    CHECK(tuple_to_text(ts[0]) == "(∅)");
  }

  SUBCASE("five components at weight exactly two") {
    auto ts = enumerate_strict_tuples(5, 2);
    int exactly2 = 0;
    for (const auto& t : ts)
      if (tuple_weight(t) == 2) ++exactly2;
    // five singleton (1)'s plus C(5,2) = 10 pairs of (0)'s
    CHECK(exactly2 == 15);
  }

  SUBCASE("membership at three components") {
    auto ts = enumerate_strict_tuples(3, 2);
    std::set<std::string> texts;
    for (const auto& t : ts) texts.insert(tuple_to_text(t));
    CHECK(texts.count("(∅,(0),(0))") == 1);
    CHECK(texts.count("(∅,∅,(1))") == 1);
  }

  SUBCASE("weight-ascending emission, no duplicates") {
    auto ts = enumerate_strict_tuples(4, 5);
    std::set<std::string> seen;
    int last_w = 0;
    for (const auto& t : ts) {
      CHECK(tuple_valid(t));
      int w = tuple_weight(t);
      CHECK(w >= last_w);
      last_w = w;
      CHECK(seen.insert(tuple_to_text(t)).second);
    }
  }

  SUBCASE("exhaustive versus cartesian brute force") {
    for (int n : {1, 2, 3}) {
      for (int w : {0, 2, 4, 6}) {
        auto got = enumerate_strict_tuples(n, w);
        // Brute force: cartesian product of mask-generated components.
        std::vector<StrictPartition> all;
        for (int u = 0; u <= w; ++u)
          for (const auto& p : partitions_by_mask(u)) all.push_back(p);
        std::vector<StrictTuple> want;
        std::vector<size_t> idx(static_cast<size_t>(n), 0);
        while (true) {
          StrictTuple t;
          for (size_t c = 0; c < idx.size(); ++c)
            t.components.push_back(all[idx[c]]);
          if (tuple_weight(t) <= w) want.push_back(t);
          size_t c = 0;
          while (c < idx.size() && ++idx[c] == all.size()) idx[c++] = 0;
          if (c == idx.size()) break;
        }
        std::set<std::string> a, b;
        for (const auto& t : got) a.insert(tuple_to_text(t));
        for (const auto& t : want) b.insert(tuple_to_text(t));
        CHECK(a == b);
        CHECK(got.size() == want.size());
      }
    }
  }

  SUBCASE("argument validation") {
    CHECK_THROWS_AS(enumerate_strict_tuples(0, 3), config_error);
    CHECK_THROWS_AS(enumerate_strict_tuples(3, -1), config_error);
  }
}

TEST_CASE("maya components map to charged Young diagrams") {
  SUBCASE("charge zero") {
    MayaComponent m{halves({9, 5, 1}), halves({7, 5, 3})};
    REQUIRE(maya_component_valid(m));
    CHECK(maya_charge(m) == 0);
    ChargedYoung y = maya_component_to_charged_young(m);
    CHECK(y.charge == 0);
    CHECK(y.rows == std::vector<int>{5, 4, 3, 3});
  }

  SUBCASE("same diagram at charge one") {
    MayaComponent m{halves({11, 7, 3, 1}), halves({5, 3, 1})};
    CHECK(maya_charge(m) == 1);
    ChargedYoung y = maya_component_to_charged_young(m);
    CHECK(y.charge == 1);
    CHECK(y.rows == std::vector<int>{5, 4, 3, 3});
  }

  SUBCASE("same diagram at charge five, no holes") {
    MayaComponent m{halves({19, 15, 11, 9, 1}), halves({})};
    CHECK(maya_charge(m) == 5);
    ChargedYoung y = maya_component_to_charged_young(m);
    CHECK(y.charge == 5);
    CHECK(y.rows == std::vector<int>{5, 4, 3, 3});
  }

  SUBCASE("vacua of each charge") {
    for (int n = -4; n <= 4; ++n) {
      ChargedYoung y{{}, n};
      MayaComponent m = charged_young_to_maya_component(y);
      CHECK(maya_charge(m) == n);
      ChargedYoung back = maya_component_to_charged_young(m);
      CHECK(back.rows.empty());
      CHECK(back.charge == n);
    }
  }

  SUBCASE("charge zero agrees with classical Frobenius coordinates") {
    std::mt19937 rng(20260816u);
    std::uniform_int_distribution<int> rowcount(0, 6), rowstep(0, 3);
    for (int iter = 0; iter < 200; ++iter) {
      int k = rowcount(rng);
      std::vector<int> rows;
      int cur = 1;
      for (int i = 0; i < k; ++i) cur += rowstep(rng);
      for (int i = 0; i < k; ++i) {
        rows.push_back(cur);
        cur = std::max(1, cur - rowstep(rng));
      }
      ChargedYoung y{rows, 0};
      MayaComponent m = charged_young_to_maya_component(y);

      // Classical Frobenius: a_i = rows[i] - (i+1), b_i = cols[i] - (i+1).
      std::vector<int> conj;
      if (!rows.empty()) {
        conj.assign(static_cast<size_t>(rows[0]), 0);
        for (int r : rows)
          for (int c = 0; c < r; ++c) ++conj[static_cast<size_t>(c)];
      }
      std::vector<int> a, b;
      for (size_t i = 0; i < rows.size(); ++i) {
        int ai = rows[i] - static_cast<int>(i) - 1;
        if (ai < 0) break;
        a.push_back(ai);
      }
      for (size_t i = 0; i < conj.size(); ++i) {
        int bi = conj[i] - static_cast<int>(i) - 1;
        if (bi < 0) break;
        b.push_back(bi);
      }
      REQUIRE(m.particles.size() == a.size());
      REQUIRE(m.holes.size() == b.size());
      for (size_t i = 0; i < a.size(); ++i)
        CHECK(m.particles[i].twice == 2 * a[i] + 1);
      for (size_t i = 0; i < b.size(); ++i)
        CHECK(m.holes[i].twice == 2 * b[i] + 1);
    }
  }

  SUBCASE("round trip on random maya components") {
    std::mt19937 rng(715189u);
    std::uniform_int_distribution<int> coin(0, 3);
    for (int iter = 0; iter < 1000; ++iter) {
      MayaComponent m;
      for (int t = 25; t >= 1; t -= 2) {
        if (coin(rng) == 0) m.particles.push_back(HalfInt{t});
        if (coin(rng) == 0) m.holes.push_back(HalfInt{t});
      }
      REQUIRE(maya_component_valid(m));
      ChargedYoung y = maya_component_to_charged_young(m);
      for (size_t i = 1; i < y.rows.size(); ++i)
        CHECK(y.rows[i] <= y.rows[i - 1]);
      MayaComponent back = charged_young_to_maya_component(y);
      REQUIRE(back.particles.size() == m.particles.size());
      REQUIRE(back.holes.size() == m.holes.size());
      for (size_t i = 0; i < m.particles.size(); ++i)
        CHECK(back.particles[i].twice == m.particles[i].twice);
      for (size_t i = 0; i < m.holes.size(); ++i)
        CHECK(back.holes[i].twice == m.holes[i].twice);
    }
  }

  SUBCASE("tuple-level conversion maps componentwise") {
    MayaTuple mt;
    mt.components.push_back(MayaComponent{halves({9, 5, 1}), halves({7, 5, 3})});
    // A single particle at 3/2 with no holes: charge 1, one box above the
    // charge-1 vacuum (whose occupied set would be {1/2} ∪ negatives).
    mt.components.push_back(MayaComponent{halves({3}), halves({})});
    auto ys = maya_to_charged_young(mt);
    REQUIRE(ys.size() == 2);
    CHECK(ys[0].rows == std::vector<int>{5, 4, 3, 3});
    CHECK(ys[1].rows == std::vector<int>{1});
    CHECK(ys[1].charge == 1);
  }

  SUBCASE("invalid components are rejected") {
    MayaComponent bad1{halves({5, 5}), halves({})};
    CHECK_THROWS_AS(maya_component_to_charged_young(bad1), config_error);
    MayaComponent bad2{halves({4}), halves({})};  // integer, not half-odd
    CHECK_FALSE(maya_component_valid(bad2));
    MayaComponent bad3{halves({-1}), halves({})};
    CHECK_FALSE(maya_component_valid(bad3));
  }
}

TEST_CASE("combined labeling rule") {
  SUBCASE("three components") {
    CombinedPartition c1 =
        combined_strict_partition(tup({sp({}), sp({0}), sp({0})}), 3);
    CHECK(c1.entries == std::vector<int>{1, 0});
    CHECK(c1.strict);
    CombinedPartition c2 =
        combined_strict_partition(tup({sp({}), sp({}), sp({1, 0})}), 3);
    CHECK(c2.entries == std::vector<int>{2, 0});
    CHECK(c2.strict);
  }

  SUBCASE("five components") {
    CombinedPartition c = combined_strict_partition(
        tup({sp({}), sp({}), sp({0}), sp({0}), sp({})}), 5);
    CHECK(c.entries == std::vector<int>{2, 1});
    CHECK(c.strict);
  }

  SUBCASE("eight components") {
    std::vector<StrictPartition> cs(8);
    cs[6] = sp({0});
    cs[7] = sp({0});
    CombinedPartition c = combined_strict_partition(tup(cs), 8);
    CHECK(c.entries == std::vector<int>{1, 0});
    CHECK(c.strict);
  }

  SUBCASE("repeats are flagged, not erased") {
    CombinedPartition c =
        combined_strict_partition(tup({sp({0}), sp({}), sp({1})}), 3);
    CHECK(c.entries == std::vector<int>{2, 2});
    CHECK_FALSE(c.strict);
  }

  SUBCASE("size mismatch") {
    CHECK_THROWS_AS(combined_strict_partition(tup({sp({})}), 3), config_error);
  }
}
