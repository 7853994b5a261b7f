#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "error.hpp"
#include "rng.hpp"
#include "classical.hpp"
#include "sim.hpp"
#include "trace.hpp"

using namespace augcache;

namespace {

Trace make_trace(std::initializer_list<const char*> tokens) {
  std::vector<std::string> v(tokens.begin(), tokens.end());
  return Trace::from_tokens(v);
}

std::vector<std::string> token_list(const Trace& t) { return t.tokens(); }

}  // namespace

TEST_CASE("parse partitions lines by set id preserving order") {
  std::istringstream in("0,a\n1,b\n0,c\n");
  auto sets = parse_trace(in);
  REQUIRE(sets.size() == 2);
  CHECK(token_list(sets.at(0)) == std::vector<std::string>{"a", "c"});
  CHECK(token_list(sets.at(1)) == std::vector<std::string>{"b"});
}

TEST_CASE("parse preserves repetition") {
  std::istringstream in("0,a\n0,a\n0,a\n");
  auto sets = parse_trace(in);
  REQUIRE(sets.size() == 1);
  CHECK(token_list(sets.at(0)) == std::vector<std::string>{"a", "a", "a"});
}

TEST_CASE("sampling 64 of 2048 sets keeps exactly the sampled ones") {
  std::ostringstream file;
  for (unsigned s = 0; s < 2048; ++s) file << s << ",t" << s << "\n";
  std::set<unsigned> sampled;
  for (unsigned s = 0; s < 2048; s += 32) sampled.insert(s);  // 64 ids
  REQUIRE(sampled.size() == 64);
  std::istringstream in(file.str());
  auto sets = parse_trace(in, sampled);
  CHECK(sets.size() == 64);
  for (const auto& [id, trace] : sets) {
    CHECK(sampled.count(id) == 1);
    CHECK(trace.size() == 1);
  }
}

TEST_CASE("parse skips comments and flags malformed lines") {
  SUBCASE("comments and blank lines") {
    std::istringstream in("# header\n0,a\n\n0,b\n");
    auto sets = parse_trace(in);
    CHECK(token_list(sets.at(0)) == std::vector<std::string>{"a", "b"});
  }
  SUBCASE("wrong column count") {
    std::istringstream in("0,a\n0,a,b\n");
    CHECK_THROWS_WITH_AS(parse_trace(in), doctest::Contains("line 2"), ParseError);
  }
  SUBCASE("non-numeric set id") {
    std::istringstream in("x,a\n");
    CHECK_THROWS_AS(parse_trace(in), ParseError);
  }
  SUBCASE("illegal tag token") {
    std::istringstream in("0,a b\n");
    CHECK_THROWS_AS(parse_trace(in), ParseError);
  }
  SUBCASE("missing tag") {
    std::istringstream in("0,\n");
    CHECK_THROWS_AS(parse_trace(in), ParseError);
  }
  SUBCASE("empty input is an empty mapping") {
    std::istringstream in("");
    CHECK(parse_trace(in).empty());
  }
}

TEST_CASE("trace round-trips through the file format") {
  auto trace = gen_zipf(200, 16, 0.7, 9);
  std::ostringstream out;
  write_trace(out, trace, 3);
  std::istringstream in(out.str());
  auto sets = parse_trace(in);
  REQUIRE(sets.size() == 1);
  CHECK(token_list(sets.at(3)) == token_list(trace));
}

TEST_CASE("slice boundaries follow the floor rule") {
  auto t10 = gen_zipf(10, 4, 0.0, 1);
  auto s = slice_trace(t10, 0.8, 0.1, 0.1);
  CHECK(s.train.size() == 8);
  CHECK(s.valid.size() == 1);
  CHECK(s.test.size() == 1);

  auto t100 = gen_zipf(100, 8, 0.5, 2);
  auto s100 = slice_trace(t100, 0.8, 0.1, 0.1);
  CHECK(s100.train.size() == 80);
  CHECK(s100.valid.size() == 10);
  CHECK(s100.test.size() == 10);

  // Concatenation equals the input.
  auto tokens = s100.train.tokens();
  auto mid = s100.valid.tokens();
  auto tail = s100.test.tokens();
  tokens.insert(tokens.end(), mid.begin(), mid.end());
  tokens.insert(tokens.end(), tail.begin(), tail.end());
  CHECK(tokens == t100.tokens());
}

TEST_CASE("degenerate slices are rejected") {
  auto t3 = make_trace({"a", "b", "c"});
  CHECK_THROWS_AS(slice_trace(t3, 0.8, 0.1, 0.1), ConfigError);  // middle slice empty
  auto t2 = make_trace({"a", "b"});
  CHECK_THROWS_AS(slice_trace(t2, 0.8, 0.1, 0.1), ConfigError);
  auto t10 = gen_zipf(10, 4, 0.0, 1);
  CHECK_THROWS_AS(slice_trace(t10, 0.5, 0.5, 0.5), ConfigError);  // fractions don't sum to 1
}

TEST_CASE("next-use table") {
  SUBCASE("short examples") {
    auto t = make_trace({"a", "b", "a"});
    auto nu = compute_next_use(t);
    CHECK(nu.never == 3);
    CHECK(nu.next == std::vector<std::size_t>{2, 3, 3});

    auto t2 = make_trace({"a", "a", "a"});
    CHECK(compute_next_use(t2).next == std::vector<std::size_t>{1, 2, 3});
  }
  SUBCASE("matches a brute scan over all pairs") {
    auto t = make_trace({"a", "b", "c", "b", "a"});
    auto nu = compute_next_use(t);
    CHECK(nu.next == std::vector<std::size_t>{4, 3, 5, 5, 5});

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto tr = gen_zipf(120, 9, 0.6, seed);
      auto table = compute_next_use(tr);
      for (std::size_t t1 = 0; t1 < tr.size(); ++t1) {
        std::size_t expected = tr.size();
        for (std::size_t t2 = t1 + 1; t2 < tr.size(); ++t2) {
          if (tr.at(t2) == tr.at(t1)) {
            expected = t2;
            break;
          }
        }
        REQUIRE(table.next[t1] == expected);
      }
    }
  }
  SUBCASE("round-trip invariant") {
    auto tr = gen_zipf(400, 30, 1.0, 77);
    auto table = compute_next_use(tr);
    for (std::size_t t = 0; t < tr.size(); ++t) {
      if (table.next[t] == table.never) continue;
      REQUIRE(table.next[t] > t);
      REQUIRE(tr.at(table.next[t]) == tr.at(t));
      for (std::size_t mid = t + 1; mid < table.next[t]; ++mid) {
        REQUIRE(tr.at(mid) != tr.at(t));
      }
    }
  }
}

TEST_CASE("occurrence index answers next-after queries") {
  auto tr = make_trace({"a", "b", "c", "b", "a"});
  OccurrenceIndex occ(tr);
  const TagId a = tr.at(0), b = tr.at(1), c = tr.at(2);
  CHECK(occ.next_after(a, 0) == 4);
  CHECK(occ.next_after(a, 4) == occ.never());
  CHECK(occ.next_after(b, 0) == 1);
  CHECK(occ.next_after(b, 1) == 3);
  CHECK(occ.next_after(c, 2) == occ.never());
}

TEST_CASE("zipf generator") {
  SUBCASE("deterministic under seed") {
    auto a = gen_zipf(500, 64, 0.8, 42);
    auto b = gen_zipf(500, 64, 0.8, 42);
    CHECK(a.tokens() == b.tokens());
    auto c = gen_zipf(500, 64, 0.8, 43);
    CHECK(a.tokens() != c.tokens());
  }
  SUBCASE("empty length") { CHECK(gen_zipf(0, 8, 1.0, 1).size() == 0); }
  SUBCASE("exponent zero is uniform") {
    auto t = gen_zipf(60000, 4, 0.0, 7);
    std::vector<std::size_t> counts(4, 0);
    for (std::size_t i = 0; i < t.size(); ++i) counts[t.at(i)]++;
    for (auto c : counts) {
      CHECK(c > 14200);
      CHECK(c < 15800);
    }
  }
  SUBCASE("high exponent concentrates on the head") {
    auto t = gen_zipf(10000, 64, 1.5, 7);
    std::size_t head = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t.name(t.at(i)) == "z1") ++head;
    }
    CHECK(head > 3000);
  }
}

TEST_CASE("scan loop emits the exact cyclic pattern") {
  auto t = gen_scan_loop(6, 3, 0);
  CHECK(t.tokens() == std::vector<std::string>{"x1", "x2", "x3", "x1", "x2", "x3"});
  CHECK(gen_scan_loop(0, 5, 0).size() == 0);
}

TEST_CASE("phased segments use disjoint populations") {
  std::vector<PhasedSegment> segs{
      {PhasedSegment::Kind::Zipf, 300, 16, 1.0},
      {PhasedSegment::Kind::Zipf, 300, 16, 0.5},
  };
  auto t = gen_phased(segs, 5);
  REQUIRE(t.size() == 600);
  std::set<std::string> first, second;
  for (std::size_t i = 0; i < 300; ++i) first.insert(t.name(t.at(i)));
  for (std::size_t i = 300; i < 600; ++i) second.insert(t.name(t.at(i)));
  for (const auto& tok : first) CHECK(second.count(tok) == 0);
}

TEST_CASE("simulating an empty trace yields empty results") {
  Trace empty;
  LruPolicy lru(0);
  auto res = simulate(lru, empty, CacheConfig{4}, true);
  CHECK(res.misses == 0);
  CHECK(res.decisions.empty());
  CHECK(res.cache_states.empty());
}

TEST_CASE("generator specs parse") {
  CHECK(generate_trace("zipf:100:8:0.5", 1).size() == 100);
  CHECK(generate_trace("scanloop:9:3", 1).tokens()[8] == "x3");
  CHECK(generate_trace("phased:zipf,50,8,1.0+scanloop,30,4", 1).size() == 80);
  CHECK_THROWS_AS(generate_trace("zipf:100", 1), ConfigError);
  CHECK_THROWS_AS(generate_trace("wavelet:100:3", 1), ConfigError);
  CHECK_THROWS_AS(generate_trace("phased:", 1), ConfigError);
}
