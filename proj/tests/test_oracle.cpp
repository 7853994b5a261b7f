#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "classical.hpp"
#include "error.hpp"
#include "oracle.hpp"
#include "rng.hpp"

using namespace augcache;

namespace {

Trace make_trace(std::initializer_list<const char*> tokens) {
  std::vector<std::string> v(tokens.begin(), tokens.end());
  return Trace::from_tokens(v);
}

Trace random_small_trace(Rng& rng, std::size_t max_len, std::size_t max_alpha) {
  const std::size_t len = 1 + rng.uniform_below(max_len);
  const std::size_t alpha = 1 + rng.uniform_below(max_alpha);
  std::vector<std::string> tokens;
  tokens.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    tokens.push_back(std::string(1, static_cast<char>('a' + rng.uniform_below(alpha))));
  }
  return Trace::from_tokens(tokens);
}

}  // namespace

TEST_CASE("furthest-in-future run on the contested example") {
  auto t = make_trace({"a", "b", "c", "b", "a"});
  auto nu = compute_next_use(t);
  auto profile = belady(t, CacheConfig{2}, nu);
  CHECK(profile.opt_cost == 4);
  CHECK(profile.opt_cost == brute_force_opt(t, CacheConfig{2}));
  // At the request for c, a (next use 4) goes before b (next use 3).
  REQUIRE(profile.victims[2].has_value());
  CHECK(t.name(*profile.victims[2]) == "a");
}

TEST_CASE("traces that fit in cache cost exactly their distinct count") {
  auto t = make_trace({"a", "b", "a", "c", "b", "a"});
  auto nu = compute_next_use(t);
  CHECK(belady(t, CacheConfig{3}, nu).opt_cost == 3);
  CHECK(belady(t, CacheConfig{16}, nu).opt_cost == 3);
}

TEST_CASE("opt cost verified against exhaustive search on a cycling trace") {
  auto t = make_trace({"a", "b", "c", "a", "b", "c"});
  auto nu = compute_next_use(t);
  const std::size_t expected = brute_force_opt(t, CacheConfig{2});
  CHECK(belady(t, CacheConfig{2}, nu).opt_cost == expected);
}

TEST_CASE("exhaustive search basics") {
  CHECK(brute_force_opt(make_trace({"a", "b", "a", "b"}), CacheConfig{2}) == 2);
  CHECK(brute_force_opt(Trace{}, CacheConfig{2}) == 0);
  SUBCASE("bounds are enforced") {
    std::vector<std::string> long_tokens(15, "a");
    CHECK_THROWS_AS(brute_force_opt(Trace::from_tokens(long_tokens), CacheConfig{2}), ConfigError);
    auto wide = make_trace({"a", "b", "c", "d", "e", "f", "g", "h"});
    CHECK_THROWS_AS(brute_force_opt(wide, CacheConfig{2}), ConfigError);
  }
}

TEST_CASE("optimality on a randomized corpus of small instances") {
  Rng rng(20250810);
  for (int i = 0; i < 400; ++i) {
    auto t = random_small_trace(rng, 12, 6);
    auto nu = compute_next_use(t);
    const CacheConfig cfg{2 + rng.uniform_below(2)};
    const std::size_t greedy = belady(t, cfg, nu, false).opt_cost;
    const std::size_t exact = brute_force_opt(t, cfg);
    REQUIRE(greedy == exact);
  }
}

TEST_CASE("optimal run never loses to other policies") {
  Rng rng(99);
  for (int i = 0; i < 30; ++i) {
    auto t = random_small_trace(rng, 12, 6);
    auto nu = compute_next_use(t);
    const CacheConfig cfg{2};
    const std::size_t opt = belady(t, cfg, nu, false).opt_cost;
    auto lru = make_lru(t.alphabet_size());
    REQUIRE(simulate(*lru, t, cfg).misses >= opt);
    auto rnd = make_random(t.alphabet_size(), static_cast<std::uint64_t>(i));
    REQUIRE(simulate(*rnd, t, cfg).misses >= opt);
  }
}

TEST_CASE("recorded optimal cache states") {
  SUBCASE("two cold loads") {
    auto t = make_trace({"a", "b"});
    auto profile = belady(t, CacheConfig{2}, compute_next_use(t));
    const auto& states = opt_cache_states(profile);
    REQUIRE(states.size() == 2);
    CHECK(states[0] == std::vector<TagId>{t.at(0)});
    CHECK(states[1] == std::vector<TagId>{t.at(0), t.at(1)});
  }
  SUBCASE("final state after the tag-order tie-break") {
    auto t = make_trace({"a", "b", "c", "b", "a"});
    auto profile = belady(t, CacheConfig{2}, compute_next_use(t));
    const auto& states = opt_cache_states(profile);
    REQUIRE(states.size() == t.size());
    // At the last request both cached items never reappear; b is the
    // lexicographically smallest, so the final contents are {a, c}.
    std::vector<std::string> names;
    for (TagId id : states.back()) names.push_back(t.name(id));
    std::sort(names.begin(), names.end());
    CHECK(names == std::vector<std::string>{"a", "c"});
  }
  SUBCASE("asking for states without recording fails") {
    auto t = make_trace({"a", "b"});
    auto profile = belady(t, CacheConfig{2}, compute_next_use(t), /*record_states=*/false);
    CHECK_THROWS_AS(opt_cache_states(profile), ConsistencyError);
  }
}

TEST_CASE("simulation result invariants hold for the optimal run") {
  auto t = gen_zipf(800, 40, 0.9, 4);
  auto nu = compute_next_use(t);
  auto profile = belady(t, CacheConfig{8}, nu);
  const auto& res = profile.result;
  REQUIRE(res.decisions.size() == t.size());
  REQUIRE(res.cache_states.size() == t.size());
  std::size_t misses = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (res.decisions[i].miss) ++misses;
    REQUIRE(res.cache_states[i].size() <= 8);
    // The requested item is cached after its step.
    REQUIRE(std::binary_search(res.cache_states[i].begin(), res.cache_states[i].end(), t.at(i)));
    if (i > 0) {
      // Contents change by at most the requested item, minus a victim.
      for (TagId id : res.cache_states[i]) {
        const bool carried =
            std::binary_search(res.cache_states[i - 1].begin(), res.cache_states[i - 1].end(), id);
        REQUIRE((carried || id == t.at(i)));
      }
    }
  }
  CHECK(misses == res.misses);
  CHECK(profile.opt_cost == res.misses);
}
