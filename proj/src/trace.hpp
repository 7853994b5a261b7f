#ifndef AUGCACHE_TRACE_HPP
#define AUGCACHE_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace augcache {

// Dense per-trace item identifier. The token string behind an id is kept for
// I/O and for lexicographic tie-breaking.
using TagId = std::uint32_t;

struct CacheConfig {
  std::size_t k = 16;
};

// An ordered request sequence for one cache set. Tokens are interned to dense
// ids at construction; instances are immutable afterwards.
class Trace {
public:
  Trace() = default;

  // Tokens must already match [A-Za-z0-9_]+ (the parser validates, the
  // generators emit valid tokens by construction).
  static Trace from_tokens(const std::vector<std::string>& tokens);

  std::size_t size() const { return items_.size(); }
  std::size_t alphabet_size() const { return names_.size(); }
  TagId at(std::size_t t) const { return items_[t]; }
  std::span<const TagId> items() const { return items_; }
  const std::string& name(TagId id) const { return names_[id]; }

  // Lexicographic order on the underlying tokens.
  bool tag_less(TagId a, TagId b) const { return lex_rank_[a] < lex_rank_[b]; }
  std::span<const std::uint32_t> lex_ranks() const { return lex_rank_; }

  std::vector<std::string> tokens() const;

private:
  std::vector<TagId> items_;
  std::vector<std::string> names_;      // id -> token
  std::vector<std::uint32_t> lex_rank_; // id -> rank of token in sorted order
};

// next[t] is the index of the next request for the item at t, or never()
// (== trace length) when the item does not reappear. Indices >= never()
// compare as "furthest".
struct NextUseTable {
  std::vector<std::size_t> next;
  std::size_t never = 0;
};

NextUseTable compute_next_use(const Trace& trace);

// Sorted request positions per tag; answers "first occurrence of tag after t"
// for policies that re-derive the offline eviction rule mid-trace.
class OccurrenceIndex {
public:
  explicit OccurrenceIndex(const Trace& trace);
  // Returns never (trace length) when tag does not occur after t.
  std::size_t next_after(TagId tag, std::size_t t) const;
  std::size_t never() const { return never_; }

private:
  std::vector<std::vector<std::size_t>> positions_;
  std::size_t never_ = 0;
};

// Parses the canonical trace file format: LF-terminated `set_id,tag` lines,
// `#` comments ignored. Returns one trace per set id, restricted to
// sampled_sets when given. Throws ParseError with the offending line number.
std::map<unsigned, Trace> parse_trace(std::istream& in,
                                      const std::optional<std::set<unsigned>>& sampled_sets = {});
std::map<unsigned, Trace> parse_trace_file(const std::string& path,
                                           const std::optional<std::set<unsigned>>& sampled_sets = {});

void write_trace(std::ostream& out, const Trace& trace, unsigned set_id = 0);
void write_traces_file(const std::string& path, const std::map<unsigned, Trace>& traces);

// Splits a trace at floor(L * cumulative fraction) boundaries. Fractions must
// be positive and sum to 1. Throws ConfigError when any slice comes out empty.
struct TraceSlices {
  Trace train, valid, test;
};
TraceSlices slice_trace(const Trace& trace, double train_frac, double valid_frac, double test_frac);

// Synthetic workloads. All are deterministic under their seed.
Trace gen_zipf(std::size_t length, std::size_t alphabet, double exponent, std::uint64_t seed);
Trace gen_scan_loop(std::size_t length, std::size_t loop_length, std::uint64_t seed);

struct PhasedSegment {
  enum class Kind { Zipf, ScanLoop } kind;
  std::size_t length = 0;
  std::size_t alphabet = 0;  // zipf alphabet / scanloop loop length
  double exponent = 0.0;     // zipf only
};
// Concatenates segments drawn over disjoint item populations.
Trace gen_phased(const std::vector<PhasedSegment>& segments, std::uint64_t seed);

// Generator spec strings, e.g. "zipf:8000:256:0.9", "scanloop:4000:17",
// "phased:zipf,3000,128,1.0+scanloop,2000,17". Throws ConfigError on bad specs.
Trace generate_trace(const std::string& spec, std::uint64_t seed);

}  // namespace augcache

#endif
