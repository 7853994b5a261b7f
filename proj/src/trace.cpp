#include "trace.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "error.hpp"
#include "rng.hpp"

namespace augcache {

namespace {

bool valid_tag_token(std::string_view tok) {
  if (tok.empty()) return false;
  for (char c : tok) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                    (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

Trace Trace::from_tokens(const std::vector<std::string>& tokens) {
  Trace tr;
  tr.items_.reserve(tokens.size());
  std::unordered_map<std::string, TagId> ids;
  ids.reserve(tokens.size());
  for (const auto& tok : tokens) {
    auto [it, inserted] = ids.emplace(tok, static_cast<TagId>(tr.names_.size()));
    if (inserted) tr.names_.push_back(tok);
    tr.items_.push_back(it->second);
  }
  // Rank ids by token so tie-breaking can compare ranks instead of strings.
  std::vector<TagId> order(tr.names_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](TagId a, TagId b) { return tr.names_[a] < tr.names_[b]; });
  tr.lex_rank_.resize(tr.names_.size());
  for (std::uint32_t rank = 0; rank < order.size(); ++rank) {
    tr.lex_rank_[order[rank]] = rank;
  }
  return tr;
}

std::vector<std::string> Trace::tokens() const {
  std::vector<std::string> out;
  out.reserve(items_.size());
  for (TagId id : items_) out.push_back(names_[id]);
  return out;
}

NextUseTable compute_next_use(const Trace& trace) {
  const std::size_t length = trace.size();
  NextUseTable table;
  table.never = length;
  table.next.assign(length, length);
  std::vector<std::size_t> last_seen(trace.alphabet_size(), length);
  for (std::size_t t = length; t-- > 0;) {
    const TagId tag = trace.at(t);
    table.next[t] = last_seen[tag];
    last_seen[tag] = t;
  }
  return table;
}

OccurrenceIndex::OccurrenceIndex(const Trace& trace) : never_(trace.size()) {
  positions_.resize(trace.alphabet_size());
  for (std::size_t t = 0; t < trace.size(); ++t) {
    positions_[trace.at(t)].push_back(t);
  }
}

std::size_t OccurrenceIndex::next_after(TagId tag, std::size_t t) const {
  const auto& pos = positions_[tag];
  auto it = std::upper_bound(pos.begin(), pos.end(), t);
  return it == pos.end() ? never_ : *it;
}

std::map<unsigned, Trace> parse_trace(std::istream& in,
                                      const std::optional<std::set<unsigned>>& sampled_sets) {
  if (sampled_sets && sampled_sets->empty()) {
    throw ConfigError("sampled set list must not be empty when given");
  }
  std::map<unsigned, std::vector<std::string>> tokens_by_set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw ParseError("expected exactly one `set_id,tag` pair", line_no);
    }
    const std::string_view set_field(line.data(), comma);
    unsigned set_id = 0;
    auto [ptr, ec] = std::from_chars(set_field.data(), set_field.data() + set_field.size(), set_id);
    if (ec != std::errc{} || ptr != set_field.data() + set_field.size()) {
      throw ParseError("set id is not a decimal unsigned integer", line_no);
    }
    const std::string_view tag_field(line.data() + comma + 1, line.size() - comma - 1);
    if (!valid_tag_token(tag_field)) {
      throw ParseError("tag must match [A-Za-z0-9_]+", line_no);
    }
    if (sampled_sets && !sampled_sets->count(set_id)) continue;
    tokens_by_set[set_id].emplace_back(tag_field);
  }
  std::map<unsigned, Trace> out;
  for (auto& [set_id, tokens] : tokens_by_set) {
    out.emplace(set_id, Trace::from_tokens(tokens));
  }
  return out;
}

std::map<unsigned, Trace> parse_trace_file(const std::string& path,
                                           const std::optional<std::set<unsigned>>& sampled_sets) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open trace file: " + path);
  return parse_trace(in, sampled_sets);
}

void write_trace(std::ostream& out, const Trace& trace, unsigned set_id) {
  for (std::size_t t = 0; t < trace.size(); ++t) {
    out << set_id << ',' << trace.name(trace.at(t)) << '\n';
  }
}

void write_traces_file(const std::string& path, const std::map<unsigned, Trace>& traces) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  for (const auto& [set_id, trace] : traces) {
    write_trace(out, trace, set_id);
  }
  if (!out) throw ConfigError("failed writing trace file: " + path);
}

TraceSlices slice_trace(const Trace& trace, double train_frac, double valid_frac,
                        double test_frac) {
  if (train_frac <= 0 || valid_frac <= 0 || test_frac <= 0 ||
      std::abs(train_frac + valid_frac + test_frac - 1.0) > 1e-9) {
    throw ConfigError("slice fractions must be positive and sum to 1");
  }
  const std::size_t length = trace.size();
  if (length < 3) {
    throw ConfigError("trace too short to slice: " + std::to_string(length) + " requests");
  }
  const auto b1 = static_cast<std::size_t>(static_cast<double>(length) * train_frac);
  const auto b2 = static_cast<std::size_t>(static_cast<double>(length) * (train_frac + valid_frac));
  if (b1 == 0 || b2 <= b1 || b2 >= length) {
    throw ConfigError("degenerate slice: one of the parts would be empty");
  }
  const auto tokens = trace.tokens();
  auto part = [&](std::size_t from, std::size_t to) {
    return Trace::from_tokens(std::vector<std::string>(tokens.begin() + from, tokens.begin() + to));
  };
  return TraceSlices{part(0, b1), part(b1, b2), part(b2, length)};
}

Trace gen_zipf(std::size_t length, std::size_t alphabet, double exponent, std::uint64_t seed) {
  if (alphabet < 1) throw ConfigError("zipf alphabet must be >= 1");
  if (exponent < 0) throw ConfigError("zipf exponent must be >= 0");
  std::vector<double> cumulative(alphabet);
  double total = 0.0;
  for (std::size_t r = 0; r < alphabet; ++r) {
    total += std::pow(static_cast<double>(r + 1), -exponent);
    cumulative[r] = total;
  }
  Rng rng(seed);
  std::vector<std::string> tokens;
  tokens.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    const double u = rng.next_unit() * total;
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
    const auto rank = static_cast<std::size_t>(it - cumulative.begin());
    tokens.push_back("z" + std::to_string(std::min(rank, alphabet - 1) + 1));
  }
  return Trace::from_tokens(tokens);
}

Trace gen_scan_loop(std::size_t length, std::size_t loop_length, std::uint64_t /*seed*/) {
  if (loop_length < 1) throw ConfigError("scan loop length must be >= 1");
  std::vector<std::string> tokens;
  tokens.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    tokens.push_back("x" + std::to_string(i % loop_length + 1));
  }
  return Trace::from_tokens(tokens);
}

Trace gen_phased(const std::vector<PhasedSegment>& segments, std::uint64_t seed) {
  std::vector<std::string> tokens;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& seg = segments[s];
    Trace sub;
    switch (seg.kind) {
      case PhasedSegment::Kind::Zipf:
        sub = gen_zipf(seg.length, seg.alphabet, seg.exponent, mix_seed(seed, s));
        break;
      case PhasedSegment::Kind::ScanLoop:
        sub = gen_scan_loop(seg.length, seg.alphabet, mix_seed(seed, s));
        break;
    }
    const std::string prefix = "p" + std::to_string(s) + "_";
    for (std::size_t t = 0; t < sub.size(); ++t) {
      tokens.push_back(prefix + sub.name(sub.at(t)));
    }
  }
  return Trace::from_tokens(tokens);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::size_t parse_count(const std::string& s, const char* what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError(std::string("bad ") + what + " in generator spec: '" + s + "'");
  }
  return v;
}

double parse_real(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string("bad ") + what + " in generator spec: '" + s + "'");
  }
}

PhasedSegment parse_segment(const std::string& seg) {
  const auto f = split(seg, ',');
  if (f.size() == 4 && f[0] == "zipf") {
    return {PhasedSegment::Kind::Zipf, parse_count(f[1], "length"),
            parse_count(f[2], "alphabet"), parse_real(f[3], "exponent")};
  }
  if (f.size() == 3 && f[0] == "scanloop") {
    return {PhasedSegment::Kind::ScanLoop, parse_count(f[1], "length"),
            parse_count(f[2], "loop length"), 0.0};
  }
  throw ConfigError("bad phased segment: '" + seg + "'");
}

}  // namespace

Trace generate_trace(const std::string& spec, std::uint64_t seed) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "zipf") {
    const auto f = split(rest, ':');
    if (f.size() != 3) throw ConfigError("zipf spec needs zipf:<len>:<alphabet>:<exponent>");
    return gen_zipf(parse_count(f[0], "length"), parse_count(f[1], "alphabet"),
                    parse_real(f[2], "exponent"), seed);
  }
  if (kind == "scanloop") {
    const auto f = split(rest, ':');
    if (f.size() != 2) throw ConfigError("scanloop spec needs scanloop:<len>:<loop>");
    return gen_scan_loop(parse_count(f[0], "length"), parse_count(f[1], "loop length"), seed);
  }
  if (kind == "phased") {
    if (rest.empty()) throw ConfigError("phased spec needs at least one segment");
    std::vector<PhasedSegment> segments;
    for (const auto& seg : split(rest, '+')) segments.push_back(parse_segment(seg));
    return gen_phased(segments, seed);
  }
  throw ConfigError("unknown generator kind: '" + kind + "'");
}

}  // namespace augcache
