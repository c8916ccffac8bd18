// dcx: build, query, verify, and benchmark difference-cover text indexes.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <cmath>
#include <sstream>

#include "dcx/oracle.hpp"
#include "dcx/serialize.hpp"

using namespace dcx;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path);
  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

std::vector<Symbol> decode_text(const std::string& bytes, std::uint8_t format_tag) {
  std::vector<Symbol> codes;
  if (format_tag == 0) {
    codes.reserve(bytes.size());
    for (unsigned char c : bytes) codes.push_back(c);
  } else {
    if (bytes.size() % 2) throw InputError("sym16 input has odd length");
    codes.reserve(bytes.size() / 2);
    for (std::size_t i = 0; i < bytes.size(); i += 2)
      codes.push_back(static_cast<unsigned char>(bytes[i]) |
                      (static_cast<Symbol>(static_cast<unsigned char>(bytes[i + 1])) << 8));
  }
  return codes;
}

std::vector<Symbol> decode_pattern(const std::string& line, std::uint8_t format_tag) {
  if (format_tag == 0) return decode_text(line, 0);
  // sym16 patterns are given as whitespace-separated decimal codes
  std::vector<Symbol> codes;
  std::istringstream is(line);
  std::uint64_t v;
  while (is >> v) codes.push_back(static_cast<Symbol>(v));
  return codes;
}

std::uint32_t detect_sigma(const std::vector<Symbol>& codes) {
  Symbol mx = 0;
  for (Symbol c : codes) mx = std::max(mx, c);
  return std::max<std::uint32_t>(2, mx + 1);
}

struct Opened {
  LoadedIndex loaded;
};

Opened open_index(const std::string& path, const std::string& text_path) {
  if (!text_path.empty()) {
    auto bytes = read_file(path);
    auto text = decode_text(read_file(text_path), index_format_tag(bytes));
    return {deserialize_index(bytes, &text)};
  }
  return {load_index_file(path)};
}

std::vector<std::vector<Symbol>> gather_patterns(const std::string& literal,
                                                 const std::string& patterns_path,
                                                 std::uint8_t format_tag) {
  std::vector<std::vector<Symbol>> out;
  if (!patterns_path.empty()) {
    std::ifstream f(patterns_path, std::ios::binary);
    if (!f) throw InputError("cannot read " + patterns_path);
    std::string line;
    while (std::getline(f, line)) out.push_back(decode_pattern(line, format_tag));
  } else {
    out.push_back(decode_pattern(literal, format_tag));
  }
  return out;
}

struct Workload {
  std::vector<std::vector<Symbol>> queries;
};

Workload make_workload(const Index& ix, std::uint64_t n_queries, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& text = ix.text();
  std::uint32_t sigma = ix.text_model().sigma();
  Workload w;
  for (std::uint64_t k = 0; k < n_queries; ++k) {
    std::size_t len = 1 + rng() % std::min<std::size_t>(200, text.size());
    std::vector<Symbol> q(len);
    if (k % 2 == 0 && text.size() >= len) {  // sampled from the text
      std::size_t f = rng() % (text.size() - len + 1);
      std::copy(text.begin() + f, text.begin() + f + len, q.begin());
    } else {
      for (auto& c : q) c = rng() % sigma;
    }
    w.queries.push_back(std::move(q));
  }
  return w;
}

int cmd_selfcheck(const Opened& op, std::uint64_t n_queries, std::uint64_t seed) {
  const Index& ix = op.loaded.index;
  Workload w = make_workload(ix, n_queries, seed);
  std::uint64_t mismatches = 0, checked = 0;
  std::uint64_t by_route[3] = {0, 0, 0};  // small, jump, tiny-scan
  for (const auto& q : w.queries) {
    auto want = oracle::naive_search(ix.text(), q);
    auto got = ix.locate(q);
    std::uint64_t cnt = ix.count(q);
    bool ok = got == want && cnt == want.size();
    mismatches += ok ? 0 : 1;
    ++checked;
    if (q.size() <= ix.small_pattern_limit())
      by_route[0]++;
    else if (ix.tiny())
      by_route[2]++;
    else
      by_route[1]++;
  }
  std::cout << "selfcheck: " << checked << " queries, " << mismatches << " mismatches\n";
  std::cout << "  route small-pattern: " << by_route[0] << "\n";
  std::cout << "  route sampled-index: " << by_route[1] << "\n";
  std::cout << "  route tiny-scan:     " << by_route[2] << "\n";
  std::cout << (mismatches ? "FAIL" : "OK") << "\n";
  return mismatches ? 1 : 0;
}

void print_stats(const Index& ix) {
  auto st = ix.stats();
  std::cout << "n=" << st.n << " sigma=" << st.sigma << " r=" << st.r << " s=" << st.s
            << " meta_width=" << st.meta_width << " selected=" << st.selected
            << (st.tiny ? " (tiny)" : "") << "\n";
  std::cout << "x0_period=" << st.x0_period << " x0_max_len=" << st.x0_max_len
            << " x_names=" << st.x_names << " x0_names=" << st.x0_names
            << " fast_report=" << (st.fast_report ? "on" : "off") << "\n";
  for (auto& [len, cnt] : st.class_points)
    std::cout << "points[L=" << len << "] = " << cnt << "\n";
  for (auto& [tag, bits] : st.section_bits) std::cout << "bits[" << tag << "] = " << bits << "\n";
  std::cout << "bits[total] = " << st.total_bits << "\n";
  double denom = static_cast<double>(st.n) * std::log2(static_cast<double>(std::max<std::uint64_t>(2, st.n)));
  std::cout << "bits/(n log2 n) = " << static_cast<double>(st.total_bits) / denom << "\n";
}

int cmd_bench(const Opened& op, std::uint64_t n_queries, std::uint64_t seed) {
  const Index& ix = op.loaded.index;
  Workload w = make_workload(ix, n_queries, seed);
  std::vector<double> lat_count, lat_locate;
  QueryCounters qc;
  std::uint64_t occ_total = 0;
  for (const auto& q : w.queries) {
    auto t0 = std::chrono::steady_clock::now();
    std::uint64_t c = ix.count(q, &qc);
    auto t1 = std::chrono::steady_clock::now();
    auto got = ix.locate(q);
    auto t2 = std::chrono::steady_clock::now();
    occ_total += c;
    if (got.size() != c) {
      std::cout << "BUG: count/locate disagree\n";
      return 1;
    }
    lat_count.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
    lat_locate.push_back(std::chrono::duration<double, std::micro>(t2 - t1).count());
  }
  auto pct = [](std::vector<double>& v, double p) {
    std::sort(v.begin(), v.end());
    return v.empty() ? 0.0 : v[static_cast<std::size_t>(p * (v.size() - 1))];
  };
  std::cout << "queries=" << w.queries.size() << " occurrences=" << occ_total << "\n";
  std::cout << "count  us p50=" << pct(lat_count, 0.5) << " p90=" << pct(lat_count, 0.9)
            << " p99=" << pct(lat_count, 0.99) << "\n";
  std::cout << "locate us p50=" << pct(lat_locate, 0.5) << " p90=" << pct(lat_locate, 0.9)
            << " p99=" << pct(lat_locate, 0.99) << "\n";
  std::cout << "ops: meta_steps=" << qc.meta_steps << " lcp_evals=" << qc.lcp_evals
            << " binary_jumps=" << qc.binary_jumps << " short_jumps=" << qc.short_jumps
            << " range_queries=" << qc.range_queries
            << " restricted_leaves_max=" << qc.restricted_leaves_max << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"difference-cover sampled text index"};
  app.require_subcommand(1);

  // build
  auto* b = app.add_subcommand("build", "build an index from a text file");
  std::string b_text, b_out, b_format = "raw";
  std::uint32_t b_sigma = 0, b_r = 0, b_period = 64, b_maxlen = 0;
  bool b_fast = false, b_embed = false;
  b->add_option("text", b_text, "input text file")->required();
  b->add_option("-o,--out", b_out, "output index file")->required();
  b->add_option("--sigma", b_sigma, "alphabet size (default: max code + 1)");
  b->add_option("--r", b_r, "difference cover scale");
  b->add_option("--x0-period", b_period, "sampling interval for the short-jump tables");
  b->add_option("--x0-maxlen", b_maxlen, "maximum indexed prefix length for short jumps");
  b->add_flag("--fast-report", b_fast, "build the fast range-reporting structure");
  b->add_flag("--embed-text", b_embed, "store the text inside the index file");
  b->add_option("--format", b_format, "text format: raw | sym16")
      ->check(CLI::IsMember({"raw", "sym16"}));

  auto add_query_opts = [&](CLI::App* c, std::string& index, std::string& pattern,
                            std::string& patterns, std::string& text) {
    c->add_option("index", index, "index file")->required();
    c->add_option("pattern", pattern, "pattern (literal)");
    c->add_option("--patterns", patterns, "file with one pattern per line");
    c->add_option("--text", text, "sidecar text file (when not embedded)");
  };
  auto* cc = app.add_subcommand("count", "count pattern occurrences");
  std::string c_index, c_pat, c_pats, c_text;
  add_query_opts(cc, c_index, c_pat, c_pats, c_text);
  auto* lc = app.add_subcommand("locate", "report pattern occurrence positions");
  std::string l_index, l_pat, l_pats, l_text;
  add_query_opts(lc, l_index, l_pat, l_pats, l_text);

  auto* sc = app.add_subcommand("selfcheck", "verify the index against a brute-force oracle");
  std::string s_path, s_text;
  std::uint64_t s_queries = 1000, s_seed = 1;
  sc->add_option("path", s_path, "index file or text file")->required();
  sc->add_option("--queries", s_queries, "number of generated queries");
  sc->add_option("--seed", s_seed, "workload seed");
  sc->add_option("--text", s_text, "sidecar text file (for index inputs)");

  auto* st = app.add_subcommand("stats", "print component sizes and parameters");
  std::string st_index, st_text;
  st->add_option("index", st_index, "index file")->required();
  st->add_option("--text", st_text, "sidecar text file");

  auto* be = app.add_subcommand("bench", "measure query latency over a generated workload");
  std::string be_index, be_text;
  std::uint64_t be_queries = 2000, be_seed = 1;
  be->add_option("index", be_index, "index file")->required();
  be->add_option("--queries", be_queries, "number of generated queries");
  be->add_option("--seed", be_seed, "workload seed");
  be->add_option("--text", be_text, "sidecar text file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (b->parsed()) {
      std::uint8_t fmt = b_format == "sym16" ? 1 : 0;
      auto codes = decode_text(read_file(b_text), fmt);
      std::uint32_t sigma = b_sigma ? b_sigma : detect_sigma(codes);
      IndexConfig cfg;
      if (b_r) cfg.r = b_r;
      cfg.x0_period = b_period;
      cfg.x0_max_len = b_maxlen;
      cfg.fast_report = b_fast;
      auto ix = Index::build(std::move(codes), sigma, cfg);
      save_index_file(ix, b_out, {b_embed, fmt});
      auto sst = ix.stats();
      std::cout << "built " << b_out << ": n=" << sst.n << " sigma=" << sst.sigma
                << " r=" << sst.r << " bits=" << sst.total_bits << "\n";
      return 0;
    }
    if (cc->parsed() || lc->parsed()) {
      bool counting = cc->parsed();
      const auto& index = counting ? c_index : l_index;
      const auto& pat = counting ? c_pat : l_pat;
      const auto& pats = counting ? c_pats : l_pats;
      const auto& text = counting ? c_text : l_text;
      Opened op = open_index(index, text);
      auto queries = gather_patterns(pat, pats, op.loaded.format_tag);
      for (const auto& q : queries) {
        if (counting) {
          std::cout << op.loaded.index.count(q) << "\n";
        } else {
          auto ps = op.loaded.index.locate(q);
          for (std::size_t i = 0; i < ps.size(); ++i)
            std::cout << ps[i] << (i + 1 < ps.size() ? "," : "");
          std::cout << "\n";
        }
      }
      return 0;
    }
    if (sc->parsed()) {
      auto bytes = read_file(s_path);
      if (looks_like_index_file(bytes)) {
        Opened op = open_index(s_path, s_text);
        return cmd_selfcheck(op, s_queries, s_seed);
      }
      // plain text: build in memory, then verify
      auto codes = decode_text(bytes, 0);
      auto ix = Index::build(std::move(codes), detect_sigma(decode_text(bytes, 0)));
      Opened op{LoadedIndex{std::move(ix), 0, true}};
      return cmd_selfcheck(op, s_queries, s_seed);
    }
    if (st->parsed()) {
      Opened op = open_index(st_index, st_text);
      print_stats(op.loaded.index);
      return 0;
    }
    if (be->parsed()) {
      Opened op = open_index(be_index, be_text);
      return cmd_bench(op, be_queries, be_seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
