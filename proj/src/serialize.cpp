#include "dcx/serialize.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

namespace dcx {

namespace {

constexpr char kMagic[4] = {'D', 'C', 'I', 'X'};
constexpr std::uint32_t kVersion = 1;

struct Writer {
  std::string out;
  void u8(std::uint8_t v) { out.push_back(static_cast<char>(v)); }
  void u16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  template <typename T, typename F>
  void vec(const std::vector<T>& v, F&& f) {
    u64(v.size());
    for (const T& x : v) f(x);
  }
};

struct Reader {
  std::string_view in;
  std::size_t pos = 0;
  void need(std::size_t k) const {
    if (pos + k > in.size()) throw InputError("index file truncated");
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(in[pos++]);
  }
  std::uint16_t u16() {
    std::uint16_t v = 0;
    need(2);
    for (int i = 0; i < 2; ++i) v |= static_cast<std::uint16_t>(static_cast<unsigned char>(in[pos++])) << (8 * i);
    return v;
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    need(4);
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos++])) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    need(8);
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos++])) << (8 * i);
    return v;
  }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
};

std::array<std::uint32_t, 256> make_crc_table() {
  std::array<std::uint32_t, 256> t{};
  for (std::uint32_t i = 0; i < 256; ++i) {
    std::uint32_t c = i;
    for (int k = 0; k < 8; ++k) c = (c & 1) ? 0x82F63B78u ^ (c >> 1) : c >> 1;
    t[i] = c;
  }
  return t;
}

void put_section(Writer& w, const char tag[4], const std::string& payload) {
  w.out.append(tag, 4);
  w.u64(payload.size());
  w.out += payload;
}

void write_bitvector(Writer& w, const BitVector& bv) {
  w.u64(bv.size());
  w.vec(bv.words(), [&](std::uint64_t x) { w.u64(x); });
  w.vec(bv.superblocks(), [&](std::uint64_t x) { w.u64(x); });
}

BitVector read_bitvector(Reader& r) {
  std::uint64_t n = r.u64();
  std::uint64_t nw = r.u64();
  std::vector<std::uint64_t> words(nw);
  for (auto& x : words) x = r.u64();
  std::uint64_t nc = r.u64();
  std::vector<std::uint64_t> cum(nc);
  for (auto& x : cum) x = r.u64();
  return BitVector::from_parts(n, std::move(words), std::move(cum));
}

template <typename T>
std::vector<T> read_u32_vec(Reader& r) {
  std::uint64_t n = r.u64();
  std::vector<T> v(n);
  for (auto& x : v) x = static_cast<T>(r.u32());
  return v;
}

}  // namespace

std::uint32_t crc32c(std::string_view data) {
  static const auto table = make_crc_table();
  std::uint32_t c = 0xFFFFFFFFu;
  for (unsigned char ch : data) c = table[(c ^ ch) & 0xFF] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

bool looks_like_index_file(std::string_view bytes) {
  return bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0;
}

std::uint8_t index_format_tag(std::string_view bytes) {
  if (!looks_like_index_file(bytes) || bytes.size() < 12) throw InputError("not an index file");
  Reader top{bytes, 8};
  while (top.pos + 12 <= top.in.size()) {
    std::string tag(top.in.substr(top.pos, 4));
    top.pos += 4;
    std::uint64_t len = top.u64();
    if (tag == "CONF") {
      Reader conf{top.in.substr(top.pos, len)};
      conf.u32();  // sigma
      conf.u64();  // n
      conf.u32();  // r
      conf.u32();  // period
      conf.u32();  // max_len
      conf.u8();   // fast_report
      conf.u8();   // embed
      return conf.u8();
    }
    top.pos += len;
  }
  throw InputError("index file has no CONF section");
}

std::string serialize_index(const Index& ix, SaveOptions opts) {
  Writer w;
  w.out.append(kMagic, 4);
  w.u32(kVersion);

  const TextModel& tm = ix.text_model();
  {
    Writer s;
    s.u32(tm.sigma());
    s.u64(tm.n());
    s.u32(tm.r());
    s.u32(ix.config().x0_period);
    s.u32(ix.config().x0_max_len);
    s.u8(ix.config().fast_report ? 1 : 0);
    s.u8(opts.embed_text ? 1 : 0);
    s.u8(opts.format_tag);
    s.u8(ix.tiny() ? 1 : 0);
    s.u32(ix.config().fast_params.group);
    s.u64(std::bit_cast<std::uint64_t>(ix.config().fast_params.epsilon));
    s.u64(0);  // reserved
    put_section(w, "CONF", s.out);
  }
  if (opts.embed_text) {
    Writer s;
    std::uint8_t width = tm.sigma() > 256 ? 2 : 1;
    s.u8(width);
    for (Symbol c : ix.text())
      if (width == 1)
        s.u8(static_cast<std::uint8_t>(c));
      else
        s.u16(static_cast<std::uint16_t>(c));
    put_section(w, "TEXT", s.out);
  }
  {
    Writer s;
    s.u32(tm.cover().r());
    s.u32(tm.cover().modulus());
    s.vec(tm.cover().elements(), [&](std::uint32_t x) { s.u32(x); });
    put_section(w, "COVR", s.out);
  }
  if (!ix.tiny()) {
    {
      Writer s;
      const auto& sst = ix.sst();
      s.vec(sst.leaf_order(), [&](Pos p) { s.u64(p); });
      s.u32(static_cast<std::uint32_t>(sst.node_count()));
      std::uint64_t nkeys = 0;
      for (std::uint32_t id = 0; id < sst.node_count(); ++id) {
        const auto& nd = sst.node(id);
        s.u32(nd.parent);
        s.u64(nd.depth);
        s.u32(nd.leaf_lo);
        s.u32(nd.leaf_hi);
        s.u32(nd.child_count);
        nkeys += nd.child_count;
      }
      s.u64(nkeys);
      for (std::uint64_t k = 0; k < nkeys; ++k) s.u64(sst.child_key(static_cast<std::uint32_t>(k)));
      put_section(w, "SST ", s.out);
    }
    {
      Writer s;
      const auto& ps = ix.points();
      s.u8(static_cast<std::uint8_t>(ps.classes().size()));
      for (const auto& c : ps.classes()) {
        s.u32(c.run_len);
        s.u32(c.width);
        s.u64(c.rev_universe);
        s.vec(c.ind, [&](std::uint32_t x) { s.u32(x); });
        s.vec(c.rev, [&](std::uint64_t x) { s.u64(x); });
        s.u32(static_cast<std::uint32_t>(c.wt.levels().size()));
        for (const auto& bv : c.wt.levels()) write_bitvector(s, bv);
      }
      put_section(w, "PNTS", s.out);
    }
    {
      Writer s;
      const auto& jt = ix.jump_tables();
      s.u32(jt.period());
      s.u32(jt.max_len());
      s.vec(jt.parents(), [&](std::uint32_t x) { s.u32(x); });
      s.vec(jt.symbols(), [&](std::uint32_t x) { s.u32(x); });
      s.vec(jt.depths(), [&](std::uint32_t x) { s.u32(x); });
      s.vec(jt.trim1s(), [&](std::uint32_t x) { s.u32(x); });
      s.vec(jt.x0_indices(), [&](std::uint32_t x) { s.u32(x); });
      s.u64(jt.x0_loci().size());
      for (const auto& l : jt.x0_loci()) {
        s.u32(l.node);
        s.i32(l.child_lo);
        s.i32(l.child_hi);
      }
      put_section(w, "JMPT", s.out);
    }
  }
  {
    Writer s;
    const auto& sp = ix.small_index();
    s.u32(sp.p());
    s.u8(sp.direct() ? 1 : 0);
    s.vec(sp.block_of(), [&](std::uint32_t x) { s.u32(x); });
    s.vec(sp.rep_block(), [&](std::uint32_t x) { s.u32(x); });
    put_section(w, "SMLP", s.out);
  }
  if (!ix.tiny() && ix.config().fast_report) {
    Writer s;
    s.u32(1);  // fast-report format version; structure is rebuilt on load
    s.u8(1);
    put_section(w, "FREP", s.out);
  }

  w.u32(crc32c(w.out));
  return w.out;
}

LoadedIndex deserialize_index(std::string_view bytes, const std::vector<Symbol>* sidecar_text) {
  if (!looks_like_index_file(bytes)) throw InputError("not an index file (bad magic)");
  if (bytes.size() < 12) throw InputError("index file truncated");
  std::uint32_t stored_crc = 0;
  for (int i = 0; i < 4; ++i)
    stored_crc |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[bytes.size() - 4 + i]))
                  << (8 * i);
  if (crc32c(bytes.substr(0, bytes.size() - 4)) != stored_crc)
    throw InputError("index file checksum mismatch");

  Reader top{bytes.substr(0, bytes.size() - 4), 4};
  if (top.u32() != kVersion) throw InputError("unsupported index format version");

  struct Section {
    std::string tag;
    std::string_view payload;
  };
  std::vector<Section> sections;
  while (top.pos < top.in.size()) {
    top.need(12);
    std::string tag(top.in.substr(top.pos, 4));
    top.pos += 4;
    std::uint64_t len = top.u64();
    top.need(len);
    sections.push_back({tag, top.in.substr(top.pos, len)});
    top.pos += len;
  }
  auto find = [&](const char* tag) -> const std::string_view* {
    for (auto& s : sections)
      if (s.tag == tag) return &s.payload;
    return nullptr;
  };
  auto need = [&](const char* tag) -> std::string_view {
    const auto* p = find(tag);
    if (!p) throw InputError(std::string("missing index section ") + tag);
    return *p;
  };

  Reader conf{need("CONF")};
  std::uint32_t sigma = conf.u32();
  std::uint64_t n = conf.u64();
  std::uint32_t r = conf.u32();
  IndexConfig cfg;
  cfg.r = r;
  cfg.x0_period = conf.u32();
  cfg.x0_max_len = conf.u32();
  cfg.fast_report = conf.u8() != 0;
  bool embedded = conf.u8() != 0;
  std::uint8_t format_tag = conf.u8();
  bool tiny = conf.u8() != 0;
  cfg.fast_params.group = conf.u32();
  cfg.fast_params.epsilon = std::bit_cast<double>(conf.u64());
  conf.u64();  // reserved

  {  // the d-table is rebuilt; stored elements must match the rebuild
    Reader covr{need("COVR")};
    std::uint32_t cr = covr.u32();
    std::uint32_t cs = covr.u32();
    auto elems = read_u32_vec<std::uint32_t>(covr);
    DifferenceCover dc(cr);
    if (cr != r || cs != dc.modulus() || elems != dc.elements())
      throw InputError("cover section disagrees with the configuration");
  }

  std::vector<Symbol> text;
  if (embedded) {
    Reader t{need("TEXT")};
    std::uint8_t width = t.u8();
    text.resize(n);
    for (auto& c : text) c = width == 1 ? t.u8() : t.u16();
  } else {
    if (!sidecar_text) throw InputError("index stores no text; a sidecar text is required");
    text = *sidecar_text;
    if (text.size() != n) throw InputError("sidecar text length disagrees with the index");
  }

  auto tm = std::make_unique<TextModel>(text, sigma, r);
  if (tm->tiny() != tiny) throw InputError("index tiny flag disagrees with the text");

  std::unique_ptr<SampledSuffixTree> sst;
  std::unique_ptr<PointSets> points;
  std::unique_ptr<ShortJumpTables> jumps;
  if (!tiny) {
    {
      Reader s{need("SST ")};
      std::uint64_t t = s.u64();
      std::vector<Pos> leaf_order(t);
      for (auto& p : leaf_order) p = s.u64();
      std::uint32_t nodes = s.u32();
      std::vector<SampledSuffixTree::Node> nd(nodes);
      for (auto& x : nd) {
        x.parent = s.u32();
        x.depth = s.u64();
        x.leaf_lo = s.u32();
        x.leaf_hi = s.u32();
        x.child_count = s.u32();
      }
      std::uint64_t nkeys = s.u64();
      std::vector<std::uint64_t> keys(nkeys);
      for (auto& k : keys) k = s.u64();
      sst = std::make_unique<SampledSuffixTree>(
          rebuild_sst_from_sections(*tm, std::move(nd), std::move(keys), std::move(leaf_order)));
    }
    {
      Reader s{need("PNTS")};
      std::uint8_t nclasses = s.u8();
      std::vector<PointSets::Class> classes(nclasses);
      for (auto& c : classes) {
        c.run_len = s.u32();
        c.width = s.u32();
        c.rev_universe = s.u64();
        c.ind = read_u32_vec<std::uint32_t>(s);
        std::uint64_t nrev = s.u64();
        c.rev.resize(nrev);
        for (auto& x : c.rev) x = s.u64();
        std::uint32_t nlevels = s.u32();
        std::vector<BitVector> levels(nlevels);
        for (auto& bv : levels) bv = read_bitvector(s);
        c.wt = WaveletTree::from_levels(c.ind.size(), c.width, std::move(levels));
      }
      points = std::make_unique<PointSets>(rebuild_points_from_sections(
          sigma, std::move(classes), cfg.fast_report, cfg.fast_params));
    }
    {
      Reader s{need("JMPT")};
      std::uint32_t period = s.u32();
      std::uint32_t max_len = s.u32();
      auto parent = read_u32_vec<std::uint32_t>(s);
      auto sym = read_u32_vec<std::uint32_t>(s);
      auto depth = read_u32_vec<std::uint32_t>(s);
      auto trim1 = read_u32_vec<std::uint32_t>(s);
      auto x0i = read_u32_vec<std::uint32_t>(s);
      std::uint64_t nl = s.u64();
      std::vector<ShortJumpTables::LocusLite> loci(nl);
      for (auto& l : loci) {
        l.node = s.u32();
        l.child_lo = s.i32();
        l.child_hi = s.i32();
      }
      jumps = std::make_unique<ShortJumpTables>(
          ShortJumpTables::rebuild(period, max_len, std::move(parent), std::move(sym),
                                   std::move(depth), std::move(trim1), std::move(x0i),
                                   std::move(loci)));
    }
  }
  std::unique_ptr<SmallPatternIndex> small;
  {
    Reader s{need("SMLP")};
    s.u32();  // p, implied by r
    s.u8();   // direct flag, implied by sigma and p
    auto block_of = read_u32_vec<std::uint32_t>(s);
    auto rep = read_u32_vec<std::uint32_t>(s);
    small = std::make_unique<SmallPatternIndex>(
        SmallPatternIndex::rebuild(*tm, std::move(block_of), std::move(rep)));
  }

  LoadedIndex out{Index::assemble(std::move(text), sigma, cfg, std::move(tm), std::move(sst),
                                  std::move(points), std::move(jumps), std::move(small)),
                  format_tag, embedded};
  return out;
}

void save_index_file(const Index& ix, const std::string& path, SaveOptions opts) {
  std::string bytes = serialize_index(ix, opts);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("cannot write " + path);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

LoadedIndex load_index_file(const std::string& path, const std::vector<Symbol>* sidecar_text) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path);
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return deserialize_index(bytes, sidecar_text);
}

IndexStats Index::stats() const {
  IndexStats st;
  const TextModel& tm = text_model();
  st.n = tm.n();
  st.sigma = tm.sigma();
  st.r = tm.r();
  st.s = tm.s();
  st.meta_width = tm.meta_width();
  st.selected = tm.selected().size();
  st.tiny = tiny();
  st.fast_report = cfg_.fast_report;
  st.x0_period = cfg_.x0_period;
  st.x0_max_len = cfg_.x0_max_len;
  if (!tiny()) {
    for (const auto& c : points_->classes())
      st.class_points.push_back({c.run_len, c.ind.size()});
    st.x_names = jumps_->name_count() - 1;
    std::uint64_t x0 = 0;
    for (std::size_t name = 1; name < jumps_->name_count(); ++name)
      if (jumps_->is_x0(static_cast<std::uint32_t>(name))) ++x0;
    st.x0_names = x0;
  }

  // component sizes = serialized section sizes
  std::string bytes = serialize_index(*this, SaveOptions{true, 0});
  std::string_view view(bytes);
  std::size_t pos = 8;
  while (pos + 12 <= view.size() - 4) {
    std::string tag(view.substr(pos, 4));
    std::uint64_t len = 0;
    for (int i = 0; i < 8; ++i)
      len |= static_cast<std::uint64_t>(static_cast<unsigned char>(view[pos + 4 + i])) << (8 * i);
    st.section_bits.push_back({tag, 8 * (len + 12)});
    pos += 12 + len;
  }
  for (auto& [tag, bits] : st.section_bits) st.total_bits += bits;
  return st;
}

}  // namespace dcx
