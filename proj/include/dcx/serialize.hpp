#ifndef DCX_SERIALIZE_HPP
#define DCX_SERIALIZE_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "dcx/engine.hpp"

namespace dcx {

// Index file: magic "DCIX", format version, little-endian (tag, length,
// payload) sections, trailing CRC-32C over everything before it.
// Deterministic: the same input and flags produce identical bytes.

struct SaveOptions {
  bool embed_text = false;
  std::uint8_t format_tag = 0;  // 0: raw bytes, 1: sym16
};

struct LoadedIndex {
  Index index;
  std::uint8_t format_tag = 0;
  bool had_embedded_text = false;
};

std::string serialize_index(const Index& ix, SaveOptions opts);

// sidecar_text must be supplied when the file has no TEXT section
LoadedIndex deserialize_index(std::string_view bytes,
                              const std::vector<Symbol>* sidecar_text = nullptr);

void save_index_file(const Index& ix, const std::string& path, SaveOptions opts);
LoadedIndex load_index_file(const std::string& path,
                            const std::vector<Symbol>* sidecar_text = nullptr);

bool looks_like_index_file(std::string_view bytes);

// text format tag stored at build time (0: raw, 1: sym16); needed to
// decode a sidecar text before the full load
std::uint8_t index_format_tag(std::string_view bytes);

std::uint32_t crc32c(std::string_view data);

}  // namespace dcx

#endif  // DCX_SERIALIZE_HPP
