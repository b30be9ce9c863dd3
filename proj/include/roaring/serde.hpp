#pragma once
// serde.hpp - portable little-endian byte image of a bitmap.
//
//   "ROAR"                      4 bytes
//   u32 n                       container count
//   n x { u16 key, u8 type (1 array, 2 bitset, 3 run), u8 0, u32 cardinality }
//   payloads in key order:
//     array   cardinality x u16
//     bitset  1024 x u64
//     run     u16 count, then count x { u16 start, u16 length }
//
// Decoding accepts only images that serialize() could have produced.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "roaring/roaring_bitmap.hpp"

namespace roaring {

inline constexpr char kMagic[4] = {'R', 'O', 'A', 'R'};
inline constexpr std::size_t kHeaderSize = 8;
inline constexpr std::size_t kDescriptorSize = 8;

class DecodeError : public std::runtime_error {
   public:
    DecodeError(std::size_t offset, const std::string& what);
    std::size_t offset() const noexcept { return offset_; }

   private:
    std::size_t offset_;
};

std::vector<std::byte> serialize(const RoaringBitmap& rb);
std::size_t serialized_size(const RoaringBitmap& rb) noexcept;
RoaringBitmap deserialize(std::span<const std::byte> image);

}  // namespace roaring
