#include "roaring/serde.hpp"


namespace roaring {
namespace {

class Writer {
   public:
    explicit Writer(std::size_t capacity) { out_.reserve(capacity); }

    void u8(std::uint8_t v) { out_.push_back(static_cast<std::byte>(v)); }
    void u16(std::uint16_t v) {
        u8(static_cast<std::uint8_t>(v));
        u8(static_cast<std::uint8_t>(v >> 8));
    }
    void u32(std::uint32_t v) {
        u16(static_cast<std::uint16_t>(v));
        u16(static_cast<std::uint16_t>(v >> 16));
    }
    void u64(std::uint64_t v) {
        u32(static_cast<std::uint32_t>(v));
        u32(static_cast<std::uint32_t>(v >> 32));
    }

    std::vector<std::byte> take() { return std::move(out_); }

   private:
    std::vector<std::byte> out_;
};

class Reader {
   public:
    explicit Reader(std::span<const std::byte> in) : in_(in) {}

    std::size_t offset() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return in_.size() - pos_; }

    void need(std::size_t n, const char* what) const {
        if (remaining() < n) {
            throw DecodeError(pos_, std::string("truncated ") + what + ": expected " +
                                        std::to_string(n) + " bytes, found " +
                                        std::to_string(remaining()));
        }
    }

    std::uint8_t u8() { return static_cast<std::uint8_t>(in_[pos_++]); }
    std::uint16_t u16() {
        const std::uint16_t lo = u8();
        return static_cast<std::uint16_t>(lo | (std::uint16_t{u8()} << 8));
    }
    std::uint32_t u32() {
        const std::uint32_t lo = u16();
        return lo | (std::uint32_t{u16()} << 16);
    }
    std::uint64_t u64() {
        const std::uint64_t lo = u32();
        return lo | (std::uint64_t{u32()} << 32);
    }

   private:
    std::span<const std::byte> in_;
    std::size_t pos_ = 0;
};

struct Descriptor {
    std::uint16_t key;
    std::uint8_t type;
    std::uint32_t cardinality;
    std::size_t offset;
};

Container read_payload(Reader& r, const Descriptor& d) {
    const std::size_t start = r.offset();
    auto fail = [&](const std::string& what) -> DecodeError {
        return DecodeError(start, "container key " + std::to_string(d.key) + ": " + what);
    };
    Container c;
    switch (d.type) {
        case 1: {
            r.need(2 * std::size_t{d.cardinality}, "array payload");
            ArrayContainer a;
            a.values.resize(d.cardinality);
            for (auto& v : a.values) v = r.u16();
            c = Container(std::move(a));
            break;
        }
        case 2: {
            r.need(8 * kernels::kBitsetWords, "bitset payload");
            BitsetContainer b;
            for (auto& w : b.words) w = r.u64();
            b.cardinality = static_cast<std::uint32_t>(kernels::popcount_block(b.words));
            if (b.cardinality != d.cardinality) {
                throw fail("cardinality mismatch: descriptor " + std::to_string(d.cardinality) +
                           ", payload " + std::to_string(b.cardinality));
            }
            c = Container(std::move(b));
            break;
        }
        case 3: {
            r.need(2, "run count");
            const std::size_t n = r.u16();
            r.need(4 * n, "run payload");
            RunContainer rc;
            rc.runs.resize(n);
            for (auto& run : rc.runs) {
                run.start = r.u16();
                run.length = r.u16();
            }
            c = Container(std::move(rc));
            break;
        }
        default:
            throw DecodeError(d.offset + 2, "unknown container type " + std::to_string(d.type));
    }
    if (!is_well_formed(c)) throw fail(std::string("malformed ") + to_string(c.type()));
    if (c.cardinality() != d.cardinality) {
        throw fail("cardinality mismatch: descriptor " + std::to_string(d.cardinality) +
                   ", payload " + std::to_string(c.cardinality()));
    }
    if (c.empty()) throw fail("empty container");
    if (!is_normalized(c)) throw fail(std::string("non-canonical ") + to_string(c.type()));
    return c;
}

}  // namespace

DecodeError::DecodeError(std::size_t offset, const std::string& what)
    : std::runtime_error("byte " + std::to_string(offset) + ": " + what), offset_(offset) {}

std::size_t serialized_size(const RoaringBitmap& rb) noexcept {
    return static_cast<std::size_t>(rb.memory_bytes().serialized);
}

std::vector<std::byte> serialize(const RoaringBitmap& rb) {
    Writer w(serialized_size(rb));
    for (char ch : kMagic) w.u8(static_cast<std::uint8_t>(ch));
    const auto& keys = rb.keys();
    const auto& containers = rb.containers();
    w.u32(static_cast<std::uint32_t>(keys.size()));
    for (std::size_t i = 0; i < keys.size(); ++i) {
        w.u16(keys[i]);
        w.u8(static_cast<std::uint8_t>(containers[i].type()));
        w.u8(0);
        w.u32(containers[i].cardinality());
    }
    for (const Container& c : containers) {
        if (const auto* a = c.array()) {
            for (std::uint16_t v : a->values) w.u16(v);
        } else if (const auto* b = c.bitset()) {
            for (std::uint64_t word : b->words) w.u64(word);
        } else {
            const auto& runs = c.runs()->runs;
            w.u16(static_cast<std::uint16_t>(runs.size()));
            for (const Run& r : runs) {
                w.u16(r.start);
                w.u16(r.length);
            }
        }
    }
    return w.take();
}

RoaringBitmap deserialize(std::span<const std::byte> image) {
    Reader r(image);
    r.need(4, "magic");
    for (char ch : kMagic) {
        if (r.u8() != static_cast<std::uint8_t>(ch)) throw DecodeError(0, "bad magic");
    }
    r.need(4, "container count");
    const std::uint32_t n = r.u32();
    if (n > 65536) throw DecodeError(4, "container count " + std::to_string(n) + " exceeds 65536");
    r.need(kDescriptorSize * std::size_t{n}, "descriptors");
    std::vector<Descriptor> descriptors(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        Descriptor& d = descriptors[i];
        d.offset = r.offset();
        d.key = r.u16();
        d.type = r.u8();
        if (r.u8() != 0) throw DecodeError(d.offset + 3, "nonzero padding");
        d.cardinality = r.u32();
        if (i > 0 && d.key <= descriptors[i - 1].key) {
            throw DecodeError(d.offset, "keys not strictly increasing");
        }
    }
    std::vector<std::uint16_t> keys;
    std::vector<Container> containers;
    keys.reserve(n);
    containers.reserve(n);
    for (const Descriptor& d : descriptors) {
        keys.push_back(d.key);
        containers.push_back(read_payload(r, d));
    }
    if (r.remaining() != 0) {
        throw DecodeError(r.offset(), std::to_string(r.remaining()) + " trailing bytes");
    }
    return RoaringBitmap::from_parts(std::move(keys), std::move(containers));
}

}  // namespace roaring
