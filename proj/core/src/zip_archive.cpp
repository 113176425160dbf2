#include "zip_archive.hpp"

#include <zlib.h>

#include <cstring>

#include "cellflow/error.hpp"

namespace cellflow::detail {

namespace {

constexpr std::uint32_t kEndOfCentralDir = 0x06054b50;
constexpr std::uint32_t kCentralHeader = 0x02014b50;
constexpr std::uint32_t kLocalHeader = 0x04034b50;

std::uint16_t le16(std::string_view b, std::size_t at) {
    return std::uint16_t(std::uint8_t(b[at]) | (std::uint8_t(b[at + 1]) << 8));
}

std::uint32_t le32(std::string_view b, std::size_t at) {
    return std::uint32_t(le16(b, at)) | (std::uint32_t(le16(b, at + 2)) << 16);
}

[[noreturn]] void not_a_zip(const std::string& where, const std::string& detail) {
    throw IngestError(IngestError::Kind::NotAZip, where, detail);
}

std::string inflate_raw(std::string_view in, std::uint64_t expected, const std::string& member) {
    std::string out;
    out.resize(expected);
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) not_a_zip(member, "inflate init failed");
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&zs, Z_FINISH);
    std::uint64_t produced = zs.total_out;
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || produced != expected) not_a_zip(member, "corrupt deflate stream");
    return out;
}

} // namespace

ZipArchive::ZipArchive(std::string bytes) : bytes_(std::move(bytes)) {
    std::string_view b = bytes_;
    if (b.size() < 22) not_a_zip("", "archive too short");

    // The end record sits in the last 22 + 65535 bytes (comment may follow it).
    std::size_t lowest = b.size() > 22 + 65535 ? b.size() - 22 - 65535 : 0;
    std::optional<std::size_t> eocd;
    for (std::size_t pos = b.size() - 22 + 1; pos-- > lowest;) {
        if (le32(b, pos) == kEndOfCentralDir) {
            eocd = pos;
            break;
        }
    }
    if (!eocd) not_a_zip("", "end of central directory not found");

    std::uint16_t count = le16(b, *eocd + 10);
    std::uint32_t dir_size = le32(b, *eocd + 12);
    std::uint32_t dir_offset = le32(b, *eocd + 16);
    if (dir_offset == 0xFFFFFFFFu || count == 0xFFFF) not_a_zip("", "ZIP64 archives are not supported");
    if (std::uint64_t(dir_offset) + dir_size > *eocd) not_a_zip("", "central directory out of range");

    std::size_t pos = dir_offset;
    entries_.reserve(count);
    for (std::uint16_t i = 0; i < count; ++i) {
        if (pos + 46 > b.size() || le32(b, pos) != kCentralHeader)
            not_a_zip("", "bad central directory entry");
        Entry e;
        e.method = le16(b, pos + 10);
        e.crc = le32(b, pos + 16);
        e.compressed_size = le32(b, pos + 20);
        e.size = le32(b, pos + 24);
        std::uint16_t name_len = le16(b, pos + 28);
        std::uint16_t extra_len = le16(b, pos + 30);
        std::uint16_t comment_len = le16(b, pos + 32);
        e.local_offset = le32(b, pos + 42);
        if (pos + 46 + name_len > b.size()) not_a_zip("", "truncated central directory");
        e.name.assign(b.substr(pos + 46, name_len));
        entries_.push_back(std::move(e));
        pos += 46 + name_len + extra_len + comment_len;
    }
}

const ZipArchive::Entry* ZipArchive::find(std::string_view member) const {
    for (const auto& e : entries_)
        if (e.name == member) return &e;
    return nullptr;
}

bool ZipArchive::contains(std::string_view member) const { return find(member) != nullptr; }

std::vector<std::string> ZipArchive::members() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.name);
    return out;
}

std::optional<std::string> ZipArchive::read(std::string_view member) const {
    const Entry* e = find(member);
    if (!e) return std::nullopt;
    std::string_view b = bytes_;
    std::size_t pos = e->local_offset;
    if (pos + 30 > b.size() || le32(b, pos) != kLocalHeader) not_a_zip(e->name, "bad local header");
    std::size_t data = pos + 30 + le16(b, pos + 26) + le16(b, pos + 28);
    if (data + e->compressed_size > b.size()) not_a_zip(e->name, "member data out of range");
    std::string_view raw = b.substr(data, e->compressed_size);

    std::string out;
    switch (e->method) {
    case 0:
        if (e->compressed_size != e->size) not_a_zip(e->name, "stored size mismatch");
        out.assign(raw);
        break;
    case 8:
        out = inflate_raw(raw, e->size, e->name);
        break;
    default:
        not_a_zip(e->name, "unsupported compression method " + std::to_string(e->method));
    }
    auto crc = crc32(0L, reinterpret_cast<const Bytef*>(out.data()), static_cast<uInt>(out.size()));
    if (crc != e->crc) not_a_zip(e->name, "CRC mismatch");
    return out;
}

} // namespace cellflow::detail
