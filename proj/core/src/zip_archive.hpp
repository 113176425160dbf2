#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cellflow::detail {

/// Read-only view over an in-memory ZIP archive (stored and deflated members).
class ZipArchive {
public:
    /// Throws IngestError(NotAZip) when no valid central directory is found.
    explicit ZipArchive(std::string bytes);

    bool contains(std::string_view member) const;
    std::vector<std::string> members() const;
    /// nullopt when absent; throws IngestError(NotAZip, member) when corrupt.
    std::optional<std::string> read(std::string_view member) const;

private:
    struct Entry {
        std::string name;
        std::uint16_t method = 0;
        std::uint32_t crc = 0;
        std::uint64_t compressed_size = 0;
        std::uint64_t size = 0;
        std::uint64_t local_offset = 0;
    };

    const Entry* find(std::string_view member) const;

    std::string bytes_;
    std::vector<Entry> entries_;
};

} // namespace cellflow::detail
