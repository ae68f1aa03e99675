#pragma once

#include "bagen/driver.hpp"
#include "bagen/types.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <bit>
#include <cerrno>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

namespace bagen {

enum class OutputFormat { None, BinaryEdgeList, TextEdgeList };

inline constexpr std::size_t kBinaryEdgeBytes = 16;

struct SeedGraph {
    NodeId n0 = 0;
    EdgeIndex m0 = 0;
    std::vector<NodeId> edges; // flat endpoint pairs, file order
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Splits a line into whitespace-separated unsigned decimal fields.
inline bool parse_u64_fields(std::string_view line, std::span<std::uint64_t> out) {
    std::size_t pos = 0;
    for (auto& field : out) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        const char* first = line.data() + pos;
        const char* last  = line.data() + line.size();
        auto [ptr, ec]    = std::from_chars(first, last, field);
        if (ec != std::errc{} || ptr == first) return false;
        if (ptr != last && *ptr != ' ' && *ptr != '\t') return false;
        pos = static_cast<std::size_t>(ptr - line.data());
    }
    return trim(line.substr(pos)).empty();
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path);
    return in;
}

inline void store_le64(unsigned char* p, std::uint64_t x) noexcept {
    if constexpr (std::endian::native == std::endian::big) x = __builtin_bswap64(x);
    std::memcpy(p, &x, sizeof x);
}

inline std::uint64_t load_le64(const unsigned char* p) noexcept {
    std::uint64_t x;
    std::memcpy(&x, p, sizeof x);
    if constexpr (std::endian::native == std::endian::big) x = __builtin_bswap64(x);
    return x;
}

} // namespace detail

// Lines "u v"; blank lines and '#' comments are skipped. n0 = 1 + max ID.
inline SeedGraph read_seed_graph(std::istream& in) {
    SeedGraph g;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = line;
        if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = detail::trim(s);
        if (s.empty()) continue;
        std::uint64_t uv[2];
        if (!detail::parse_u64_fields(s, uv)) throw ParseError("expected two node IDs \"u v\"", lineno);
        g.edges.push_back(uv[0]);
        g.edges.push_back(uv[1]);
        g.n0 = std::max({g.n0, uv[0] + 1, uv[1] + 1});
    }
    g.m0 = g.edges.size() / 2;
    return g;
}

inline SeedGraph read_seed_graph(const std::string& path) {
    auto in = detail::open_input(path);
    return read_seed_graph(in);
}

// One decimal degree per line; line k is node n0 + k.
inline DegreeSequence read_degree_file(std::istream& in) {
    DegreeSequence ds;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto s = detail::trim(line);
        std::uint64_t d[1];
        if (!detail::parse_u64_fields(s, d)) throw ParseError("expected one decimal degree", lineno);
        ds.push_back(d[0]);
    }
    return ds;
}

inline DegreeSequence read_degree_file(const std::string& path) {
    auto in = detail::open_input(path);
    return read_degree_file(in);
}

// Owning POSIX file descriptor used for positional writes.
class BinaryEdgeFile {
public:
    BinaryEdgeFile(const std::string& path, EdgeIndex edge_count) : path_(path) {
        fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        if (fd_ < 0) throw std::system_error(errno, std::generic_category(), "cannot create " + path);
        if (::ftruncate(fd_, static_cast<off_t>(edge_count * kBinaryEdgeBytes)) != 0) {
            const int err = errno;
            ::close(fd_);
            throw std::system_error(err, std::generic_category(), "cannot size " + path);
        }
    }
    BinaryEdgeFile(const BinaryEdgeFile&)            = delete;
    BinaryEdgeFile& operator=(const BinaryEdgeFile&) = delete;
    ~BinaryEdgeFile() {
        if (fd_ >= 0) ::close(fd_);
    }

    void write_at(std::uint64_t offset, std::span<const unsigned char> bytes) const {
        std::size_t done = 0;
        while (done < bytes.size()) {
            const ssize_t w = ::pwrite(fd_, bytes.data() + done, bytes.size() - done,
                                       static_cast<off_t>(offset + done));
            if (w < 0) {
                if (errno == EINTR) continue;
                throw std::system_error(errno, std::generic_category(),
                                        path_ + ": write failed at offset " + std::to_string(offset + done));
            }
            done += static_cast<std::size_t>(w);
        }
    }

private:
    std::string path_;
    int fd_ = -1;
};

/*
 * Edge i goes to byte offset 16 (i - m0) as two little-endian u64 values.
 * Each worker buffers the contiguous run of its current batch and flushes
 * it with one positional write, so the file bytes never depend on the
 * schedule.
 */
class BinaryFileConsumer {
public:
    struct context_type {
        EdgeIndex run_lo = 0;
        std::uint64_t written = 0;
        std::vector<unsigned char> buf;
    };

    BinaryFileConsumer(const std::string& path, EdgeIndex m0, EdgeIndex m)
        : file_(std::make_shared<BinaryEdgeFile>(path, m - m0)), m0_(m0) {}

    context_type make_context() const { return {}; }

    void begin_batch(context_type& ctx, const Batch& b) const {
        ctx.run_lo = b.lo;
        ctx.buf.clear();
    }

    void accept(context_type& ctx, EdgeIndex i, const Edge& e) const {
        if (ctx.buf.size() >= kFlushBytes || i != ctx.run_lo + ctx.buf.size() / kBinaryEdgeBytes) {
            flush(ctx);
            ctx.run_lo = i;
        }
        const std::size_t at = ctx.buf.size();
        ctx.buf.resize(at + kBinaryEdgeBytes);
        detail::store_le64(ctx.buf.data() + at, e.source);
        detail::store_le64(ctx.buf.data() + at + 8, e.target);
    }

    void end_batch(context_type& ctx, const Batch&) const { flush(ctx); }

    // Total bytes written.
    std::uint64_t merge(std::vector<context_type>&& all) const {
        std::uint64_t total = 0;
        for (auto& c : all) {
            flush(c);
            total += c.written;
        }
        return total;
    }

private:
    static constexpr std::size_t kFlushBytes = std::size_t{1} << 20;

    void flush(context_type& ctx) const {
        if (ctx.buf.empty()) return;
        file_->write_at((ctx.run_lo - m0_) * kBinaryEdgeBytes, ctx.buf);
        ctx.run_lo += ctx.buf.size() / kBinaryEdgeBytes;
        ctx.written += ctx.buf.size();
        ctx.buf.clear();
    }

    std::shared_ptr<BinaryEdgeFile> file_;
    EdgeIndex m0_;
};

// "u v\n" in stream order; only meaningful with a single worker.
class TextStreamConsumer {
public:
    struct context_type {
        std::ostream* out;
        std::uint64_t lines = 0;
    };

    explicit TextStreamConsumer(std::ostream& out) : out_(&out) {}

    bool single_worker_only() const { return true; }
    context_type make_context() const { return {out_}; }
    void accept(context_type& ctx, EdgeIndex, const Edge& e) const {
        *ctx.out << e.source << ' ' << e.target << '\n';
        ++ctx.lines;
    }
    // Number of lines written.
    std::uint64_t merge(std::vector<context_type>&& all) const {
        out_->flush();
        if (!*out_) throw std::runtime_error("text output failed");
        std::uint64_t lines = 0;
        for (const auto& c : all) lines += c.lines;
        return lines;
    }

private:
    std::ostream* out_;
};

// Writes a materialised edge list; element k is edge m0 + k.
inline void write_edges(std::span<const Edge> edges, OutputFormat format, const std::string& path) {
    switch (format) {
    case OutputFormat::None:
        return;
    case OutputFormat::BinaryEdgeList: {
        BinaryEdgeFile file(path, edges.size());
        std::vector<unsigned char> buf(edges.size() * kBinaryEdgeBytes);
        for (std::size_t k = 0; k < edges.size(); ++k) {
            detail::store_le64(buf.data() + k * kBinaryEdgeBytes, edges[k].source);
            detail::store_le64(buf.data() + k * kBinaryEdgeBytes + 8, edges[k].target);
        }
        file.write_at(0, buf);
        return;
    }
    case OutputFormat::TextEdgeList: {
        std::ofstream out(path);
        if (!out) throw std::system_error(errno, std::generic_category(), "cannot create " + path);
        for (const auto& e : edges) out << e.source << ' ' << e.target << '\n';
        if (!out.flush()) throw std::runtime_error(path + ": write failed");
        return;
    }
    }
}

inline std::vector<Edge> read_binary_edges(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() % kBinaryEdgeBytes != 0) throw std::runtime_error(path + ": size is not a multiple of 16");
    std::vector<Edge> out(bytes.size() / kBinaryEdgeBytes);
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = {detail::load_le64(bytes.data() + k * kBinaryEdgeBytes),
                  detail::load_le64(bytes.data() + k * kBinaryEdgeBytes + 8)};
    return out;
}

} // namespace bagen
