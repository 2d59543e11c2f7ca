#include "steiner/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

static_assert(std::endian::native == std::endian::little,
              "STNR1 writer assumes a little-endian host");

namespace steiner {
namespace {

constexpr char kMagic[5] = {'S', 'T', 'N', 'R', '1'};

void put_u16(std::string& buf, std::uint16_t v) {
    buf.push_back(static_cast<char>(v & 0xff));
    buf.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& buf, double v) {
    char raw[8];
    std::memcpy(raw, &v, 8);
    buf.append(raw, 8);
}

std::string header_bytes(const Grid& g, int kind) {
    std::string buf;
    buf.append(kMagic, 5);
    buf.push_back(static_cast<char>(kind));
    put_u16(buf, static_cast<std::uint16_t>(g.spatial_dims()));
    put_u16(buf, static_cast<std::uint16_t>(g.codim()));
    buf.push_back(g.has_t_axis() ? 1 : 0);
    for (int a = 0; a < g.rank(); ++a) {
        put_u32(buf, static_cast<std::uint32_t>(g.dim(a)));
        put_f64(buf, g.spacing(a));
    }
    return buf;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw io_error("write failed: " + path);
}

class Reader {
public:
    explicit Reader(const std::string& path) : path_(path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw io_error("cannot open: " + path);
        data_.assign(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
    }
    void need(std::size_t n, const char* what) const {
        if (pos_ + n > data_.size())
            throw io_error(std::string("truncated payload (") + what + "): " + path_);
    }
    std::uint8_t u8(const char* what) {
        need(1, what);
        return static_cast<std::uint8_t>(data_[pos_++]);
    }
    std::uint16_t u16(const char* what) {
        need(2, what);
        std::uint16_t v = 0;
        v |= static_cast<std::uint8_t>(data_[pos_]);
        v |= static_cast<std::uint16_t>(static_cast<std::uint8_t>(data_[pos_ + 1])) << 8;
        pos_ += 2;
        return v;
    }
    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(data_[pos_ + static_cast<std::size_t>(i)])) << (8 * i);
        pos_ += 4;
        return v;
    }
    double f64(const char* what) {
        need(8, what);
        double v;
        std::memcpy(&v, data_.data() + pos_, 8);
        pos_ += 8;
        return v;
    }
    const char* raw(std::size_t n, const char* what) {
        need(n, what);
        const char* p = data_.data() + pos_;
        pos_ += n;
        return p;
    }
    bool exhausted() const { return pos_ == data_.size(); }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::string data_;
    std::size_t pos_ = 0;
};

struct Parsed {
    StnrHeader header;
    Grid grid;
    Reader reader;
};

Parsed parse_header(const std::string& path) {
    Reader r(path);
    const char* magic = r.raw(5, "magic");
    if (std::memcmp(magic, kMagic, 5) != 0)
        throw io_error("bad magic: " + path);
    StnrHeader h;
    h.kind = r.u8("kind");
    if (h.kind != 0 && h.kind != 1)
        throw io_error("unknown object kind: " + path);
    h.n = r.u16("n");
    h.k = r.u16("k");
    h.has_t = r.u8("has_t") != 0;
    if (h.n < 1 || h.k < 1 || h.k > h.n)
        throw io_error("invalid axis split: " + path);
    const int axes = h.n + (h.has_t ? 1 : 0);
    std::int64_t cells = 1;
    for (int a = 0; a < axes; ++a) {
        const std::uint32_t count = r.u32("axis count");
        const double sp = r.f64("axis spacing");
        if (count == 0 || count > (1u << 30))
            throw io_error("dimension overflow: " + path);
        if (!(sp > 0.0) || !std::isfinite(sp))
            throw io_error("invalid spacing: " + path);
        if (cells > std::numeric_limits<std::int64_t>::max() / count)
            throw io_error("dimension overflow: " + path);
        cells *= count;
        h.dims.push_back(static_cast<int>(count));
        h.spacing.push_back(sp);
    }
    if (cells > (std::int64_t{1} << 40))
        throw io_error("dimension overflow: " + path);
    Grid g(h.dims, h.spacing, h.k, h.has_t);
    return Parsed{h, std::move(g), std::move(r)};
}

} // namespace

void save(const GridFunction& u, const std::string& path) {
    std::string buf = header_bytes(u.grid(), 0);
    buf.reserve(buf.size() + u.values().size() * 8);
    for (double v : u.values()) put_f64(buf, v);
    write_file(path, buf);
}

void save(const VoxelSet& e, const std::string& path) {
    std::string buf = header_bytes(e.grid(), 1);
    buf.reserve(buf.size() + e.mask().size());
    for (std::uint8_t b : e.mask()) buf.push_back(static_cast<char>(b));
    write_file(path, buf);
}

LoadedObject load(const std::string& path) {
    Parsed p = parse_header(path);
    const std::int64_t cells = p.grid.cell_count();
    if (p.header.kind == 0) {
        const char* raw =
            p.reader.raw(static_cast<std::size_t>(cells) * 8, "values");
        std::vector<double> values(static_cast<std::size_t>(cells));
        std::memcpy(values.data(), raw, values.size() * 8);
        for (double v : values) {
            if (std::isnan(v)) throw io_error("NaN value: " + path);
            if (!std::isfinite(v)) throw io_error("non-finite value: " + path);
            if (v < 0.0) throw io_error("negative value: " + path);
        }
        if (!p.reader.exhausted()) throw io_error("trailing bytes: " + path);
        return GridFunction(std::move(p.grid), std::move(values));
    }
    const char* raw = p.reader.raw(static_cast<std::size_t>(cells), "mask");
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(cells));
    std::memcpy(mask.data(), raw, mask.size());
    for (std::uint8_t b : mask)
        if (b > 1) throw io_error("mask byte not 0/1: " + path);
    if (!p.reader.exhausted()) throw io_error("trailing bytes: " + path);
    return VoxelSet(std::move(p.grid), std::move(mask));
}

GridFunction load_function(const std::string& path) {
    LoadedObject obj = load(path);
    if (auto* u = std::get_if<GridFunction>(&obj)) return std::move(*u);
    throw io_error("expected a grid function: " + path);
}

VoxelSet load_voxel_set(const std::string& path) {
    LoadedObject obj = load(path);
    if (auto* e = std::get_if<VoxelSet>(&obj)) return std::move(*e);
    throw io_error("expected a voxel set: " + path);
}

StnrHeader inspect_stnr(const std::string& path) {
    return parse_header(path).header;
}

} // namespace steiner
