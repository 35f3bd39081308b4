#include "convnls/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "convnls/errors.hpp"

namespace convnls {

namespace {

static_assert(sizeof(double) == 8);

template <class T>
T byteswap_if_big(T v) {
    if constexpr (std::endian::native == std::endian::little) {
        return v;
    } else {
        T out;
        auto* a = reinterpret_cast<unsigned char*>(&v);
        auto* b = reinterpret_cast<unsigned char*>(&out);
        for (std::size_t i = 0; i < sizeof(T); ++i) b[i] = a[sizeof(T) - 1 - i];
        return out;
    }
}

void put_u32(std::ostream& os, std::uint32_t v) {
    v = byteswap_if_big(v);
    os.write(reinterpret_cast<const char*>(&v), 4);
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    bits = byteswap_if_big(bits);
    os.write(reinterpret_cast<const char*>(&bits), 8);
}

std::uint32_t get_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 4);
    return byteswap_if_big(v);
}

double get_f64(std::istream& is) {
    std::uint64_t bits = 0;
    is.read(reinterpret_cast<char*>(&bits), 8);
    bits = byteswap_if_big(bits);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

} // namespace

void write_snapshot(const std::string& path, const Field& u) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw SnapshotError("cannot open for writing: " + path);
    os.write("CNLS", 4);
    put_u32(os, 1);
    put_u32(os, static_cast<std::uint32_t>(u.grid.dim()));
    put_u32(os, static_cast<std::uint32_t>(u.grid.points_per_axis()));
    put_f64(os, u.grid.box_length());
    for (const cplx& z : u.values) {
        put_f64(os, z.real());
        put_f64(os, z.imag());
    }
    if (!os) throw SnapshotError("write failed: " + path);
}

Field read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw SnapshotError("cannot open: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "CNLS", 4) != 0)
        throw SnapshotError("bad magic in " + path);
    const std::uint32_t version = get_u32(is);
    if (version != 1) throw SnapshotError("unsupported snapshot version");
    const std::uint32_t dim = get_u32(is);
    const std::uint32_t n = get_u32(is);
    const double L = get_f64(is);
    if (!is) throw SnapshotError("truncated header in " + path);
    GridSpec g = make_grid(static_cast<int>(dim), static_cast<int>(n), L);
    std::vector<cplx> v(g.size());
    for (cplx& z : v) {
        const double re = get_f64(is);
        const double im = get_f64(is);
        z = cplx{re, im};
    }
    if (!is) throw SnapshotError("truncated data in " + path);
    return Field(g, std::move(v));
}

} // namespace convnls
