#include "multlab/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "multlab/errors.hpp"

namespace multlab {

static_assert(std::endian::native == std::endian::little, "snapshot IO assumes a little-endian host");

namespace {
template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw Error("snapshot: truncated file");
    return v;
}
} // namespace

void write_snapshot(const std::filesystem::path& path, const SampledField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("snapshot: cannot open " + path.string() + " for writing");
    os.write("MLF1", 4);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid().dim()));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid().points()));
    put<double>(os, f.grid().length());
    put<std::uint32_t>(os, f.domain() == Domain::space ? 0u : 1u);
    for (const auto& v : f.values()) {
        put<float>(os, static_cast<float>(v.real()));
        put<float>(os, static_cast<float>(v.imag()));
    }
    if (!os) throw Error("snapshot: write failed for " + path.string());
}

SampledField read_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("snapshot: cannot open " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "MLF1", 4) != 0) throw Error("snapshot: bad magic in " + path.string());
    auto dim = get<std::uint32_t>(is);
    auto m = get<std::uint32_t>(is);
    auto len = get<double>(is);
    auto tag = get<std::uint32_t>(is);
    if (tag > 1) throw Error("snapshot: bad domain tag");
    GridSpec g(static_cast<int>(dim), m, len);
    SampledField f(g, tag == 0 ? Domain::space : Domain::frequency);
    for (auto& v : f.values()) {
        float re = get<float>(is);
        float im = get<float>(is);
        v = cplx(re, im);
    }
    return f;
}

} // namespace multlab
