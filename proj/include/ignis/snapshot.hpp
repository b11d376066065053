#ifndef IGNIS_SNAPSHOT_HPP
#define IGNIS_SNAPSHOT_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "ignis/errors.hpp"
#include "ignis/solver.hpp"

namespace ignis {

/// On-disk snapshot: little-endian binary with header
///   magic "IGNS" | u32 version | i32 nx, ny, g | i32 ns | species names
///   (u32 length + bytes each) | f64 time | i64 iteration | u64 config hash
/// followed by the mapped conservative fields (rho Y_s / J ..., rho u / J,
/// rho v / J, E / J) and the Jacobian J, each as 64-bit floats in row-major
/// interior-plus-ghost order.
struct SnapshotData {
    std::uint32_t version = 1;
    int nx = 0, ny = 0, g = 0, ns = 0;
    std::vector<std::string> species;
    double time = 0.0;
    std::int64_t iteration = 0;
    std::uint64_t config_hash = 0;
    std::vector<std::vector<double>> fields; // ns + 3 state fields, then J
};

static_assert(std::endian::native == std::endian::little,
              "snapshot format requires a little-endian host");

inline constexpr char kSnapshotMagic[4] = {'I', 'G', 'N', 'S'};

namespace detail {

template <class T> void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T> T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw FormatError("snapshot: truncated file");
    return v;
}

} // namespace detail

inline void write_snapshot(const Simulation& sim, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError("snapshot: cannot open for write: " + path);
    os.write(kSnapshotMagic, 4);
    detail::put<std::uint32_t>(os, 1);
    detail::put<std::int32_t>(os, sim.mesh.nx);
    detail::put<std::int32_t>(os, sim.mesh.ny);
    detail::put<std::int32_t>(os, sim.mesh.g);
    detail::put<std::int32_t>(os, sim.ns());
    for (int s = 0; s < sim.ns(); ++s) {
        const auto& name = sim.mix.species[s].name;
        detail::put<std::uint32_t>(os, static_cast<std::uint32_t>(name.size()));
        os.write(name.data(), static_cast<std::streamsize>(name.size()));
    }
    detail::put<double>(os, sim.time);
    detail::put<std::int64_t>(os, sim.iter);
    detail::put<std::uint64_t>(os, sim.config_hash);
    const int nc = sim.comp().ncomp();
    for (int c = 0; c < nc; ++c) {
        const auto& raw = sim.Ut[c].raw();
        os.write(reinterpret_cast<const char*>(raw.data()),
                 static_cast<std::streamsize>(raw.size() * sizeof(double)));
    }
    const auto& jr = sim.met.jac.raw();
    os.write(reinterpret_cast<const char*>(jr.data()),
             static_cast<std::streamsize>(jr.size() * sizeof(double)));
    if (!os) throw FormatError("snapshot: write failed: " + path);
}

inline SnapshotData read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("snapshot: cannot open: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kSnapshotMagic, 4) != 0)
        throw FormatError("snapshot: bad magic in " + path);
    SnapshotData sd;
    sd.version = detail::get<std::uint32_t>(is);
    if (sd.version != 1)
        throw FormatError("snapshot: unsupported version " +
                          std::to_string(sd.version));
    sd.nx = detail::get<std::int32_t>(is);
    sd.ny = detail::get<std::int32_t>(is);
    sd.g = detail::get<std::int32_t>(is);
    sd.ns = detail::get<std::int32_t>(is);
    if (sd.nx <= 0 || sd.ny <= 0 || sd.g < 0 || sd.ns <= 0 ||
        sd.ns > kMaxSpecies)
        throw FormatError("snapshot: implausible header in " + path);
    for (int s = 0; s < sd.ns; ++s) {
        const auto len = detail::get<std::uint32_t>(is);
        if (len > 64) throw FormatError("snapshot: species name too long");
        std::string name(len, '\0');
        is.read(name.data(), len);
        if (!is) throw FormatError("snapshot: truncated file");
        sd.species.push_back(name);
    }
    sd.time = detail::get<double>(is);
    sd.iteration = detail::get<std::int64_t>(is);
    sd.config_hash = detail::get<std::uint64_t>(is);
    const std::size_t plane = static_cast<std::size_t>(sd.nx + 2 * sd.g) *
                              (sd.ny + 2 * sd.g);
    const int nfields = sd.ns + 3 + 1;
    for (int c = 0; c < nfields; ++c) {
        std::vector<double> buf(plane);
        is.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(plane * sizeof(double)));
        if (!is) throw FormatError("snapshot: truncated field data in " + path);
        sd.fields.push_back(std::move(buf));
    }
    return sd;
}

/// Restores state, time and iteration into a prepared simulation; the mesh
/// shape and species set must match.
inline void apply_snapshot(const SnapshotData& sd, Simulation& sim) {
    if (sd.nx != sim.mesh.nx || sd.ny != sim.mesh.ny || sd.g != sim.mesh.g)
        throw FormatError(
            "snapshot: shape mismatch, file " + std::to_string(sd.nx) + "x" +
            std::to_string(sd.ny) + " (g=" + std::to_string(sd.g) +
            ") vs simulation " + std::to_string(sim.mesh.nx) + "x" +
            std::to_string(sim.mesh.ny) + " (g=" + std::to_string(sim.mesh.g) +
            ")");
    if (sd.ns != sim.ns())
        throw FormatError("snapshot: species count mismatch");
    for (int s = 0; s < sd.ns; ++s)
        if (sd.species[s] != sim.mix.species[s].name)
            throw FormatError("snapshot: species name mismatch at slot " +
                              std::to_string(s));
    const int nc = sim.comp().ncomp();
    for (int c = 0; c < nc; ++c) sim.Ut[c].raw() = sd.fields[c];
    sim.time = sd.time;
    sim.iter = sd.iteration;
    sim.config_hash = sd.config_hash;
}

} // namespace ignis

#endif
