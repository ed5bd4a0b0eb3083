// Generates random Micro QR symbols for the cross-decoder check: for each
// case a rendered PGM, the module grid as text, and one manifest line
// (JSONL) with the expected payload and parameters. An independent reader
// (tools/oracle) decodes the PGMs and compares against the manifest; the
// validated grids are then frozen under tests/data/oracle/.

#include "qrsl/microqr.hpp"
#include "qrsl/raster.hpp"
#include "qrsl/rng.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace qrsl;
namespace fs = std::filesystem;

namespace {

std::string random_payload(SplitMix64& rng, PayloadMode mode, int len) {
    static const std::string alnum = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ $%*+-./:";
    std::string s;
    for (int i = 0; i < len; ++i) {
        switch (mode) {
        case PayloadMode::Numeric: s += static_cast<char>('0' + rng.next_below(10)); break;
        case PayloadMode::Alphanumeric: s += alnum[rng.next_below(alnum.size())]; break;
        case PayloadMode::Byte: s += static_cast<char>(32 + rng.next_below(95)); break;
        }
    }
    return s;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: make_oracle_fixtures OUT_DIR COUNT [SEED]\n";
        return 2;
    }
    fs::path out_dir = argv[1];
    int count = std::stoi(argv[2]);
    std::uint64_t seed = argc > 3 ? std::stoull(argv[3]) : 20250101ULL;
    fs::create_directories(out_dir);

    const std::vector<std::pair<MicroQrVersion, EcLevel>> combos = {
        {MicroQrVersion::M1, EcLevel::DetectOnly}, {MicroQrVersion::M2, EcLevel::L},
        {MicroQrVersion::M2, EcLevel::M},          {MicroQrVersion::M3, EcLevel::L},
        {MicroQrVersion::M3, EcLevel::M},          {MicroQrVersion::M4, EcLevel::L},
        {MicroQrVersion::M4, EcLevel::M},          {MicroQrVersion::M4, EcLevel::Q},
    };

    SplitMix64 rng(seed);
    std::ofstream manifest(out_dir / "manifest.jsonl");
    for (int i = 0; i < count; ++i) {
        auto [version, ec] = combos[i % combos.size()];
        std::vector<PayloadMode> modes{PayloadMode::Numeric};
        if (version != MicroQrVersion::M1)
            modes.push_back(PayloadMode::Alphanumeric);
        if (version == MicroQrVersion::M3 || version == MicroQrVersion::M4)
            modes.push_back(PayloadMode::Byte);
        PayloadMode mode = modes[rng.next_below(modes.size())];
        int cap = char_capacity(version, ec, mode);
        int len = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(cap)));
        int mask = static_cast<int>(rng.next_below(5)) - 1; // -1 = auto

        Payload payload{mode, random_payload(rng, mode, len)};
        SymbolMatrix sym = mask < 0 ? encode(payload, version, ec)
                                    : encode(payload, version, ec, mask);

        char name[32];
        std::snprintf(name, sizeof(name), "case_%04d", i);
        write_pgm(rasterize_symbol(sym, 8, 4), out_dir / (std::string(name) + ".pgm"));
        std::ofstream(out_dir / (std::string(name) + ".txt")) << symbol_to_text(sym);

        nlohmann::json line = {
            {"id", name},
            {"payload", payload.data},
            {"mode", to_string(mode)},
            {"version", to_string(version)},
            {"ec", to_string(ec)},
            {"mask", decode(sym).mask},
        };
        manifest << line.dump() << "\n";
    }
    std::cout << "wrote " << count << " cases to " << out_dir << "\n";
    return 0;
}
