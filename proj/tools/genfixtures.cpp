// Regenerates the fixture manifest files from the built-in definitions.
// Usage: fde_genfixtures <output-dir>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "fermat/fixtures.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: fde_genfixtures <output-dir>\n";
        return 2;
    }
    std::filesystem::path dir(argv[1]);
    std::filesystem::create_directories(dir);
    for (const auto& fixture : fermat::builtin_fixtures()) {
        std::filesystem::path path = dir / (fixture.name + ".fde");
        std::ofstream out(path);
        if (!out) {
            std::cerr << "cannot write " << path << "\n";
            return 2;
        }
        out << fermat::print_manifest(fixture.doc);
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}
