#include "lpinf/fixture_docs.hpp"

#include <filesystem>
#include <iostream>

// Writes the canonical fixture files into the given directory.
int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_fixtures DIR\n";
        return 2;
    }
    std::filesystem::path dir(argv[1]);
    std::filesystem::create_directories(dir);
    for (auto& [stem, doc] : lpinf::fixtures::shipped_documents()) {
        std::ofstream(dir / (stem + ".yaml")) << lpinf::serialize_document(doc);
        std::cout << stem << ".yaml\n";
    }
    return 0;
}
