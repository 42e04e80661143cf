// Writes the corpus fixtures into a directory (default: ./fixtures).

#include <filesystem>
#include <fstream>
#include <iostream>

#include "nqd/fixtures.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);
  for (const auto& doc : nqd::corpus_documents()) {
    std::ofstream out(dir / doc.file, std::ios::binary);
    out << doc.text;
    if (!out) {
      std::cerr << "cannot write " << (dir / doc.file) << '\n';
      return 1;
    }
    std::cout << (dir / doc.file).string() << '\n';
  }
  return 0;
}
