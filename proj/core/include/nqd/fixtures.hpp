#pragma once

#include <string>
#include <vector>

namespace nqd {

struct NamedDocument {
  std::string file;  // relative to the fixture directory
  std::string text;
};

/// Every corpus instance rendered in the document format: algebra documents
/// (*.json), their CDG duals and matrix connections (*.cdg.json) and the
/// morphisms between them (*.morphism.json). Deterministic.
std::vector<NamedDocument> corpus_documents();

}  // namespace nqd
