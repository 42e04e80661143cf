#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "nqd/cdg.hpp"
#include "nqd/presentation.hpp"
#include "nqd/quadratic.hpp"

namespace nqd {

enum class DocumentKind { Algebra, Cdg, Morphism };

/// Decides from the top-level keys: "base" or "matrix" means a CDG document,
/// "images" a morphism, anything else an algebra document.
DocumentKind detect_kind(std::string_view text);

/// Algebra document:
///   {"field": "rational" | {"prime": p}, "generators": [...],
///    "relations": [{"quadratic": [[c, g, g], ...], "linear": [[c, g], ...], "scalar": c}],
///    "augmentation": {g: c}, "kind": "quadratic" | "nonhomogeneous"}
/// Coefficients are integers or "p/q" strings. Errors are ParseError with the
/// line and column of the offending value.
NQPresentation parse_presentation(std::string_view text, std::optional<Field> field = std::nullopt);
/// The quadratic parts only; rejects documents with linear or scalar terms.
QuadraticAlgebra parse_quadratic(std::string_view text, std::optional<Field> field = std::nullopt);

/// CDG document: {"base": <quadratic algebra document>, "d1": [[...] per generator], "h": [...]}
/// with coordinates in the normal-word basis of B^2 (echoed under "basis"), or
/// {"matrix": {"rank": r, "exterior_dim": m, "alpha0": [...], "d0": [[...]]}, "field": ...}.
/// Runs verify_cdg up to verify_degree unless verify is false.
CdgAlgebra parse_cdg(std::string_view text, std::optional<Field> field = std::nullopt, bool verify = true,
                     std::size_t verify_degree = 4);

/// {"images": [[...] per source generator, in the target basis of its degree], "alpha": [...]}.
CdgMorphism parse_morphism(std::string_view text, const CdgAlgebra& source, const CdgAlgebra& target);

std::string write_presentation(const NQPresentation& p);
std::string write_quadratic(const QuadraticAlgebra& a);
/// Quadratic or matrix-exterior bases; matrix bases are written with explicit
/// images of every generator under d ("d") instead of alpha0/d0.
std::string write_cdg(const CdgAlgebra& psi);
std::string write_morphism(const CdgMorphism& m);

/// Whole file contents; throws Error when the file cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace nqd
