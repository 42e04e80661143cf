#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nqd/corpus.hpp"
#include "nqd/duality.hpp"
#include "nqd/errors.hpp"
#include "nqd/fixtures.hpp"
#include "nqd/io.hpp"

using namespace nqd;

namespace {

std::vector<std::pair<std::string, NQPresentation>> koszul_fixtures() {
  Matrix q3(3, 3);
  q3.at(0, 0) = 1;
  q3.at(1, 1) = -1;
  q3.at(2, 2) = 2;
  q3.at(0, 2) = q3.at(2, 0) = 1;
  return {{"clifford2", clifford({"v", "w"}, Matrix::identity(2))},
          {"clifford3", clifford({"a", "b", "c"}, q3)},
          {"u_abelian3", enveloping(LieData::abelian({"x", "y", "z"}))},
          {"u_heis3", enveloping(heisenberg3())},
          {"weyl", weyl()},
          {"heis3_extension", heisenberg_extension()}};
}

std::pair<int, int> error_position(const std::string& text) {
  try {
    parse_presentation(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return {0, 0};
}

}  // namespace

TEST(Io, PresentationRoundTrip) {
  for (const auto& [name, p] : koszul_fixtures()) {
    SCOPED_TRACE(name);
    EXPECT_EQ(parse_presentation(write_presentation(p)), p);
  }
  const NQPresentation ce = pbw_counterexample();
  EXPECT_EQ(parse_presentation(write_presentation(ce)), ce);
}

TEST(Io, DualizeDocumentReconstructsJ2) {
  for (const auto& [name, p] : koszul_fixtures()) {
    SCOPED_TRACE(name);
    const CdgAlgebra psi = parse_cdg(write_cdg(dualize(p)));
    EXPECT_TRUE(same_cdg(psi, dualize(p)));
    EXPECT_EQ(j2_subspace(reconstruct(psi)), j2_subspace(p));
  }
}

TEST(Io, MatrixConnectionRoundTrip) {
  const CdgAlgebra m = matrix_connection_fixture();
  EXPECT_TRUE(same_cdg(parse_cdg(write_cdg(m)), m));
  const Vector a = random_degree_one(m.base(), 3);
  const CdgAlgebra t = twist(m, a);
  const CdgMorphism f = parse_morphism(write_morphism(twist_morphism(m, a)), m, t);
  EXPECT_TRUE(same_morphism(f, twist_morphism(m, a)));
  EXPECT_TRUE(verify_morphism(f, 4).ok);
}

TEST(Io, MatrixBlockWithAlpha0) {
  const std::string text = R"({
  "field": "rational",
  "matrix": {"rank": 1, "exterior_dim": 3, "alpha0": [1, -2, "1/2"], "d0": [[0, 0, 0], [0, 0, 0], [1, 0, 0]]}
})";
  std::vector<Vector> d0(3, Vector(3));
  d0[2][0] = 1;
  const CdgAlgebra expected = matrix_connection(1, 3, Vector{Scalar(1), Scalar(-2), Field::rational().parse("1/2")}, d0);
  EXPECT_TRUE(same_cdg(parse_cdg(text), expected));
}

TEST(Io, CoefficientsAndFields) {
  const std::string text = R"({"field": {"prime": 7}, "generators": ["x", "y"],
    "relations": [{"quadratic": [[1, "x", "y"], ["-1", "y", "x"]], "linear": [["1/2", "x"]], "scalar": 3}]})";
  const NQPresentation p = parse_presentation(text);
  EXPECT_EQ(p.field(), Field::prime(7));
  EXPECT_EQ(relation_strings(p), (std::vector<std::string>{"x.y + 6*y.x + 4*x + 3"}));
  EXPECT_EQ(parse_presentation(text, Field::rational()).field(), Field::rational());
}

TEST(Io, ParseErrorsCarryPositions) {
  EXPECT_EQ(error_position("{\n  \"generators\": [\"x\", \"2y\"],\n  \"relations\": []\n}"), (std::pair{2, 23}));
  EXPECT_EQ(error_position("{\"generators\": [\"x\", \"x\"], \"relations\": []}"), (std::pair{1, 22}));
  EXPECT_EQ(error_position("{\n \"generators\": [\"x\"],\n \"relations\": [\n  {\"quadratic\": [[1.5, \"x\", \"x\"]]}\n ]\n}"),
            (std::pair{4, 19}));
  EXPECT_EQ(error_position("{\n \"generators\": [\"x\"],\n \"relations\": [{\"quadratic\": [[1, \"x\", \"q\"]]}]\n}"),
            (std::pair{3, 40}));
  // Duplicate quadratic parts are reported at the second relation.
  EXPECT_EQ(error_position("{\"generators\": [\"x\"],\n\"relations\": [{\"quadratic\": [[1, \"x\", \"x\"]]},\n"
                           "  {\"quadratic\": [[2, \"x\", \"x\"]], \"scalar\": 1}]}"),
            (std::pair{3, 3}));
  EXPECT_EQ(error_position("{\n  \"generators\": [\"x\"\n"), (std::pair{3, 1}));
  EXPECT_EQ(error_position("{\"relations\": []}").first, 1);
}

TEST(Io, CdgValidation) {
  const std::string base = R"("base": {"generators": ["x*", "y*"],
    "relations": [{"quadratic": [[1, "x*", "x*"]]}, {"quadratic": [[1, "y*", "y*"]]},
                  {"quadratic": [[1, "x*", "y*"], [1, "y*", "x*"]]}]})";
  EXPECT_NO_THROW(parse_cdg("{" + base + R"(, "d1": [[0], [0]], "h": [1]})"));
  EXPECT_THROW(parse_cdg("{" + base + R"(, "d1": [[0], [0]], "h": [1, 2]})"), ParseError);
  EXPECT_THROW(parse_cdg("{" + base + R"(, "basis": {"2": ["x*.y*"]}, "d1": [[0], [0]], "h": [1]})"),
               ParseError);
  EXPECT_NO_THROW(parse_cdg("{" + base + R"(, "basis": {"2": ["y*.x*"]}, "d1": [[0], [0]], "h": [1]})"));
  // Free algebra on a, b with d(a) = a.b, d(b) = 0: d^2(a) = a.b.b.
  const std::string free = R"({"base": {"generators": ["a", "b"], "relations": []},
    "d1": [[0, 1, 0, 0], [0, 0, 0, 0]], "h": [0, 0, 0, 0]})";
  EXPECT_THROW(parse_cdg(free), NotADerivation);
  EXPECT_NO_THROW(parse_cdg(free, std::nullopt, false));
}

TEST(Io, DocumentKinds) {
  EXPECT_EQ(detect_kind(write_presentation(weyl())), DocumentKind::Algebra);
  EXPECT_EQ(detect_kind(write_cdg(dualize(weyl()))), DocumentKind::Cdg);
  const CdgAlgebra psi = dualize(weyl());
  EXPECT_EQ(detect_kind(write_morphism(CdgMorphism::identity(psi))), DocumentKind::Morphism);
}

TEST(Io, GoldenFixturesAreCurrent) {
  const std::filesystem::path dir = NQD_FIXTURE_DIR;
  std::size_t count = 0;
  for (const auto& doc : corpus_documents()) {
    SCOPED_TRACE(doc.file);
    std::ifstream in(dir / doc.file, std::ios::binary);
    ASSERT_TRUE(in) << "missing fixture; regenerate with nqd_fixtures";
    std::ostringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), doc.text);
    ++count;
  }
  EXPECT_GE(count, 20u);
}

TEST(Io, FixturesParseAndValidate) {
  for (const auto& doc : corpus_documents()) {
    SCOPED_TRACE(doc.file);
    if (doc.file.ends_with(".morphism.json")) continue;
    if (detect_kind(doc.text) == DocumentKind::Cdg) {
      EXPECT_NO_THROW(parse_cdg(doc.text, std::nullopt, true, 6));
    } else if (doc.file == "non_jacobi.json") {
      EXPECT_THROW(dualize(parse_presentation(doc.text)), NotADerivation);
    } else {
      EXPECT_NO_THROW(dualize(parse_presentation(doc.text)));
    }
  }
}
