#include "nqd/fixtures.hpp"

#include "nqd/corpus.hpp"
#include "nqd/duality.hpp"
#include "nqd/io.hpp"

namespace nqd {

namespace {

Matrix clifford3_form() {
  Matrix q(3, 3);
  q.at(0, 0) = 1;
  q.at(1, 1) = -1;
  q.at(2, 2) = 2;
  q.at(0, 2) = q.at(2, 0) = 1;
  return q;
}

LieData non_jacobi() {
  LieData g = LieData::abelian({"x", "y", "z"});
  g.set_bracket(0, 1, {0, 1, 0});
  g.set_bracket(1, 2, {1, 0, 0});
  return g;
}

AugmentedAlgebra dual_numbers() { return {{"x"}, {{Vector{Scalar(0)}}}}; }

AugmentedAlgebra product_of_fields() {
  return {{"e", "f"}, {{Vector{Scalar(1), Scalar(0)}, Vector(2)}, {Vector(2), Vector{Scalar(0), Scalar(1)}}}};
}

}  // namespace

std::vector<NamedDocument> corpus_documents() {
  std::vector<NamedDocument> out;
  const auto algebra = [&](const std::string& name, const NQPresentation& p) {
    out.push_back({name + ".json", write_presentation(p)});
  };
  const auto cdg = [&](const std::string& name, const CdgAlgebra& psi) {
    out.push_back({name + ".cdg.json", write_cdg(psi)});
  };

  const std::vector<std::pair<std::string, NQPresentation>> koszul{
      {"exterior2", clifford({"v", "w"}, Matrix(2, 2))},
      {"clifford2", clifford({"v", "w"}, Matrix::identity(2))},
      {"clifford3", clifford({"a", "b", "c"}, clifford3_form())},
      {"clifford_linear2", clifford_linear({"v", "w"}, Vector{Scalar(1), Scalar(2)})},
      {"sym2", enveloping(LieData::abelian({"x", "y"}))},
      {"sym3", enveloping(LieData::abelian({"x", "y", "z"}))},
      {"u_heis3", enveloping(heisenberg3())},
      {"u_sl2", enveloping(sl2())},
      {"weyl", weyl()},
      {"heis3_extension", heisenberg_extension()},
  };
  for (const auto& [name, p] : koszul) {
    algebra(name, p);
    cdg(name, dualize(p));
  }
  algebra("free2", NQPresentation({"x", "y"}, Subspace(4), Matrix(0, 2), Vector{}));
  algebra("pbw_counterexample", pbw_counterexample());
  cdg("pbw_counterexample", dualize(pbw_counterexample()));
  algebra("non_jacobi", enveloping(non_jacobi()));
  algebra("cobar_dual_numbers", cobar_presentation(dual_numbers()));
  algebra("cobar_product_of_fields", cobar_presentation(product_of_fields()));

  const CdgAlgebra m = matrix_connection_fixture();
  const Vector a1 = random_degree_one(m.base(), 5);
  const CdgAlgebra m1 = twist(m, a1);
  const Vector a2 = random_degree_one(m.base(), 6);
  const CdgAlgebra m2 = twist(m1, a2);
  cdg("matrix_connection", m);
  cdg("matrix_connection_twisted", m1);
  cdg("matrix_connection_twisted2", m2);
  out.push_back({"matrix_twist.morphism.json", write_morphism(twist_morphism(m, a1))});
  out.push_back({"matrix_twist2.morphism.json", write_morphism(twist_morphism(m1, a2))});
  return out;
}

}  // namespace nqd
