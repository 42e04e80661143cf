// One line per acceptance criterion. Exit status is nonzero when any line fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "../unit/oracles.hpp"
#include "nqd/bar.hpp"
#include "nqd/chern.hpp"
#include "nqd/corpus.hpp"
#include "nqd/duality.hpp"
#include "nqd/errors.hpp"
#include "nqd/presentation.hpp"
#include "nqd/quadratic.hpp"

using namespace nqd;

namespace {

std::string g_cli;       // path of the nqd binary, when given
std::string g_fixtures;  // fixture directory, when given

enum class Status { Pass, Fail, Unattainable };

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      status_ = Status::Fail;
      if (failures_++ < 3) fail_ << (fail_.tellp() ? "; " : "") << what;
    }
  }
  void note(const std::string& s) { notes_ << (notes_.tellp() ? "; " : "") << s; }
  void unattainable(const std::string& s) {
    if (status_ == Status::Pass) status_ = Status::Unattainable;
    note(s);
  }
  Outcome done() const {
    if (status_ == Status::Fail) return {status_, "failed: " + fail_.str()};
    return {status_, notes_.str()};
  }

 private:
  Status status_ = Status::Pass;
  std::size_t failures_ = 0;
  std::ostringstream fail_, notes_;
};

std::vector<std::string> names(std::size_t g) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < g; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

Matrix clifford3_form() {
  Matrix q(3, 3);
  q.at(0, 0) = 1;
  q.at(1, 1) = -1;
  q.at(2, 2) = 2;
  q.at(0, 2) = q.at(2, 0) = 1;
  return q;
}

NQPresentation clifford2() { return clifford({"v", "w"}, Matrix::identity(2)); }
NQPresentation u_heis() { return enveloping(heisenberg3()); }

std::vector<std::pair<std::string, NQPresentation>> round_trip_corpus() {
  return {{"Clifford(2)", clifford2()},
          {"Clifford(3)", clifford({"a", "b", "c"}, clifford3_form())},
          {"U(abelian3)", enveloping(LieData::abelian({"x", "y", "z"}))},
          {"U(heis3)", u_heis()},
          {"Weyl", weyl()}};
}

std::vector<std::pair<std::string, NQPresentation>> corpus() {
  auto out = round_trip_corpus();
  out.push_back({"U(sl2)", enveloping(sl2())});
  out.push_back({"heis3-extension", heisenberg_extension()});
  out.push_back({"Clifford-linear(2)", clifford_linear({"v", "w"}, Vector{Scalar(1), Scalar(2)})});
  out.push_back({"counterexample", pbw_counterexample()});
  return out;
}

LieData non_jacobi() {
  LieData g = LieData::abelian({"x", "y", "z"});
  g.set_bracket(0, 1, {0, 1, 0});
  g.set_bracket(1, 2, {1, 0, 0});
  return g;
}

std::vector<std::pair<std::string, CdgAlgebra>> chern_fixtures(Field field = Field::rational()) {
  if (!field.is_rational()) return {{"matrix connection", matrix_connection_fixture(17, field)}};
  return {{"Weyl", dualize(weyl())},
          {"heis3-extension", dualize(heisenberg_extension())},
          {"matrix connection", matrix_connection_fixture()}};
}

std::string dims(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

Outcome double_dual() {
  Check c;
  std::mt19937_64 rng(20240);
  for (int t = 0; t < 100; ++t) {
    const std::size_t g = 1 + rng() % 4;
    const std::size_t k = rng() % (g * g + 1);
    std::vector<SparseVector> rows;
    for (std::size_t i = 0; i < k; ++i) {
      Vector v(g * g);
      for (auto& x : v) x = Scalar(static_cast<long long>(rng() % 7) - 3);
      rows.push_back(to_sparse(v));
    }
    const QuadraticAlgebra a(names(g), Subspace::span(g * g, rows));
    const QuadraticAlgebra d = quadratic_dual(a);
    c.require(quadratic_dual(d).relations() == a.relations(), "(A!)! != A at sample " + std::to_string(t));
    c.require(a.relations().dim() + d.relations().dim() == g * g, "dim I + dim I-perp != g^2");
  }
  c.note("100 seeded algebras, dim V <= 4");
  return c.done();
}

Outcome round_trips() {
  Check c;
  for (const auto& [name, p] : round_trip_corpus()) {
    const CdgAlgebra psi = dualize(p);
    c.require(j2_subspace(reconstruct(psi)) == j2_subspace(p), "reconstruct(dualize) on " + name);
    c.require(same_cdg(dualize(reconstruct(psi)), psi), "dualize(reconstruct) on " + name);
  }
  c.note("J2 and (d1, h) equal on 5 presentations");
  return c.done();
}

Outcome pbw_theorem() {
  Check c;
  const FiltrationReport heis = filtration_dims(u_heis(), 4, 2);
  std::vector<std::size_t> expected, brute;
  std::size_t tensor_dim = 0, power = 1;  // dim T_n(V) for dim V = 3
  for (std::size_t n = 0; n <= 4; ++n, power *= 3) {
    tensor_dim += power;
    expected.push_back(oracle::binomial(n + 2, 2));
    brute.push_back(tensor_dim - oracle::saturation_dim(u_heis(), n, 2));
  }
  c.require(heis.graded == expected, "U(heis3) Gr dims " + dims(heis.graded));
  std::vector<std::size_t> brute_gr;
  for (std::size_t n = 0; n <= 4; ++n) brute_gr.push_back(brute[n] - (n ? brute[n - 1] : 0));
  c.require(brute_gr == expected, "brute-force saturation Gr dims " + dims(brute_gr));
  c.require(pbw_check(dualize(u_heis()), 4, 2).holds, "pbw_check on U(heis3)");

  const FiltrationReport cl = filtration_dims(clifford2(), 4, 2);
  std::size_t total = 0;
  for (auto g : cl.graded) total += g;
  c.require(total == 4 && cl.graded.back() == 0, "Clifford(2) total dim " + std::to_string(total));

  const PbwVerdict w = pbw_check(dualize(weyl()), 4, 2);
  c.require(w.holds && w.gr_dims == w.dual_dims, "Weyl Gr dims vs dual " + dims(w.gr_dims));
  c.note("U(heis3) Gr " + dims(heis.graded) + ", Clifford(2) total 4, Weyl Gr " + dims(w.gr_dims));
  return c.done();
}

Outcome counterexample() {
  Check c;
  const CdgAlgebra psi = dualize(pbw_counterexample());
  for (std::size_t slack = 2; slack <= 3; ++slack) {
    const PbwVerdict v = pbw_check(psi, 3, slack);
    c.require(!v.holds && v.first_failure == 2u, "slack " + std::to_string(slack) + " does not fail at degree 2");
  }
  const PbwVerdict s1 = pbw_check(psi, 4, 1);
  c.require(!s1.holds, "slack 1 reports PBW holding");
  const WeakQlsVerdict weak = weak_qls_check(pbw_counterexample(), 4, 2);
  c.require(!weak.pbw, "weak QLS check reports PBW holding");
  if (g_cli.empty()) {
    c.require(false, "no nqd binary given; cmd_pbw exit status not checked");
  } else {
    const std::string cmd = g_cli + " pbw " + g_fixtures + "/pbw_counterexample.json --slack 1 > /dev/null";
    const int raw = std::system(cmd.c_str());
    const int status = raw == -1 ? -1 : WEXITSTATUS(raw);
    c.require(status == 1, "cmd_pbw exit status " + std::to_string(status));
    c.note("slack 2,3 fail at degree 2 (Gr_2 = 5 < 7); nqd pbw exits " + std::to_string(status));
  }
  if (s1.first_failure != 2u) {
    c.unattainable("slack 1 first fails at degree " + (s1.first_failure ? std::to_string(*s1.first_failure) : "-") +
                   ", not 2: the degree-2 collapse needs products of degree 4 (see decisions ledger)");
  }
  return c.done();
}

Outcome h0_comparison() {
  Check c;
  for (const auto& [name, p] : {std::pair{std::string("Clifford(2)"), clifford2()},
                                std::pair{std::string("U(heis3)"), u_heis()}}) {
    const H0Comparison h = h0_compare(dualize(p), 3, 2);
    c.require(h.ok && h.bar_dims == h.filtration_dims, name + " bar " + dims(h.bar_dims));
    c.note(name + " " + dims(h.bar_dims));
  }
  return c.done();
}

Outcome cdg_axioms() {
  Check c;
  std::size_t count = 0;
  for (const auto& [name, p] : corpus()) {
    c.require(verify_cdg(dualize(p), 6).ok, "dual of " + name);
    ++count;
  }
  for (const auto& a : {AugmentedAlgebra{{"x"}, {{Vector{Scalar(0)}}}},
                        AugmentedAlgebra{{"e", "f"},
                                         {{Vector{Scalar(1), Scalar(0)}, Vector(2)},
                                          {Vector(2), Vector{Scalar(0), Scalar(1)}}}}}) {
    c.require(verify_cdg(dualize(cobar_presentation(a)), 6).ok, "cobar dual");
    ++count;
  }
  for (std::uint64_t seed : {17u, 3u, 99u}) {
    c.require(verify_cdg(matrix_connection_fixture(seed), 6).ok, "matrix connection seed " + std::to_string(seed));
    ++count;
  }
  bool rejected = false;
  try {
    dualize(enveloping(non_jacobi()));
  } catch (const NotADerivation&) {
    rejected = true;
  }
  c.require(rejected && !lie_jacobi_holds(non_jacobi()), "Jacobi-violating data accepted");
  c.require(!verify_cdg(dualize(enveloping(non_jacobi()), false), 6).ok, "verify_cdg passes non-Jacobi dual");
  c.note(std::to_string(count) + " CDG-algebras up to degree 6; non-Jacobi data rejected");
  return c.done();
}

Outcome bar_square_zero() {
  Check c;
  std::size_t blocks = 0, duals = 0;
  for (const auto& [name, p] : corpus()) {
    const SquareZeroReport r = check_square_zero(BarComplex(dualize(p), 7));
    c.require(r.ok, name + (r.checks.empty() ? "" : ": " + r.checks.front().identity));
    blocks += r.evaluated;
    ++duals;
  }
  c.note(std::to_string(duals) + " corpus duals at M = 7, " + std::to_string(blocks) + " blocks, 6 identities each");
  return c.done();
}

Outcome chern_invariance(Field field = Field::rational()) {
  Check c;
  for (const auto& [name, psi] : chern_fixtures(field))
    for (std::size_t n = 1; n <= 2; ++n) {
      const TraceSpace tc(psi, 2 * n + 1);
      const ChernForm f = chern(psi, tc, n);
      c.require(f.closed && f.h_power_closed, name + " c_" + std::to_string(n) + " not closed");
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const CdgAlgebra t = twist(psi, random_degree_one(psi.base(), seed));
        const ChernForm g = chern(t, tc, n);
        c.require(g.closed && g.representative == f.representative,
                  name + " n=" + std::to_string(n) + " twist seed " + std::to_string(seed));
      }
    }
  c.note(std::string(field.is_rational() ? "Weyl, heis3-extension, matrix (r=2, m=3)" : "matrix connection over F5") +
         "; n = 1, 2; 20 twists each");
  return c.done();
}

Outcome obstruction() {
  Check c;
  const ChernForm w = chern(dualize(weyl()), 1);
  const ChernForm h = chern(dualize(heisenberg_extension()), 1);
  c.require(!w.zero_class, "Weyl c_1 class is zero");
  c.require(!weyl().augmentation().has_value(), "Weyl carries an augmentation");
  c.require(h.zero_class && !is_zero(h.form), "heis3-extension c_1 class is not zero");
  c.note("Weyl c_1 != 0, heis3-extension c_1 = 0 with c_1 != 0 as a form");
  return c.done();
}

Outcome cs_functor() {
  Check c;
  std::size_t pairs = 0;
  for (const auto& [name, psi] : chern_fixtures())
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      const auto [m1, m2] = random_morphism_pair(psi, seed);
      ++pairs;
      for (std::size_t n = 1; n <= 2; ++n) {
        const TwoTermMorphism a = cs_morphism(m1, n), b = cs_morphism(m2, n);
        const std::string at = name + " seed " + std::to_string(seed) + " n=" + std::to_string(n);
        c.require(satisfies_c2(cs_object(m1.source(), n), cs_object(m1.target(), n), a), "C2 equation " + at);
        c.require(satisfies_c2(cs_object(m2.source(), n), cs_object(m2.target(), n), b), "C2 equation " + at);
        c.require(same_c2_morphism(cs_morphism(compose(m2, m1), n), c2_compose(b, a)), "composition " + at);
        if (seed <= 5) {
          const Vector mid = random_degree_one(m2.target().base(), 50 + seed);
          c.require(same_c2_morphism(b, cs_morphism(m2, n, {mid})), "path dependence " + at);
        }
      }
    }
  c.note(std::to_string(pairs) + " composable pairs, n = 1, 2; polygon paths agree modulo the quotient");
  return c.done();
}

Outcome transgression() {
  Check c;
  std::size_t identities = 0;
  bool all_exhaustive = true;
  for (const auto& [name, psi] : chern_fixtures())
    for (std::size_t n = 1; n <= 2; ++n) {
      const TransgressionReport r = verify_transgression(psi, n);
      c.require(r.ok, name + " n=" + std::to_string(n));
      identities += r.identities;
      all_exhaustive = all_exhaustive && r.exhaustive_grid;
    }
  const TransgressionReport r3 = verify_transgression(matrix_connection_fixture(), 3);
  c.require(r3.ok, "matrix connection n=3");
  identities += r3.identities;
  c.note(std::to_string(identities) + " identities, symbolic certificate plus grid evaluation" +
         (all_exhaustive ? "" : " (seeded grid where the full grid exceeds 4096 points)"));
  return c.done();
}

Outcome characteristic_guard() {
  const Field f5 = Field::prime(5);
  Outcome o = chern_invariance(f5);
  if (o.status == Status::Fail) return o;
  Check c;
  bool refused = false;
  try {
    chern(matrix_connection_fixture(17, f5), 3);
  } catch (const CharacteristicGuard&) {
    refused = true;
  }
  c.require(refused, "n = 3 over F5 was not refused");
  c.note("F5: n = 1, 2 invariant over 20 twists; n = 3 refused");
  return c.done();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 2) {
    g_cli = argv[1];
    g_fixtures = argv[2];
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"double dual", double_dual},
      {"duality round trips", round_trips},
      {"PBW theorem", pbw_theorem},
      {"counterexample detection", counterexample},
      {"H^b_0 vs filtration", h0_comparison},
      {"CDG axioms", cdg_axioms},
      {"bar square-zero", bar_square_zero},
      {"Chern closedness and invariance", [] { return chern_invariance(); }},
      {"obstruction semantics", obstruction},
      {"Chern-Simons functor", cs_functor},
      {"transgression", transgression},
      {"characteristic-p guard", characteristic_guard},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Fail ? "FAIL" : "PASS*";
    std::printf("[%s] %2zu %s: %s (%.2fs)\n", tag, i + 1, criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    if (o.status == Status::Fail) ++failed;
  }
  std::printf("%d of %zu criteria failed; PASS* marks a criterion with a documented unattainable sub-claim\n", failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
