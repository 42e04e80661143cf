// nqd: command-line front end for nonhomogeneous quadratic duality.
//
// Exit status: 0 pass, 1 a checked statement fails, 2 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nqd/bar.hpp"
#include "nqd/cdg.hpp"
#include "nqd/chern.hpp"
#include "nqd/corpus.hpp"
#include "nqd/duality.hpp"
#include "nqd/errors.hpp"
#include "nqd/io.hpp"
#include "nqd/presentation.hpp"
#include "nqd/quadratic.hpp"

using namespace nqd;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

struct Options {
  std::string file;
  std::size_t max_degree = 4;
  std::size_t slack = 2;
  std::size_t k = 0;
  std::size_t max_internal = 6;
  std::size_t n = 1;
  std::size_t twists = 20;
  std::uint64_t seed = 1;
  std::string field;
  bool no_verify = false;
  std::string output;
  std::string emit;
  std::string source, target, morphism, next, next_target;
};

class Report {
 public:
  ojson json = ojson::object();
  std::ostringstream text;

  template <class... Args>
  void line(const Args&... args) {
    (text << ... << args);
    text << '\n';
  }
};

std::optional<Field> field_override(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "rational" || s == "Q") return Field::rational();
  std::string digits = s;
  if (!digits.empty() && (digits[0] == 'F' || digits[0] == 'p')) digits.erase(0, 1);
  try {
    std::size_t used = 0;
    const unsigned long p = std::stoul(digits, &used);
    if (used == digits.size()) return Field::prime(static_cast<std::uint32_t>(p));
  } catch (const std::logic_error&) {
  }
  throw ParseError("--field expects \"rational\" or a prime such as 5 or F5");
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

ojson coefficients(std::span<const Scalar> v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

// Linear combination of basis labels, "0" when empty.
std::string element(const std::vector<std::string>& labels, std::span<const Scalar> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    std::string c = v[i].str();
    const bool negative = c[0] == '-';
    if (negative) c.erase(0, 1);
    s += s.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
    if (c != "1" || labels[i] == "1") s += c + (labels[i] == "1" ? "" : " ");
    if (labels[i] != "1") s += labels[i];
  }
  return s.empty() ? "0" : s;
}

void basis_header(Report& r, const GradedAlgebra& b, const std::string& symbol = "B", std::size_t upto = 2) {
  ojson basis = ojson::object();
  for (std::size_t n = 1; n <= upto; ++n) {
    const auto labels = b.labels(n);
    r.line("basis ", symbol, "^", n, ": ", labels.empty() ? std::string("(none)") : join(labels));
    basis[std::to_string(n)] = labels;
  }
  r.json["basis"] = basis;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

struct Loaded {
  std::optional<NQPresentation> presentation;
  std::optional<CdgAlgebra> cdg;
};

Loaded load(const Options& o, bool need_cdg, std::size_t verify_degree) {
  const std::string text = read_text_file(o.file);
  const auto field = field_override(o.field);
  Loaded out;
  switch (detect_kind(text)) {
    case DocumentKind::Algebra:
      out.presentation.emplace(parse_presentation(text, field));
      if (need_cdg) out.cdg.emplace(dualize(*out.presentation));
      break;
    case DocumentKind::Cdg:
      out.cdg.emplace(parse_cdg(text, field, !o.no_verify, verify_degree));
      break;
    case DocumentKind::Morphism:
      throw ParseError(o.file + " is a morphism document; expected an algebra or CDG document");
  }
  return out;
}

CdgAlgebra load_cdg_file(const std::string& path, const Options& o) {
  const std::string text = read_text_file(path);
  const auto field = field_override(o.field);
  switch (detect_kind(text)) {
    case DocumentKind::Algebra:
      return dualize(parse_presentation(text, field));
    case DocumentKind::Cdg:
      return parse_cdg(text, field, !o.no_verify, o.max_degree);
    case DocumentKind::Morphism:
      break;
  }
  throw ParseError(path + " is a morphism document; expected a CDG document");
}

CdgMorphism load_morphism(const std::string& path, const CdgAlgebra& source, const CdgAlgebra& target,
                          const Options& o) {
  CdgMorphism m = parse_morphism(read_text_file(path), source, target);
  if (!o.no_verify) {
    const Verdict v = verify_morphism(m, o.max_degree);
    if (!v.ok) throw NotAMorphism(path + ": morphism equations fail: " + v.failure);
  }
  return m;
}

void common_header(Report& r, const std::string& command, const Options& o, Field field) {
  r.json["command"] = command;
  r.json["input"] = o.file;
  r.json["field"] = field.name();
  r.line("nqd ", command, " ", o.file);
  r.line("field: ", field.name());
}

void cdg_summary(Report& r, const CdgAlgebra& psi) {
  const auto l2 = psi.base().labels(2);
  const auto& gens = psi.base().generators();
  ojson d = ojson::array();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto target = psi.base().labels(gens[i].degree + 1);
    r.line("d(", gens[i].name, ") = ", element(target, psi.d_on_generators()[i]));
    d.push_back(coefficients(psi.d_on_generators()[i]));
  }
  r.line("h = ", element(l2, psi.curvature()));
  r.json["d"] = d;
  r.json["h"] = coefficients(psi.curvature());
}

void verdict_json(ojson& j, const Verdict& v) {
  j["ok"] = v.ok;
  if (!v.ok) {
    j["failure"] = v.failure;
    if (v.degree) j["degree"] = *v.degree;
    j["witness"] = coefficients(v.witness);
  }
}

int cmd_dualize(const Options& o, Report& r) {
  const NQPresentation p = parse_presentation(read_text_file(o.file), field_override(o.field));
  const CdgAlgebra psi = dualize(p);
  common_header(r, "dualize", o, p.field());
  r.json["window"] = o.max_degree;
  basis_header(r, psi.base());
  r.line("relations: ", join(relation_strings(p), "; "));
  cdg_summary(r, psi);
  const Verdict v = verify_cdg(psi, o.max_degree);
  r.line("verify_cdg up to degree ", o.max_degree, ": ", v.ok ? "pass" : "FAIL " + v.failure);
  ojson vj;
  verdict_json(vj, v);
  r.json["verify_cdg"] = vj;
  const std::string doc = write_cdg(psi);
  r.json["document"] = ojson::parse(doc);
  if (!o.emit.empty()) write_file(o.emit, doc);
  return v.ok ? kPass : kFail;
}

int cmd_reconstruct(const Options& o, Report& r) {
  const CdgAlgebra psi = parse_cdg(read_text_file(o.file), field_override(o.field), !o.no_verify, o.max_degree);
  const NQPresentation p = reconstruct(psi);
  common_header(r, "reconstruct", o, p.field());
  basis_header(r, psi.base());
  r.line("generators: ", join(p.gen_names()));
  const auto rels = relation_strings(p);
  for (const auto& s : rels) r.line("relation: ", s, " = 0");
  r.json["relations"] = rels;
  const std::string doc = write_presentation(p);
  r.json["document"] = ojson::parse(doc);
  if (!o.emit.empty()) write_file(o.emit, doc);
  return kPass;
}

int cmd_pbw(const Options& o, Report& r) {
  Loaded in = load(o, false, o.max_degree);
  const std::size_t N = o.max_degree;
  std::optional<WeakQlsVerdict> weak;
  std::optional<PbwVerdict> pbw;
  std::string skipped;
  if (in.presentation) {
    weak = weak_qls_check(*in.presentation, N, o.slack);
    try {
      in.cdg.emplace(dualize(*in.presentation));
    } catch (const NotADerivation& e) {
      skipped = e.what();
    }
  }
  if (in.cdg) pbw = pbw_check(*in.cdg, N, o.slack);
  common_header(r, "pbw", o, in.cdg ? in.cdg->base().field() : in.presentation->field());
  r.json["window"] = N;
  r.json["slack"] = o.slack;
  if (in.cdg) basis_header(r, in.cdg->base());
  r.line("window: degrees 0..", N, ", saturation slack ", o.slack);
  r.line("n  F_n  Gr_n  A0_n  Gr(bar)  B!_n");
  ojson rows = ojson::array();
  for (std::size_t n = 0; n <= N; ++n) {
    ojson row = ojson::object();
    row["n"] = n;
    std::ostringstream s;
    s << n;
    if (weak) {
      s << "  " << weak->filtration.filtered[n] << "  " << weak->filtration.graded[n] << "  "
        << weak->quadratic_dims[n];
      row["filtered"] = weak->filtration.filtered[n];
      row["graded"] = weak->filtration.graded[n];
      row["quadratic"] = weak->quadratic_dims[n];
    } else {
      s << "  -  -  -";
    }
    if (pbw) {
      s << "  " << pbw->gr_dims[n] << "  " << pbw->dual_dims[n];
      row["gr_dual_pipeline"] = pbw->gr_dims[n];
      row["dual"] = pbw->dual_dims[n];
    } else {
      s << "  -  -";
    }
    r.line(s.str());
    rows.push_back(row);
  }
  r.json["table"] = rows;
  bool ok = true;
  if (weak) {
    ok = ok && weak->pbw;
    r.line("weak QLS pipeline: ", weak->pbw ? "PBW holds" : "PBW FAILS",
           weak->first_mismatch ? " (first mismatch at degree " + std::to_string(*weak->first_mismatch) + ")" : "");
    r.json["weak_qls"] = {{"pbw", weak->pbw}, {"quadratic_gr", weak->quadratic_gr}};
    if (weak->first_mismatch) r.json["weak_qls"]["first_mismatch"] = *weak->first_mismatch;
  }
  if (pbw) {
    ok = ok && pbw->holds;
    r.line("dual pipeline: ", pbw->holds ? "PBW holds" : "PBW FAILS",
           pbw->first_failure ? " (first failure at degree " + std::to_string(*pbw->first_failure) + ")" : "");
    r.json["pbw_check"] = {{"holds", pbw->holds}};
    if (pbw->first_failure) r.json["pbw_check"]["first_failure"] = *pbw->first_failure;
  } else if (!skipped.empty()) {
    r.line("dual pipeline: skipped, ", skipped);
    r.json["pbw_check"] = {{"skipped", skipped}};
  }
  r.line("verdict: ", ok ? "pass" : "FAIL");
  r.json["verdict"] = ok;
  return ok ? kPass : kFail;
}

int cmd_bar(const Options& o, Report& r) {
  if (o.max_internal < o.k + 1)
    throw InvariantViolation("window too small: need --max-internal >= --k + 1");
  const Loaded in = load(o, true, o.max_degree);
  const CdgAlgebra& psi = *in.cdg;
  common_header(r, "bar", o, psi.base().field());
  basis_header(r, psi.base());
  const BarComplex bar(psi, o.max_internal);
  const BarCohomology h = bar_cohomology(bar, o.k);
  r.json["k"] = o.k;
  r.json["max_internal"] = o.max_internal;
  r.line("H^b_", o.k, " in the window m <= ", o.max_internal, " (reach ", bar.reach(), ")");
  r.line("m  dim F_m  dim gr_m");
  ojson rows = ojson::array();
  for (std::size_t m = 0; m < h.filtered.size(); ++m) {
    const std::size_t gr = h.filtered[m] - (m ? h.filtered[m - 1] : 0);
    r.line(m, "  ", h.filtered[m], "  ", gr, h.edge[m] ? "  (edge)" : "");
    rows.push_back({{"m", m}, {"filtered", h.filtered[m]}, {"graded", gr}, {"edge", static_cast<bool>(h.edge[m])}});
  }
  r.json["table"] = rows;
  const SquareZeroReport sq = check_square_zero(bar);
  r.line("(d + partial + delta)^2 = 0 on the window interior: ", sq.ok ? "pass" : "FAIL", " (", sq.evaluated,
         " blocks)");
  ojson failures = ojson::array();
  for (const auto& c : sq.checks)
    if (!c.ok) {
      failures.push_back({{"identity", c.identity}, {"n", c.n}, {"m", c.m}});
      r.line("  fails: ", c.identity, " at (", c.n, ", ", c.m, ")");
    }
  r.json["square_zero"] = {{"ok", sq.ok}, {"evaluated", sq.evaluated}, {"failures", failures}};
  return sq.ok ? kPass : kFail;
}

QuadraticAlgebra quadratic_input(const Options& o, Report& r, const std::string& command) {
  const Loaded in = load(o, false, o.max_degree);
  if (in.presentation) {
    QuadraticAlgebra a = in.presentation->underlying();
    common_header(r, command, o, a.field());
    if (!in.presentation->is_homogeneous()) r.line("note: using the quadratic part of the relations");
    basis_header(r, a, "A");
    return a;
  }
  const auto* q = dynamic_cast<const QuadraticAlgebra*>(&in.cdg->base());
  if (!q) throw InvariantViolation("the base of this CDG document is not a quadratic algebra");
  common_header(r, command, o, q->field());
  r.line("note: using the base algebra of the CDG document");
  basis_header(r, *q, "A");
  return *q;
}

int cmd_koszul(const Options& o, Report& r) {
  const QuadraticAlgebra a = quadratic_input(o, r, "koszul");
  const KoszulVerdict v = koszul_verdict(a, o.max_degree);
  r.json["window"] = o.max_degree;
  r.line("dim Ext^i_j for i <= j <= ", o.max_degree, " (rows i, columns j)");
  for (std::size_t i = 0; i <= o.max_degree; ++i) {
    std::ostringstream s;
    s << "i=" << i << ":";
    for (std::size_t j = 0; j <= o.max_degree; ++j) s << ' ' << v.table.dims[i][j];
    r.line(s.str());
  }
  r.json["ext"] = v.table.dims;
  r.line("Koszul up to degree ", o.max_degree, ": ", v.koszul ? "yes" : "NO",
         v.witness ? " (Ext^" + std::to_string(v.witness->first) + "_" + std::to_string(v.witness->second) + " != 0)"
                   : "");
  r.json["koszul"] = v.koszul;
  r.json["weak"] = v.weak;
  if (v.witness) r.json["witness"] = {v.witness->first, v.witness->second};
  return v.koszul ? kPass : kFail;
}

int cmd_hilbert(const Options& o, Report& r) {
  const QuadraticAlgebra a = quadratic_input(o, r, "hilbert");
  const auto dims = hilbert(a, o.max_degree);
  const auto dual = hilbert(quadratic_dual(a), o.max_degree);
  r.json["window"] = o.max_degree;
  r.line("dim A_n, n = 0..", o.max_degree, ": ", join(dims));
  r.line("dim A!_n, n = 0..", o.max_degree, ": ", join(dual));
  r.json["dims"] = dims;
  r.json["dual_dims"] = dual;
  return kPass;
}

std::vector<std::string> trace_labels(const CdgAlgebra& psi, const TraceSpace& c, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i : c.quotient_basis(n)) out.push_back("T(" + psi.base().label(n, i) + ")");
  return out;
}

int cmd_chern(const Options& o, Report& r) {
  const Loaded in = load(o, true, o.max_degree);
  const CdgAlgebra& psi = *in.cdg;
  common_header(r, "chern", o, psi.base().field());
  check_characteristic(psi.base().field(), o.n);
  basis_header(r, psi.base());
  const std::size_t deg = 2 * o.n;
  const TraceSpace c(psi, deg + 1);
  const ChernForm f = chern(psi, c, o.n);
  const auto labels = trace_labels(psi, c, deg);
  r.json["n"] = o.n;
  r.json["seed"] = o.seed;
  r.json["twists"] = o.twists;
  r.line("C^", deg, " basis: ", labels.empty() ? std::string("(none)") : join(labels));
  r.line("c_", o.n, " = T(h^", o.n, ") = ", element(labels, f.form));
  const std::size_t closed_dim = deg + 1 <= c.max_degree() ? kernel(c.delta(deg)).dim() : 0;
  r.line("dim C^", deg, " = ", c.dim(deg), ", closed = ", closed_dim, ", exact = ", c.coboundaries(deg).dim(),
         ", class space = ", closed_dim - c.coboundaries(deg).dim());
  r.line("delta_C c_", o.n, " = 0: ", f.closed ? "yes" : "NO", "; d(h^", o.n, ") = 0: ", f.h_power_closed ? "yes" : "no");
  r.line("class representative: ", element(labels, f.representative), f.zero_class ? " (zero class)" : "");
  r.json["form"] = coefficients(f.form);
  r.json["representative"] = coefficients(f.representative);
  r.json["closed"] = f.closed;
  r.json["zero_class"] = f.zero_class;
  r.json["dims"] = {{"C", c.dim(deg)}, {"closed", closed_dim}, {"exact", c.coboundaries(deg).dim()}};
  if (f.zero_class && !is_zero(f.form)) {
    const auto w = solve_any(c.delta(deg - 1), f.form);
    if (w) {
      r.line("coboundary witness: c_", o.n, " = delta_C(", element(trace_labels(psi, c, deg - 1), *w), ")");
      r.json["coboundary_witness"] = coefficients(*w);
    }
  }
  bool invariant = true;
  ojson twists = ojson::array();
  for (std::size_t t = 0; t < o.twists; ++t) {
    const std::uint64_t seed = o.seed + t;
    const Vector alpha = random_degree_one(psi.base(), seed);
    const ChernForm g = chern(twist(psi, alpha), c, o.n);
    const bool same = g.closed && g.representative == f.representative;
    invariant = invariant && same;
    twists.push_back({{"seed", seed}, {"same_class", same}});
    if (!same) r.line("  twist seed ", seed, ": class differs: ", element(labels, g.representative));
  }
  r.line("invariance over ", o.twists, " twists (seeds ", o.seed, "..", o.seed + o.twists - (o.twists ? 1 : 0),
         "): ", invariant ? "pass" : "FAIL");
  r.json["invariance"] = {{"ok", invariant}, {"twists", twists}};
  const bool ok = f.closed && invariant;
  r.json["verdict"] = ok;
  return ok ? kPass : kFail;
}

void c2_lines(Report& r, const std::string& name, const CdgAlgebra& target, const TwoTermMorphism& m, std::size_t n,
              ojson& j) {
  const TraceSpace c(target, 2 * n);
  r.line(name, ": c1 = ", element(trace_labels(target, c, 2 * n - 1), m.c1));
  j["c1"] = coefficients(m.c1);
  ojson f0 = ojson::array();
  for (std::size_t i = 0; i < m.f0.rows(); ++i) f0.push_back(coefficients(m.f0.row(i)));
  j["f0"] = f0;
}

int cmd_cs(const Options& o, Report& r) {
  if (o.source.empty() || o.target.empty() || o.morphism.empty())
    throw ParseError("cs needs --source, --target and --morphism");
  const CdgAlgebra src = load_cdg_file(o.source, o);
  const CdgAlgebra tgt = load_cdg_file(o.target, o);
  check_characteristic(tgt.base().field(), o.n);
  const CdgMorphism m = load_morphism(o.morphism, src, tgt, o);
  r.json["command"] = "cs";
  r.json["source"] = o.source;
  r.json["target"] = o.target;
  r.json["morphism"] = o.morphism;
  r.json["field"] = tgt.base().field().name();
  r.json["n"] = o.n;
  r.line("nqd cs ", o.source, " -> ", o.target, " along ", o.morphism);
  r.line("field: ", tgt.base().field().name());
  basis_header(r, tgt.base());
  r.line("morphism verified up to degree ", o.max_degree, o.no_verify ? " (skipped)" : "");
  const std::size_t n = o.n;
  const TwoTermObject a = cs_object(src, n), b = cs_object(tgt, n);
  const TwoTermMorphism f = cs_morphism(m, n);
  const bool eq = satisfies_c2(a, b, f);
  ojson fj;
  c2_lines(r, "cs(f)", tgt, f, n, fj);
  fj["c2_equation"] = eq;
  r.json["cs"] = fj;
  r.line("c' - f0(c) = delta' c1: ", eq ? "pass" : "FAIL");
  bool ok = eq;
  if (!o.next.empty()) {
    if (o.next_target.empty()) throw ParseError("--next needs --next-target");
    const CdgAlgebra third = load_cdg_file(o.next_target, o);
    const CdgMorphism m2 = load_morphism(o.next, tgt, third, o);
    const TwoTermMorphism g = cs_morphism(m2, n);
    const TwoTermMorphism gf = cs_morphism(compose(m2, m), n);
    const bool eq2 = satisfies_c2(b, cs_object(third, n), g);
    const bool functorial = same_c2_morphism(gf, c2_compose(g, f));
    ojson gj;
    c2_lines(r, "cs(g o f)", third, gf, n, gj);
    gj["c2_equation_second"] = eq2;
    gj["functorial"] = functorial;
    r.json["composite"] = gj;
    r.line("second morphism satisfies the C2 equation: ", eq2 ? "pass" : "FAIL");
    r.line("cs(g o f) = cs(g) o cs(f): ", functorial ? "pass" : "FAIL");
    ok = ok && eq2 && functorial;
  }
  if (tgt.is_dg()) {
    const CsClass cls = cs_class(m, n);
    const TraceSpace c(tgt, 2 * n);
    r.line("Chern-Simons class: ", element(trace_labels(tgt, c, 2 * n - 1), cls.representative),
           cls.zero ? " (zero)" : "", cls.boundary_ok ? "" : " boundary check FAILS");
    r.json["cs_class"] = {{"representative", coefficients(cls.representative)},
                          {"zero", cls.zero},
                          {"boundary_ok", cls.boundary_ok}};
    ok = ok && cls.boundary_ok;
  }
  r.line("verdict: ", ok ? "pass" : "FAIL");
  r.json["verdict"] = ok;
  return ok ? kPass : kFail;
}

int cmd_verify(const Options& o, Report& r) {
  const std::string text = read_text_file(o.file);
  const auto field = field_override(o.field);
  r.json["window"] = o.max_degree;
  Verdict v;
  switch (detect_kind(text)) {
    case DocumentKind::Algebra: {
      const NQPresentation p = parse_presentation(text, field);
      common_header(r, "verify", o, p.field());
      r.line("relations: ", join(relation_strings(p), "; "));
      if (p.augmentation()) {
        validate_augmentation(p);
        r.line("augmentation kills the relations: pass");
      }
      const CdgAlgebra psi = dualize(p, false);
      basis_header(r, psi.base());
      v = verify_cdg(psi, o.max_degree);
      r.line("closure conditions (CDG axioms of the dual) up to degree ", o.max_degree, ": ",
             v.ok ? "pass" : "FAIL " + v.failure);
      break;
    }
    case DocumentKind::Cdg: {
      const CdgAlgebra psi = parse_cdg(text, field, false);
      common_header(r, "verify", o, psi.base().field());
      basis_header(r, psi.base());
      cdg_summary(r, psi);
      v = verify_cdg(psi, o.max_degree);
      r.line("verify_cdg up to degree ", o.max_degree, ": ", v.ok ? "pass" : "FAIL " + v.failure);
      break;
    }
    case DocumentKind::Morphism: {
      if (o.source.empty() || o.target.empty()) throw ParseError("morphism documents need --source and --target");
      const CdgAlgebra src = load_cdg_file(o.source, o);
      const CdgAlgebra tgt = load_cdg_file(o.target, o);
      const CdgMorphism m = parse_morphism(text, src, tgt);
      common_header(r, "verify", o, tgt.base().field());
      basis_header(r, tgt.base());
      v = verify_morphism(m, o.max_degree);
      r.line("verify_morphism up to degree ", o.max_degree, ": ", v.ok ? "pass" : "FAIL " + v.failure);
      break;
    }
  }
  ojson vj;
  verdict_json(vj, v);
  r.json["verdict"] = vj;
  return v.ok ? kPass : kFail;
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("NQD_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::logic_error&) {
      std::cerr << "warning: ignoring NQD_SEED=" << s << '\n';
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonhomogeneous quadratic duality toolkit"};
  app.require_subcommand(1);
  Options o;
  o.seed = default_seed();

  const auto add = [&](const std::string& name, const std::string& help, bool file = true) {
    CLI::App* c = app.add_subcommand(name, help);
    if (file) c->add_option("file", o.file, "Input document")->required()->check(CLI::ExistingFile);
    c->add_option("--field", o.field, "Override the field: rational or a prime p");
    c->add_option("--output", o.output, "Write the machine-readable report here");
    c->add_flag("--no-verify", o.no_verify, "Skip verify_cdg / verify_morphism on load");
    c->add_option("--max-degree", o.max_degree, "Degree window N")->capture_default_str();
    return c;
  };

  CLI::App* dualize_cmd = add("dualize", "Dual CDG-algebra of a presentation");
  dualize_cmd->add_option("--emit", o.emit, "Write the CDG document here");
  CLI::App* reconstruct_cmd = add("reconstruct", "Presentation of a CDG-algebra");
  reconstruct_cmd->add_option("--emit", o.emit, "Write the algebra document here");
  CLI::App* pbw_cmd = add("pbw", "PBW check by saturation and through the dual");
  pbw_cmd->add_option("--slack", o.slack, "Saturation slack")->capture_default_str();
  CLI::App* bar_cmd = add("bar", "Filtered bar homology H^b_k");
  bar_cmd->add_option("--k", o.k, "Total degree")->capture_default_str();
  bar_cmd->add_option("--max-internal", o.max_internal, "Internal degree window M")->capture_default_str();
  CLI::App* koszul_cmd = add("koszul", "Ext table and Koszulness in a window");
  CLI::App* hilbert_cmd = add("hilbert", "Graded dimensions of a quadratic algebra and its dual");
  CLI::App* chern_cmd = add("chern", "Chern form c_n and its invariance under twists");
  chern_cmd->add_option("--n", o.n, "Index n")->capture_default_str();
  chern_cmd->add_option("--twists", o.twists, "Number of seeded twists")->capture_default_str();
  chern_cmd->add_option("--seed", o.seed, "First seed (default NQD_SEED or 1)");
  CLI::App* cs_cmd = add("cs", "Chern-Simons morphism of a CDG morphism", false);
  cs_cmd->add_option("--source", o.source, "Source CDG document")->check(CLI::ExistingFile);
  cs_cmd->add_option("--target", o.target, "Target CDG document")->check(CLI::ExistingFile);
  cs_cmd->add_option("--morphism", o.morphism, "Morphism document")->check(CLI::ExistingFile);
  cs_cmd->add_option("--next", o.next, "Second morphism, from --target to --next-target")->check(CLI::ExistingFile);
  cs_cmd->add_option("--next-target", o.next_target, "Target of the second morphism")->check(CLI::ExistingFile);
  cs_cmd->add_option("--n", o.n, "Index n")->capture_default_str();
  CLI::App* verify_cmd = add("verify", "Check the axioms of any document");
  verify_cmd->add_option("--source", o.source, "Source CDG document for a morphism")->check(CLI::ExistingFile);
  verify_cmd->add_option("--target", o.target, "Target CDG document for a morphism")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  Report report;
  int status = kPass;
  try {
    if (*dualize_cmd) status = cmd_dualize(o, report);
    else if (*reconstruct_cmd) status = cmd_reconstruct(o, report);
    else if (*pbw_cmd) status = cmd_pbw(o, report);
    else if (*bar_cmd) status = cmd_bar(o, report);
    else if (*koszul_cmd) status = cmd_koszul(o, report);
    else if (*hilbert_cmd) status = cmd_hilbert(o, report);
    else if (*chern_cmd) status = cmd_chern(o, report);
    else if (*cs_cmd) status = cmd_cs(o, report);
    else if (*verify_cmd) status = cmd_verify(o, report);
  } catch (const CharacteristicGuard& e) {
    std::cerr << "error: characteristic guard: " << e.what() << '\n';
    return kInput;
  } catch (const ParseError& e) {
    std::cerr << "error: parse error: " << e.what() << '\n';
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  report.json["exit_status"] = status;
  std::cout << report.text.str();
  if (!o.output.empty()) {
    try {
      write_file(o.output, report.json.dump(2) + "\n");
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kInput;
    }
  }
  return status;
}
