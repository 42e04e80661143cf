#include "nqd/io.hpp"

#include <fstream>
#include <sstream>
#include <variant>

#include "json.hpp"

#include "nqd/errors.hpp"
#include "nqd/matrix_exterior.hpp"

namespace nqd {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
using Step = std::variant<std::string, std::size_t>;
using Path = std::vector<Step>;

Path operator/(Path p, Step s) {
  p.push_back(std::move(s));
  return p;
}

// Structural scan of the raw text, used only to attach positions to errors.
class Locator {
 public:
  explicit Locator(std::string_view text) : text_(text) {}

  std::pair<int, int> position(const Path& path) const {
    std::size_t pos = skip_ws(0);
    for (const auto& step : path) {
      const auto next = descend(pos, step);
      if (!next) break;
      pos = *next;
    }
    return line_col(pos);
  }

  std::pair<int, int> line_col(std::size_t offset) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

 private:
  std::string_view text_;

  std::size_t skip_ws(std::size_t p) const {
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p;
  }

  std::size_t skip_string(std::size_t p) const {
    for (++p; p < text_.size() && text_[p] != '"'; ++p)
      if (text_[p] == '\\') ++p;
    return p + 1;
  }

  std::size_t skip_value(std::size_t p) const {
    if (p >= text_.size()) return p;
    const char c = text_[p];
    if (c == '"') return skip_string(p);
    if (c == '{' || c == '[') {
      int depth = 0;
      for (; p < text_.size(); ++p) {
        if (text_[p] == '"') {
          p = skip_string(p) - 1;
        } else if (text_[p] == '{' || text_[p] == '[') {
          ++depth;
        } else if (text_[p] == '}' || text_[p] == ']') {
          if (--depth == 0) return p + 1;
        }
      }
      return p;
    }
    while (p < text_.size() && std::string_view(",]} \t\r\n").find(text_[p]) == std::string_view::npos) ++p;
    return p;
  }

  std::optional<std::size_t> descend(std::size_t p, const Step& step) const {
    if (p >= text_.size()) return std::nullopt;
    if (const auto* key = std::get_if<std::string>(&step)) {
      if (text_[p] != '{') return std::nullopt;
      p = skip_ws(p + 1);
      while (p < text_.size() && text_[p] == '"') {
        const std::size_t end = skip_string(p);
        const std::string_view k = text_.substr(p + 1, end - p - 2);
        p = skip_ws(end);
        if (p < text_.size() && text_[p] == ':') p = skip_ws(p + 1);
        if (k == *key) return p;
        p = skip_ws(skip_value(p));
        if (p < text_.size() && text_[p] == ',') p = skip_ws(p + 1);
      }
      return std::nullopt;
    }
    const std::size_t index = std::get<std::size_t>(step);
    if (text_[p] != '[') return std::nullopt;
    p = skip_ws(p + 1);
    for (std::size_t i = 0; p < text_.size() && text_[p] != ']'; ++i) {
      if (i == index) return p;
      p = skip_ws(skip_value(p));
      if (p < text_.size() && text_[p] == ',') p = skip_ws(p + 1);
    }
    return std::nullopt;
  }
};

struct Reader {
  std::string_view text;
  Locator locator{text};

  [[noreturn]] void fail(const std::string& what, const Path& path) const {
    const auto [line, col] = locator.position(path);
    throw ParseError(what, line, col);
  }

  const json& member(const json& obj, const Path& path, const std::string& key) const {
    if (!obj.is_object()) fail("expected an object", path);
    const auto it = obj.find(key);
    if (it == obj.end()) fail("missing key \"" + key + "\"", path);
    return *it;
  }

  const json& array(const json& v, const Path& path) const {
    if (!v.is_array()) fail("expected an array", path);
    return v;
  }

  Scalar coefficient(const json& v, const Path& path, Field field) const {
    if (v.is_number_integer()) return field.from_int(v.get<long long>());
    if (v.is_number_float()) fail("floating-point coefficients are not accepted; use \"p/q\"", path);
    if (!v.is_string()) fail("expected a coefficient (integer or \"p/q\" string)", path);
    try {
      return field.parse(v.get<std::string>());
    } catch (const Error& e) {
      fail(std::string("bad coefficient: ") + e.what(), path);
    }
  }

  Vector coefficients(const json& v, const Path& path, Field field, std::size_t expected) const {
    array(v, path);
    if (v.size() != expected)
      fail("expected " + std::to_string(expected) + " coefficients, got " + std::to_string(v.size()), path);
    Vector out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(coefficient(v[i], path / i, field));
    return out;
  }

  std::size_t count(const json& v, const Path& path) const {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      fail("expected a nonnegative integer", path);
    return v.get<std::size_t>();
  }

  Field field(const json& doc, const Path& path, std::optional<Field> override_field) const {
    if (override_field) return *override_field;
    const auto it = doc.find("field");
    if (it == doc.end()) return Field::rational();
    if (it->is_string() && it->get<std::string>() == "rational") return Field::rational();
    if (it->is_object() && it->contains("prime")) {
      const std::size_t p = count((*it)["prime"], path / "field" / "prime");
      try {
        return Field::prime(static_cast<std::uint32_t>(p));
      } catch (const Error& e) {
        fail(e.what(), path / "field" / "prime");
      }
    }
    fail("field must be \"rational\" or {\"prime\": p}", path / "field");
  }
};

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = Locator(text).line_col(e.byte > 0 ? e.byte - 1 : 0);
    const std::string what = e.what();
    const std::size_t colon = what.find(": ");
    throw ParseError("malformed document: " + (colon == std::string::npos ? what : what.substr(colon + 2)), line, col);
  }
}

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*' || c == '\'')) return false;
  return true;
}

struct AlgebraData {
  Field field;
  std::vector<std::string> names;
  std::vector<SparseVector> relations;  // filtered T_2 coordinates
  std::vector<bool> homogeneous;        // per relation
  std::optional<Vector> augmentation;
};

AlgebraData read_algebra(const Reader& r, const json& doc, const Path& at, std::optional<Field> override_field) {
  AlgebraData out;
  if (!doc.is_object()) r.fail("expected an algebra document", at);
  out.field = r.field(doc, at, override_field);
  const json& gens = r.array(r.member(doc, at, "generators"), at / "generators");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Path p = at / "generators" / i;
    if (!gens[i].is_string() || !valid_name(gens[i].get<std::string>()))
      r.fail("malformed generator name (letters, digits, _ * ' ; must start with a letter or _)", p);
    const std::string name = gens[i].get<std::string>();
    if (!index.emplace(name, i).second) r.fail("duplicate generator name \"" + name + "\"", p);
    out.names.push_back(name);
  }
  const std::size_t g = out.names.size();
  auto gen = [&](const json& v, const Path& p) {
    if (!v.is_string()) r.fail("expected a generator name", p);
    const auto it = index.find(v.get<std::string>());
    if (it == index.end()) r.fail("unknown generator \"" + v.get<std::string>() + "\"", p);
    return it->second;
  };
  const json& rels = r.array(r.member(doc, at, "relations"), at / "relations");
  EchelonBasis quad(g * g, LeadOrder::Lowest);
  for (std::size_t k = 0; k < rels.size(); ++k) {
    const Path p = at / "relations" / k;
    const json& rel = rels[k];
    if (!rel.is_object()) r.fail("expected a relation object", p);
    Vector v(1 + g + g * g, out.field.zero());
    bool homogeneous = true;
    if (rel.contains("quadratic")) {
      const json& terms = r.array(rel["quadratic"], p / "quadratic");
      for (std::size_t t = 0; t < terms.size(); ++t) {
        const Path tp = p / "quadratic" / t;
        if (!terms[t].is_array() || terms[t].size() != 3) r.fail("quadratic term must be [coeff, gen, gen]", tp);
        const Scalar c = r.coefficient(terms[t][0], tp / std::size_t{0}, out.field);
        const std::size_t a = gen(terms[t][1], tp / std::size_t{1}), b = gen(terms[t][2], tp / std::size_t{2});
        v[1 + g + a * g + b] += c;
      }
    }
    if (rel.contains("linear")) {
      const json& terms = r.array(rel["linear"], p / "linear");
      for (std::size_t t = 0; t < terms.size(); ++t) {
        const Path tp = p / "linear" / t;
        if (!terms[t].is_array() || terms[t].size() != 2) r.fail("linear term must be [coeff, gen]", tp);
        const Scalar c = r.coefficient(terms[t][0], tp / std::size_t{0}, out.field);
        v[1 + gen(terms[t][1], tp / std::size_t{1})] += c;
        homogeneous = homogeneous && c.is_zero();
      }
    }
    if (rel.contains("scalar")) {
      const Scalar c = r.coefficient(rel["scalar"], p / "scalar", out.field);
      v[0] += c;
      homogeneous = homogeneous && c.is_zero();
    }
    SparseVector q;
    for (std::size_t i = 0; i < g * g; ++i)
      if (!v[1 + g + i].is_zero()) q.push_back({i, v[1 + g + i]});
    if (q.empty() || !quad.insert(q))
      r.fail("relation " + std::to_string(k) + " has a quadratic part in the span of the earlier ones (duplicate, or meets k + V)", p);
    out.relations.push_back(to_sparse(v));
    out.homogeneous.push_back(homogeneous);
  }
  if (doc.contains("augmentation")) {
    const json& aug = doc["augmentation"];
    if (!aug.is_object()) r.fail("augmentation must map generator names to values", at / "augmentation");
    Vector a(g, out.field.zero());
    for (const auto& [name, value] : aug.items()) {
      const auto it = index.find(name);
      if (it == index.end()) r.fail("augmentation names an unknown generator \"" + name + "\"", at / "augmentation" / name);
      a[it->second] = r.coefficient(value, at / "augmentation" / name, out.field);
    }
    out.augmentation = a;
  }
  if (doc.contains("kind")) {
    const json& kind = doc["kind"];
    if (!kind.is_string() || (kind != "quadratic" && kind != "nonhomogeneous"))
      r.fail("kind must be \"quadratic\" or \"nonhomogeneous\"", at / "kind");
    if (kind == "quadratic")
      for (std::size_t k = 0; k < out.homogeneous.size(); ++k)
        if (!out.homogeneous[k]) r.fail("quadratic document with linear or scalar terms", at / "relations" / k);
  }
  return out;
}

NQPresentation build_presentation(const Reader& r, const AlgebraData& d, const Path& at) {
  try {
    return NQPresentation::from_relations(d.names, d.relations, d.field, d.augmentation);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    r.fail(e.what(), at);
  }
}

QuadraticAlgebra build_quadratic(const Reader& r, const AlgebraData& d, const Path& at) {
  const std::size_t g = d.names.size();
  std::vector<SparseVector> quad;
  for (std::size_t k = 0; k < d.relations.size(); ++k) {
    if (!d.homogeneous[k]) r.fail("expected a homogeneous quadratic relation", at / "relations" / k);
    SparseVector q;
    for (const auto& e : d.relations[k]) q.push_back({e.index - 1 - g, e.value});
    quad.push_back(std::move(q));
  }
  return QuadraticAlgebra(d.names, Subspace::span(g * g, quad), d.field);
}

ojson coeff_json(const Scalar& s) { return s.str(); }

ojson vector_json(std::span<const Scalar> v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(coeff_json(x));
  return a;
}

ojson field_json(Field f) {
  if (f.is_rational()) return "rational";
  return ojson{{"prime", f.characteristic()}};
}

ojson relation_json(const std::vector<std::string>& names, const SparseVector& quad, std::span<const Scalar> linear,
                    const Scalar& scalar) {
  const std::size_t g = names.size();
  ojson rel = ojson::object();
  ojson q = ojson::array();
  for (const auto& e : quad) q.push_back({coeff_json(e.value), names[e.index / g], names[e.index % g]});
  rel["quadratic"] = q;
  ojson l = ojson::array();
  for (std::size_t a = 0; a < linear.size(); ++a)
    if (!linear[a].is_zero()) l.push_back({coeff_json(linear[a]), names[a]});
  if (!l.empty()) rel["linear"] = l;
  if (!scalar.is_zero()) rel["scalar"] = coeff_json(scalar);
  return rel;
}

ojson quadratic_json(const QuadraticAlgebra& a) {
  ojson doc;
  doc["kind"] = "quadratic";
  doc["field"] = field_json(a.field());
  doc["generators"] = a.gen_names();
  ojson rels = ojson::array();
  const Vector none;
  for (const auto& row : a.relations().rows()) rels.push_back(relation_json(a.gen_names(), row, none, a.field().zero()));
  doc["relations"] = rels;
  return doc;
}

ojson basis_json(const GradedAlgebra& b, std::size_t max_degree) {
  ojson basis = ojson::object();
  for (std::size_t n = 1; n <= max_degree; ++n) basis[std::to_string(n)] = b.labels(n);
  return basis;
}


bool is_flat(const ojson& v) {
  if (!v.is_array()) return !v.is_object();
  for (const auto& x : v)
    if (x.is_array() || x.is_object()) return false;
  return true;
}

// Like dump(2), but arrays of scalars stay on one line.
void pretty(const ojson& v, std::string& out, std::size_t indent) {
  const std::string pad(indent + 2, ' ');
  if (is_flat(v)) {
    out += v.dump();
  } else if (v.is_array()) {
    out += "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      out += pad;
      pretty(v[i], out, indent + 2);
      out += i + 1 < v.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "]";
  } else if (v.empty()) {
    out += "{}";
  } else {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : v.items()) {
      out += pad + ojson(key).dump() + ": ";
      pretty(value, out, indent + 2);
      out += ++i < v.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "}";
  }
}

std::string render(const ojson& v) {
  std::string out;
  pretty(v, out, 0);
  return out + "\n";
}

}  // namespace

DocumentKind detect_kind(std::string_view text) {
  const json doc = parse_json(text);
  if (doc.is_object() && (doc.contains("base") || doc.contains("matrix"))) return DocumentKind::Cdg;
  if (doc.is_object() && doc.contains("images")) return DocumentKind::Morphism;
  return DocumentKind::Algebra;
}

NQPresentation parse_presentation(std::string_view text, std::optional<Field> field) {
  const Reader r{text};
  const json doc = parse_json(text);
  return build_presentation(r, read_algebra(r, doc, {}, field), {});
}

QuadraticAlgebra parse_quadratic(std::string_view text, std::optional<Field> field) {
  const Reader r{text};
  const json doc = parse_json(text);
  return build_quadratic(r, read_algebra(r, doc, {}, field), {});
}

CdgAlgebra parse_cdg(std::string_view text, std::optional<Field> field, bool verify, std::size_t verify_degree) {
  const Reader r{text};
  const json doc = parse_json(text);
  if (!doc.is_object()) r.fail("expected a CDG document", {});
  AlgebraPtr base;
  std::optional<CdgAlgebra> psi;
  if (doc.contains("matrix")) {
    const Path at{std::string("matrix")};
    const json& m = doc["matrix"];
    const Field f = r.field(doc, {}, field);
    const std::size_t rank = r.count(r.member(m, at, "rank"), at / "rank");
    const std::size_t ext = r.count(r.member(m, at, "exterior_dim"), at / "exterior_dim");
    if (rank == 0 || ext == 0) r.fail("rank and exterior_dim must be positive", at);
    if (m.contains("alpha0")) {
      const Vector alpha0 = r.coefficients(m["alpha0"], at / "alpha0", f, rank * rank * ext);
      const json& d0 = r.array(r.member(m, at, "d0"), at / "d0");
      if (d0.size() != ext) r.fail("d0 needs one row per exterior generator", at / "d0");
      std::vector<Vector> rows;
      for (std::size_t a = 0; a < ext; ++a) rows.push_back(r.coefficients(d0[a], at / "d0" / a, f, ext * (ext - 1) / 2));
      try {
        psi.emplace(matrix_connection(rank, ext, alpha0, rows, f));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        r.fail(e.what(), at / "d0");
      }
    } else {
      base = std::make_shared<MatrixExteriorAlgebra>(rank, ext, f);
    }
  } else {
    const Path at{std::string("base")};
    const AlgebraData d = read_algebra(r, r.member(doc, {}, "base"), at, field ? field : std::optional<Field>(r.field(doc, {}, std::nullopt)));
    base = std::make_shared<QuadraticAlgebra>(build_quadratic(r, d, at));
  }
  if (!psi) {
    const Field f = base->field();
    const std::string dkey = doc.contains("matrix") ? "d" : "d1";
    const json& d = r.array(r.member(doc, {}, dkey), {dkey});
    const auto& gens = base->generators();
    if (d.size() != gens.size()) r.fail("\"" + dkey + "\" needs one row per generator", {dkey});
    std::vector<Vector> images;
    for (std::size_t i = 0; i < gens.size(); ++i)
      images.push_back(r.coefficients(d[i], Path{dkey} / i, f, base->dim(gens[i].degree + 1)));
    const Vector h = r.coefficients(r.member(doc, {}, "h"), {std::string("h")}, f, base->dim(2));
    psi.emplace(base, std::move(images), h);
  }
  if (doc.contains("basis")) {
    const json& basis = doc["basis"];
    if (!basis.is_object()) r.fail("basis must map degrees to label lists", {std::string("basis")});
    for (const auto& [deg, labels] : basis.items()) {
      const Path p = Path{std::string("basis")} / deg;
      std::size_t n = 0;
      try {
        n = std::stoul(deg);
      } catch (...) {
        r.fail("basis keys are degrees", p);
      }
      if (labels != json(psi->base().labels(n))) r.fail("basis labels differ from the computed normal-word basis", p);
    }
  }
  if (verify) {
    const Verdict v = verify_cdg(*psi, verify_degree);
    if (!v.ok) throw NotADerivation("CDG axioms fail: " + v.failure);
  }
  return std::move(*psi);
}

CdgMorphism parse_morphism(std::string_view text, const CdgAlgebra& source, const CdgAlgebra& target) {
  const Reader r{text};
  const json doc = parse_json(text);
  const Field f = target.base().field();
  const json& imgs = r.array(r.member(doc, {}, "images"), {std::string("images")});
  const auto& gens = source.base().generators();
  if (imgs.size() != gens.size()) r.fail("\"images\" needs one row per source generator", {std::string("images")});
  std::vector<Vector> images;
  for (std::size_t i = 0; i < gens.size(); ++i)
    images.push_back(r.coefficients(imgs[i], Path{std::string("images")} / i, f, target.base().dim(gens[i].degree)));
  const Vector alpha = r.coefficients(r.member(doc, {}, "alpha"), {std::string("alpha")}, f, target.base().dim(1));
  return CdgMorphism(source, target, std::move(images), alpha);
}

std::string write_presentation(const NQPresentation& p) {
  ojson doc;
  doc["kind"] = p.is_homogeneous() ? "quadratic" : "nonhomogeneous";
  doc["field"] = field_json(p.field());
  doc["generators"] = p.gen_names();
  ojson rels = ojson::array();
  const auto& rows = p.quadratic_part().rows();
  for (std::size_t k = 0; k < rows.size(); ++k)
    rels.push_back(relation_json(p.gen_names(), rows[k], p.phi().row(k), p.h()[k]));
  doc["relations"] = rels;
  if (p.augmentation()) {
    ojson aug = ojson::object();
    for (std::size_t a = 0; a < p.gen_dim(); ++a) aug[p.gen_names()[a]] = coeff_json((*p.augmentation())[a]);
    doc["augmentation"] = aug;
  }
  return render(doc);
}

std::string write_quadratic(const QuadraticAlgebra& a) { return render(quadratic_json(a)); }

std::string write_cdg(const CdgAlgebra& psi) {
  const GradedAlgebra& b = psi.base();
  ojson doc;
  doc["field"] = field_json(b.field());
  std::string dkey = "d1";
  if (const auto* q = dynamic_cast<const QuadraticAlgebra*>(&b)) {
    doc["base"] = quadratic_json(*q);
  } else if (const auto* m = dynamic_cast<const MatrixExteriorAlgebra*>(&b)) {
    doc["matrix"] = ojson{{"rank", m->rank()}, {"exterior_dim", m->exterior_dim()}};
    dkey = "d";
  } else {
    throw InvariantViolation("write_cdg supports quadratic and matrix-exterior bases");
  }
  doc["basis"] = basis_json(b, 2);
  ojson d = ojson::array();
  for (const auto& img : psi.d_on_generators()) d.push_back(vector_json(img));
  doc[dkey] = d;
  doc["h"] = vector_json(psi.curvature());
  return render(doc);
}

std::string write_morphism(const CdgMorphism& m) {
  ojson doc;
  ojson imgs = ojson::array();
  for (const auto& img : m.generator_images()) imgs.push_back(vector_json(img));
  doc["images"] = imgs;
  doc["alpha"] = vector_json(m.alpha());
  return render(doc);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace nqd
