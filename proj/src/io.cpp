#include <metlie/io.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace metlie {

using json = nlohmann::ordered_json;

namespace {

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

Index index_at(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return static_cast<Index>(j.get<long long>());
}

std::string entry_name(Index i, Index j, Index k) {
  std::ostringstream s;
  s << "(" << i << ", " << j << ", " << k << ")";
  return s.str();
}

}  // namespace

AlgebraFile algebra_file_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("algebra file: top level must be an object");
  AlgebraFile f;
  if (!j.contains("dim")) throw ParseError("algebra file: missing field 'dim'");
  f.dim = index_at(j.at("dim"), "dim");
  if (f.dim < 1) throw ParseError("algebra file: 'dim' must be positive");
  if (j.contains("brackets")) {
    const json& b = j.at("brackets");
    if (!b.is_array()) throw ParseError("algebra file: 'brackets' must be an array");
    for (std::size_t n = 0; n < b.size(); ++n) {
      const std::string where = "brackets[" + std::to_string(n) + "]";
      const json& e = b[n];
      if (!e.is_array() || e.size() != 4) throw ParseError(where + ": expected [i, j, k, value]");
      f.brackets.push_back({index_at(e[0], where), index_at(e[1], where), index_at(e[2], where), number_at(e[3], where)});
    }
  }
  if (j.contains("metric")) {
    const json& m = j.at("metric");
    if (!m.is_array() || static_cast<Index>(m.size()) != f.dim) throw ParseError("algebra file: 'metric' must have dim rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (!m[r].is_array() || static_cast<Index>(m[r].size()) != f.dim)
        throw ParseError("algebra file: metric row " + std::to_string(r) + " must have dim entries");
      std::vector<double> row;
      for (const auto& x : m[r]) row.push_back(number_at(x, "metric"));
      rows.push_back(std::move(row));
    }
    f.metric = std::move(rows);
  }
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw ParseError("algebra file: 'name' must be a string");
    f.name = j.at("name").get<std::string>();
  }
  return f;
}

AlgebraFile parse_algebra_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("algebra file: ") + e.what());
  }
  return algebra_file_from_json(j);
}

AlgebraFile read_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_algebra_file(buf.str());
}

json to_json(const AlgebraFile& f) {
  json j;
  j["dim"] = f.dim;
  json b = json::array();
  for (const auto& e : f.brackets) b.push_back(json::array({e.i, e.j, e.k, e.value}));
  j["brackets"] = std::move(b);
  if (f.metric) j["metric"] = *f.metric;
  if (!f.name.empty()) j["name"] = f.name;
  return j;
}

std::vector<std::vector<double>> to_rows(const Matrix<double>& m) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) rows[static_cast<std::size_t>(i)].push_back(m(i, j));
  return rows;
}

Matrix<double> from_rows(const std::vector<std::vector<double>>& rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r ? static_cast<Index>(rows[0].size()) : 0;
  Matrix<double> m(r, c);
  for (Index i = 0; i < r; ++i) {
    if (static_cast<Index>(rows[static_cast<std::size_t>(i)].size()) != c) throw InputError("ragged matrix");
    for (Index j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

AlgebraFile make_algebra_file(const LieAlgebra<double>& alg, const std::string& name) {
  AlgebraFile f;
  f.dim = alg.dim();
  f.name = name;
  for (Index i = 0; i < f.dim; ++i)
    for (Index j = i + 1; j < f.dim; ++j)
      for (Index k = 0; k < f.dim; ++k)
        if (alg(i, j, k) != 0) f.brackets.push_back({i, j, k, alg(i, j, k)});
  return f;
}

AlgebraFile make_algebra_file(const LieAlgebra<double>& alg, const InnerProduct<double>& metric, const std::string& name) {
  AlgebraFile f = make_algebra_file(alg, name);
  f.metric = to_rows(metric.gram());
  return f;
}

StructureConstants<double> constants_of(const AlgebraFile& f) {
  // value of C_ij^k keyed by (min, max, k), signed towards the i < j form
  std::map<std::tuple<Index, Index, Index>, std::pair<double, BracketEntry>> seen;
  StructureConstants<double> c(f.dim);
  for (const auto& e : f.brackets) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= f.dim || e.j >= f.dim || e.k >= f.dim)
      throw InputError("bracket entry " + entry_name(e.i, e.j, e.k) + " has an index outside 0.." +
                       std::to_string(f.dim - 1));
    if (e.i == e.j) {
      if (e.value != 0) throw InputError("antisymmetry violated: entry " + entry_name(e.i, e.j, e.k) + " is nonzero");
      continue;
    }
    const auto key = std::make_tuple(std::min(e.i, e.j), std::max(e.i, e.j), e.k);
    const double v = e.i < e.j ? e.value : -e.value;
    const auto it = seen.find(key);
    if (it != seen.end()) {
      if (it->second.first != v) {
        const auto& o = it->second.second;
        throw InputError("antisymmetry violated: entries " + entry_name(o.i, o.j, o.k) + " and " +
                         entry_name(e.i, e.j, e.k) + " disagree");
      }
      continue;
    }
    seen.emplace(key, std::make_pair(v, e));
    c.set(std::get<0>(key), std::get<1>(key), e.k, v);
  }
  return c;
}

InnerProduct<double> metric_of(const AlgebraFile& f, const Tolerances<double>& tol) {
  if (!f.metric) return InnerProduct<double>::identity(f.dim);
  return InnerProduct<double>(from_rows(*f.metric), tol);
}

MetricLieAlgebra<double> metric_algebra_of(const AlgebraFile& f, const Tolerances<double>& tol) {
  return MetricLieAlgebra<double>(LieAlgebra<double>(constants_of(f), tol), metric_of(f, tol), tol);
}

ValidationReport validate(const AlgebraFile& f, const Tolerances<double>& tol) {
  ValidationReport r;
  for (const auto& e1 : f.brackets) {
    if (e1.i == e1.j) r.antisymmetry_residual = std::max(r.antisymmetry_residual, std::abs(e1.value));
    for (const auto& e2 : f.brackets)
      if (e1.i == e2.j && e1.j == e2.i && e1.k == e2.k && e1.i != e1.j)
        r.antisymmetry_residual = std::max(r.antisymmetry_residual, std::abs(e1.value + e2.value));
  }
  std::optional<StructureConstants<double>> c;
  try {
    c = constants_of(f);
  } catch (const InputError& e) {
    r.problems.push_back(e.what());
  }
  if (c) {
    const double scale = 1 + c->max_abs();
    const auto jac = validate_jacobi(*c, tol.jacobi * scale * scale * scale);
    r.jacobi_residual = jac.max_residual;
    if (!jac.valid) {
      std::ostringstream msg;
      msg << "Jacobi identity violated on basis triple " << entry_name(jac.i, jac.j, jac.k) << ", residual "
          << jac.max_residual;
      r.problems.push_back(msg.str());
    }
  }
  if (f.metric) {
    const Matrix<double> g = from_rows(*f.metric);
    r.metric_symmetry_residual = (g - g.transpose()).cwiseAbs().maxCoeff();
    try {
      const InnerProduct<double> ip(g, tol);
      r.metric_min_pivot = ip.cholesky_factor().diagonal().array().square().minCoeff();
    } catch (const InputError& e) {
      r.problems.push_back(e.what());
    }
  }
  r.valid = r.problems.empty();
  return r;
}

}  // namespace metlie
