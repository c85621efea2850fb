#include "centrosec/instance.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "centrosec/error.hpp"

namespace centrosec {

namespace {

struct Entry {
  int line;
  std::string value;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_numbers(const Entry& e, const std::string& key) {
  std::vector<double> out;
  std::istringstream is(e.value);
  std::string tok;
  while (is >> tok) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || errno == ERANGE)
      throw ParseError("field '" + key + "': '" + tok + "' is not a number", e.line);
    out.push_back(v);
  }
  return out;
}

class Fields {
 public:
  explicit Fields(std::map<std::string, std::vector<Entry>> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  const Entry& single(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ParseError("missing field '" + key + "'", 0);
    if (it->second.size() > 1) throw ParseError("field '" + key + "' given more than once", it->second[1].line);
    return it->second.front();
  }

  const std::vector<Entry>& repeated(const std::string& key) const {
    static const std::vector<Entry> none;
    auto it = entries_.find(key);
    return it == entries_.end() ? none : it->second;
  }

  std::vector<double> numbers(const std::string& key, std::size_t count) const {
    const Entry& e = single(key);
    auto v = parse_numbers(e, key);
    if (v.size() != count)
      throw ParseError("field '" + key + "' expects " + std::to_string(count) + " numbers, got " +
                           std::to_string(v.size()),
                       e.line);
    return v;
  }

  double number(const std::string& key) const { return numbers(key, 1).front(); }

  long long integer(const std::string& key) const {
    const Entry& e = single(key);
    const double v = number(key);
    if (v != static_cast<double>(static_cast<long long>(v)))
      throw ParseError("field '" + key + "' must be an integer", e.line);
    return static_cast<long long>(v);
  }

  // Keys under `prefix.` that are not in `allowed`.
  void reject_unknown(const std::string& prefix, const std::vector<std::string>& allowed) const {
    for (const auto& [key, list] : entries_) {
      if (key.rfind(prefix + ".", 0) != 0) continue;
      const std::string field = key.substr(prefix.size() + 1);
      if (std::find(allowed.begin(), allowed.end(), field) == allowed.end())
        throw ParseError("unknown field '" + key + "'", list.front().line);
    }
  }

  void reject_unrecognized_top_level() const {
    for (const auto& [key, list] : entries_) {
      if (key == "dimension" || key == "seed") continue;
      if (key.rfind("K.", 0) == 0 || key.rfind("L.", 0) == 0 || key.rfind("solver.", 0) == 0) continue;
      throw ParseError("unknown field '" + key + "'", list.front().line);
    }
  }

 private:
  std::map<std::string, std::vector<Entry>> entries_;
};

Vec to_vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), v.size()); }

ConvexBody build_body(const Fields& f, const std::string& P, int n) {
  const Entry& kind_entry = f.single(P + ".kind");
  const std::string kind = trim(kind_entry.value);
  const auto key = [&](const char* field) { return P + "." + field; };
  try {
    if (kind == "ball") {
      f.reject_unknown(P, {"kind", "radius"});
      return ConvexBody::ball(n, f.number(key("radius")));
    }
    if (kind == "ellipsoid") {
      f.reject_unknown(P, {"kind", "semiaxes", "rotation", "matrix"});
      if (f.has(key("matrix"))) {
        const auto m = f.numbers(key("matrix"), static_cast<std::size_t>(n) * n);
        return ConvexBody::ellipsoid(Eigen::Map<const Eigen::Matrix<double, -1, -1, Eigen::RowMajor>>(m.data(), n, n));
      }
      const Vec axes = to_vec(f.numbers(key("semiaxes"), n));
      if (f.has(key("rotation"))) {
        const auto r = f.numbers(key("rotation"), static_cast<std::size_t>(n) * n);
        return ConvexBody::ellipsoid_from_axes(
            axes, Eigen::Map<const Eigen::Matrix<double, -1, -1, Eigen::RowMajor>>(r.data(), n, n));
      }
      return ConvexBody::ellipsoid_from_axes(axes);
    }
    if (kind == "lp") {
      f.reject_unknown(P, {"kind", "p", "scale"});
      return ConvexBody::lp_ball(n, f.number(key("p")), f.number(key("scale")));
    }
    if (kind == "cube") {
      f.reject_unknown(P, {"kind", "half_width"});
      return ConvexBody::cube(n, f.number(key("half_width")));
    }
    if (kind == "hpolytope") {
      f.reject_unknown(P, {"kind", "facet"});
      std::vector<Vec> normals;
      std::vector<double> offsets;
      for (const auto& e : f.repeated(key("facet"))) {
        const auto v = parse_numbers(e, key("facet"));
        if (static_cast<int>(v.size()) != n + 1)
          throw ParseError("field '" + key("facet") + "' expects " + std::to_string(n + 1) + " numbers", e.line);
        normals.push_back(to_vec(std::vector<double>(v.begin(), v.end() - 1)));
        offsets.push_back(v.back());
      }
      if (normals.empty()) throw ParseError("missing field '" + key("facet") + "'", kind_entry.line);
      return ConvexBody::h_polytope(normals, offsets);
    }
    if (kind == "vpolytope") {
      f.reject_unknown(P, {"kind", "vertex"});
      std::vector<Vec> pts;
      for (const auto& e : f.repeated(key("vertex"))) {
        const auto v = parse_numbers(e, key("vertex"));
        if (static_cast<int>(v.size()) != n)
          throw ParseError("field '" + key("vertex") + "' expects " + std::to_string(n) + " numbers", e.line);
        pts.push_back(to_vec(v));
      }
      if (pts.empty()) throw ParseError("missing field '" + key("vertex") + "'", kind_entry.line);
      return ConvexBody::v_polytope(pts);
    }
  } catch (const InvalidArgument& e) {
    throw ParseError("invalid " + P + " (" + kind + "): " + e.what(), kind_entry.line);
  }
  throw ParseError("field '" + P + ".kind': unknown kind '" + kind +
                       "' (expected ball, ellipsoid, lp, cube, hpolytope or vpolytope)",
                   kind_entry.line);
}

}  // namespace

InstanceSpec parse_instance(std::istream& in) {
  std::map<std::string, std::vector<Entry>> entries;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", lineno);
    if (value.empty()) throw ParseError("field '" + key + "' has no value", lineno);
    entries[key].push_back({lineno, value});
  }
  const Fields f(std::move(entries));

  f.reject_unknown("solver", {"starts", "max_iters", "step_init", "residual_tol", "dedup_angle", "mode", "threads"});
  f.reject_unrecognized_top_level();

  InstanceSpec spec;
  const long long n = f.integer("dimension");
  if (n < 2 || n > 16) throw ParseError("field 'dimension' must lie in [2, 16]", f.single("dimension").line);
  spec.dimension = static_cast<int>(n);
  if (f.has("seed")) {
    const long long s = f.integer("seed");
    if (s < 0) throw ParseError("field 'seed' must be non-negative", f.single("seed").line);
    spec.seed = static_cast<std::uint64_t>(s);
  }
  spec.solver.seed = spec.seed;
  if (f.has("K.kind")) spec.K = build_body(f, "K", spec.dimension);
  if (f.has("L.kind")) spec.L = build_body(f, "L", spec.dimension);

  auto& s = spec.solver;
  if (f.has("solver.starts")) s.starts = static_cast<int>(f.integer("solver.starts"));
  if (f.has("solver.max_iters")) s.max_iters = static_cast<int>(f.integer("solver.max_iters"));
  if (f.has("solver.threads")) s.threads = static_cast<int>(f.integer("solver.threads"));
  if (f.has("solver.step_init")) s.step_init = f.number("solver.step_init");
  if (f.has("solver.residual_tol")) s.residual_tol = f.number("solver.residual_tol");
  if (f.has("solver.dedup_angle")) s.dedup_angle = f.number("solver.dedup_angle");
  if (f.has("solver.mode")) {
    try {
      s.mode = parse_search_mode(trim(f.single("solver.mode").value));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), f.single("solver.mode").line);
    }
  }
  try {
    s.validate(spec.dimension);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("solver settings: ") + e.what(), 0);
  }
  return spec;
}

InstanceSpec parse_instance_string(const std::string& text) {
  std::istringstream is(text);
  return parse_instance(is);
}

InstanceSpec load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open spec file '" + path + "'", 0);
  return parse_instance(in);
}

}  // namespace centrosec
