#include "mssp/msgraph.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace mssp {

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;

  // Next non-empty line with comments stripped, split into tokens; false at end of input.
  bool next(std::vector<std::string>& tok) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      std::istringstream ss(line);
      tok.clear();
      for (std::string t; ss >> t;) tok.push_back(t);
      if (!tok.empty()) return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw FormatError("line " + std::to_string(line_no) + ": " + msg);
  }
  long to_int(const std::string& t) const {
    try {
      size_t pos = 0;
      long v = std::stol(t, &pos);
      if (pos != t.size()) fail("expected an integer, got '" + t + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("expected an integer, got '" + t + "'");
    }
  }
};

Rational parse_weight(const std::string& t, WeightMode mode, const LineReader& r) {
  Rational q;
  try {
    q = parse_rational(t);
  } catch (const std::invalid_argument&) {
    r.fail("bad weight '" + t + "'");
  }
  if (mode == WeightMode::kFloat) q = Rational(q.get_d());
  return q;
}

}  // namespace

Surface read_msgraph(std::istream& in, WeightMode mode, uint64_t seed) {
  LineReader r{in};
  std::vector<std::string> tok;
  if (!r.next(tok) || tok.size() != 3 || tok[0] != "msgraph" || tok[1] != "1")
    r.fail("expected header 'msgraph 1 <orientable|nonorientable>'");
  if (tok[2] != "orientable" && tok[2] != "nonorientable") r.fail("unknown orientability '" + tok[2] + "'");
  const bool declared_orientable = tok[2] == "orientable";

  if (!r.next(tok) || tok.size() != 2 || tok[0] != "vertices") r.fail("expected 'vertices <n>'");
  long n = r.to_int(tok[1]);
  if (n < 1) r.fail("vertex count must be positive");
  if (!r.next(tok) || tok.size() != 2 || tok[0] != "edges") r.fail("expected 'edges <m>'");
  long m = r.to_int(tok[1]);
  if (m < 0) r.fail("edge count must be non-negative");

  EmbeddingInput ein;
  ein.n = static_cast<int>(n);
  ein.seed = seed;
  ein.edges.resize(m);
  std::vector<char> edge_seen(m, 0);
  for (long i = 0; i < m; ++i) {
    if (!r.next(tok) || tok[0] != "edge") r.fail("expected 'edge <id> <u> <v> <w_uv> <w_vu> [sig]'");
    if (tok.size() != 6 && tok.size() != 7) r.fail("edge line needs 5 or 6 fields");
    long id = r.to_int(tok[1]);
    if (id < 1 || id > m) r.fail("edge id " + tok[1] + " out of range 1.." + std::to_string(m));
    if (edge_seen[id - 1]) r.fail("edge id " + tok[1] + " defined twice");
    edge_seen[id - 1] = 1;
    EdgeInput& e = ein.edges[id - 1];
    e.u = static_cast<int>(r.to_int(tok[2]));
    e.v = static_cast<int>(r.to_int(tok[3]));
    e.w_uv = parse_weight(tok[4], mode, r);
    if (tok[5] != "-") e.w_vu = parse_weight(tok[5], mode, r);
    if (tok.size() == 7) {
      if (tok[6] != "0" && tok[6] != "1") r.fail("signature must be 0 or 1");
      e.sig = tok[6] == "1";
    }
  }
  auto dart_of = [&](const std::string& t) {
    if (t.size() < 2 || (t[0] != '+' && t[0] != '-')) r.fail("dart '" + t + "' must be written +id or -id");
    long id = r.to_int(t.substr(1));
    if (id < 1 || id > m) r.fail("dart '" + t + "' refers to a missing edge");
    return static_cast<int>(2 * (id - 1) + (t[0] == '-' ? 1 : 0));
  };
  ein.rotation.assign(n, {});
  std::vector<char> rot_seen(n, 0);
  for (long i = 0; i < n; ++i) {
    if (!r.next(tok) || tok[0] != "rot") r.fail("expected 'rot <v> <darts...>'");
    long v = r.to_int(tok[1]);
    if (v < 0 || v >= n) r.fail("rotation vertex " + tok[1] + " out of range");
    if (rot_seen[v]) r.fail("rotation for vertex " + tok[1] + " given twice");
    rot_seen[v] = 1;
    for (size_t k = 2; k < tok.size(); ++k) ein.rotation[v].push_back(dart_of(tok[k]));
  }
  std::vector<std::pair<int, int>> hole_lines;
  while (r.next(tok)) {
    if (tok[0] != "hole" || tok.size() != 2) r.fail("unexpected line; only 'hole <dart>' may follow rotations");
    hole_lines.push_back({dart_of(tok[1]), r.line_no});
  }
  EmbeddedGraph g = EmbeddedGraph::build(ein);
  if (g.orientable() != declared_orientable)
    throw EmbeddingError(std::string("header declares ") + (declared_orientable ? "orientable" : "nonorientable") +
                         " but the signatures give the opposite");
  Surface s = make_surface(g);
  for (auto [d, line] : hole_lines) s.hole[g.face_of(d, 0)] = 1;
  return s;
}

Surface read_msgraph_file(const std::string& path, WeightMode mode, uint64_t seed) {
  std::ifstream f(path);
  if (!f) throw FormatError("cannot open " + path);
  return read_msgraph(f, mode, seed);
}

void write_msgraph(std::ostream& out, const Surface& s) {
  const EmbeddedGraph& g = s.g;
  EmbeddingInput in = g.to_input();
  out << "msgraph 1 " << (g.orientable() ? "orientable" : "nonorientable") << "\n";
  out << "vertices " << g.num_vertices() << "\n";
  out << "edges " << g.num_edges() << "\n";
  auto dart = [](int d) { return std::string(d % 2 ? "-" : "+") + std::to_string(d / 2 + 1); };
  for (int e = 0; e < g.num_edges(); ++e) {
    out << "edge " << e + 1 << " " << g.tail(2 * e) << " " << g.head(2 * e) << " "
        << rational_to_string(g.weight(2 * e)) << " "
        << (g.synthesized(2 * e + 1) ? std::string("-") : rational_to_string(g.weight(2 * e + 1))) << " "
        << (g.sig(e) ? 1 : 0) << "\n";
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    out << "rot " << v;
    for (int d : in.rotation[v]) out << " " << dart(d);
    out << "\n";
  }
  std::vector<int> rep(g.num_faces(), -1);
  for (int d = g.num_darts() - 1; d >= 0; --d) rep[g.face_of(d, 0)] = d;
  for (int f : s.holes()) {
    if (rep[f] < 0) throw EmbeddingError("hole face " + std::to_string(f) + " has no side-0 dart");
    out << "hole " << dart(rep[f]) << "\n";
  }
}

void write_msgraph_file(const std::string& path, const Surface& s) {
  std::ofstream f(path);
  if (!f) throw FormatError("cannot write " + path);
  write_msgraph(f, s);
}

}  // namespace mssp
