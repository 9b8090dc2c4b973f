#include "mssp/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <set>
#include <stdexcept>
#include <tuple>

#include "mssp/dijkstra.hpp"

namespace mssp {

std::string instance_hash(const EmbeddedGraph& g) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
    h = (h ^ 0xff) * 1099511628211ull;
  };
  mix(std::to_string(g.num_vertices()));
  for (int d = 0; d < g.num_darts(); ++d) {
    mix(std::to_string(g.tail(d)));
    mix(std::to_string(g.next_at(d)));
    mix(rational_to_string(g.weight(d)));
    if (d % 2 == 0) mix(g.sig(edge_of(d)) ? "1" : "0");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::vector<Rational>> dijkstra_all_from_face(const EmbeddedGraph& g, int f) {
  if (f < 0 || f >= g.num_faces()) throw std::invalid_argument("face " + std::to_string(f) + " out of range");
  auto w = g.weights<Rational>();
  std::vector<std::vector<Rational>> rows;
  for (int d : g.face_darts(f)) rows.push_back(dijkstra<Rational>(g, g.tail(d), w));
  return rows;
}

namespace {

std::vector<Rational> undirected_weights(const EmbeddedGraph& g) {
  std::vector<Rational> w(g.num_darts());
  for (int d = 0; d < g.num_darts(); ++d) w[d] = g.weight(2 * edge_of(d));
  return w;
}

struct Flags {
  bool separating, contractible;
};

Flags surgery(const Surface& s, const std::vector<int>& cycle) {
  Curve c;
  c.darts = cycle;
  CutResult cut = cut_along(s, c);
  const EmbeddedGraph& g = cut.surface.g;
  int l = g.component_of(cut.copies[0].first), r = g.component_of(cut.copies[0].second);
  if (l == r) return {false, false};
  auto cs = census(cut.surface);
  return {true, cs[l].is_disk() || cs[r].is_disk()};
}

// Euler characteristic of each side of a simple cycle, regions found by flooding the faces
// across edges off the cycle. two_sided_split stays false when the cycle does not separate.
struct Regions {
  bool two_sided_split = false;
  long chi[2] = {1, 1};
  int holes[2] = {0, 0};
};

Regions flood(const Surface& s, const std::vector<int>& cycle) {
  const EmbeddedGraph& g = s.g;
  std::vector<char> on(g.num_edges(), 0), von(g.num_vertices(), 0);
  for (int d : cycle) on[edge_of(d)] = 1, von[g.tail(d)] = 1;
  std::vector<std::vector<int>> adj(g.num_faces());
  for (int e = 0; e < g.num_edges(); ++e) {
    if (on[e]) continue;
    int a = g.face_of(2 * e, 0), b = g.face_of(2 * e, 1);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> label(g.num_faces(), -1);
  auto fill = [&](int f, int l) {
    if (label[f] >= 0) return;
    std::vector<int> stack{f};
    label[f] = l;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x])
        if (label[y] < 0) label[y] = l, stack.push_back(y);
    }
  };
  fill(g.face_of(cycle[0], 0), 0);
  Regions r;
  for (int d : cycle)
    for (int o = 0; o < 2; ++o) fill(g.face_of(d, o), 1);
  for (int d : cycle)
    for (int o = 0; o < 2; ++o) r.two_sided_split |= label[g.face_of(d, o)] == 1;
  if (!r.two_sided_split) return r;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (von[v] || g.first_dart(v) < 0) continue;
    int l = label[g.face_of(g.first_dart(v), 0)];
    if (l == 0 || l == 1) ++r.chi[l];
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    int l = on[e] ? -1 : label[g.face_of(2 * e, 0)];
    if (l == 0 || l == 1) --r.chi[l];
  }
  for (int f = 0; f < g.num_faces(); ++f) {
    int l = label[f];
    if (l != 0 && l != 1) continue;
    ++r.chi[l];
    r.holes[l] += s.hole[f] ? 1 : 0;
  }
  return r;
}

// Cheap screens used before surgery; surgery has the final word on every reported cycle.
bool looks_contractible(const Surface& s, const std::vector<int>& cycle) {
  Regions r = flood(s, cycle);
  if (!r.two_sided_split) return false;
  return (r.chi[0] == 2 && r.holes[0] == 0) || (r.chi[1] == 2 && r.holes[1] == 0);
}

bool looks_separating(const Surface& s, const std::vector<int>& cycle) { return flood(s, cycle).two_sided_split; }

EnumeratedCycle record(const Surface& s, const std::vector<Rational>& w, std::vector<int> darts) {
  EnumeratedCycle c;
  for (int d : darts) c.length += w[d];
  Flags f = surgery(s, darts);
  c.separating = f.separating;
  c.contractible = f.contractible;
  c.darts = std::move(darts);
  return c;
}

std::vector<int> strip_tail(std::vector<int> walk) {
  while (walk.size() >= 2 && walk.back() == rev(walk.front())) {
    walk.pop_back();
    walk.erase(walk.begin());
  }
  return walk;
}

std::vector<int> edge_key(const std::vector<int>& darts) {
  std::vector<int> key;
  for (int d : darts) key.push_back(edge_of(d));
  std::sort(key.begin(), key.end());
  return key;
}

struct Loops {
  struct Item {
    Rational length;
    int root, dart;
  };
  std::vector<Item> items;
  std::vector<std::vector<int>> pred;

  // root -> tail(dart), dart, head(dart) -> root.
  std::vector<int> walk(const EmbeddedGraph& g, const Item& it) const {
    const auto& p = pred[it.root];
    auto climb = [&](int v) {
      std::vector<int> out;
      for (; v != it.root; v = g.tail(p[v])) out.push_back(p[v]);
      return out;
    };
    auto a = climb(g.tail(it.dart));
    std::reverse(a.begin(), a.end());
    a.push_back(it.dart);
    for (int d : climb(g.head(it.dart))) a.push_back(rev(d));
    return a;
  }
};

Loops all_loops(const EmbeddedGraph& g, const std::vector<Rational>& w) {
  Loops out;
  out.pred.resize(g.num_vertices());
  for (int x = 0; x < g.num_vertices(); ++x) {
    std::vector<char> reached;
    auto dist = dijkstra<Rational>(g, x, w, &out.pred[x], &reached);
    const auto& p = out.pred[x];
    for (int e = 0; e < g.num_edges(); ++e) {
      int u = g.tail(2 * e), v = g.head(2 * e);
      if (!reached[u] || !reached[v]) continue;
      if ((p[v] >= 0 && edge_of(p[v]) == e) || (p[u] >= 0 && edge_of(p[u]) == e)) continue;
      out.items.push_back({dist[u] + w[2 * e] + dist[v], x, 2 * e});
    }
  }
  std::sort(out.items.begin(), out.items.end(), [](const Loops::Item& a, const Loops::Item& b) {
    return std::tie(a.length, a.root, a.dart) < std::tie(b.length, b.root, b.dart);
  });
  return out;
}

using Screen = bool (*)(const Surface&, const std::vector<int>&);

CyclePath first_loop(const Surface& s, const std::function<bool(const Flags&)>& wanted, Screen skip, const char* what) {
  const EmbeddedGraph& g = s.g;
  auto w = undirected_weights(g);
  Loops loops = all_loops(g, w);
  std::set<std::vector<int>> tried;
  for (const auto& it : loops.items) {
    auto core = strip_tail(loops.walk(g, it));
    if (core.empty() || !tried.insert(edge_key(core)).second) continue;
    if (skip(s, core)) continue;
    if (!wanted(surgery(s, core))) continue;
    CyclePath out;
    for (int d : core) out.length += w[d];
    out.multiplicity = 1;
    out.darts = std::move(core);
    return out;
  }
  throw NoCycleError(std::string("no ") + what + " cycle exists");
}

}  // namespace

std::vector<EnumeratedCycle> enumerate_cycles(const Surface& s, int max_edges, EnumMode mode) {
  const EmbeddedGraph& g = s.g;
  if (g.num_edges() > max_edges)
    throw std::length_error("enumeration bound exceeded: " + std::to_string(g.num_edges()) + " edges > " + std::to_string(max_edges));
  auto w = undirected_weights(g);
  std::vector<EnumeratedCycle> out;
  if (mode == EnumMode::kSptCandidates) {
    Loops loops = all_loops(g, w);
    std::set<std::vector<int>> seen;
    for (const auto& it : loops.items) {
      auto core = strip_tail(loops.walk(g, it));
      if (!core.empty() && seen.insert(edge_key(core)).second) out.push_back(record(s, w, std::move(core)));
    }
    return out;
  }
  const int n = g.num_vertices();
  std::vector<char> used(n, 0);
  std::vector<int> path;
  std::function<void(int, int)> extend = [&](int start, int v) {
    for (int d : g.darts_at(v)) {
      int h = g.head(d);
      if (h == start && !path.empty() && edge_of(d) != edge_of(path.front())) {
        if (edge_of(path.front()) < edge_of(d)) {
          path.push_back(d);
          out.push_back(record(s, w, path));
          path.pop_back();
        }
        continue;
      }
      if (h <= start || used[h]) continue;
      used[h] = 1;
      path.push_back(d);
      extend(start, h);
      path.pop_back();
      used[h] = 0;
    }
  };
  for (int v = 0; v < n; ++v) {
    for (int d : g.darts_at(v))
      if (g.head(d) == v && d % 2 == 0) out.push_back(record(s, w, {d}));
    extend(v, v);
  }
  return out;
}

CyclePath brute_noncontractible(const Surface& s) {
  return first_loop(s, [](const Flags& f) { return !f.contractible; }, looks_contractible, "non-contractible");
}

CyclePath brute_nonseparating(const Surface& s) {
  Surface closed = s;
  for (auto& h : closed.hole) h = 0;
  return first_loop(closed, [](const Flags& f) { return !f.separating; }, looks_separating, "non-separating");
}

OracleReport slack_derivative_check(const EmbeddedGraph& g, int uv, const Rational& lambda, const Rational& eps,
                                    const std::vector<uint8_t>& red) {
  OracleReport rep;
  rep.instance_hash = instance_hash(g);
  rep.check = "slack";
  if (uv < 0 || uv >= g.num_darts()) throw std::invalid_argument("dart out of range");
  if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
  if (static_cast<int>(red.size()) != g.num_vertices()) throw std::invalid_argument("one color per vertex expected");
  auto w = g.weights<Rational>();
  const Rational w_uv = w[uv], w_vu = w[rev(uv)], hat = w_uv + w_vu;
  Rational big = 1;
  for (const auto& x : w) big += x;
  w[uv] = w[rev(uv)] = big;
  auto from_u = dijkstra<Rational>(g, g.tail(uv), w);
  auto from_v = dijkstra<Rational>(g, g.head(uv), w);
  w[uv] = w_uv;
  w[rev(uv)] = w_vu;
  // Source at lambda: reaches u at cost lambda*w(vu), v at cost (1-lambda)*w(uv).
  auto dist = [&](int x, const Rational& l, int* side) {
    Rational a = l * w_vu + from_u[x], b = (1 - l) * w_uv + from_v[x];
    *side = a < b ? 1 : b < a ? 0 : -1;
    return a < b ? a : b;
  };
  const Rational l1 = lambda + eps;
  std::vector<Rational> d0(g.num_vertices()), d1(g.num_vertices());
  for (int x = 0; x < g.num_vertices(); ++x) {
    int s0, s1;
    d0[x] = dist(x, lambda, &s0);
    d1[x] = dist(x, l1, &s1);
    if (s0 < 0 || s0 != s1) throw std::invalid_argument("epsilon straddles an event at vertex " + std::to_string(x));
    if (s0 != (red[x] ? 1 : 0)) {
      rep.pass = false;
      rep.worst = std::max(rep.worst, hat.get_d());
      if (rep.counterexample.empty())
        rep.counterexample = "vertex " + std::to_string(x) + " colored " + (red[x] ? "red" : "blue") + " but reached from the other side";
    }
  }
  for (int d = 0; d < g.num_darts(); ++d) {
    if (edge_of(d) == edge_of(uv)) continue;
    int x = g.tail(d), y = g.head(d);
    Rational slope = ((d1[x] + w[d] - d1[y]) - (d0[x] + w[d] - d0[y])) / eps;
    Rational want = 0;
    if (!red[x] && red[y]) want = -hat;
    if (red[x] && !red[y]) want = hat;
    bool allowed = slope == 0 || slope == hat || slope == -hat;
    if (!allowed || slope != want) {
      rep.pass = false;
      Rational gap = slope - want;
      rep.worst = std::max(rep.worst, std::abs(gap.get_d()));
      if (rep.counterexample.empty())
        rep.counterexample = "dart " + std::to_string(d) + " slope " + rational_to_string(slope) + " expected " + rational_to_string(want);
    }
  }
  return rep;
}

}  // namespace mssp
