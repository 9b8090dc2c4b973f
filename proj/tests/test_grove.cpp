#include <doctest.h>

#include <map>
#include <numeric>
#include <random>

#include "mssp/generate.hpp"
#include "mssp/grove.hpp"
#include "mssp/topology.hpp"

using namespace mssp;

namespace {

// Primal union-find over the forest edges, used to pick legal exchanges.
struct Forest {
  const EmbeddedGraph& g;
  std::vector<char> in;
  int components() const {
    std::vector<int> p(g.num_vertices());
    std::iota(p.begin(), p.end(), 0);
    std::function<int(int)> find = [&](int x) { return p[x] == x ? x : p[x] = find(p[x]); };
    int c = g.num_vertices();
    for (int e = 0; e < g.num_edges(); ++e)
      if (in[e]) {
        int a = find(g.tail(2 * e)), b = find(g.head(2 * e));
        if (a != b) p[a] = b, --c;
      }
    return c;
  }
  std::vector<int> label() const {
    std::vector<int> lab(g.num_vertices(), -1);
    for (int s = 0; s < g.num_vertices(); ++s) {
      if (lab[s] != -1) continue;
      std::vector<int> st{s};
      lab[s] = s;
      while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        int d0 = g.first_dart(x), d = d0;
        do {
          if (in[edge_of(d)] && lab[g.head(d)] == -1) lab[g.head(d)] = s, st.push_back(g.head(d));
          d = g.next_at(d);
        } while (d != d0);
      }
    }
    return lab;
  }
};

struct Setup {
  EmbeddedGraph g;
  Forest forest;
  std::map<int, Rational> val;
  Grove<Rational> grove;

  Setup(int genus, int n, int kappa, uint64_t seed)
      : g(make_genus_glued(genus, n, unit_weights(), seed)), forest{g, {}} {
    std::mt19937_64 rng(seed);
    forest.in.assign(g.num_edges(), 0);
    for (int e : bfs_tree(g, 0)) forest.in[e] = 1;
    std::vector<int> tree;
    for (int e = 0; e < g.num_edges(); ++e)
      if (forest.in[e]) tree.push_back(e);
    std::shuffle(tree.begin(), tree.end(), rng);
    for (int k = 1; k < kappa; ++k) forest.in[tree[k]] = 0;
    std::vector<char> in_x(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) in_x[e] = !forest.in[e];
    for (int d = 0; d < g.num_darts(); ++d) val[d] = Rational(static_cast<long>(rng() % 1000));
    grove = Grove<Rational>(g);
    grove.build(in_x, [&](int d) { return val[d]; });
  }

  void check_values() {
    for (int e = 0; e < g.num_edges(); ++e)
      if (!forest.in[e]) {
        REQUIRE(grove.forest().get(2 * e) == val[2 * e]);
        REQUIRE(grove.forest().get(2 * e + 1) == val[2 * e + 1]);
      }
  }
};

}  // namespace

TEST_CASE("grove counts follow the Euler characteristic") {
  for (int genus = 1; genus <= 3; ++genus)
    for (int kappa : {1, 2, 4}) {
      CAPTURE(genus);
      CAPTURE(kappa);
      Setup s(genus, 60, kappa, 7 + genus + kappa);
      REQUIRE(s.forest.components() == kappa);
      CHECK(s.grove.validate() == "");
      CHECK(s.grove.num_branch_points() == 4 * genus + 2 * kappa - 4);
      CHECK(s.grove.num_paths() == 6 * genus + 3 * kappa - 6);
      CHECK(s.grove.count_faces() == kappa);
      s.check_values();
    }
}

TEST_CASE("grove link then cut of the same edge restores the decomposition") {
  Setup s(2, 50, 1, 3);
  for (int e = 0; e < s.g.num_edges(); ++e) {
    if (!s.forest.in[e]) continue;
    int paths = s.grove.num_paths();
    s.grove.link(2 * e, Rational(1), Rational(2));
    CHECK(s.grove.num_paths() == paths + 3);
    CHECK(s.grove.count_faces() == 2);
    s.grove.cut(e);
    REQUIRE(s.grove.validate() == "");
    CHECK(s.grove.num_paths() == paths);
    CHECK(s.grove.count_faces() == 1);
  }
  s.check_values();
}

TEST_CASE("random grove exchanges stay consistent") {
  for (int genus = 1; genus <= 3; ++genus) {
    CAPTURE(genus);
    const int kappa = genus == 2 ? 3 : 1;
    Setup s(genus, 40, kappa, 100 + genus);
    std::mt19937_64 rng(genus);
    const int rounds = genus == 1 ? 10000 : 1500;
    for (int r = 0; r < rounds; ++r) {
      std::vector<int> tree;
      for (int e = 0; e < s.g.num_edges(); ++e)
        if (s.forest.in[e]) tree.push_back(e);
      int t = tree[rng() % tree.size()];
      s.forest.in[t] = 0;
      int d = 2 * t + static_cast<int>(rng() % 2);
      Rational a(static_cast<long>(rng() % 50)), b(static_cast<long>(rng() % 50));
      s.grove.link(d, a, b);
      s.val[d] = a;
      s.val[rev(d)] = b;
      auto lab = s.forest.label();
      std::vector<int> cross;
      for (int e = 0; e < s.g.num_edges(); ++e)
        if (!s.forest.in[e] && e != t && lab[s.g.tail(2 * e)] != lab[s.g.head(2 * e)] &&
            ((lab[s.g.tail(2 * e)] == lab[s.g.tail(2 * t)]) + (lab[s.g.head(2 * e)] == lab[s.g.tail(2 * t)]) +
             (lab[s.g.tail(2 * e)] == lab[s.g.head(2 * t)]) + (lab[s.g.head(2 * e)] == lab[s.g.head(2 * t)])) == 2)
          cross.push_back(e);
      int x = cross.empty() ? t : cross[rng() % cross.size()];
      s.grove.cut(x);
      s.forest.in[x] = 1;
      if (r % 50 == 0 || genus > 1) {
        REQUIRE(s.grove.validate() == "");
        REQUIRE(s.grove.count_faces() == kappa);
      }
    }
    CHECK(s.grove.num_paths() == 6 * genus + 3 * kappa - 6);
    s.check_values();
  }
}
