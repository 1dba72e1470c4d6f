#include "oddhg/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "prng_util.hpp"

namespace oddhg {

Hypergraph::Hypergraph(int r, int n, std::vector<Edge> edges) : r_(r), n_(n), edges_(std::move(edges)) {
  if (r_ < 2) throw std::invalid_argument("uniformity must be at least 2");
  if (n_ < 1) throw std::invalid_argument("vertex count must be at least 1");
  for (Edge& e : edges_) {
    if (static_cast<int>(e.size()) != r_) throw std::invalid_argument("edge of wrong arity");
    std::sort(e.begin(), e.end());
    if (e.front() < 1 || e.back() > n_) throw std::invalid_argument("vertex index out of range");
    for (size_t i = 1; i < e.size(); ++i) {
      if (e[i] == e[i - 1]) throw std::invalid_argument("repeated vertex in edge");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  for (size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i] == edges_[i - 1]) throw std::invalid_argument("duplicate edge");
  }
}

namespace {

bool parse_longs(const std::string& line, std::vector<long long>& out) {
  out.clear();
  std::istringstream ss(line);
  long long v = 0;
  while (ss >> v) out.push_back(v);
  std::string rest;
  ss.clear();
  return !(ss >> rest);  // trailing garbage means failure
}

}  // namespace

Hypergraph parse_hypergraph(std::istream& in) {
  std::string line;
  int lineno = 0;
  long long r = 0, n = 0, m = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  long long edges_read = 0;
  int last_line = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<long long> vals;
    if (!have_header) {
      if (!parse_longs(line, vals) || vals.size() != 3) throw HgrParseError("malformed header", lineno);
      r = vals[0];
      n = vals[1];
      m = vals[2];
      if (r < 2 || n < 1 || m < 0) throw HgrParseError("malformed header", lineno);
      have_header = true;
      last_line = lineno;
      continue;
    }
    if (edges_read == m) throw HgrParseError("unexpected extra edge line", lineno);
    if (!parse_longs(line, vals)) throw HgrParseError("malformed edge line", lineno);
    if (static_cast<long long>(vals.size()) != r) throw HgrParseError("edge of wrong arity", lineno);
    Edge e;
    e.reserve(static_cast<size_t>(r));
    for (long long v : vals) {
      if (v < 1 || v > n) throw HgrParseError("vertex index out of range", lineno);
      e.push_back(static_cast<int>(v));
    }
    std::sort(e.begin(), e.end());
    for (size_t i = 1; i < e.size(); ++i) {
      if (e[i] == e[i - 1]) throw HgrParseError("repeated vertex in edge", lineno);
    }
    if (!seen.insert(e).second) throw HgrParseError("duplicate edge", lineno);
    edges.push_back(std::move(e));
    ++edges_read;
    last_line = lineno;
  }
  if (!have_header) throw HgrParseError("malformed header", lineno == 0 ? 1 : lineno);
  if (edges_read != m) throw HgrParseError("fewer edges than declared", last_line);
  return Hypergraph(static_cast<int>(r), static_cast<int>(n), std::move(edges));
}

Hypergraph parse_hypergraph(const std::string& text) {
  std::istringstream ss(text);
  return parse_hypergraph(ss);
}

std::string serialize_hypergraph(const Hypergraph& g) {
  std::ostringstream out;
  out << g.r() << ' ' << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) {
    for (size_t i = 0; i < e.size(); ++i) {
      if (i) out << ' ';
      out << e[i];
    }
    out << '\n';
  }
  return out.str();
}

std::vector<long long> degrees(const Hypergraph& g) {
  std::vector<long long> d(static_cast<size_t>(g.n()), 0);
  for (const Edge& e : g.edges()) {
    for (int v : e) ++d[static_cast<size_t>(v - 1)];
  }
  return d;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  }
};

}  // namespace

ComponentPartition connected_components(const Hypergraph& g) {
  Dsu dsu(g.n());
  for (const Edge& e : g.edges()) {
    for (size_t i = 1; i < e.size(); ++i) dsu.unite(e[0] - 1, e[i] - 1);
  }
  // Blocks keyed by root; roots are the minimum vertex of each block, so
  // ascending root order is ascending smallest-vertex order.
  std::vector<std::vector<int>> members(static_cast<size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) members[static_cast<size_t>(dsu.find(v))].push_back(v + 1);

  std::vector<int> new_label(static_cast<size_t>(g.n()) + 1, 0);
  ComponentPartition part;
  for (int root = 0; root < g.n(); ++root) {
    const std::vector<int>& verts = members[static_cast<size_t>(root)];
    if (verts.empty()) continue;
    for (size_t i = 0; i < verts.size(); ++i) new_label[static_cast<size_t>(verts[i])] = static_cast<int>(i) + 1;
    std::vector<Edge> sub;
    for (const Edge& e : g.edges()) {
      if (dsu.find(e[0] - 1) != root) continue;
      Edge mapped;
      mapped.reserve(e.size());
      for (int v : e) mapped.push_back(new_label[static_cast<size_t>(v)]);
      sub.push_back(std::move(mapped));
    }
    part.blocks.push_back(ComponentBlock{verts, Hypergraph(g.r(), static_cast<int>(verts.size()), std::move(sub))});
  }
  return part;
}

Hypergraph disjoint_union(const Hypergraph& g1, const Hypergraph& g2) {
  if (g1.r() != g2.r()) throw std::invalid_argument("uniformity mismatch");
  std::vector<Edge> edges = g1.edges();
  for (const Edge& e : g2.edges()) {
    Edge shifted;
    shifted.reserve(e.size());
    for (int v : e) shifted.push_back(v + g1.n());
    edges.push_back(std::move(shifted));
  }
  return Hypergraph(g1.r(), g1.n() + g2.n(), std::move(edges));
}

long long binomial_capped(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  const long long cap = 1LL << 62;
  long long result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at each step
    __int128 next = static_cast<__int128>(result) * (n - k + i) / i;
    if (next > cap) return cap;
    result = static_cast<long long>(next);
  }
  return result;
}

Hypergraph random_rgraph(int n, int r, long long m, std::uint64_t seed) {
  if (r < 2 || n < 1) throw std::invalid_argument("bad dimensions");
  if (r > n) throw std::invalid_argument("uniformity exceeds vertex count");
  const long long total = binomial_capped(n, r);
  if (m < 0 || m > total) throw std::invalid_argument("edge count exceeds number of possible edges");

  std::mt19937_64 rng(seed);
  std::vector<Edge> chosen;

  const long long enumerate_limit = 4'000'000;
  if (total <= enumerate_limit) {
    // Enumerate all r-subsets in lexicographic order, then partial
    // Fisher-Yates to pick m of them.
    std::vector<Edge> all;
    all.reserve(static_cast<size_t>(total));
    Edge cur(static_cast<size_t>(r));
    std::iota(cur.begin(), cur.end(), 1);
    while (true) {
      all.push_back(cur);
      int i = r - 1;
      while (i >= 0 && cur[static_cast<size_t>(i)] == n - (r - 1 - i)) --i;
      if (i < 0) break;
      ++cur[static_cast<size_t>(i)];
      for (int j = i + 1; j < r; ++j) cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)] + 1;
    }
    for (long long i = 0; i < m; ++i) {
      const auto j = i + static_cast<long long>(detail::bounded(rng, static_cast<std::uint64_t>(total - i)));
      std::swap(all[static_cast<size_t>(i)], all[static_cast<size_t>(j)]);
    }
    chosen.assign(all.begin(), all.begin() + m);
  } else {
    std::set<Edge> picked;
    std::vector<int> pool(static_cast<size_t>(n));
    while (static_cast<long long>(picked.size()) < m) {
      std::iota(pool.begin(), pool.end(), 1);
      Edge e;
      e.reserve(static_cast<size_t>(r));
      for (int i = 0; i < r; ++i) {
        const auto j = i + static_cast<int>(detail::bounded(rng, static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
        e.push_back(pool[static_cast<size_t>(i)]);
      }
      std::sort(e.begin(), e.end());
      picked.insert(std::move(e));
    }
    chosen.assign(picked.begin(), picked.end());
  }
  return Hypergraph(r, n, std::move(chosen));
}

}  // namespace oddhg
