#include "enumlab/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "enumlab/util.hpp"

namespace enumlab::problems {

namespace {

std::pair<unsigned, unsigned> pair_from_index(std::size_t index, unsigned nodes) {
  std::size_t i = index;
  for (unsigned x = 0; x + 1 < nodes; ++x) {
    std::size_t row = nodes - 1 - x;
    if (i < row) return {x, static_cast<unsigned>(x + 1 + i)};
    i -= row;
  }
  throw std::invalid_argument("edge index out of range");
}

}  // namespace

bool Graph::has_edge(unsigned x, unsigned y) const {
  if (x > y) std::swap(x, y);
  return edges[edge_index(x, y, nodes)];
}

std::size_t Graph::edge_total() const {
  return static_cast<std::size_t>(std::count(edges.begin(), edges.end(), true));
}

std::size_t possible_edges(unsigned nodes) {
  return static_cast<std::size_t>(nodes) * (nodes - 1) / 2;
}

std::size_t edge_index(unsigned x, unsigned y, unsigned nodes) {
  if (x >= y) throw std::invalid_argument("edge_index: requires x < y");
  if (y >= nodes) throw std::invalid_argument("edge_index: node id out of range");
  // Pairs (0,1),(0,2),...,(0,n-1),(1,2),... — row x starts after the
  // (n-1) + (n-2) + ... + (n-x) pairs of earlier rows.
  std::size_t row_start = static_cast<std::size_t>(x) * nodes - static_cast<std::size_t>(x) * (x + 1) / 2;
  return row_start + (y - x - 1);
}

Graph graph_from_bits(unsigned nodes, std::uint64_t bits) {
  if (nodes == 0 || nodes > 255) throw std::invalid_argument("node count out of range");
  std::size_t m = possible_edges(nodes);
  if (m < 64 && (bits >> m) != 0)
    throw std::invalid_argument("edge bits beyond n(n-1)/2");
  Graph g;
  g.nodes = static_cast<std::uint8_t>(nodes);
  g.edges.resize(m, false);
  for (std::size_t i = 0; i < m && i < 64; ++i)
    if (bits & (1ull << i)) g.edges[i] = true;
  return g;
}

std::vector<Graph> enumerate_graphs(unsigned nodes, unsigned cap) {
  if (nodes < 1) throw std::invalid_argument("node count must be >= 1");
  if (nodes > cap)
    throw ConstraintError("graph universe for n=" + std::to_string(nodes) +
                          " exceeds the cap of " + std::to_string(cap));
  std::size_t m = possible_edges(nodes);
  std::vector<Graph> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits)
    out.push_back(graph_from_bits(nodes, bits));
  return out;
}

std::uint64_t nth_prime(std::size_t i) {
  static std::vector<std::uint64_t> primes = {2, 3, 5, 7, 11, 13};
  while (primes.size() <= i) {
    std::uint64_t c = primes.back() + 2;
    for (;;) {
      bool composite = false;
      for (std::uint64_t p : primes) {
        if (p * p > c) break;
        if (c % p == 0) {
          composite = true;
          break;
        }
      }
      if (!composite) break;
      c += 2;
    }
    primes.push_back(c);
  }
  return primes[i];
}

GraphHash prime_hash(const Graph& g) {
  GraphHash h = 1;
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    if (g.edges[i]) h *= nth_prime(i);
  return h;
}

bool oracle_3color(const Graph& g) {
  unsigned n = g.nodes;
  std::vector<int> color(n, -1);
  // Assign nodes in order; prune on the first conflict with an already
  // colored neighbour.
  auto backtrack = [&](auto&& self, unsigned node) -> bool {
    if (node == n) return true;
    for (int c = 0; c < 3; ++c) {
      bool ok = true;
      for (unsigned prev = 0; prev < node; ++prev) {
        if (color[prev] == c && g.edges[edge_index(prev, node, n)]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      color[node] = c;
      if (self(self, node + 1)) return true;
      color[node] = -1;
    }
    return false;
  };
  return backtrack(backtrack, 0);
}

std::vector<std::uint8_t> encode_input(const Graph& g) {
  std::vector<std::uint8_t> bytes;
  bytes.push_back(g.nodes);
  std::size_t m = g.edges.size();
  bytes.resize(1 + (m + 7) / 8, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (g.edges[i]) bytes[1 + i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  return bytes;
}

Graph decode_input(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw std::invalid_argument("empty input encoding");
  unsigned n = bytes[0];
  if (n < 1) throw std::invalid_argument("input encodes zero nodes");
  std::size_t m = possible_edges(n);
  if (bytes.size() != 1 + (m + 7) / 8)
    throw std::invalid_argument("input encoding has wrong byte count");
  Graph g;
  g.nodes = static_cast<std::uint8_t>(n);
  g.edges.resize(m, false);
  for (std::size_t i = 0; i < m; ++i)
    g.edges[i] = (bytes[1 + i / 8] >> (i % 8)) & 1;
  // High bits past the last edge must be zero for the round-trip to hold.
  if (m % 8 != 0 && (bytes[1 + (m - 1) / 8] >> (m % 8)) != 0)
    throw std::invalid_argument("input encoding has stray edge bits");
  return g;
}

Graph parse_graph_literal(std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos)
    throw std::invalid_argument("graph literal: expected \"n; edges\"");
  std::string head(text.substr(0, semi));
  unsigned long n = 0;
  try {
    std::size_t used = 0;
    n = std::stoul(head, &used);
    while (used < head.size() && std::isspace(static_cast<unsigned char>(head[used]))) ++used;
    if (used != head.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("graph literal: bad node count \"" + head + "\"");
  }
  if (n < 1 || n > 255)
    throw std::invalid_argument("graph literal: node count out of range");

  Graph g;
  g.nodes = static_cast<std::uint8_t>(n);
  g.edges.resize(possible_edges(static_cast<unsigned>(n)), false);

  std::string rest(text.substr(semi + 1));
  std::istringstream in(rest);
  std::string token;
  while (std::getline(in, token, ',')) {
    std::erase_if(token, [](unsigned char c) { return std::isspace(c); });
    if (token.empty()) continue;
    auto dash = token.find('-');
    if (dash == std::string_view::npos || dash == 0 || dash + 1 == token.size())
      throw std::invalid_argument("graph literal: bad edge \"" + token + "\"");
    unsigned long x = 0, y = 0;
    try {
      x = std::stoul(token.substr(0, dash));
      y = std::stoul(token.substr(dash + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("graph literal: bad edge \"" + token + "\"");
    }
    if (x == y) throw std::invalid_argument("graph literal: self-loop " + token);
    if (x > y) std::swap(x, y);
    if (y >= n) throw std::invalid_argument("graph literal: node id out of range in " + token);
    g.edges[edge_index(static_cast<unsigned>(x), static_cast<unsigned>(y),
                       static_cast<unsigned>(n))] = true;
  }
  return g;
}

std::string format_graph_literal(const Graph& g) {
  std::ostringstream out;
  out << static_cast<unsigned>(g.nodes) << ';';
  bool first = true;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (!g.edges[i]) continue;
    auto [x, y] = pair_from_index(i, g.nodes);
    out << (first ? " " : ",") << x << '-' << y;
    first = false;
  }
  return out.str();
}

}  // namespace enumlab::problems
