#include "rfim/exploration.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace rfim {

namespace {

/// Sites of closure(Lambda(radius)): vertices within radius and mid-edges
/// with both endpoints within radius.
std::vector<char> ball_closure(const ExtendedGraph& g, Vertex center, int radius) {
  const Region& r = g.region();
  std::vector<char> in(static_cast<std::size_t>(g.num_sites()), 0);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (distance(center, r.vertex(v)) <= radius) in[static_cast<std::size_t>(v)] = 1;
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = r.edges()[static_cast<std::size_t>(e)];
    if (in[static_cast<std::size_t>(ed.a)] && in[static_cast<std::size_t>(ed.b)])
      in[static_cast<std::size_t>(g.midedge(e))] = 1;
  }
  return in;
}

}  // namespace

std::vector<char> backward_set(const ExtendedGraph& g, std::span<const SiteId> S, Vertex center,
                               int outer) {
  std::vector<char> ball = ball_closure(g, center, outer);
  std::vector<char> blocked(ball.size(), 0);
  for (SiteId s : S) blocked[static_cast<std::size_t>(s)] = 1;
  auto origin = g.region().index_of(center);
  if (!origin) throw std::invalid_argument("backward_set: center outside region");

  std::vector<char> forward(ball.size(), 0);
  std::deque<SiteId> queue;
  if (!blocked[static_cast<std::size_t>(*origin)]) {
    forward[static_cast<std::size_t>(*origin)] = 1;
    queue.push_back(*origin);
  }
  while (!queue.empty()) {
    SiteId s = queue.front();
    queue.pop_front();
    for (SiteId n : g.neighbors(s)) {
      auto i = static_cast<std::size_t>(n);
      if (ball[i] && !blocked[i] && !forward[i]) {
        forward[i] = 1;
        queue.push_back(n);
      }
    }
  }
  std::vector<char> backward(ball.size(), 0);
  for (std::size_t i = 0; i < ball.size(); ++i) backward[i] = ball[i] && !forward[i];
  return backward;
}

ExplorationResult explore_nonanticipatory(const DisagreementGeometry& geom, Vertex center, int k,
                                          int outer) {
  if (k < 1 || k >= outer) throw std::invalid_argument("explore_nonanticipatory: need 1 <= k < outer");
  const ExtendedGraph& g = geom.graph();
  const Region& r = g.region();
  if (!r.contains(Region::box(center, outer))) {
    throw std::invalid_argument("explore_nonanticipatory: Lambda(outer) leaves the region");
  }
  const std::vector<char> ball = ball_closure(g, center, outer);
  const std::vector<char> inner = ball_closure(g, center, k);
  std::vector<char> annulus(ball.size(), 0);
  int annulus_size = 0;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    annulus[i] = ball[i] && !inner[i];
    annulus_size += annulus[i];
  }

  // Distances inside C_{k|outer}, measured from the outer vertex layer.
  std::vector<int> dist(ball.size(), -1);
  std::deque<SiteId> queue;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (geom.contains(v) && distance(center, r.vertex(v)) == outer) {
      dist[static_cast<std::size_t>(v)] = 0;
      queue.push_back(v);
    }
  }
  int max_dist = 0;
  while (!queue.empty()) {
    SiteId s = queue.front();
    queue.pop_front();
    for (SiteId n : g.neighbors(s)) {
      auto i = static_cast<std::size_t>(n);
      if (annulus[i] && geom.contains(n) && dist[i] < 0) {
        dist[i] = dist[static_cast<std::size_t>(s)] + 1;
        max_dist = std::max(max_dist, dist[i]);
        queue.push_back(n);
      }
    }
  }

  // B_n stops growing once 2n - 1 >= max_dist.
  const int n_stable = std::max(1, (max_dist + 2) / 2);
  const int n_total = annulus_size;
  ExplorationResult result;
  result.counts.reserve(static_cast<std::size_t>(n_total));
  std::vector<char> prev_backward;
  for (int n = 1; n <= std::min(n_stable, n_total); ++n) {
    const int radius = 2 * n - 1;
    std::vector<char> in_b(ball.size(), 0);
    for (std::size_t i = 0; i < ball.size(); ++i) in_b[i] = dist[i] >= 0 && dist[i] <= radius;
    std::vector<SiteId> S;
    int hits = 0;
    for (SiteId s = 0; s < g.num_sites(); ++s) {
      auto i = static_cast<std::size_t>(s);
      if (!ball[i] || in_b[i]) continue;
      bool touches = std::any_of(g.neighbors(s).begin(), g.neighbors(s).end(),
                                 [&](SiteId t) { return in_b[static_cast<std::size_t>(t)] != 0; });
      if (!touches) continue;
      S.push_back(s);
      hits += geom.contains(s) ? 1 : 0;
    }
    std::vector<char> backward = backward_set(g, S, center, outer);
    if (!prev_backward.empty()) {
      for (std::size_t i = 0; i < backward.size(); ++i) {
        if (prev_backward[i] && !backward[i]) result.nested = false;
      }
    }
    prev_backward = std::move(backward);
    result.counts.push_back(hits);
    result.sets.push_back(std::move(S));
  }
  while (static_cast<int>(result.counts.size()) < n_total) result.counts.push_back(result.counts.back());
  if (!result.nested) throw std::logic_error("exploration backward sets are not nested");
  return result;
}

bool good_sets_hold(const ExtendedGraph& g, const ExtendedConfig& plus, const ExtendedConfig& minus,
                    const ExplorationResult& result) {
  for (const auto& S : result.sets) {
    for (SiteId s : S) {
      if (g.is_midedge(s) && (plus.at(g, s) != 0 || minus.at(g, s) != 0)) return false;
    }
  }
  return true;
}

}  // namespace rfim
