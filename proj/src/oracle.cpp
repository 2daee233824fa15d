#include "ueds/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <vector>

#include "ueds/errors.hpp"

namespace ueds {

namespace {

// Depth-first over edge ids from m-1 down to 0, "exclude" before "include", so
// complete subsets come out in ascending numeric order. Two monotone prunes:
//  - a member whose closed neighbourhood is entirely dominated twice can never
//    regain a private edge (adding edges only raises domination counts);
//  - an edge whose neighbourhood is fully decided without a member stays undominated.
class MinimalEdsSearch {
 public:
  MinimalEdsSearch(const Graph& g, const std::function<void(const EdgeSet&)>& visit)
      : m_(g.num_edges()), visit_(visit) {
    closed_.assign(static_cast<std::size_t>(m_), 0);
    for (EdgeId a = 0; a < m_; ++a)
      for (EdgeId b = 0; b < m_; ++b)
        if (g.edge(a).adjacent_to(g.edge(b))) closed_[static_cast<std::size_t>(a)] |= bit(b);
    // An edge's domination is settled once its lowest-numbered neighbour is decided.
    settled_at_.assign(static_cast<std::size_t>(m_), {});
    for (EdgeId e = 0; e < m_; ++e)
      settled_at_[static_cast<std::size_t>(std::countr_zero(closed_[static_cast<std::size_t>(e)]))].push_back(e);
  }

  void run() {
    if (m_ == 0) {
      visit_(EdgeSet(0));
      return;
    }
    descend(m_ - 1, 0);
  }

 private:
  static std::uint64_t bit(EdgeId e) { return std::uint64_t{1} << e; }

  int count(EdgeId e, std::uint64_t chosen) const {
    return std::popcount(closed_[static_cast<std::size_t>(e)] & chosen);
  }

  bool member_can_keep_private(EdgeId e, std::uint64_t chosen) const {
    std::uint64_t nb = closed_[static_cast<std::size_t>(e)];
    while (nb) {
      const EdgeId f = std::countr_zero(nb);
      nb &= nb - 1;
      if (count(f, chosen) <= 1) return true;
    }
    return false;
  }

  bool feasible_after(EdgeId decided, std::uint64_t chosen) const {
    for (EdgeId e : settled_at_[static_cast<std::size_t>(decided)])
      if ((closed_[static_cast<std::size_t>(e)] & chosen) == 0) return false;
    if (chosen & bit(decided)) {
      std::uint64_t members = chosen;
      while (members) {
        const EdgeId e = std::countr_zero(members);
        members &= members - 1;
        if (!member_can_keep_private(e, chosen)) return false;
      }
    }
    return true;
  }

  void descend(EdgeId pos, std::uint64_t chosen) {
    for (std::uint64_t take : {std::uint64_t{0}, bit(pos)}) {
      const std::uint64_t next = chosen | take;
      if (!feasible_after(pos, next)) continue;
      if (pos == 0)
        emit(next);
      else
        descend(pos - 1, next);
    }
  }

  void emit(std::uint64_t chosen) {
    // Every edge is dominated here, so a count of exactly one marks a private edge.
    std::uint64_t members = chosen;
    while (members) {
      const EdgeId e = std::countr_zero(members);
      members &= members - 1;
      bool ok = false;
      std::uint64_t nb = closed_[static_cast<std::size_t>(e)];
      while (nb && !ok) {
        const EdgeId f = std::countr_zero(nb);
        nb &= nb - 1;
        ok = count(f, chosen) == 1;
      }
      if (!ok) return;
    }
    visit_(EdgeSet::from_mask(m_, chosen));
  }

  int m_;
  const std::function<void(const EdgeSet&)>& visit_;
  std::vector<std::uint64_t> closed_;
  std::vector<std::vector<EdgeId>> settled_at_;
};

void check_size(const Graph& g, const OracleOptions& options) {
  const int limit = std::min(options.max_edges, 64);
  if (g.num_edges() > limit)
    throw InstanceTooLarge("oracle refuses " + std::to_string(g.num_edges()) + " edges (limit " +
                           std::to_string(limit) + ")");
}

}  // namespace

void enumerate_minimal_eds(const Graph& g, const std::function<void(const EdgeSet&)>& visit,
                           const OracleOptions& options) {
  check_size(g, options);
  MinimalEdsSearch(g, visit).run();
}

OracleResult upper_eds_exact(const Graph& g, const OracleOptions& options) {
  OracleResult result;
  result.witness = EdgeSet(g.num_edges());
  bool have = false;
  enumerate_minimal_eds(
      g,
      [&](const EdgeSet& m) {
        ++result.count_minimal;
        // Ascending order: the first set of a given size has the smallest mask.
        if (!have || m.size() > result.gamma_prime) {
          result.gamma_prime = m.size();
          result.witness = m;
          have = true;
        }
      },
      options);
  return result;
}

bool decide(const Graph& g, int k, const OracleOptions& options) {
  if (k <= 0) return true;
  return upper_eds_exact(g, options).gamma_prime >= k;
}

}  // namespace ueds
